#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conical/oracle.hpp"

namespace fixtures {

Vector vec(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out(i++) = x;
  return out;
}

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix out(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double x : row) out(i, j++) = x;
    ++i;
  }
  return out;
}

Matrix column(std::initializer_list<double> xs) { return vec(xs); }

Matrix null_space_projector(const Matrix& basis) {
  const auto n = basis.rows();
  Eigen::ColPivHouseholderQR<Matrix> qr(basis);
  const Matrix q = Matrix(qr.householderQ()).leftCols(qr.rank());
  return Matrix::Identity(n, n) - q * q.transpose();
}

Matrix random_cone_projector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> dim(1, n - 1);
  const std::size_t d = dim(rng);
  std::uniform_int_distribution<std::size_t> nonneg(0, d);
  const std::size_t q = nonneg(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      double x = 0.0;
      if (c < q) {
        x = unit(rng) < 0.4 ? 0.0 : unit(rng);
      } else {
        x = normal(rng);
      }
      basis(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = x;
    }
  }
  return null_space_projector(basis);
}

std::size_t integer_rank(const std::vector<std::vector<long long>>& a) {
  std::vector<std::vector<__int128>> m;
  for (const auto& row : a) m.emplace_back(row.begin(), row.end());
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  __int128 prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

std::size_t gram_rank(const Matrix& m, double tol) {
  const auto cols = static_cast<std::size_t>(m.cols());
  for (std::size_t k = std::min<std::size_t>(cols, static_cast<std::size_t>(m.rows())); k > 0; --k) {
    std::vector<bool> pick(cols, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      Matrix sub(m.rows(), static_cast<Eigen::Index>(k));
      Eigen::Index j = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        if (pick[c]) sub.col(j++) = m.col(static_cast<Eigen::Index>(c));
      }
      if (std::abs((sub.transpose() * sub).determinant()) > tol) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return 0;
}

std::pair<std::size_t, std::size_t> suite_dims(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 12)(rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(6, n - 1))(rng);
  return {n, m};
}

std::optional<conical::LpProblem> tied_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
  const conical::io::ProblemFile base =
      conical::gen::generate_instance(seed, n, m, conical::gen::InstanceKind::Feasible);
  const Matrix& g = base.g;
  const Vector& v = base.v;
  const std::vector<Vector> vertices = conical::oracle::vertex_enumerate(g, v);
  const double scale = std::max(conical::max_abs(g), conical::max_abs(v));
  auto tight = [&](const Vector& x) {
    std::vector<std::size_t> rows;
    const Vector slack = v - g * x;
    for (Eigen::Index i = 0; i < slack.size(); ++i) {
      if (std::abs(slack(i)) <= 1e-9 * (1.0 + scale)) rows.push_back(static_cast<std::size_t>(i));
    }
    return rows;
  };
  std::vector<std::vector<std::size_t>> tight_sets;
  for (const Vector& x : vertices) tight_sets.push_back(tight(x));

  std::mt19937_64 rng(seed + 17);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      std::vector<std::size_t> shared;
      std::set_intersection(tight_sets[a].begin(), tight_sets[a].end(), tight_sets[b].begin(),
                            tight_sets[b].end(), std::back_inserter(shared));
      if (shared.empty()) continue;
      Matrix rows(static_cast<Eigen::Index>(shared.size()), g.cols());
      for (std::size_t k = 0; k < shared.size(); ++k) {
        rows.row(static_cast<Eigen::Index>(k)) = g.row(static_cast<Eigen::Index>(shared[k]));
      }
      Eigen::FullPivLU<Matrix> lu(rows);
      lu.setThreshold(1e-10);
      if (lu.rank() != g.cols() - 1) continue;
      Vector f = Vector::Zero(g.cols());
      for (std::size_t k = 0; k < shared.size(); ++k) {
        f += weight(rng) * g.row(static_cast<Eigen::Index>(shared[k])).transpose();
      }
      return conical::LpProblem(g, v, f);
    }
  }
  return std::nullopt;
}

conical::LpProblem as_lp(const conical::io::ProblemFile& file) {
  return conical::LpProblem(file.g, file.v, *file.f);
}

}  // namespace fixtures
