#include "conical/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "conical/errors.hpp"

namespace conical::oracle {

namespace {

constexpr Eigen::Index kMaxCols = 8;
constexpr Eigen::Index kMaxRows = 16;
constexpr double kMergeDist = 1e-8;

// Orthonormal basis of the row space of g (columns of the result), via a
// plain SVD with a scale-relative cutoff.
Matrix row_space(const Matrix& g) {
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cutoff =
      s.size() ? 1e-10 * s(0) * static_cast<double>(std::max(g.rows(), g.cols())) : 0.0;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixV().leftCols(rank);
}

bool satisfies(const Matrix& g, const Vector& v, const Vector& x, double tol) {
  const Vector lhs = g * x;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double scale = std::abs(v(i)) + g.row(i).cwiseAbs().dot(x.cwiseAbs());
    if (lhs(i) > v(i) + tol * (1.0 + scale)) return false;
  }
  return true;
}

template <class Visit>
void for_each_combination(Eigen::Index n, Eigen::Index k, Visit&& visit) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  for (;;) {
    visit(idx);
    Eigen::Index i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

std::vector<Vector> vertex_enumerate(const Matrix& g, const Vector& v, double tol) {
  if (g.cols() > kMaxCols || g.rows() > kMaxRows) {
    throw DimensionTooLarge("vertex_enumerate: at most 8 columns and 16 rows");
  }
  if (g.rows() != v.size()) throw InvalidInput("vertex_enumerate: dimension mismatch");
  const Matrix basis = row_space(g);
  const Matrix reduced = g * basis;  // full column rank
  const Eigen::Index r = reduced.cols();

  std::vector<Vector> out;
  if (r == 0) {
    if (v.minCoeff() >= -tol * (1.0 + v.cwiseAbs().maxCoeff())) out.push_back(Vector::Zero(g.cols()));
    return out;
  }
  for_each_combination(g.rows(), r, [&](const std::vector<Eigen::Index>& rows) {
    Matrix sub(r, r);
    Vector rhs(r);
    for (Eigen::Index k = 0; k < r; ++k) {
      sub.row(k) = reduced.row(rows[static_cast<std::size_t>(k)]);
      rhs(k) = v(rows[static_cast<std::size_t>(k)]);
    }
    Eigen::FullPivLU<Matrix> lu(sub);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) return;
    const Vector t = lu.solve(rhs);
    const Vector x = basis * t;
    if (!satisfies(g, v, x, tol)) return;
    for (const Vector& seen : out) {
      if ((seen - x).cwiseAbs().maxCoeff() <= kMergeDist * (1.0 + x.cwiseAbs().maxCoeff())) return;
    }
    out.push_back(x);
  });
  return out;
}

OracleVerdict oracle_feasibility(const Matrix& g, const Vector& v, double tol) {
  OracleVerdict out;
  out.vertices = vertex_enumerate(g, v, tol);
  out.feasible = !out.vertices.empty();
  return out;
}

OracleVerdict oracle_solve(const LpProblem& p, double tol) {
  OracleVerdict out = oracle_feasibility(p.g, p.v, tol);
  if (!out.feasible) return out;
  const Matrix basis = row_space(p.g);
  const Vector along_null = p.f - basis * (basis.transpose() * p.f);
  if (along_null.cwiseAbs().maxCoeff() > 1e-9 * (1.0 + p.f.cwiseAbs().maxCoeff())) return out;

  double best = -std::numeric_limits<double>::infinity();
  for (const Vector& x : out.vertices) best = std::max(best, p.f.dot(x));
  out.optimum = best;
  for (const Vector& x : out.vertices) {
    if (std::abs(p.f.dot(x) - best) <= 1e-9 * (1.0 + std::abs(best))) out.argmax_vertices.push_back(x);
  }
  return out;
}

Vector nnls(const Matrix& a, const Vector& b) {
  const Eigen::Index n = a.cols();
  Vector w = Vector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double eps = 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()) * (1.0 + b.cwiseAbs().maxCoeff());
  const int max_outer = static_cast<int>(3 * n + 10);

  auto solve_passive = [&](Vector& z) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
    }
    z = Vector::Zero(n);
    if (cols.empty()) return;
    Matrix sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
    const Vector zs = sub.completeOrthogonalDecomposition().solve(b);
    for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(static_cast<Eigen::Index>(k));
  };

  for (int outer = 0; outer < max_outer; ++outer) {
    const Vector grad = a.transpose() * (b - a * w);
    Eigen::Index pick = -1;
    double top = eps;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > top) {
        top = grad(j);
        pick = j;
      }
    }
    if (pick < 0) break;
    passive[static_cast<std::size_t>(pick)] = true;

    for (int inner = 0; inner <= n; ++inner) {
      Vector z;
      solve_passive(z);
      bool ok = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) ok = false;
      }
      if (ok) {
        w = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          alpha = std::min(alpha, w(j) / (w(j) - z(j)));
        }
      }
      w += alpha * (z - w);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && w(j) <= eps) {
          passive[static_cast<std::size_t>(j)] = false;
          w(j) = 0.0;
        }
      }
    }
  }
  return w;
}

bool hull_member(const Vector& point, const std::vector<Vector>& points, double tol) {
  if (points.empty()) throw InvalidInput("hull_member: empty point list");
  const Eigen::Index d = point.size();
  const auto k = static_cast<Eigen::Index>(points.size());
  Matrix a(d + 1, k);
  double scale = point.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < k; ++j) {
    const Vector& q = points[static_cast<std::size_t>(j)];
    if (q.size() != d) throw InvalidInput("hull_member: dimension mismatch");
    a.col(j).head(d) = q;
    a(d, j) = 1.0;
    scale = std::max(scale, q.cwiseAbs().maxCoeff());
  }
  Vector b(d + 1);
  b.head(d) = point;
  b(d) = 1.0;
  const Vector w = nnls(a, b);
  return (a * w - b).cwiseAbs().maxCoeff() <= tol * (1.0 + scale);
}

}  // namespace conical::oracle
