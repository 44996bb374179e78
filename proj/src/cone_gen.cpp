#include "conical/cone_gen.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <string>

#include "conical/errors.hpp"

namespace conical {

namespace {

using Mask = std::uint64_t;

constexpr std::size_t kMaxDdDim = 64;
constexpr std::size_t kMaxBruteDim = 14;
constexpr std::size_t kSearchCap = 1'000'000;

struct DdRay {
  Vector y;
  Mask support = 0;
};

Mask bit(std::size_t i) { return Mask{1} << i; }

std::vector<std::size_t> indices_of(Mask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

// Zero out tiny entries, then scale so the largest entry is 1. Returns
// false if nothing survives.
bool clamp_normalize(Vector& y, double thr) {
  const double peak = y.maxCoeff();
  if (!(peak > 0.0)) return false;
  y /= peak;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (std::abs(y(i)) <= thr) y(i) = 0.0;
  }
  return true;
}

Mask support_mask(const Vector& y) {
  Mask m = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 0.0) m |= bit(static_cast<std::size_t>(i));
  }
  return m;
}

Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = m.col(static_cast<Eigen::Index>(cols[k]));
  }
  return out;
}

// Rows are an orthonormal basis of R(t); N(t) is their common null space.
// t is a projector, so its singular values are measured against 1. The SVD
// basis of a repeated eigenvalue can carry entries just above the zero
// threshold, which destabilizes sign tests; a fixed orthogonal mixing gives
// generic entries without changing the cone or any rank decision.
Matrix hyperplane_rows(const Matrix& t, const ToleranceConfig& tol) {
  const Matrix basis = range_basis(t, 1.0, tol).basis;
  const Eigen::Index k = basis.cols();
  if (k < 2) return basis.transpose();
  std::mt19937_64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(k));
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix mix(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) mix(i, j) = normal(rng);
  }
  const Matrix q = Eigen::HouseholderQR<Matrix>(mix).householderQ();
  return q.transpose() * basis.transpose();
}

// Unique (up to scale) null vector of rows restricted to `support`, as a
// full-length normalized nonnegative vector. Empty when the restricted null
// space is not a line or its generator changes sign.
std::optional<Vector> restricted_generator(const Matrix& rows, std::size_t dim,
                                           const std::vector<std::size_t>& support,
                                           const ToleranceConfig& tol) {
  const double thr = tol.zero_threshold(1.0);
  Vector local;
  if (rows.rows() == 0) {
    if (support.size() != 1) return std::nullopt;
    local = Vector::Ones(1);
  } else {
    const Matrix sub = select_columns(rows, support);
    Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullV);
    const RankReport rr = rank_report(sub, 1.0, tol);
    if (support.size() - rr.rank != 1) return std::nullopt;
    local = svd.matrixV().col(static_cast<Eigen::Index>(support.size()) - 1);
    if (local.sum() < 0.0) local = -local;
  }
  Vector y = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < support.size(); ++k) {
    y(static_cast<Eigen::Index>(support[k])) = local(static_cast<Eigen::Index>(k));
  }
  if (!clamp_normalize(y, thr)) return std::nullopt;
  if (y.minCoeff() < 0.0) return std::nullopt;
  std::vector<std::size_t> kept;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) > 0.0) kept.push_back(static_cast<std::size_t>(i));
  }
  if (kept != support) return std::nullopt;
  return y;
}

Ray make_ray(Vector y) {
  Ray r;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) > 0.0) r.support.push_back(static_cast<std::size_t>(i));
  }
  r.y = std::move(y);
  return r;
}

void check_residual(const Matrix& t, const Ray& r, const ToleranceConfig& tol) {
  const double res = max_abs(Vector(t * r.y));
  if (!(res <= tol.zero_threshold(max_abs(r.y)))) {
    throw NumericalFailure("ray residual |T y| = " + std::to_string(res) + " above threshold");
  }
}

void sort_by_support(std::vector<Ray>& rays) {
  std::sort(rays.begin(), rays.end(),
            [](const Ray& a, const Ray& b) { return a.support < b.support; });
}

// Does the face of {y >= 0, rows y = 0} spanned by two rays have dimension
// two? `rows` holds the hyperplanes processed so far.
bool adjacent(const Matrix& rows, Mask joint, const ToleranceConfig& tol) {
  const auto count = static_cast<std::size_t>(std::popcount(joint));
  if (count < 2) return false;
  if (count > static_cast<std::size_t>(rows.rows()) + 2) return false;
  if (rows.rows() == 0) return count == 2;
  const Matrix sub = select_columns(rows, indices_of(joint));
  return count - rank_report(sub, 1.0, tol).rank == 2;
}

}  // namespace

std::vector<Ray> enumerate_rays(const Matrix& t, const ToleranceConfig& tol) {
  const auto n = static_cast<std::size_t>(t.rows());
  if (t.rows() != t.cols()) throw InvalidInput("enumerate_rays: T must be square");
  if (n > kMaxDdDim) throw DimensionTooLarge("enumerate_rays: at most 64 coordinates");
  const double thr = tol.zero_threshold(1.0);
  const Matrix rows = hyperplane_rows(t, tol);

  std::vector<DdRay> rays;
  for (std::size_t i = 0; i < n; ++i) {
    rays.push_back({Vector::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)), bit(i)});
  }

  for (Eigen::Index k = 0; k < rows.rows() && !rays.empty(); ++k) {
    const Vector r = rows.row(k).transpose();
    const Matrix processed = rows.topRows(k);
    std::vector<DdRay> next;
    std::vector<std::pair<const DdRay*, double>> pos, neg;
    for (const DdRay& ray : rays) {
      const double s = r.dot(ray.y);
      if (s > thr) {
        pos.emplace_back(&ray, s);
      } else if (s < -thr) {
        neg.emplace_back(&ray, s);
      } else {
        next.push_back(ray);
      }
    }
    std::vector<DdRay> created;
    std::set<Mask> seen;
    for (const DdRay& z : next) seen.insert(z.support);
    for (const auto& [p, sp] : pos) {
      for (const auto& [q, sq] : neg) {
        const Mask joint = p->support | q->support;
        if (!adjacent(processed, joint, tol)) continue;
        Vector y = sp * q->y - sq * p->y;
        if (!clamp_normalize(y, thr)) continue;
        const Mask m = support_mask(y);
        if (!seen.insert(m).second) continue;
        created.push_back({std::move(y), m});
      }
    }
    std::sort(created.begin(), created.end(), [](const DdRay& a, const DdRay& b) {
      return indices_of(a.support) < indices_of(b.support);
    });
    for (DdRay& c : created) next.push_back(std::move(c));
    rays = std::move(next);
  }

  std::vector<Ray> out;
  out.reserve(rays.size());
  for (const DdRay& ray : rays) {
    const auto support = indices_of(ray.support);
    auto polished = restricted_generator(rows, n, support, tol);
    if (!polished) {
      throw NumericalFailure("enumerate_rays: extremality test failed on a constructed ray");
    }
    out.push_back(make_ray(std::move(*polished)));
    check_residual(t, out.back(), tol);
  }
  sort_by_support(out);
  require_pointed(out, tol);
  return out;
}

namespace {

// Depth-first walk over independent column sets of `a` that contain the
// test column. A dependent extension is a circuit candidate; circuits with
// a positive dependency vector are the extreme rays through the test
// column. Column independence is decided by re-orthogonalized Gram-Schmidt.
class CircuitSearch {
 public:
  CircuitSearch(const Matrix& a, std::size_t test, std::vector<std::size_t> resume,
                const ToleranceConfig& tol)
      : a_(a), test_(test), resume_(std::move(resume)), tol_(tol) {
    const auto n = static_cast<std::size_t>(a.cols());
    for (std::size_t i = 0; i < n; ++i) {
      if (i != test) rest_.push_back(i);
    }
    dim_ = static_cast<Eigen::Index>(a.rows());
    q_ = Matrix::Zero(dim_, std::max<Eigen::Index>(dim_, 1));
    r_ = Matrix::Zero(std::max<Eigen::Index>(dim_, 1), std::max<Eigen::Index>(dim_, 1));
    dependent_cutoff_ = tol.rank_tol * static_cast<double>(std::max<Eigen::Index>(dim_, a.cols()));
  }

  // True when a circuit was found; `found()` then holds its support in
  // search order.
  bool run() {
    seq_ = {test_};
    const bool fresh = resume_.empty();
    Vector coeff;
    const bool independent = try_push(0, test_, coeff);
    if (fresh) {
      count();
      if (!independent) return emit_circuit(Vector());
    } else if (!independent) {
      return false;
    }
    const bool bounded = !fresh && resume_.size() > 1;
    return explore(0, bounded);
  }

  const std::vector<std::size_t>& found() const { return seq_; }
  const Vector& found_vector() const { return circuit_; }
  std::size_t examined() const { return examined_; }

 private:
  void count() {
    if (++examined_ > kSearchCap) {
      throw IterationCap("next_ray: candidate cap of 1e6 supports exceeded");
    }
  }

  // Gram-Schmidt step for column j against the k columns already in q_.
  // On independence the column is appended; otherwise `coeff` receives
  // q_^T a_j for the dependency solve.
  bool try_push(Eigen::Index k, std::size_t j, Vector& coeff) {
    Vector col = a_.col(static_cast<Eigen::Index>(j));
    coeff = Vector::Zero(k);
    if (dim_ == 0) return false;
    if (k >= dim_) {
      coeff = q_.leftCols(k).transpose() * col;
      return false;
    }
    for (int pass = 0; pass < 2; ++pass) {
      if (k == 0) break;
      const Vector h = q_.leftCols(k).transpose() * col;
      col -= q_.leftCols(k) * h;
      coeff += h;
    }
    const double norm = col.norm();
    if (norm <= dependent_cutoff_) return false;
    q_.col(k) = col / norm;
    r_.block(0, k, k, 1) = coeff;
    r_(k, k) = norm;
    return true;
  }

  bool emit_circuit(const Vector& dependency) {
    // a_j = A_I c  =>  (−c, 1) spans the null space on I ∪ {j}.
    const double thr = tol_.zero_threshold(1.0);
    Vector u(static_cast<Eigen::Index>(seq_.size()));
    const auto k = dependency.size();
    for (Eigen::Index i = 0; i < k; ++i) u(i) = -dependency(i);
    u(k) = 1.0;
    const double peak = u.maxCoeff();
    if (!(peak > 0.0)) return false;
    u /= peak;
    if (u.minCoeff() <= thr) return false;
    circuit_ = u;
    return true;
  }

  bool explore(std::size_t start, bool bounded) {
    const auto k = static_cast<Eigen::Index>(seq_.size());
    std::size_t first = start;
    std::size_t resume_pos = 0;
    if (bounded) {
      const std::size_t target = resume_[seq_.size()];
      resume_pos = static_cast<std::size_t>(
          std::find(rest_.begin(), rest_.end(), target) - rest_.begin());
      first = std::max(first, resume_pos);
    }
    for (std::size_t p = first; p < rest_.size(); ++p) {
      const std::size_t j = rest_[p];
      const bool on_path = bounded && p == resume_pos;
      const bool is_resume = on_path && seq_.size() + 1 == resume_.size();
      const bool is_prefix = on_path && !is_resume;
      seq_.push_back(j);
      Vector coeff;
      const bool independent = try_push(k, j, coeff);
      if (!on_path) count();
      if (!independent) {
        if (!on_path) {
          const Vector c = r_.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(coeff);
          if (emit_circuit(c)) return true;
        }
      } else if (explore(p + 1, is_prefix)) {
        return true;
      }
      seq_.pop_back();
    }
    return false;
  }

  const Matrix& a_;
  std::size_t test_;
  std::vector<std::size_t> resume_;
  const ToleranceConfig& tol_;
  std::vector<std::size_t> rest_;
  std::vector<std::size_t> seq_;
  Eigen::Index dim_ = 0;
  Matrix q_;
  Matrix r_;
  double dependent_cutoff_ = 0.0;
  Vector circuit_;
  std::size_t examined_ = 0;
};

}  // namespace

RaySearch next_ray(const Matrix& t, const RayCursor& cursor, std::size_t test_column,
                   const ToleranceConfig& tol) {
  const auto n = static_cast<std::size_t>(t.rows());
  if (t.rows() != t.cols()) throw InvalidInput("next_ray: T must be square");
  if (test_column >= n) throw InvalidInput("next_ray: test column out of range");
  if (cursor.test_column_ && *cursor.test_column_ != test_column) {
    throw InvalidInput("next_ray: cursor was created for a different test column");
  }
  RaySearch out;
  out.cursor = cursor;
  out.cursor.test_column_ = test_column;
  if (cursor.exhausted_) return out;

  const Matrix rows = hyperplane_rows(t, tol);
  CircuitSearch search(rows, test_column, cursor.last_, tol);
  const bool hit = search.run();
  out.candidates_examined = search.examined();
  if (!hit) {
    out.cursor.exhausted_ = true;
    return out;
  }
  out.cursor.last_ = search.found();
  std::vector<std::size_t> support = search.found();
  std::sort(support.begin(), support.end());
  auto polished = restricted_generator(rows, n, support, tol);
  if (!polished) {
    // The Gram-Schmidt vector already passed the sign test; keep it.
    Vector y = Vector::Zero(static_cast<Eigen::Index>(n));
    const Vector& u = search.found_vector();
    for (std::size_t k = 0; k < search.found().size(); ++k) {
      y(static_cast<Eigen::Index>(search.found()[k])) = u(static_cast<Eigen::Index>(k));
    }
    clamp_normalize(y, tol.zero_threshold(1.0));
    polished = y;
  }
  out.ray = make_ray(std::move(*polished));
  check_residual(t, *out.ray, tol);
  return out;
}

std::vector<Ray> brute_force_rays(const Matrix& t, const ToleranceConfig& tol) {
  const auto n = static_cast<std::size_t>(t.rows());
  if (t.rows() != t.cols()) throw InvalidInput("brute_force_rays: T must be square");
  if (n > kMaxBruteDim) throw DimensionTooLarge("brute_force_rays: at most 14 coordinates");
  const double thr = tol.zero_threshold(1.0);
  std::vector<Ray> out;
  for (Mask m = 1; m < bit(n); ++m) {
    const auto support = indices_of(m);
    const Matrix sub = select_columns(t, support);
    Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullV);
    const std::size_t rank = rank_report(sub, 1.0, tol).rank;
    if (support.size() - rank != 1) continue;
    Vector local = svd.matrixV().col(static_cast<Eigen::Index>(support.size()) - 1);
    if (local.sum() < 0.0) local = -local;
    local /= local.maxCoeff();
    if (local.minCoeff() <= thr) continue;
    Vector y = Vector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < support.size(); ++k) {
      y(static_cast<Eigen::Index>(support[k])) = local(static_cast<Eigen::Index>(k));
    }
    out.push_back(make_ray(std::move(y)));
  }
  sort_by_support(out);
  return out;
}

bool same_ray_set(const std::vector<Ray>& a, const std::vector<Ray>& b, double dist) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Ray& ra : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || ra.y.size() != b[j].y.size()) continue;
      if (max_abs(Vector(ra.y - b[j].y)) <= dist) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

void require_pointed(const std::vector<Ray>& rays, const ToleranceConfig& tol) {
  const double thr = tol.zero_threshold(1.0);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      if (max_abs(Vector(rays[i].y + rays[j].y)) <= thr) {
        throw NotPointed("opposite rays found; the cone contains a line");
      }
    }
  }
}

}  // namespace conical
