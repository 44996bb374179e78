#include "conical/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "conical/errors.hpp"

namespace conical {

namespace {

constexpr double kNearBand = 1e3;

RankReport decide_rank(const Vector& singular, std::size_t rows, std::size_t cols,
                       double reference, const ToleranceConfig& tol) {
  RankReport out;
  out.cutoff = tol.rank_tol * reference * static_cast<double>(std::max(rows, cols));
  if (reference <= 0.0) return out;
  for (Eigen::Index i = 0; i < singular.size(); ++i) {
    const double s = singular(i);
    if (s > out.cutoff) ++out.rank;
    if (s > out.cutoff / kNearBand && s < out.cutoff * kNearBand) out.near_threshold = true;
  }
  return out;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(zero_tol > 0.0) || !(rank_tol > 0.0) || !(ratio_tol > 0.0)) {
    throw InvalidInput("tolerances must be strictly positive");
  }
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidInput(std::string(what) + ": entries must be finite");
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw InvalidInput(std::string(what) + ": entries must be finite");
}

RankReport rank_report(const Matrix& m, const ToleranceConfig& tol) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  return decide_rank(s, m.rows(), m.cols(), s.size() ? s(0) : 0.0, tol);
}

RankReport rank_report(const Matrix& m, double reference, const ToleranceConfig& tol) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Matrix> svd(m);
  return decide_rank(svd.singularValues(), m.rows(), m.cols(), reference, tol);
}

namespace {

RangeBasis range_basis_impl(const Matrix& m, std::optional<double> reference,
                            const ToleranceConfig& tol) {
  RangeBasis out;
  if (m.size() == 0) {
    out.basis = Matrix(m.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  out.report = decide_rank(s, m.rows(), m.cols(), reference.value_or(s(0)), tol);
  out.basis = svd.matrixU().leftCols(static_cast<Eigen::Index>(out.report.rank));
  return out;
}

}  // namespace

RangeBasis range_basis(const Matrix& m, const ToleranceConfig& tol) {
  return range_basis_impl(m, std::nullopt, tol);
}

RangeBasis range_basis(const Matrix& m, double reference, const ToleranceConfig& tol) {
  return range_basis_impl(m, reference, tol);
}

Matrix orthonormal_range_basis(const Matrix& m, const ToleranceConfig& tol) {
  return range_basis(m, tol).basis;
}

Matrix projector_onto_range(const Matrix& m, const ToleranceConfig& tol) {
  const Matrix b = orthonormal_range_basis(m, tol);
  return b * b.transpose();
}

Matrix projector_onto_span(const Vector& u, const ToleranceConfig& tol, double scale) {
  const auto n = u.size();
  const double norm = u.norm();
  if (norm <= tol.zero_threshold(scale)) {
    return Matrix::Zero(n, n);
  }
  const Vector unit = u / norm;
  return unit * unit.transpose();
}

Vector solve_consistent(const Matrix& g, const Vector& b, const ToleranceConfig& tol) {
  if (g.rows() != b.size()) throw InvalidInput("solve_consistent: dimension mismatch");
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const RankReport rank = decide_rank(s, g.rows(), g.cols(), s.size() ? s(0) : 0.0, tol);
  Vector x = Vector::Zero(g.cols());
  for (std::size_t i = 0; i < rank.rank; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    x += svd.matrixV().col(k) * (svd.matrixU().col(k).dot(b) / s(k));
  }
  const double residual = (g * x - b).norm();
  const double limit = tol.zero_threshold(max_abs(g)) * (1.0 + b.norm());
  if (!(residual <= limit)) {
    throw InconsistentSystem("solve_consistent: residual " + std::to_string(residual) +
                             " exceeds " + std::to_string(limit));
  }
  return x;
}

ProjectorSet make_projector_set(const Matrix& g, const Vector& upsilon, const ToleranceConfig& tol,
                                double scale) {
  ProjectorSet base;
  const RangeBasis rb = range_basis(g, tol);
  base.p_f = rb.basis * rb.basis.transpose();
  base.near_threshold_rank = rb.report.near_threshold;
  return with_upsilon(base, upsilon, tol, scale);
}

ProjectorSet with_upsilon(const ProjectorSet& base, const Vector& upsilon,
                          const ToleranceConfig& tol, double scale) {
  const auto n = base.p_f.rows();
  if (upsilon.size() != n) throw InvalidInput("with_upsilon: dimension mismatch");
  ProjectorSet out;
  out.p_f = base.p_f;
  out.near_threshold_rank = base.near_threshold_rank;
  out.p_v = projector_onto_span(upsilon, tol, scale);
  out.p_f_perp = Matrix::Identity(n, n) - out.p_f;
  out.t = out.p_f_perp - out.p_v;
  return out;
}

}  // namespace conical
