#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace conical {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thresholds shared by every module. A zero test on a quantity q produced
/// from inputs whose largest absolute entry is `scale` uses
/// `tol * (1 + scale)`.
struct ToleranceConfig {
  double zero_tol = 1e-9;
  double rank_tol = 1e-10;
  double ratio_tol = 1e-7;

  /// Throws InvalidInput unless all three values are strictly positive.
  void validate() const;

  double zero_threshold(double scale) const { return zero_tol * (1.0 + scale); }
};

double max_abs(const Matrix& m);
double max_abs(const Vector& v);

/// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

/// Rank decision from singular values: sigma_i is kept when
/// sigma_i > rank_tol * reference * max(rows, cols). `reference` is sigma_max
/// unless the caller supplies a fixed scale.
struct RankReport {
  std::size_t rank = 0;
  double cutoff = 0.0;
  /// Some singular value lies within three decades of the cutoff.
  bool near_threshold = false;
};

RankReport rank_report(const Matrix& m, const ToleranceConfig& tol);
/// Same rule with an externally fixed reference scale (used for submatrices
/// of matrices with known norm, where sigma_max of the piece is meaningless).
RankReport rank_report(const Matrix& m, double reference, const ToleranceConfig& tol);

struct RangeBasis {
  Matrix basis;  // rows x rank, orthonormal columns
  RankReport report;
};

RangeBasis range_basis(const Matrix& m, const ToleranceConfig& tol);
/// Fixed reference scale, e.g. 1 for orthogonal projectors, so that a
/// numerically zero matrix has rank 0.
RangeBasis range_basis(const Matrix& m, double reference, const ToleranceConfig& tol);

/// Orthonormal basis of R(m). A zero matrix yields a rows x 0 result.
Matrix orthonormal_range_basis(const Matrix& m, const ToleranceConfig& tol);

/// B * B^T for B = orthonormal_range_basis(m).
Matrix projector_onto_range(const Matrix& m, const ToleranceConfig& tol);

/// u u^T / |u|^2, or the zero matrix when |u| <= zero_threshold(scale).
/// `scale` is the magnitude of whatever u was derived from.
Matrix projector_onto_span(const Vector& u, const ToleranceConfig& tol, double scale = 0.0);

/// Minimum-norm solution of g x = b. Throws InconsistentSystem when the
/// residual exceeds the zero threshold, which callers treat as a broken
/// invariant (b is always constructed inside R(g)).
Vector solve_consistent(const Matrix& g, const Vector& b, const ToleranceConfig& tol);

/// Orthogonal projectors attached to a bound decomposition:
/// p_f onto R(G), p_v onto span(upsilon), p_f_perp = I - p_f and
/// t = I - p_v - p_f, the projector onto the orthogonal complement of
/// span(upsilon) + R(G).
struct ProjectorSet {
  Matrix p_f;
  Matrix p_v;
  Matrix p_f_perp;
  Matrix t;
  bool near_threshold_rank = false;
};

ProjectorSet make_projector_set(const Matrix& g, const Vector& upsilon, const ToleranceConfig& tol,
                                double scale = 0.0);

/// Reuses p_f from `base`; only the span(upsilon) part is recomputed.
ProjectorSet with_upsilon(const ProjectorSet& base, const Vector& upsilon,
                          const ToleranceConfig& tol, double scale = 0.0);

}  // namespace conical
