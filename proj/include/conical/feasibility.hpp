#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conical/cone_gen.hpp"
#include "conical/linalg.hpp"

namespace conical {

/// The system G x <= v with G of size n x m.
struct FeasibilityProblem {
  Matrix g;
  Vector v;

  FeasibilityProblem() = default;
  /// Throws InvalidInput on empty, mismatched or non-finite data.
  FeasibilityProblem(Matrix g_in, Vector v_in);

  std::size_t rows() const { return static_cast<std::size_t>(g.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(g.cols()); }
};

/// v = v_f + upsilon with v_f the projection of v onto R(G) and upsilon the
/// remainder; z is the minimum-norm solution of G z = v_f.
struct BoundDecomposition {
  Vector v_f;
  Vector upsilon;
  Vector z;
};

BoundDecomposition decompose_bound(const FeasibilityProblem& p, const ToleranceConfig& tol);
/// Variant reusing a precomputed projector onto R(G).
BoundDecomposition decompose_bound(const FeasibilityProblem& p, const Matrix& p_f,
                                   const ToleranceConfig& tol);

struct TangencyStatus {
  bool strictly_tangent = true;
  std::optional<Ray> witness;  // nonzero element of R(G) ∩ P when violated
};

/// Does R(g) meet the nonnegative orthant only at the origin?
TangencyStatus check_strict_tangency(const Matrix& g, const ToleranceConfig& tol);

/// A ray of span(upsilon) + R(G) inside P together with its calibration
/// factor. `w` = ray.y / beta is present only when beta > 0, in which case
/// it lies on the affine slice upsilon + R(G).
struct CalibratedGenerator {
  Ray ray;
  double beta = 0.0;
  std::optional<Vector> w;
};

/// Throws ZeroBeta when |beta| is numerically zero, InconsistentRatios when
/// the coordinatewise ratios disagree.
CalibratedGenerator calibrate(const Ray& y, const BoundDecomposition& dec,
                              const ProjectorSet& projs, const ToleranceConfig& tol);

enum class TrivialKind { VInP, UpsilonInP, UpsilonZero };
enum class InfeasibleCase { StrictlyTangentFe, NegativeBeta };

struct FeasibilityOutcome {
  enum class Status { TrivialFeasible, Feasible, Infeasible };

  Status status = Status::Infeasible;
  Vector x;  // witness, feasible statuses only
  std::optional<TrivialKind> trivial;
  std::optional<InfeasibleCase> infeasible_case;
  std::optional<Ray> witness;  // the negative-beta ray
  /// First calibrated generator, or all of them when requested.
  std::vector<CalibratedGenerator> generators;
  std::size_t rays_enumerated = 0;
  bool near_threshold_rank = false;

  bool feasible() const { return status != Status::Infeasible; }
};

/// Decide G x <= v. Trivial shortcuts first (v in P, upsilon = 0, upsilon in
/// P); otherwise the extreme rays of N(I - P_V - P_F) ∩ P decide: none means
/// infeasible, a negative calibration factor means infeasible, a positive
/// one yields the witness solving G x = v - w. With `want_all` every ray is
/// calibrated (also on the trivial path when upsilon != 0).
///
/// Throws NotStrictlyTangent if R(G) meets P outside the origin.
FeasibilityOutcome solve_feasibility(const FeasibilityProblem& p, const ToleranceConfig& tol,
                                     bool want_all = false);

/// Calibration factor of every extreme ray of span(upsilon) + R(G) inside
/// P, in enumeration order. Empty when upsilon = 0 or the cone is trivial.
std::vector<double> ray_betas(const FeasibilityProblem& p, const ToleranceConfig& tol);

/// Extreme points of (v + R(G)) ∩ P, the polytope of feasible slacks.
struct ContactPolytope {
  std::vector<Vector> extreme_points;
  std::size_t dim_ambient = 0;
};

/// Requires a feasible, strictly tangent problem with upsilon != 0.
/// Throws InfeasibleProblem, NotStrictlyTangent or InvalidInput otherwise.
ContactPolytope contact_polytope(const FeasibilityProblem& p, const ToleranceConfig& tol);

/// Lower-level form used by the LP solver: the projector onto R(G) is given
/// and strict tangency is assumed to have been checked.
ContactPolytope contact_polytope(const FeasibilityProblem& p, const Matrix& p_f,
                                 const ToleranceConfig& tol, std::size_t* rays_enumerated = nullptr);

/// Mean of the extreme points: a point of the relative interior.
Vector relative_interior_point(const ContactPolytope& cp);

}  // namespace conical
