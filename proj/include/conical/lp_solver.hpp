#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conical/feasibility.hpp"

namespace conical {

/// max f.x subject to G x <= v.
struct LpProblem {
  Matrix g;
  Vector v;
  Vector f;

  LpProblem() = default;
  /// Throws InvalidInput on mismatched shapes, non-finite entries or f = 0.
  LpProblem(Matrix g_in, Vector v_in, Vector f_in);

  FeasibilityProblem constraints() const { return FeasibilityProblem(g, v); }
  std::size_t rows() const { return static_cast<std::size_t>(g.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(g.cols()); }
};

/// The objective folded into the constraints: G_hat = [G; -f] and
/// v_hat(h) = [v; -h], so {G_hat x <= v_hat(h)} = {G x <= v, f.x >= h}.
struct AugmentedProblem {
  Matrix g_hat;
  Vector v_hat_base;  // [v; 0]
  double h = 0.0;

  Vector bound() const;
  FeasibilityProblem view() const { return FeasibilityProblem(g_hat, bound()); }
};

AugmentedProblem augment(const LpProblem& p, double h);

/// f.x_feas - delta with x_feas the feasibility witness and
/// delta = max(1, |f.x_feas|) * 1e-3; strictly below the optimum.
/// Throws InfeasibleProblem or NotStrictlyTangent.
double initial_h(const LpProblem& p, const ToleranceConfig& tol);

struct TraceStep {
  double h = 0.0;               // h after the update
  double last_component = 0.0;  // last entry of the calibrated generator
  std::size_t rays_examined = 0;  // candidate supports examined in this step
};

struct LpStats {
  /// Extreme rays materialized: the full enumeration at the start h for
  /// the enumerative solver, the rays returned by the search for the
  /// evolutive one.
  std::size_t rays_enumerated = 0;
  std::size_t steps = 0;
  std::size_t candidates_examined = 0;
  std::size_t restarts = 0;
  /// Number of contact-polytope extreme points at the start h
  /// (enumerative solver only).
  std::size_t start_extreme_points = 0;
  /// rank_drop_check at every evolutive step taken below the optimum.
  std::vector<bool> rank_checks;
  bool near_threshold_rank = false;
};

struct LpOutcome {
  enum class Status { Infeasible, Optimal, Unsupported };

  Status status = Status::Infeasible;
  double h_o = 0.0;
  double h_start = 0.0;
  Vector x_o;
  Vector y_o;  // augmented optimal slack, last entry 0
  std::optional<std::vector<Vector>> optimal_extremes;
  std::string reason;       // Unsupported only
  std::optional<Vector> witness;  // Unsupported only
  std::vector<TraceStep> trace;   // evolutive only
  LpStats stats;
};

struct LpOptions {
  bool all_solutions = false;
  /// Overrides initial_h. Must not exceed the optimum.
  std::optional<double> start_h;
};

/// All calibrated generators at the start h; h_o = h + max last component.
LpOutcome solve_enumerative(const LpProblem& p, const ToleranceConfig& tol,
                            const LpOptions& options = {});

/// One generator at a time with positive last component, raising h by it,
/// resuming the support search after each update until it is exhausted.
/// Throws IterationCap if more than 1e6 candidate supports are examined.
LpOutcome solve_evolutive(const LpProblem& p, const ToleranceConfig& tol,
                          const LpOptions& options = {});

/// rank(t without its last column) == rank(t).
bool rank_drop_check(const Matrix& t, const ToleranceConfig& tol);

/// Domain-space points for every extreme point of the contact polytope at
/// h_o, i.e. the extreme optimal solutions.
std::vector<Vector> optimal_face(const LpProblem& p, double h_o, const ToleranceConfig& tol);

}  // namespace conical
