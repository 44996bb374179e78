#pragma once

#include <optional>
#include <vector>

#include "conical/linalg.hpp"
#include "conical/lp_solver.hpp"

namespace conical::oracle {

// Combinatorial ground truth. Nothing here touches the conical code paths;
// only Eigen factorizations are shared.

struct OracleVerdict {
  bool feasible = false;
  std::optional<double> optimum;
  std::vector<Vector> argmax_vertices;
  std::vector<Vector> vertices;
};

/// Basic feasible points of {x : G x <= v}: every choice of rank(G) rows with
/// an invertible restriction, solved as equalities and kept when all
/// inequalities hold within `tol * (1 + scale)`. Duplicates within 1e-8 are
/// merged. When G is column-rank deficient the search runs in its row
/// space, so the points returned are the minimum-norm representatives.
/// Throws DimensionTooLarge for more than 8 columns or 16 rows.
std::vector<Vector> vertex_enumerate(const Matrix& g, const Vector& v, double tol = 1e-9);

/// Feasibility verdict only (no objective).
OracleVerdict oracle_feasibility(const Matrix& g, const Vector& v, double tol = 1e-9);

/// Best vertex of max f.x. `optimum` is absent when infeasible or when f has
/// a component along N(G) (the problem is then unbounded).
OracleVerdict oracle_solve(const LpProblem& p, double tol = 1e-9);

/// Is `point` a convex combination of `points` within `tol`? Decided by
/// nonnegative least squares (Lawson-Hanson) on [points; 1] * w = [point; 1].
bool hull_member(const Vector& point, const std::vector<Vector>& points, double tol);

/// Lawson-Hanson active-set solver for min |A w - b| subject to w >= 0.
Vector nnls(const Matrix& a, const Vector& b);

}  // namespace conical::oracle
