#include "conical/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conical/errors.hpp"

namespace conical {

namespace {

constexpr double kStartMargin = 1e-3;
constexpr std::size_t kCandidateCap = 1'000'000;

double start_margin(double objective) { return std::max(1.0, std::abs(objective)) * kStartMargin; }

// Contact data of the augmented system at one value of h.
struct SliceState {
  FeasibilityProblem view;
  BoundDecomposition dec;
  ProjectorSet projs;
  bool upsilon_zero = false;
};

SliceState slice_at(const LpProblem& p, const ProjectorSet& base, double h,
                    const ToleranceConfig& tol) {
  SliceState s{augment(p, h).view(), {}, {}, false};
  s.dec = decompose_bound(s.view, base.p_f, tol);
  const double scale = max_abs(s.view.v);
  s.upsilon_zero = max_abs(s.dec.upsilon) <= tol.zero_threshold(scale);
  if (!s.upsilon_zero) s.projs = with_upsilon(base, s.dec.upsilon, tol, scale);
  return s;
}

// Solve G_hat x = b and confirm x is an optimal point of the original LP.
Vector recover_solution(const LpProblem& p, const Matrix& g_hat, const Vector& b, double h_o,
                        const ToleranceConfig& tol) {
  const Vector x = solve_consistent(g_hat, b, tol);
  const double limit = 10.0 * tol.zero_threshold(max_abs(g_hat)) * (1.0 + b.norm());
  const Vector slack = p.v - p.g * x;
  if (slack.minCoeff() < -limit) {
    throw NumericalFailure("recovered solution violates G x <= v by " +
                           std::to_string(-slack.minCoeff()));
  }
  if (std::abs(p.f.dot(x) - h_o) > limit * (1.0 + std::abs(h_o))) {
    throw NumericalFailure("recovered solution misses the optimum value");
  }
  return x;
}

// Screens shared by both solvers. Returns an outcome when the solve ends
// before the main loop (unsupported or infeasible).
std::optional<LpOutcome> screen(const LpProblem& p, const ToleranceConfig& tol,
                                double& h_start, double& delta) {
  tol.validate();
  LpOutcome out;
  const TangencyStatus original = check_strict_tangency(p.g, tol);
  if (!original.strictly_tangent) {
    out.status = LpOutcome::Status::Unsupported;
    out.reason = "constraint matrix is not strictly tangent";
    out.witness = original.witness->y;
    return out;
  }
  const TangencyStatus augmented = check_strict_tangency(augment(p, 0.0).g_hat, tol);
  if (!augmented.strictly_tangent) {
    out.status = LpOutcome::Status::Unsupported;
    out.reason = "augmented matrix is not strictly tangent; boundedness not certified";
    out.witness = augmented.witness->y;
    return out;
  }
  const FeasibilityOutcome fo = solve_feasibility(p.constraints(), tol);
  if (!fo.feasible()) {
    out.status = LpOutcome::Status::Infeasible;
    return out;
  }
  const double fx = p.f.dot(fo.x);
  delta = start_margin(fx);
  h_start = fx - delta;
  return std::nullopt;
}

std::vector<Vector> face_points(const LpProblem& p, const ProjectorSet& base, double h_o,
                                const ToleranceConfig& tol) {
  const SliceState s = slice_at(p, base, h_o, tol);
  if (s.upsilon_zero) {
    return {recover_solution(p, s.view.g, s.view.v, h_o, tol)};
  }
  const ContactPolytope cp = contact_polytope(s.view, base.p_f, tol);
  std::vector<Vector> out;
  out.reserve(cp.extreme_points.size());
  for (const Vector& g : cp.extreme_points) {
    out.push_back(recover_solution(p, s.view.g, s.view.v - g, h_o, tol));
  }
  return out;
}

ProjectorSet augmented_base(const LpProblem& p, const ToleranceConfig& tol) {
  const Matrix g_hat = augment(p, 0.0).g_hat;
  return make_projector_set(g_hat, Vector::Zero(g_hat.rows()), tol);
}

}  // namespace

LpProblem::LpProblem(Matrix g_in, Vector v_in, Vector f_in)
    : g(std::move(g_in)), v(std::move(v_in)), f(std::move(f_in)) {
  FeasibilityProblem check(g, v);
  if (f.size() != g.cols()) throw InvalidInput("f: length must equal the number of columns of G");
  require_finite(f, "f");
  if (max_abs(f) == 0.0) throw InvalidInput("f: objective must be nonzero");
}

Vector AugmentedProblem::bound() const {
  Vector b = v_hat_base;
  b(b.size() - 1) = -h;
  return b;
}

AugmentedProblem augment(const LpProblem& p, double h) {
  const auto n = p.g.rows();
  AugmentedProblem a;
  a.g_hat.resize(n + 1, p.g.cols());
  a.g_hat.topRows(n) = p.g;
  a.g_hat.row(n) = -p.f.transpose();
  a.v_hat_base = Vector::Zero(n + 1);
  a.v_hat_base.head(n) = p.v;
  a.h = h;
  return a;
}

double initial_h(const LpProblem& p, const ToleranceConfig& tol) {
  const FeasibilityOutcome fo = solve_feasibility(p.constraints(), tol);
  if (!fo.feasible()) throw InfeasibleProblem("initial_h: constraints are infeasible");
  const double fx = p.f.dot(fo.x);
  return fx - start_margin(fx);
}

bool rank_drop_check(const Matrix& t, const ToleranceConfig& tol) {
  if (t.cols() == 0) return true;
  const Matrix trimmed = t.leftCols(t.cols() - 1);
  return rank_report(t, 1.0, tol).rank == rank_report(trimmed, 1.0, tol).rank;
}

LpOutcome solve_enumerative(const LpProblem& p, const ToleranceConfig& tol,
                            const LpOptions& options) {
  double h = 0.0;
  double delta = 0.0;
  if (auto early = screen(p, tol, h, delta)) return *early;
  if (options.start_h) h = *options.start_h;

  const ProjectorSet base = augmented_base(p, tol);
  const auto last = static_cast<Eigen::Index>(p.rows());
  LpOutcome out;
  out.stats.near_threshold_rank = base.near_threshold_rank;

  SliceState s = slice_at(p, base, h, tol);
  if (s.upsilon_zero) {
    h -= delta;
    ++out.stats.restarts;
    s = slice_at(p, base, h, tol);
    if (s.upsilon_zero) throw NumericalFailure("augmented bound fell into R(G_hat) twice");
  }
  out.h_start = h;

  const std::vector<Ray> rays = enumerate_rays(s.projs.t, tol);
  out.stats.rays_enumerated = rays.size();
  out.stats.start_extreme_points = rays.size();
  if (rays.empty()) throw NumericalFailure("augmented problem is infeasible at the start value");

  std::optional<Vector> best;
  for (const Ray& r : rays) {
    CalibratedGenerator g = calibrate(r, s.dec, s.projs, tol);
    if (!g.w) throw NumericalFailure("negative calibration factor at the start value");
    if (!best || (*g.w)(last) > (*best)(last)) best = std::move(g.w);
  }
  const double h_m = std::max(0.0, (*best)(last));

  out.status = LpOutcome::Status::Optimal;
  out.h_o = h + h_m;
  out.y_o = *best;
  out.y_o(last) = 0.0;
  out.x_o = recover_solution(p, s.view.g, s.view.v - *best, out.h_o, tol);
  if (options.all_solutions) out.optimal_extremes = face_points(p, base, out.h_o, tol);
  return out;
}

LpOutcome solve_evolutive(const LpProblem& p, const ToleranceConfig& tol,
                          const LpOptions& options) {
  double h = 0.0;
  double delta = 0.0;
  if (auto early = screen(p, tol, h, delta)) return *early;
  if (options.start_h) h = *options.start_h;

  const ProjectorSet base = augmented_base(p, tol);
  const std::size_t test_column = p.rows();
  const auto last = static_cast<Eigen::Index>(test_column);
  LpOutcome out;
  out.stats.near_threshold_rank = base.near_threshold_rank;
  out.h_start = h;

  RayCursor cursor;
  std::optional<Vector> last_generator;
  double h_before_last = h;

  for (;;) {
    const SliceState s = slice_at(p, base, h, tol);
    if (s.upsilon_zero) {
      if (out.stats.restarts > 0) throw NumericalFailure("augmented bound fell into R(G_hat) twice");
      ++out.stats.restarts;
      h = out.h_start - delta;
      out.h_start = h;
      cursor = RayCursor();
      last_generator.reset();
      out.trace.clear();
      out.stats.steps = 0;
      out.stats.rays_enumerated = 0;
      out.stats.rank_checks.clear();
      continue;
    }
    RaySearch search = next_ray(s.projs.t, cursor, test_column, tol);
    out.stats.candidates_examined += search.candidates_examined;
    if (out.stats.candidates_examined > kCandidateCap) {
      throw IterationCap("solve_evolutive: more than 1e6 candidate supports examined");
    }
    cursor = search.cursor;
    if (!search.ray) break;
    ++out.stats.rays_enumerated;

    CalibratedGenerator g = calibrate(*search.ray, s.dec, s.projs, tol);
    if (!g.w) throw NumericalFailure("negative calibration factor during the evolutive search");
    const double rise = (*g.w)(last);
    if (rise <= tol.zero_threshold(max_abs(*g.w))) continue;

    out.stats.rank_checks.push_back(rank_drop_check(s.projs.t, tol));
    h_before_last = h;
    h += rise;
    last_generator = std::move(g.w);
    out.trace.push_back({h, rise, search.candidates_examined});
    ++out.stats.steps;
  }

  out.status = LpOutcome::Status::Optimal;
  out.h_o = h;
  if (last_generator) {
    const SliceState s = slice_at(p, base, h_before_last, tol);
    out.y_o = *last_generator;
    out.y_o(last) = 0.0;
    out.x_o = recover_solution(p, s.view.g, s.view.v - *last_generator, out.h_o, tol);
  } else {
    // Started at the optimum: any extreme point of the current slice works.
    const SliceState s = slice_at(p, base, h, tol);
    if (s.upsilon_zero) {
      out.y_o = Vector::Zero(static_cast<Eigen::Index>(test_column) + 1);
      out.x_o = recover_solution(p, s.view.g, s.view.v, out.h_o, tol);
    } else {
      const ContactPolytope cp = contact_polytope(s.view, base.p_f, tol);
      const Vector& g = *std::max_element(
          cp.extreme_points.begin(), cp.extreme_points.end(),
          [last](const Vector& a, const Vector& b) { return a(last) < b(last); });
      out.y_o = g;
      out.y_o(last) = 0.0;
      out.x_o = recover_solution(p, s.view.g, s.view.v - g, out.h_o, tol);
    }
  }
  if (options.all_solutions) out.optimal_extremes = face_points(p, base, out.h_o, tol);
  return out;
}

std::vector<Vector> optimal_face(const LpProblem& p, double h_o, const ToleranceConfig& tol) {
  tol.validate();
  return face_points(p, augmented_base(p, tol), h_o, tol);
}

}  // namespace conical
