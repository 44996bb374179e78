#include "conical/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conical/errors.hpp"

namespace conical {

FeasibilityProblem::FeasibilityProblem(Matrix g_in, Vector v_in)
    : g(std::move(g_in)), v(std::move(v_in)) {
  if (g.rows() < 1 || g.cols() < 1) throw InvalidInput("G: must have at least one row and column");
  if (v.size() != g.rows()) throw InvalidInput("v: length must equal the number of rows of G");
  require_finite(g, "G");
  require_finite(v, "v");
}

BoundDecomposition decompose_bound(const FeasibilityProblem& p, const ToleranceConfig& tol) {
  return decompose_bound(p, projector_onto_range(p.g, tol), tol);
}

BoundDecomposition decompose_bound(const FeasibilityProblem& p, const Matrix& p_f,
                                   const ToleranceConfig& tol) {
  BoundDecomposition dec;
  dec.v_f = p_f * p.v;
  dec.upsilon = p.v - dec.v_f;
  dec.z = solve_consistent(p.g, dec.v_f, tol);
  return dec;
}

TangencyStatus check_strict_tangency(const Matrix& g, const ToleranceConfig& tol) {
  const auto n = g.rows();
  const Matrix complement = Matrix::Identity(n, n) - projector_onto_range(g, tol);
  std::vector<Ray> rays = enumerate_rays(complement, tol);
  TangencyStatus out;
  if (!rays.empty()) {
    out.strictly_tangent = false;
    out.witness = std::move(rays.front());
  }
  return out;
}

CalibratedGenerator calibrate(const Ray& y, const BoundDecomposition& dec,
                              const ProjectorSet& projs, const ToleranceConfig& tol) {
  const Vector& ups = dec.upsilon;
  const double ups_scale = max_abs(ups);
  if (!(ups_scale > 0.0)) throw InvalidInput("calibrate: upsilon must be nonzero");
  const Vector perp = projs.p_f_perp * y.y;
  if (max_abs(perp) <= tol.zero_threshold(max_abs(y.y))) {
    throw ZeroBeta("calibrate: ray lies in R(G); beta is zero");
  }

  CalibratedGenerator out;
  out.ray = y;
  out.beta = ups.dot(perp) / ups.squaredNorm();

  // Each defined ratio perp_i / ups_i must equal beta. Deviations are
  // weighted by |ups_i| / |ups|_inf so coordinates with tiny ups_i do not
  // amplify rounding noise.
  const double defined = tol.zero_threshold(ups_scale);
  const double limit = tol.ratio_tol * std::abs(out.beta) * ups_scale;
  for (Eigen::Index i = 0; i < ups.size(); ++i) {
    if (std::abs(ups(i)) <= defined) continue;
    if (std::abs(perp(i) - out.beta * ups(i)) > limit) {
      throw InconsistentRatios("calibrate: ratio at coordinate " + std::to_string(i) +
                               " disagrees with beta = " + std::to_string(out.beta));
    }
  }
  if (out.beta > 0.0) {
    Vector w = y.y / out.beta;
    const double drift = max_abs(Vector(projs.p_f_perp * w - ups));
    if (drift > tol.ratio_tol * (1.0 + ups.norm())) {
      throw NumericalFailure("calibrate: calibrated point left the affine slice upsilon + R(G)");
    }
    out.w = std::move(w);
  }
  return out;
}

namespace {

std::vector<CalibratedGenerator> calibrate_all(const std::vector<Ray>& rays,
                                               const BoundDecomposition& dec,
                                               const ProjectorSet& projs,
                                               const ToleranceConfig& tol) {
  std::vector<CalibratedGenerator> out;
  out.reserve(rays.size());
  for (const Ray& r : rays) out.push_back(calibrate(r, dec, projs, tol));
  return out;
}

void require_witness(const FeasibilityProblem& p, const Vector& x, const ToleranceConfig& tol) {
  const Vector slack = p.v - p.g * x;
  const double scale = std::max(max_abs(p.v), max_abs(p.g) * max_abs(x));
  if (slack.minCoeff() < -tol.zero_threshold(scale)) {
    throw NumericalFailure("solve_feasibility: witness violates G x <= v");
  }
}

}  // namespace

FeasibilityOutcome solve_feasibility(const FeasibilityProblem& p, const ToleranceConfig& tol,
                                     bool want_all) {
  tol.validate();
  const TangencyStatus tangency = check_strict_tangency(p.g, tol);
  if (!tangency.strictly_tangent) {
    throw NotStrictlyTangent("R(G) meets the nonnegative orthant outside the origin",
                             tangency.witness->y);
  }

  const ProjectorSet base = make_projector_set(p.g, Vector::Zero(p.g.rows()), tol);
  const BoundDecomposition dec = decompose_bound(p, base.p_f, tol);
  const double thr = tol.zero_threshold(max_abs(p.v));

  FeasibilityOutcome out;
  out.near_threshold_rank = base.near_threshold_rank;
  const bool ups_zero = max_abs(dec.upsilon) <= thr;

  if (p.v.minCoeff() >= -thr) {
    out.trivial = TrivialKind::VInP;
    out.x = Vector::Zero(p.g.cols());
  } else if (ups_zero) {
    out.trivial = TrivialKind::UpsilonZero;
    out.x = dec.z;
  } else if (dec.upsilon.minCoeff() >= -thr) {
    out.trivial = TrivialKind::UpsilonInP;
    out.x = dec.z;
  }

  if (out.trivial) {
    out.status = FeasibilityOutcome::Status::TrivialFeasible;
    if (want_all && !ups_zero) {
      const ProjectorSet projs = with_upsilon(base, dec.upsilon, tol, max_abs(p.v));
      const std::vector<Ray> rays = enumerate_rays(projs.t, tol);
      out.rays_enumerated = rays.size();
      out.generators = calibrate_all(rays, dec, projs, tol);
    }
    return out;
  }

  const ProjectorSet projs = with_upsilon(base, dec.upsilon, tol, max_abs(p.v));
  const std::vector<Ray> rays = enumerate_rays(projs.t, tol);
  out.rays_enumerated = rays.size();
  if (rays.empty()) {
    out.status = FeasibilityOutcome::Status::Infeasible;
    out.infeasible_case = InfeasibleCase::StrictlyTangentFe;
    return out;
  }

  CalibratedGenerator first = calibrate(rays.front(), dec, projs, tol);
  if (first.beta < 0.0) {
    out.status = FeasibilityOutcome::Status::Infeasible;
    out.infeasible_case = InfeasibleCase::NegativeBeta;
    out.witness = first.ray;
    out.generators.push_back(std::move(first));
    return out;
  }

  out.status = FeasibilityOutcome::Status::Feasible;
  out.x = solve_consistent(p.g, p.v - *first.w, tol);
  require_witness(p, out.x, tol);
  if (want_all) {
    out.generators = calibrate_all(rays, dec, projs, tol);
  } else {
    out.generators.push_back(std::move(first));
  }
  return out;
}

std::vector<double> ray_betas(const FeasibilityProblem& p, const ToleranceConfig& tol) {
  const ProjectorSet base = make_projector_set(p.g, Vector::Zero(p.g.rows()), tol);
  const BoundDecomposition dec = decompose_bound(p, base.p_f, tol);
  if (max_abs(dec.upsilon) <= tol.zero_threshold(max_abs(p.v))) return {};
  const ProjectorSet projs = with_upsilon(base, dec.upsilon, tol, max_abs(p.v));
  std::vector<double> betas;
  for (const Ray& r : enumerate_rays(projs.t, tol)) {
    betas.push_back(calibrate(r, dec, projs, tol).beta);
  }
  return betas;
}

ContactPolytope contact_polytope(const FeasibilityProblem& p, const ToleranceConfig& tol) {
  tol.validate();
  const TangencyStatus tangency = check_strict_tangency(p.g, tol);
  if (!tangency.strictly_tangent) {
    throw NotStrictlyTangent("R(G) meets the nonnegative orthant outside the origin",
                             tangency.witness->y);
  }
  return contact_polytope(p, projector_onto_range(p.g, tol), tol);
}

ContactPolytope contact_polytope(const FeasibilityProblem& p, const Matrix& p_f,
                                 const ToleranceConfig& tol, std::size_t* rays_enumerated) {
  const BoundDecomposition dec = decompose_bound(p, p_f, tol);
  const double scale = max_abs(p.v);
  if (max_abs(dec.upsilon) <= tol.zero_threshold(scale)) {
    throw InvalidInput("contact_polytope: v lies in R(G) (upsilon = 0)");
  }
  ProjectorSet base;
  base.p_f = p_f;
  const ProjectorSet projs = with_upsilon(base, dec.upsilon, tol, scale);
  const std::vector<Ray> rays = enumerate_rays(projs.t, tol);
  if (rays_enumerated) *rays_enumerated = rays.size();
  if (rays.empty()) throw InfeasibleProblem("contact_polytope: the contact polytope is empty");

  ContactPolytope cp;
  cp.dim_ambient = p.rows();
  for (const Ray& r : rays) {
    CalibratedGenerator g = calibrate(r, dec, projs, tol);
    if (!g.w) throw InfeasibleProblem("contact_polytope: negative calibration factor");
    cp.extreme_points.push_back(std::move(*g.w));
  }

  const double thr = tol.zero_threshold(1.0);
  for (std::size_t i = 0; i < cp.extreme_points.size(); ++i) {
    const Vector a = cp.extreme_points[i] / cp.extreme_points[i].maxCoeff();
    for (std::size_t j = i + 1; j < cp.extreme_points.size(); ++j) {
      const Vector b = cp.extreme_points[j] / cp.extreme_points[j].maxCoeff();
      if (max_abs(Vector(a - b)) <= thr) {
        throw NumericalFailure("contact_polytope: two extreme points lie on one ray");
      }
    }
  }
  return cp;
}

Vector relative_interior_point(const ContactPolytope& cp) {
  if (cp.extreme_points.empty()) throw InvalidInput("relative_interior_point: empty polytope");
  Vector sum = Vector::Zero(cp.extreme_points.front().size());
  for (const Vector& w : cp.extreme_points) sum += w;
  return sum / static_cast<double>(cp.extreme_points.size());
}

}  // namespace conical
