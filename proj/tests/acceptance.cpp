// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "conical/cone_gen.hpp"
#include "conical/errors.hpp"
#include "conical/feasibility.hpp"
#include "conical/generator.hpp"
#include "conical/lp_solver.hpp"
#include "conical/oracle.hpp"
#include "support/fixtures.hpp"

using namespace conical;

namespace {

using Clock = std::chrono::steady_clock;

const ToleranceConfig kTol{};

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(std::move(why));
  }
};

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * (1.0 + std::abs(b)); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct LpRun {
  std::uint64_t seed = 0;
  LpProblem problem;
  LpOutcome enumerative;
  LpOutcome evolutive;
  bool ok = false;
};

std::vector<LpRun> g_lp_runs;

Verdict lp_agreement() {
  Verdict v;
  std::size_t agree = 0;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    LpRun run;
    run.seed = seed;
    try {
      const auto [n, m] = fixtures::suite_dims(seed);
      run.problem = fixtures::as_lp(gen::generate_instance(seed, n, m, gen::InstanceKind::Lp));
      run.enumerative = solve_enumerative(run.problem, kTol);
      run.evolutive = solve_evolutive(run.problem, kTol);
      const oracle::OracleVerdict o = oracle::oracle_solve(run.problem);
      run.ok = run.enumerative.status == LpOutcome::Status::Optimal &&
               run.evolutive.status == LpOutcome::Status::Optimal && o.optimum;
      if (run.ok && close(run.enumerative.h_o, *o.optimum, 1e-6) &&
          close(run.evolutive.h_o, *o.optimum, 1e-6)) {
        ++agree;
      } else {
        v.fail("seed " + std::to_string(seed) + ": optimum mismatch");
      }
    } catch (const std::exception& e) {
      v.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
    g_lp_runs.push_back(std::move(run));
  }
  const double secs = seconds_since(t0);
  if (secs >= 60.0) v.fail("runtime " + std::to_string(secs) + " s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu/500 instances agree, %.2f s", agree, secs);
  v.detail = buf;
  return v;
}

std::vector<FeasibilityProblem> g_feas_problems;

Verdict feasibility_agreement() {
  Verdict v;
  std::size_t agree = 0;
  std::size_t feasible = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const std::uint64_t seed = 100000 + i;
    try {
      const auto [n, m] = fixtures::suite_dims(seed);
      const auto kind = i % 2 ? gen::InstanceKind::Unrestricted : gen::InstanceKind::Feasible;
      const io::ProblemFile f = gen::generate_instance(seed, n, m, kind);
      const FeasibilityProblem p(f.g, f.v);
      g_feas_problems.push_back(p);
      const FeasibilityOutcome out = solve_feasibility(p, kTol);
      const bool truth = oracle::oracle_feasibility(p.g, p.v).feasible;
      bool ok = out.feasible() == truth;
      if (ok && out.feasible()) {
        ++feasible;
        ok = (p.v + Vector::Constant(p.v.size(), 1e-8) - p.g * out.x).minCoeff() >= 0.0;
      }
      if (ok) {
        ++agree;
      } else {
        v.fail("seed " + std::to_string(seed) + ": verdict or witness wrong");
      }
    } catch (const std::exception& e) {
      v.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  v.detail = std::to_string(agree) + "/500 verdicts match (" + std::to_string(feasible) +
             " feasible), witnesses within 1e-8";
  return v;
}

Verdict ray_enumeration() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  std::size_t match = 0;
  std::size_t rays = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const Matrix t = fixtures::random_cone_projector(rng, n);
    try {
      const std::vector<Ray> dd = enumerate_rays(t, kTol);
      rays += dd.size();
      if (same_ray_set(dd, brute_force_rays(t, kTol), 1e-7)) {
        ++match;
      } else {
        v.fail("cone " + std::to_string(trial) + ": ray sets differ");
      }
    } catch (const std::exception& e) {
      v.fail("cone " + std::to_string(trial) + ": " + e.what());
    }
  }
  v.detail = std::to_string(match) + "/200 cones match brute force (" + std::to_string(rays) + " rays)";
  return v;
}

Verdict max_formula() {
  Verdict v;
  std::size_t checked = 0;
  double worst = 0.0;
  for (const LpRun& run : g_lp_runs) {
    if (checked == 100) break;
    if (!run.ok) continue;
    ++checked;
    try {
      const FeasibilityProblem slice = augment(run.problem, run.enumerative.h_o).view();
      const BoundDecomposition dec = decompose_bound(slice, kTol);
      if (max_abs(dec.upsilon) <= kTol.zero_threshold(max_abs(slice.v))) continue;  // slice is {0}
      for (const Vector& w : contact_polytope(slice, kTol).extreme_points) {
        const double last = w(w.size() - 1);
        worst = std::max(worst, last);
        if (last > 1e-8) v.fail("seed " + std::to_string(run.seed) + ": last component " + std::to_string(last));
      }
    } catch (const std::exception& e) {
      v.fail("seed " + std::to_string(run.seed) + ": " + e.what());
    }
  }
  if (checked < 100) v.fail("only " + std::to_string(checked) + " solved instances available");
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu instances, largest last component %.3g", checked, worst);
  v.detail = buf;
  return v;
}

Verdict beta_sign() {
  Verdict v;
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::size_t rays = 0;
  auto check = [&](const FeasibilityProblem& p, const std::string& label) {
    try {
      const std::vector<double> betas = ray_betas(p, kTol);
      if (betas.empty()) return;
      ++instances;
      rays += betas.size();
      const bool pos = betas.front() > 0;
      for (double b : betas) {
        if ((b > 0) != pos) {
          ++violations;
          v.fail(label + ": mixed beta signs");
          break;
        }
      }
    } catch (const std::exception& e) {
      v.fail(label + ": " + e.what());
    }
  };
  for (std::size_t i = 0; i < g_feas_problems.size(); ++i) check(g_feas_problems[i], "feasibility #" + std::to_string(i));
  for (const LpRun& run : g_lp_runs) {
    if (!run.ok) continue;
    check(augment(run.problem, run.enumerative.h_start).view(), "lp seed " + std::to_string(run.seed));
  }
  v.detail = std::to_string(violations) + " sign violations over " + std::to_string(instances) +
             " instances (" + std::to_string(rays) + " rays)";
  return v;
}

Verdict rank_preservation() {
  Verdict v;
  std::size_t checks = 0;
  for (const LpRun& run : g_lp_runs) {
    if (!run.ok) continue;
    for (bool ok : run.evolutive.stats.rank_checks) {
      ++checks;
      if (!ok) v.fail("seed " + std::to_string(run.seed) + ": rank dropped");
    }
  }
  v.detail = std::to_string(checks) + " evolutive steps checked";
  return v;
}

Verdict evolutive_efficiency() {
  Verdict v;
  std::size_t eligible = 0;
  std::size_t strictly = 0;
  std::size_t evo_total = 0;
  std::size_t enum_total = 0;
  for (const LpRun& run : g_lp_runs) {
    if (!run.ok) continue;
    const std::size_t evo = run.evolutive.stats.rays_enumerated;
    const std::size_t en = run.enumerative.stats.rays_enumerated;
    evo_total += evo;
    enum_total += en;
    if (evo > en) v.fail("seed " + std::to_string(run.seed) + ": evolutive used more rays");
    if (run.enumerative.stats.start_extreme_points >= 3) {
      ++eligible;
      if (evo < en) ++strictly;
    }
  }
  const double share = eligible ? static_cast<double>(strictly) / static_cast<double>(eligible) : 0.0;
  if (share < 0.2) v.fail("strictly fewer rays on only " + std::to_string(share * 100) + "%");
  char buf[160];
  std::snprintf(buf, sizeof buf, "rays %zu vs %zu in total; strictly fewer on %zu/%zu (%.1f%%) instances with >= 3 extreme points",
                evo_total, enum_total, strictly, eligible, share * 100);
  v.detail = buf;
  return v;
}

Verdict finite_convergence() {
  Verdict v;
  std::size_t worst_steps = 0;
  std::size_t checked = 0;
  for (const LpRun& run : g_lp_runs) {
    if (!run.ok) continue;
    ++checked;
    const std::size_t steps = run.evolutive.stats.steps;
    worst_steps = std::max(worst_steps, steps);
    if (steps > run.enumerative.stats.start_extreme_points) {
      v.fail("seed " + std::to_string(run.seed) + ": " + std::to_string(steps) + " steps");
    }
  }
  v.detail = std::to_string(checked) + " instances, at most " + std::to_string(worst_steps) + " steps";
  return v;
}

Verdict optimal_face_check() {
  Verdict v;
  std::size_t built = 0;
  std::size_t members = 0;
  for (std::uint64_t seed = 1; seed <= 5000 && built < 50; ++seed) {
    auto [n, m] = fixtures::suite_dims(700000 + seed);
    m = std::max<std::size_t>(m, 2);
    try {
      const auto p = fixtures::tied_instance(700000 + seed, n, m);
      if (!p) continue;
      ++built;
      const oracle::OracleVerdict o = oracle::oracle_solve(*p);
      const LpOutcome e = solve_enumerative(*p, kTol);
      if (!o.optimum || o.argmax_vertices.size() < 2 || e.status != LpOutcome::Status::Optimal) {
        v.fail("seed " + std::to_string(seed) + ": optimum not tied or not found");
        continue;
      }
      const std::vector<Vector> face = optimal_face(*p, e.h_o, kTol);
      for (const Vector& x : o.argmax_vertices) {
        if (oracle::hull_member(x, face, 1e-6)) {
          ++members;
        } else {
          v.fail("seed " + std::to_string(seed) + ": argmax vertex outside the face");
        }
      }
    } catch (const std::exception& e) {
      v.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  if (built < 50) v.fail("only " + std::to_string(built) + " tied instances built");
  v.detail = std::to_string(built) + " tied instances, " + std::to_string(members) + " argmax vertices covered";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"LP oracle agreement", lp_agreement},
      {"feasibility oracle agreement", feasibility_agreement},
      {"ray enumeration vs brute force", ray_enumeration},
      {"tangency at the maximal face", max_formula},
      {"constant beta sign", beta_sign},
      {"rank preservation", rank_preservation},
      {"evolutive efficiency", evolutive_efficiency},
      {"finite convergence", finite_convergence},
      {"optimal face covers tied optima", optimal_face_check},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    const Verdict v = run();
    all = all && v.pass;
    std::printf("%s  %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    for (const std::string& f : v.failures) std::printf("      %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
