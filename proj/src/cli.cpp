#include "conical/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "conical/bench.hpp"
#include "conical/errors.hpp"
#include "conical/feasibility.hpp"
#include "conical/generator.hpp"
#include "conical/lp_solver.hpp"
#include "conical/oracle.hpp"
#include "conical/problem_io.hpp"

namespace conical::cli {

namespace {

using io::ResultFile;
using Clock = std::chrono::steady_clock;

struct GlobalFlags {
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string output;
};

struct Emitted {
  ResultFile result;
  int code = kOk;
};

ToleranceConfig tolerances_for(const io::ProblemFile& file, const GlobalFlags& flags) {
  ToleranceConfig tol = file.tolerances ? file.tolerances->apply({}) : ToleranceConfig{};
  if (flags.tol) tol.zero_tol = *flags.tol;
  tol.validate();
  return tol;
}

std::string trivial_detail(TrivialKind kind) {
  switch (kind) {
    case TrivialKind::VInP:
      return "v is nonnegative; x = 0 is feasible";
    case TrivialKind::UpsilonInP:
      return "component of v orthogonal to R(G) is nonnegative";
    case TrivialKind::UpsilonZero:
      return "v lies in R(G)";
  }
  return "";
}

std::string infeasible_detail(InfeasibleCase c) {
  switch (c) {
    case InfeasibleCase::StrictlyTangentFe:
      return "span(upsilon) + R(G) meets the orthant only at the origin";
    case InfeasibleCase::NegativeBeta:
      return "a generator has a negative calibration factor";
  }
  return "";
}

Emitted run_feas(const io::ProblemFile& file, const GlobalFlags& flags, bool all) {
  const ToleranceConfig tol = tolerances_for(file, flags);
  const FeasibilityProblem p(file.g, file.v);
  const FeasibilityOutcome out = solve_feasibility(p, tol, all);

  Emitted e;
  e.result.stats.rays_enumerated = out.rays_enumerated;
  std::vector<Vector> gens;
  for (const CalibratedGenerator& g : out.generators) gens.push_back(g.ray.y);

  if (!out.feasible()) {
    e.code = kInfeasible;
    e.result.status = "infeasible";
    e.result.detail = infeasible_detail(*out.infeasible_case);
    if (out.witness) e.result.generators = io::to_rows({out.witness->y});
    return e;
  }
  e.result.status = "feasible";
  e.result.x = io::to_std(out.x);
  e.result.y = io::to_std(p.v - p.g * out.x);
  if (out.trivial) e.result.detail = trivial_detail(*out.trivial);
  if (!gens.empty()) e.result.generators = io::to_rows(gens);
  if (all) {
    const BoundDecomposition dec = decompose_bound(p, tol);
    if (max_abs(dec.upsilon) <= tol.zero_threshold(max_abs(p.v))) {
      // The slack polytope collapses to the origin.
      e.result.relative_interior = std::vector<double>(p.rows(), 0.0);
    } else {
      e.result.relative_interior = io::to_std(relative_interior_point(contact_polytope(p, tol)));
    }
  }
  return e;
}

Emitted run_solve(const io::ProblemFile& file, const GlobalFlags& flags, const std::string& mode,
                  bool all_solutions, bool trace) {
  if (!file.f) throw InvalidInput("f: missing; solve requires an objective");
  const ToleranceConfig tol = tolerances_for(file, flags);
  const LpProblem p(file.g, file.v, *file.f);
  const LpOutcome out = mode == "evo" ? solve_evolutive(p, tol) : solve_enumerative(p, tol);

  Emitted e;
  e.result.stats.rays_enumerated = out.stats.rays_enumerated;
  e.result.stats.steps = out.stats.steps;
  switch (out.status) {
    case LpOutcome::Status::Unsupported:
      e.code = kUnsupported;
      e.result.status = "unsupported";
      e.result.detail = out.reason;
      if (out.witness) e.result.generators = io::to_rows({*out.witness});
      return e;
    case LpOutcome::Status::Infeasible:
      e.code = kInfeasible;
      e.result.status = "infeasible";
      return e;
    case LpOutcome::Status::Optimal:
      break;
  }
  e.result.status = "optimal";
  e.result.h_o = out.h_o;
  e.result.x = io::to_std(out.x_o);
  e.result.y = io::to_std(out.y_o);
  if (trace) {
    std::vector<io::TraceEntry> t;
    for (const TraceStep& s : out.trace) t.push_back({s.h, s.last_component});
    e.result.trace = t;
  }
  if (all_solutions) e.result.solutions = io::to_rows(optimal_face(p, out.h_o, tol));
  return e;
}

Emitted run_oracle(const io::ProblemFile& file, const GlobalFlags& flags) {
  const double tol = flags.tol.value_or(file.tolerances && file.tolerances->zero_tol
                                            ? *file.tolerances->zero_tol
                                            : ToleranceConfig{}.zero_tol);
  Emitted e;
  oracle::OracleVerdict verdict;
  if (file.f) {
    verdict = oracle::oracle_solve(LpProblem(file.g, file.v, *file.f), tol);
  } else {
    verdict = oracle::oracle_feasibility(file.g, file.v, tol);
  }
  e.result.vertices = io::to_rows(verdict.vertices);
  if (!verdict.feasible) {
    e.code = kInfeasible;
    e.result.status = "infeasible";
    return e;
  }
  if (!file.f) {
    e.result.status = "feasible";
    e.result.x = io::to_std(verdict.vertices.front());
    return e;
  }
  if (!verdict.optimum) {
    e.code = kUnsupported;
    e.result.status = "unsupported";
    e.result.detail = "objective has a component along N(G); unbounded";
    return e;
  }
  e.result.status = "optimal";
  e.result.h_o = *verdict.optimum;
  e.result.x = io::to_std(verdict.argmax_vertices.front());
  e.result.solutions = io::to_rows(verdict.argmax_vertices);
  return e;
}

void write_text(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output);
  if (!file) throw InvalidInput("--output: cannot open " + output);
  file << text;
}

void emit_result(Emitted& e, Clock::time_point start, const GlobalFlags& flags, std::ostream& out) {
  e.result.stats.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  write_text(io::dump(io::to_json(e.result)), flags.output, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conical solver for linear feasibility problems and linear programs"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--tol", flags.tol, "zero tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--seed", flags.seed, "seed for gen");
  app.add_option("--output", flags.output, "write the result here instead of stdout");

  std::string input;
  bool feas_all = false;
  auto* feas = app.add_subcommand("feas", "decide G x <= v");
  feas->add_option("input", input, "problem file")->required();
  feas->add_flag("--all", feas_all, "all calibrated generators and a relative-interior slack");

  std::string mode = "enum";
  bool all_solutions = false;
  bool trace = false;
  auto* solve = app.add_subcommand("solve", "maximize f.x subject to G x <= v");
  solve->add_option("input", input, "problem file")->required();
  solve->add_option("--mode", mode, "enum or evo")->check(CLI::IsMember({"enum", "evo"}));
  solve->add_flag("--all-solutions", all_solutions, "extreme points of the optimal face");
  solve->add_flag("--trace", trace, "embed the evolutive h sequence");

  std::size_t n = 0;
  std::size_t m = 0;
  std::string kind = "feasible";
  auto* gen = app.add_subcommand("gen", "seeded strictly tangent instance");
  gen->add_option("--n", n, "rows of G")->required();
  gen->add_option("--m", m, "columns of G")->required();
  gen->add_option("--kind", kind, "feasible, unrestricted or lp")
      ->check(CLI::IsMember({"feasible", "unrestricted", "lp"}));

  auto* orc = app.add_subcommand("oracle", "vertex-enumeration reference answer");
  orc->add_option("input", input, "problem file")->required();

  std::string suite;
  auto* bench = app.add_subcommand("bench", "run a directory of problems through every solver");
  bench->add_option("suite", suite, "directory of problem files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "conical: " << e.what() << "\n";
    return kMalformed;
  }

  const auto start = Clock::now();
  Emitted e;
  try {
    if (*gen) {
      const io::ProblemFile p = gen::generate_instance(flags.seed, n, m, gen::parse_kind(kind));
      write_text(io::dump(io::to_json(p)), flags.output, out);
      return kOk;
    }
    if (*bench) {
      const bench::BenchReport report = bench::run_bench(suite, flags.tol);
      write_text(io::dump(report.to_json()), flags.output, out);
      err << report.table();
      return kOk;
    }
    const io::ProblemFile file = io::read_problem(input);
    if (*feas) {
      e = run_feas(file, flags, feas_all);
    } else if (*solve) {
      e = run_solve(file, flags, mode, all_solutions, trace);
    } else {
      e = run_oracle(file, flags);
    }
  } catch (const InvalidInput& ex) {
    err << "conical: " << ex.what() << "\n";
    return kMalformed;
  } catch (const NotStrictlyTangent& ex) {
    e = {};
    e.code = kUnsupported;
    e.result.status = "unsupported";
    e.result.detail = ex.what();
    e.result.generators = io::to_rows({ex.witness()});
  } catch (const DimensionTooLarge& ex) {
    e = {};
    e.code = kUnsupported;
    e.result.status = "unsupported";
    e.result.detail = ex.what();
  } catch (const InfeasibleProblem& ex) {
    e = {};
    e.code = kInfeasible;
    e.result.status = "infeasible";
    e.result.detail = ex.what();
  } catch (const Error& ex) {
    e = {};
    e.code = kNumerical;
    e.result.status = "error";
    e.result.detail = ex.what();
  }
  if (e.code != kOk && e.result.detail) err << "conical: " << *e.result.detail << "\n";
  try {
    emit_result(e, start, flags, out);
  } catch (const InvalidInput& ex) {
    err << "conical: " << ex.what() << "\n";
    return kMalformed;
  }
  return e.code;
}

}  // namespace conical::cli
