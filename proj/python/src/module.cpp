#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conical/cone_gen.hpp"
#include "conical/errors.hpp"
#include "conical/feasibility.hpp"
#include "conical/generator.hpp"
#include "conical/lp_solver.hpp"
#include "conical/oracle.hpp"

namespace py = pybind11;
using namespace conical;

namespace {

const char* status_name(FeasibilityOutcome::Status s) {
  switch (s) {
    case FeasibilityOutcome::Status::TrivialFeasible: return "trivial_feasible";
    case FeasibilityOutcome::Status::Feasible: return "feasible";
    case FeasibilityOutcome::Status::Infeasible: return "infeasible";
  }
  return "";
}

const char* status_name(LpOutcome::Status s) {
  switch (s) {
    case LpOutcome::Status::Optimal: return "optimal";
    case LpOutcome::Status::Infeasible: return "infeasible";
    case LpOutcome::Status::Unsupported: return "unsupported";
  }
  return "";
}

std::optional<std::string> trivial_name(const std::optional<TrivialKind>& k) {
  if (!k) return std::nullopt;
  switch (*k) {
    case TrivialKind::VInP: return "v_in_p";
    case TrivialKind::UpsilonInP: return "upsilon_in_p";
    case TrivialKind::UpsilonZero: return "upsilon_zero";
  }
  return std::nullopt;
}

std::optional<std::string> case_name(const std::optional<InfeasibleCase>& c) {
  if (!c) return std::nullopt;
  return *c == InfeasibleCase::StrictlyTangentFe ? "strictly_tangent" : "negative_beta";
}

ToleranceConfig tolerances(const std::optional<ToleranceConfig>& tol) {
  const ToleranceConfig t = tol.value_or(ToleranceConfig{});
  t.validate();
  return t;
}

LpOutcome solve_lp(const Matrix& g, const Vector& v, const Vector& f, const std::string& mode,
                   bool all_solutions, std::optional<double> start_h,
                   const std::optional<ToleranceConfig>& tol) {
  const LpProblem p(g, v, f);
  const LpOptions options{all_solutions, start_h};
  if (mode == "enum") return solve_enumerative(p, tolerances(tol), options);
  if (mode == "evo") return solve_evolutive(p, tolerances(tol), options);
  throw InvalidInput("mode: expected 'enum' or 'evo', got '" + mode + "'");
}

}  // namespace

PYBIND11_MODULE(_conical, m) {
  m.doc() = "Linear feasibility and linear programming via extreme rays of polyhedral cones.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
  py::register_exception<DimensionTooLarge>(m, "DimensionTooLarge", error.ptr());
  py::register_exception<InfeasibleProblem>(m, "InfeasibleProblem", error.ptr());
  auto numerical = py::register_exception<NumericalFailure>(m, "NumericalFailure", error.ptr());
  py::register_exception<InconsistentSystem>(m, "InconsistentSystem", numerical.ptr());
  py::register_exception<NotPointed>(m, "NotPointed", numerical.ptr());
  py::register_exception<ZeroBeta>(m, "ZeroBeta", numerical.ptr());
  py::register_exception<InconsistentRatios>(m, "InconsistentRatios", numerical.ptr());
  py::register_exception<IterationCap>(m, "IterationCap", numerical.ptr());

  // Carries the orthant witness as the `witness` attribute.
  static py::exception<NotStrictlyTangent> not_tangent(m, "NotStrictlyTangent", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NotStrictlyTangent& e) {
      py::object exc = py::handle(not_tangent.ptr())(e.what());
      exc.attr("witness") = py::cast(Vector(e.witness()));
      PyErr_SetObject(not_tangent.ptr(), exc.ptr());
    }
  });

  py::class_<ToleranceConfig>(m, "ToleranceConfig")
      .def(py::init([](double zero_tol, double rank_tol, double ratio_tol) {
             const ToleranceConfig t{zero_tol, rank_tol, ratio_tol};
             t.validate();
             return t;
           }),
           py::arg("zero_tol") = 1e-9, py::arg("rank_tol") = 1e-10, py::arg("ratio_tol") = 1e-7)
      .def_readwrite("zero_tol", &ToleranceConfig::zero_tol)
      .def_readwrite("rank_tol", &ToleranceConfig::rank_tol)
      .def_readwrite("ratio_tol", &ToleranceConfig::ratio_tol);

  py::class_<Ray>(m, "Ray")
      .def_readonly("y", &Ray::y)
      .def_readonly("support", &Ray::support);

  py::class_<CalibratedGenerator>(m, "CalibratedGenerator")
      .def_readonly("ray", &CalibratedGenerator::ray)
      .def_readonly("beta", &CalibratedGenerator::beta)
      .def_readonly("w", &CalibratedGenerator::w);

  py::class_<FeasibilityOutcome>(m, "FeasibilityOutcome")
      .def_property_readonly("status", [](const FeasibilityOutcome& o) { return status_name(o.status); })
      .def_property_readonly("feasible", &FeasibilityOutcome::feasible)
      .def_property_readonly("x", [](const FeasibilityOutcome& o) -> std::optional<Vector> {
        if (!o.feasible()) return std::nullopt;
        return o.x;
      })
      .def_property_readonly("trivial", [](const FeasibilityOutcome& o) { return trivial_name(o.trivial); })
      .def_property_readonly("infeasible_case",
                             [](const FeasibilityOutcome& o) { return case_name(o.infeasible_case); })
      .def_readonly("witness", &FeasibilityOutcome::witness)
      .def_readonly("generators", &FeasibilityOutcome::generators)
      .def_readonly("rays_enumerated", &FeasibilityOutcome::rays_enumerated)
      .def_readonly("near_threshold_rank", &FeasibilityOutcome::near_threshold_rank);

  py::class_<TraceStep>(m, "TraceStep")
      .def_readonly("h", &TraceStep::h)
      .def_readonly("last_component", &TraceStep::last_component)
      .def_readonly("rays_examined", &TraceStep::rays_examined);

  py::class_<LpStats>(m, "LpStats")
      .def_readonly("rays_enumerated", &LpStats::rays_enumerated)
      .def_readonly("steps", &LpStats::steps)
      .def_readonly("candidates_examined", &LpStats::candidates_examined)
      .def_readonly("restarts", &LpStats::restarts)
      .def_readonly("start_extreme_points", &LpStats::start_extreme_points)
      .def_readonly("rank_checks", &LpStats::rank_checks)
      .def_readonly("near_threshold_rank", &LpStats::near_threshold_rank);

  py::class_<LpOutcome>(m, "LpOutcome")
      .def_property_readonly("status", [](const LpOutcome& o) { return status_name(o.status); })
      .def_readonly("h_o", &LpOutcome::h_o)
      .def_readonly("h_start", &LpOutcome::h_start)
      .def_readonly("x_o", &LpOutcome::x_o)
      .def_readonly("y_o", &LpOutcome::y_o)
      .def_readonly("optimal_extremes", &LpOutcome::optimal_extremes)
      .def_readonly("reason", &LpOutcome::reason)
      .def_readonly("witness", &LpOutcome::witness)
      .def_readonly("trace", &LpOutcome::trace)
      .def_readonly("stats", &LpOutcome::stats);

  py::class_<oracle::OracleVerdict>(m, "OracleVerdict")
      .def_readonly("feasible", &oracle::OracleVerdict::feasible)
      .def_readonly("optimum", &oracle::OracleVerdict::optimum)
      .def_readonly("argmax_vertices", &oracle::OracleVerdict::argmax_vertices)
      .def_readonly("vertices", &oracle::OracleVerdict::vertices);

  m.def(
      "solve_feasibility",
      [](const Matrix& g, const Vector& v, bool all, const std::optional<ToleranceConfig>& tol) {
        return solve_feasibility(FeasibilityProblem(g, v), tolerances(tol), all);
      },
      py::arg("G"), py::arg("v"), py::arg("all") = false, py::arg("tol") = py::none(),
      "Decide whether G x <= v has a solution.");

  m.def(
      "contact_polytope",
      [](const Matrix& g, const Vector& v, const std::optional<ToleranceConfig>& tol) {
        return contact_polytope(FeasibilityProblem(g, v), tolerances(tol)).extreme_points;
      },
      py::arg("G"), py::arg("v"), py::arg("tol") = py::none(),
      "Extreme points of the polytope of feasible slacks v - G x.");

  m.def(
      "check_strict_tangency",
      [](const Matrix& g, const std::optional<ToleranceConfig>& tol) {
        const TangencyStatus s = check_strict_tangency(g, tolerances(tol));
        return py::make_tuple(s.strictly_tangent, s.witness);
      },
      py::arg("G"), py::arg("tol") = py::none(),
      "(strictly_tangent, witness ray or None) for the range of G and the orthant.");

  m.def(
      "enumerate_rays",
      [](const Matrix& t, const std::optional<ToleranceConfig>& tol) {
        return enumerate_rays(t, tolerances(tol));
      },
      py::arg("T"), py::arg("tol") = py::none(),
      "Extreme rays of N(T) intersected with the orthant; T must be an orthogonal projector.");

  m.def("solve_lp", &solve_lp, py::arg("G"), py::arg("v"), py::arg("f"), py::arg("mode") = "enum",
        py::arg("all_solutions") = false, py::arg("start_h") = py::none(), py::arg("tol") = py::none(),
        "Maximize f.x subject to G x <= v with the enumerative ('enum') or evolutive ('evo') solver.");

  m.def(
      "optimal_face",
      [](const Matrix& g, const Vector& v, const Vector& f, double h_o,
         const std::optional<ToleranceConfig>& tol) {
        return optimal_face(LpProblem(g, v, f), h_o, tolerances(tol));
      },
      py::arg("G"), py::arg("v"), py::arg("f"), py::arg("h_o"), py::arg("tol") = py::none(),
      "Extreme optimal solutions at the optimal value h_o.");

  m.def(
      "generate_instance",
      [](std::uint64_t seed, std::size_t n, std::size_t m_cols, const std::string& kind) {
        const io::ProblemFile p = gen::generate_instance(seed, n, m_cols, gen::parse_kind(kind));
        py::dict d;
        d["name"] = p.name;
        d["G"] = p.g;
        d["v"] = p.v;
        d["f"] = p.f ? py::cast(*p.f) : py::none();
        return d;
      },
      py::arg("seed"), py::arg("n"), py::arg("m"), py::arg("kind") = "feasible",
      "Seeded random instance as a dict with keys name, G, v, f.");

  m.def(
      "oracle_feasibility",
      [](const Matrix& g, const Vector& v) { return oracle::oracle_feasibility(g, v); },
      py::arg("G"), py::arg("v"));
  m.def(
      "oracle_solve",
      [](const Matrix& g, const Vector& v, const Vector& f) { return oracle::oracle_solve(LpProblem(g, v, f)); },
      py::arg("G"), py::arg("v"), py::arg("f"));
}
