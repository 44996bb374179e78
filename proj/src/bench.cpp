#include "conical/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "conical/errors.hpp"
#include "conical/feasibility.hpp"
#include "conical/lp_solver.hpp"
#include "conical/oracle.hpp"
#include "conical/problem_io.hpp"

namespace conical::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string lp_status(const LpOutcome& o) {
  switch (o.status) {
    case LpOutcome::Status::Optimal:
      return "optimal";
    case LpOutcome::Status::Infeasible:
      return "infeasible";
    case LpOutcome::Status::Unsupported:
      return "unsupported";
  }
  return "error";
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * (1.0 + std::abs(b)); }

bool within_oracle_caps(const io::ProblemFile& p) { return p.g.cols() <= 8 && p.g.rows() <= 16; }

void run_lp(const io::ProblemFile& file, const ToleranceConfig& tol, BenchRow& row) {
  const LpProblem p(file.g, file.v, *file.f);
  auto t0 = Clock::now();
  const LpOutcome e = solve_enumerative(p, tol);
  row.ms_enum = elapsed_ms(t0);
  t0 = Clock::now();
  const LpOutcome v = solve_evolutive(p, tol);
  row.ms_evo = elapsed_ms(t0);
  row.status_enum = lp_status(e);
  row.status_evo = lp_status(v);
  row.rays_enum = e.stats.rays_enumerated;
  row.rays_evo = v.stats.rays_enumerated;
  row.steps = v.stats.steps;
  if (e.status == LpOutcome::Status::Optimal) row.h_enum = e.h_o;
  if (v.status == LpOutcome::Status::Optimal) row.h_evo = v.h_o;

  row.agree = row.status_enum == row.status_evo &&
              (!row.h_enum || (row.h_evo && close(*row.h_evo, *row.h_enum, 1e-8)));
  if (!within_oracle_caps(file)) return;
  t0 = Clock::now();
  const oracle::OracleVerdict o = oracle::oracle_solve(p);
  row.ms_oracle = elapsed_ms(t0);
  row.oracle_checked = true;
  row.oracle_feasible = o.feasible;
  row.h_oracle = o.optimum;
  if (e.status == LpOutcome::Status::Unsupported) return;
  if (!o.feasible) {
    row.agree = row.agree && e.status == LpOutcome::Status::Infeasible;
  } else if (o.optimum) {
    row.agree = row.agree && row.h_enum && row.h_evo && close(*row.h_enum, *o.optimum, 1e-6) &&
                close(*row.h_evo, *o.optimum, 1e-6);
  }
}

void run_feas(const io::ProblemFile& file, const ToleranceConfig& tol, BenchRow& row) {
  const FeasibilityProblem p(file.g, file.v);
  const auto t0 = Clock::now();
  const FeasibilityOutcome out = solve_feasibility(p, tol);
  row.ms_enum = elapsed_ms(t0);
  row.status_enum = out.feasible() ? "feasible" : "infeasible";
  row.rays_enum = out.rays_enumerated;
  row.agree = true;
  if (!within_oracle_caps(file)) return;
  const auto t1 = Clock::now();
  const oracle::OracleVerdict o = oracle::oracle_feasibility(file.g, file.v);
  row.ms_oracle = elapsed_ms(t1);
  row.oracle_checked = true;
  row.oracle_feasible = o.feasible;
  row.agree = o.feasible == out.feasible();
}

}  // namespace

std::size_t BenchReport::agreements() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.agree; }));
}

std::size_t BenchReport::oracle_checked() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.oracle_checked; }));
}

std::size_t BenchReport::evo_not_worse() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) {
    return r.has_objective && r.error.empty() && r.rays_evo <= r.rays_enum;
  }));
}

std::size_t BenchReport::evo_strictly_better() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) {
    return r.has_objective && r.error.empty() && r.rays_evo < r.rays_enum;
  }));
}

nlohmann::json BenchReport::to_json(bool include_timing) const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    nlohmann::json j;
    j["name"] = r.name;
    j["has_objective"] = r.has_objective;
    j["status_enum"] = r.status_enum;
    if (r.has_objective) j["status_evo"] = r.status_evo;
    if (r.h_enum) j["h_enum"] = *r.h_enum;
    if (r.h_evo) j["h_evo"] = *r.h_evo;
    if (r.h_oracle) j["h_oracle"] = *r.h_oracle;
    if (r.oracle_feasible) j["oracle_feasible"] = *r.oracle_feasible;
    j["oracle_checked"] = r.oracle_checked;
    j["agree"] = r.agree;
    j["rays_enumerated_enum"] = r.rays_enum;
    if (r.has_objective) {
      j["rays_enumerated_evo"] = r.rays_evo;
      j["steps"] = r.steps;
    }
    if (include_timing) {
      j["wall_ms"] = {{"enum", r.ms_enum}, {"evo", r.ms_evo}, {"oracle", r.ms_oracle}};
    }
    if (!r.error.empty()) j["error"] = r.error;
    rows_json.push_back(std::move(j));
  }
  nlohmann::json out;
  out["instances"] = rows.size();
  out["agreements"] = agreements();
  out["oracle_checked"] = oracle_checked();
  out["evolutive_not_worse"] = evo_not_worse();
  out["evolutive_strictly_better"] = evo_strictly_better();
  out["rows"] = std::move(rows_json);
  return out;
}

std::string BenchReport::table() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-11s %-11s %14s %14s %5s %6s %6s %5s\n", "instance", "enum",
                "evo", "h_o", "oracle", "agree", "r_enum", "r_evo", "steps");
  os << line;
  for (const BenchRow& r : rows) {
    auto num = [](const std::optional<double>& x) {
      char buf[32];
      if (x) {
        std::snprintf(buf, sizeof buf, "%.8g", *x);
      } else {
        std::snprintf(buf, sizeof buf, "-");
      }
      return std::string(buf);
    };
    std::snprintf(line, sizeof line, "%-32s %-11s %-11s %14s %14s %5s %6zu %6zu %5zu\n", r.name.c_str(),
                  r.error.empty() ? r.status_enum.c_str() : "error",
                  r.has_objective ? r.status_evo.c_str() : "-", num(r.h_enum).c_str(),
                  num(r.h_oracle).c_str(), r.agree ? "yes" : "NO", r.rays_enum, r.rays_evo, r.steps);
    os << line;
  }
  std::snprintf(line, sizeof line, "%zu instances, %zu agree, %zu oracle-checked, evolutive <= enumerative rays on %zu (strictly fewer on %zu)\n",
                rows.size(), agreements(), oracle_checked(), evo_not_worse(), evo_strictly_better());
  os << line;
  return os.str();
}

BenchReport run_bench(const std::filesystem::path& dir, std::optional<double> zero_tol_override) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InvalidInput(dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  BenchReport report;
  for (const fs::path& path : files) {
    BenchRow row;
    row.name = path.filename().string();
    try {
      const io::ProblemFile file = io::read_problem(path);
      if (!file.name.empty()) row.name = file.name;
      ToleranceConfig tol = file.tolerances ? file.tolerances->apply({}) : ToleranceConfig{};
      if (zero_tol_override) tol.zero_tol = *zero_tol_override;
      row.has_objective = file.f.has_value();
      if (row.has_objective) {
        run_lp(file, tol, row);
      } else {
        run_feas(file, tol, row);
      }
    } catch (const std::exception& e) {
      row.error = e.what();
      row.agree = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace conical::bench
