#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conical/linalg.hpp"

namespace conical::bench {

struct BenchRow {
  std::string name;
  bool has_objective = false;
  std::string status_enum;  // feasibility verdict for problems without f
  std::string status_evo;
  std::optional<double> h_enum;
  std::optional<double> h_evo;
  std::optional<double> h_oracle;
  std::optional<bool> oracle_feasible;
  bool oracle_checked = false;
  bool agree = false;
  std::size_t rays_enum = 0;
  std::size_t rays_evo = 0;
  std::size_t steps = 0;
  double ms_enum = 0.0;
  double ms_evo = 0.0;
  double ms_oracle = 0.0;
  std::string error;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::size_t agreements() const;
  std::size_t oracle_checked() const;
  /// Instances where the evolutive run materialized no more rays than the
  /// enumerative one.
  std::size_t evo_not_worse() const;
  std::size_t evo_strictly_better() const;

  nlohmann::json to_json(bool include_timing = true) const;
  std::string table() const;
};

/// Runs every *.json problem of `dir` in file-name order. Optimization
/// problems go through both solvers and the oracle; problems without f go
/// through the feasibility solver and the oracle. Per-instance failures are
/// recorded in the row; only an unreadable directory throws.
BenchReport run_bench(const std::filesystem::path& dir, std::optional<double> zero_tol_override);

}  // namespace conical::bench
