#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conical/linalg.hpp"

namespace conical::io {

struct ToleranceOverrides {
  std::optional<double> zero_tol;
  std::optional<double> rank_tol;
  std::optional<double> ratio_tol;

  ToleranceConfig apply(ToleranceConfig base) const;
  bool operator==(const ToleranceOverrides&) const = default;
};

/// Input document: {"name", "G" (row-major rows), "v", "f"?, "tolerances"?}.
struct ProblemFile {
  std::string name;
  Matrix g;
  Vector v;
  std::optional<Vector> f;
  std::optional<ToleranceOverrides> tolerances;

  bool operator==(const ProblemFile& other) const;
};

/// Throws InvalidInput with a message naming the offending field.
ProblemFile problem_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProblemFile& p);
ProblemFile read_problem(const std::filesystem::path& path);

struct TraceEntry {
  double h = 0.0;
  double last_component = 0.0;
  bool operator==(const TraceEntry&) const = default;
};

struct ResultStats {
  std::size_t rays_enumerated = 0;
  std::size_t steps = 0;
  double wall_ms = 0.0;
  bool operator==(const ResultStats&) const = default;
};

using Rows = std::vector<std::vector<double>>;

/// Output document. `status` is one of optimal, feasible, infeasible,
/// unsupported, error; the optional members appear only when set.
struct ResultFile {
  std::string status;
  std::optional<double> h_o;
  std::optional<std::vector<double>> x;
  std::optional<std::vector<double>> y;
  std::optional<Rows> generators;
  std::optional<std::vector<TraceEntry>> trace;
  ResultStats stats;

  std::optional<std::string> detail;
  std::optional<std::vector<double>> relative_interior;
  std::optional<Rows> solutions;
  std::optional<Rows> vertices;

  bool operator==(const ResultFile&) const = default;
};

nlohmann::json to_json(const ResultFile& r);
ResultFile result_from_json(const nlohmann::json& j);

std::vector<double> to_std(const Vector& v);
Rows to_rows(const std::vector<Vector>& vs);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace conical::io
