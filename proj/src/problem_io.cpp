#include "conical/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "conical/errors.hpp"

namespace conical::io {

using nlohmann::json;

namespace {

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw InvalidInput(field + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(field + ": entries must be finite");
  return x;
}

Vector parse_vector(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw InvalidInput(field + ": expected a nonempty array of numbers");
  Vector out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = finite_number(j[i], field + "[" + std::to_string(i) + "]");
  }
  return out;
}

Matrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw InvalidInput(field + ": expected a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw InvalidInput(field + "[0]: expected a nonempty row");
  const std::size_t cols = j[0].size();
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) throw InvalidInput(row_field + ": expected an array");
    if (j[r].size() != cols) {
      throw InvalidInput(row_field + ": has " + std::to_string(j[r].size()) + " entries, expected " +
                         std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          finite_number(j[r][c], row_field + "[" + std::to_string(c) + "]");
    }
  }
  return out;
}

std::optional<double> optional_positive(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const double x = finite_number(j[key], std::string("tolerances.") + key);
  if (!(x > 0.0)) throw InvalidInput(std::string("tolerances.") + key + ": must be positive");
  return x;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ToleranceConfig ToleranceOverrides::apply(ToleranceConfig base) const {
  if (zero_tol) base.zero_tol = *zero_tol;
  if (rank_tol) base.rank_tol = *rank_tol;
  if (ratio_tol) base.ratio_tol = *ratio_tol;
  return base;
}

bool ProblemFile::operator==(const ProblemFile& other) const {
  auto same_vec = [](const std::optional<Vector>& a, const std::optional<Vector>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || (a->size() == b->size() && *a == *b);
  };
  return name == other.name && g.rows() == other.g.rows() && g.cols() == other.g.cols() &&
         g == other.g && v.size() == other.v.size() && v == other.v && same_vec(f, other.f) &&
         tolerances == other.tolerances;
}

ProblemFile problem_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("problem: expected a JSON object");
  ProblemFile p;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InvalidInput("name: expected a string");
    p.name = j["name"].get<std::string>();
  }
  if (!j.contains("G")) throw InvalidInput("G: missing");
  if (!j.contains("v")) throw InvalidInput("v: missing");
  p.g = parse_matrix(j["G"], "G");
  p.v = parse_vector(j["v"], "v");
  if (p.v.size() != p.g.rows()) {
    throw InvalidInput("v: length " + std::to_string(p.v.size()) + " does not match the " +
                       std::to_string(p.g.rows()) + " rows of G");
  }
  if (j.contains("f") && !j["f"].is_null()) {
    p.f = parse_vector(j["f"], "f");
    if (p.f->size() != p.g.cols()) {
      throw InvalidInput("f: length " + std::to_string(p.f->size()) + " does not match the " +
                         std::to_string(p.g.cols()) + " columns of G");
    }
  }
  if (j.contains("tolerances") && !j["tolerances"].is_null()) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw InvalidInput("tolerances: expected an object");
    ToleranceOverrides o;
    o.zero_tol = optional_positive(t, "zero_tol");
    o.rank_tol = optional_positive(t, "rank_tol");
    o.ratio_tol = optional_positive(t, "ratio_tol");
    p.tolerances = o;
  }
  return p;
}

json to_json(const ProblemFile& p) {
  json j;
  j["name"] = p.name;
  j["G"] = matrix_json(p.g);
  j["v"] = to_std(p.v);
  if (p.f) j["f"] = to_std(*p.f);
  if (p.tolerances) {
    json t = json::object();
    if (p.tolerances->zero_tol) t["zero_tol"] = *p.tolerances->zero_tol;
    if (p.tolerances->rank_tol) t["rank_tol"] = *p.tolerances->rank_tol;
    if (p.tolerances->ratio_tol) t["ratio_tol"] = *p.tolerances->ratio_tol;
    j["tolerances"] = t;
  }
  return j;
}

ProblemFile read_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path.string() + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path.string() + ": not valid JSON (" + e.what() + ")");
  }
  return problem_from_json(j);
}

json to_json(const ResultFile& r) {
  json j;
  j["status"] = r.status;
  if (r.h_o) j["h_o"] = *r.h_o;
  if (r.x) j["x"] = *r.x;
  if (r.y) j["y"] = *r.y;
  if (r.generators) j["generators"] = *r.generators;
  if (r.trace) {
    json t = json::array();
    for (const TraceEntry& e : *r.trace) t.push_back({{"h", e.h}, {"last_component", e.last_component}});
    j["trace"] = t;
  }
  j["stats"] = {{"rays_enumerated", r.stats.rays_enumerated},
                {"steps", r.stats.steps},
                {"wall_ms", r.stats.wall_ms}};
  if (r.detail) j["detail"] = *r.detail;
  if (r.relative_interior) j["relative_interior"] = *r.relative_interior;
  if (r.solutions) j["solutions"] = *r.solutions;
  if (r.vertices) j["vertices"] = *r.vertices;
  return j;
}

ResultFile result_from_json(const json& j) {
  if (!j.is_object() || !j.contains("status") || !j["status"].is_string()) {
    throw InvalidInput("result: missing status");
  }
  ResultFile r;
  r.status = j["status"].get<std::string>();
  if (j.contains("h_o")) r.h_o = j["h_o"].get<double>();
  if (j.contains("x")) r.x = j["x"].get<std::vector<double>>();
  if (j.contains("y")) r.y = j["y"].get<std::vector<double>>();
  if (j.contains("generators")) r.generators = j["generators"].get<Rows>();
  if (j.contains("trace")) {
    std::vector<TraceEntry> t;
    for (const json& e : j["trace"]) t.push_back({e.at("h").get<double>(), e.at("last_component").get<double>()});
    r.trace = t;
  }
  if (j.contains("stats")) {
    const json& s = j["stats"];
    r.stats.rays_enumerated = s.value("rays_enumerated", std::size_t{0});
    r.stats.steps = s.value("steps", std::size_t{0});
    r.stats.wall_ms = s.value("wall_ms", 0.0);
  }
  if (j.contains("detail")) r.detail = j["detail"].get<std::string>();
  if (j.contains("relative_interior")) r.relative_interior = j["relative_interior"].get<std::vector<double>>();
  if (j.contains("solutions")) r.solutions = j["solutions"].get<Rows>();
  if (j.contains("vertices")) r.vertices = j["vertices"].get<Rows>();
  return r;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Rows to_rows(const std::vector<Vector>& vs) {
  Rows out;
  out.reserve(vs.size());
  for (const Vector& v : vs) out.push_back(to_std(v));
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace conical::io
