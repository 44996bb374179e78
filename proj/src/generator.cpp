#include "conical/generator.hpp"

#include <random>
#include <string>

#include "conical/errors.hpp"

namespace conical::gen {

InstanceKind parse_kind(std::string_view text) {
  if (text == "feasible") return InstanceKind::Feasible;
  if (text == "unrestricted") return InstanceKind::Unrestricted;
  if (text == "lp") return InstanceKind::Lp;
  throw InvalidInput("kind: expected feasible, unrestricted or lp, got '" + std::string(text) + "'");
}

std::string_view kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Feasible:
      return "feasible";
    case InstanceKind::Unrestricted:
      return "unrestricted";
    case InstanceKind::Lp:
      return "lp";
  }
  return "unknown";
}

io::ProblemFile generate_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                                  InstanceKind kind) {
  if (n < 2) throw InvalidInput("n: must be at least 2");
  if (m < 1 || m >= n) throw InvalidInput("m: must satisfy 1 <= m < n");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> positive(0.2, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(m);

  Vector normal_vec(rows);
  for (Eigen::Index i = 0; i < rows; ++i) normal_vec(i) = positive(rng);
  const Vector unit_normal = normal_vec.normalized();

  Matrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    Vector col(rows);
    for (Eigen::Index i = 0; i < rows; ++i) col(i) = normal(rng);
    g.col(c) = col - unit_normal * unit_normal.dot(col);
  }

  Vector v(rows);
  if (kind == InstanceKind::Unrestricted) {
    for (Eigen::Index i = 0; i < rows; ++i) v(i) = normal(rng);
  } else {
    Vector x0(cols);
    for (Eigen::Index c = 0; c < cols; ++c) x0(c) = normal(rng);
    Vector s(rows);
    for (Eigen::Index i = 0; i < rows; ++i) s(i) = unit(rng);
    v = g * x0 + s;
  }

  io::ProblemFile out;
  out.name = "gen-" + std::string(kind_name(kind)) + "-s" + std::to_string(seed) + "-n" +
             std::to_string(n) + "-m" + std::to_string(m);
  out.g = std::move(g);
  out.v = std::move(v);

  if (kind == InstanceKind::Lp) {
    Vector mu(rows + 1);
    for (Eigen::Index i = 0; i <= rows; ++i) mu(i) = positive(rng);
    out.f = out.g.transpose() * mu.head(rows) / mu(rows);
  }
  return out;
}

}  // namespace conical::gen
