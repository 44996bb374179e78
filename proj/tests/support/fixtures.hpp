#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "conical/generator.hpp"
#include "conical/linalg.hpp"
#include "conical/lp_solver.hpp"

namespace fixtures {

using conical::Matrix;
using conical::Vector;

Vector vec(std::initializer_list<double> xs);
/// Row-major construction.
Matrix mat(std::initializer_list<std::initializer_list<double>> rows);
Matrix column(std::initializer_list<double> xs);

/// I - projector onto span(basis columns): a projector whose null space is
/// the span of `basis`. Built with QR, not with the library.
Matrix null_space_projector(const Matrix& basis);

/// Projector whose null space mixes nonnegative and signed directions, so
/// N(t) ∩ P is a nontrivial pointed cone most of the time.
Matrix random_cone_projector(std::mt19937_64& rng, std::size_t n);

/// Exact rank of an integer matrix by fraction-free elimination.
std::size_t integer_rank(const std::vector<std::vector<long long>>& a);

/// Rank as the largest k with a nonzero k x k Gram minor (brute force).
std::size_t gram_rank(const Matrix& m, double tol);

/// Dimensions drawn for instance i of a seeded suite: n in [3,12],
/// m in [1, min(6, n-1)].
std::pair<std::size_t, std::size_t> suite_dims(std::uint64_t seed);

/// LP with an optimal edge: f is a positive combination of the rows tight
/// along an edge of a generated feasible polytope. Returns nullopt when the
/// drawn polytope has no usable edge. Requires m >= 2.
std::optional<conical::LpProblem> tied_instance(std::uint64_t seed, std::size_t n, std::size_t m);

conical::LpProblem as_lp(const conical::io::ProblemFile& file);

}  // namespace fixtures
