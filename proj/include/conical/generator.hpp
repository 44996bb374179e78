#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "conical/problem_io.hpp"

namespace conical::gen {

enum class InstanceKind { Feasible, Unrestricted, Lp };

/// "feasible", "unrestricted" or "lp"; throws InvalidInput otherwise.
InstanceKind parse_kind(std::string_view text);
std::string_view kind_name(InstanceKind kind);

/// Seeded random instance with R(G) strictly tangent to the orthant.
///
/// A strictly positive normal is drawn and random columns are projected onto
/// its orthogonal complement, so R(G) sits inside a hyperplane that touches
/// the orthant only at the origin. `Feasible` and `Lp` set v = G x0 + s with
/// s >= 0; `Unrestricted` draws v freely. `Lp` also draws a strictly positive
/// (n+1)-vector mu and sets f = G^T mu[0..n) / mu[n], which makes [G; -f]
/// orthogonal to mu and hence strictly tangent as well.
///
/// Requires n >= 2 and 1 <= m < n (InvalidInput otherwise). Identical
/// arguments give identical instances.
io::ProblemFile generate_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                                  InstanceKind kind);

}  // namespace conical::gen
