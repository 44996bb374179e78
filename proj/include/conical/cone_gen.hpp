#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conical/linalg.hpp"

namespace conical {

/// Extreme ray of N(T) ∩ P, normalized so its largest component is 1.
/// Components within the zero threshold are stored as exact zeros and
/// `support` lists the remaining indices in increasing order.
struct Ray {
  Vector y;
  std::vector<std::size_t> support;
};

struct RaySearch;

/// Position in the resumable search of `next_ray`.
///
/// Candidate supports containing the test column are visited in
/// lexicographic order of their index sequences (test column first, the
/// remaining indices ascending, a prefix before its extensions). The cursor
/// remembers the last support that was returned; resuming continues with
/// the first candidate strictly after it, even when T has changed between
/// calls. A cursor is bound to the test column used on its first call.
class RayCursor {
 public:
  RayCursor() = default;

  bool exhausted() const { return exhausted_; }
  const std::vector<std::size_t>& position() const { return last_; }

 private:
  friend RaySearch next_ray(const Matrix&, const RayCursor&, std::size_t,
                            const ToleranceConfig&);

  std::optional<std::size_t> test_column_;
  std::vector<std::size_t> last_;
  bool exhausted_ = false;
};

struct RaySearch {
  std::optional<Ray> ray;
  RayCursor cursor;
  /// New candidate supports evaluated by this call.
  std::size_t candidates_examined = 0;
};

/// All extreme rays of N(t) ∩ P by double description, ordered
/// lexicographically by support. `t` must be an orthogonal projector; its
/// range basis supplies the hyperplanes, processed in basis order.
/// Throws DimensionTooLarge above 64 coordinates.
std::vector<Ray> enumerate_rays(const Matrix& t, const ToleranceConfig& tol);

/// Next extreme ray of N(t) ∩ P whose `test_column` component (0-based) is
/// positive, continuing after `cursor`. The returned cursor is exhausted
/// when the search space has been passed without finding one.
RaySearch next_ray(const Matrix& t, const RayCursor& cursor, std::size_t test_column,
                   const ToleranceConfig& tol);

/// Reference enumeration over every support subset. Independent of the two
/// routines above. Throws DimensionTooLarge for more than 14 coordinates.
std::vector<Ray> brute_force_rays(const Matrix& t, const ToleranceConfig& tol);

/// Set equality of two ray lists under the max-norm, ignoring order.
bool same_ray_set(const std::vector<Ray>& a, const std::vector<Ray>& b, double dist);

/// Throws NotPointed if two rays are negatives of each other.
void require_pointed(const std::vector<Ray>& rays, const ToleranceConfig& tol);

}  // namespace conical
