#pragma once

#include <cstddef>
#include <vector>

#include "sslforms/finite_field.hpp"

namespace sslforms {

/// 12*H(n), computed directly by enumerating reduced forms |b| <= a <= c with
/// b^2 - 4ac = -n (b >= 0 when |b| = a or a = c). The class of a = b = c
/// carries weight 1/3 and the class of b = 0, a = c weight 1/2.
/// Returns 0 for n < 0 and -1 for n = 0.
i64 hurwitz_12(i64 n);

/// Table of 12*H(n) for 0 <= n <= max_n, built by sieving over reduced forms.
/// Immutable after construction.
class HurwitzTable {
 public:
  explicit HurwitzTable(std::size_t max_n);
  /// Adopts precomputed values (e.g. from a cache file). Throws
  /// std::invalid_argument if the data violates the table invariants.
  static HurwitzTable from_values(std::vector<i64> values);

  std::size_t max_n() const noexcept { return values_.size() - 1; }
  const std::vector<i64>& values() const noexcept { return values_; }

  /// 12*H(n); 0 for n < 0. Throws std::out_of_range above max_n.
  i64 operator()(i64 n) const;

 private:
  struct Adopt {};
  HurwitzTable(std::vector<i64> values, Adopt) : values_(std::move(values)) {}

  std::vector<i64> values_;
};

/// Sum over |t| <= 2 sqrt(n) of 12*H(4n - t^2) against 12 * sum_{dd'=n} max(d, d').
bool kronecker_hurwitz_check(i64 n, const HurwitzTable& table);

}  // namespace sslforms
