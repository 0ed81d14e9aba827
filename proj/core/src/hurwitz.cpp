#include "sslforms/hurwitz.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sslforms {

namespace {

// Contribution of the reduced form (a, b, c) with b >= 0, counting (a, -b, c) too when it is reduced.
i64 reduced_form_weight(i64 a, i64 b, i64 c) {
  if (a == b && b == c) return 4;
  if (b == 0 && a == c) return 6;
  if (b == 0 || b == a || a == c) return 12;
  return 24;
}

}  // namespace

i64 hurwitz_12(i64 n) {
  if (n < 0) return 0;
  if (n == 0) return -1;
  if (n % 4 == 1 || n % 4 == 2) return 0;
  i64 total = 0;
  // |b| <= a <= c forces 3a^2 <= 4ac - b^2 = n.
  for (i64 b = n % 2; 3 * b * b <= n; b += 2) {
    const i64 ac = (b * b + n) / 4;
    for (i64 a = b == 0 ? 1 : b; a * a <= ac; ++a) {
      if (ac % a != 0) continue;
      total += reduced_form_weight(a, b, ac / a);
    }
  }
  return total;
}

HurwitzTable::HurwitzTable(std::size_t max_n) : values_(max_n + 1, 0) {
  const auto limit = static_cast<i64>(max_n);
  values_[0] = -1;
  for (i64 a = 1; 3 * a * a <= limit; ++a) {
    for (i64 b = 0; b <= a; ++b) {
      for (i64 c = a;; ++c) {
        const i64 n = 4 * a * c - b * b;
        if (n > limit) break;
        values_[static_cast<std::size_t>(n)] += reduced_form_weight(a, b, c);
      }
    }
  }
}

HurwitzTable HurwitzTable::from_values(std::vector<i64> values) {
  if (values.empty() || values[0] != -1) throw std::invalid_argument("Hurwitz table must start with 12*H(0) = -1");
  for (std::size_t n = 1; n < values.size(); ++n) {
    if (values[n] < 0) throw std::invalid_argument("negative 12*H(" + std::to_string(n) + ")");
    if ((n % 4 == 1 || n % 4 == 2) && values[n] != 0) {
      throw std::invalid_argument("nonzero 12*H(" + std::to_string(n) + ") for n = 1, 2 mod 4");
    }
  }
  return HurwitzTable(std::move(values), Adopt{});
}

i64 HurwitzTable::operator()(i64 n) const {
  if (n < 0) return 0;
  if (static_cast<std::size_t>(n) >= values_.size()) {
    throw std::out_of_range("Hurwitz table holds n <= " + std::to_string(max_n()) + ", asked for " + std::to_string(n));
  }
  return values_[static_cast<std::size_t>(n)];
}

bool kronecker_hurwitz_check(i64 n, const HurwitzTable& table) {
  if (n < 1) throw std::invalid_argument("kronecker_hurwitz_check needs n >= 1");
  i64 lhs = 0;
  for (i64 t = 0; t * t <= 4 * n; ++t) lhs += (t == 0 ? 1 : 2) * table(4 * n - t * t);
  i64 rhs = 0;
  for (i64 d = 1; d <= n; ++d) {
    if (n % d == 0) rhs += std::max(d, n / d);
  }
  return lhs == 12 * rhs;
}

}  // namespace sslforms
