#pragma once

#include <cstddef>
#include <memory>

#include <gmpxx.h>

#include "sslforms/finite_field.hpp"
#include "sslforms/hurwitz.hpp"
#include "sslforms/qseries.hpp"

namespace sslforms {

/// How the mod-p evaluation of P_k(t, n) treats the weight.
enum class WeightReduction {
  /// Replace k by 4 + ((k - 4) mod p(p^2 - 1)) first. P_k(t, n) mod p is
  /// periodic in k (k >= 4) with period dividing p(p^2 - 1).
  Periodic,
  /// Evaluate at the given weight.
  None,
};

/// p(p^2 - 1).
u64 gegenbauer_period(const PrimeModulus& p);
/// 4 + ((k - 4) mod p(p^2 - 1)) for k >= 4; k itself below that.
i64 reduce_weight(i64 k, const PrimeModulus& p);

/// P_k(t, n): coefficient of x^{k-2} in 1 / (1 - t x + n x^2), via the
/// recurrence p_0 = 1, p_1 = t, p_a = t p_{a-1} - n p_{a-2}. Requires k >= 2.
mpz_class gegenbauer_exact(i64 k, i64 t, i64 n);
/// P_k(t, n) mod p, computed with a 2x2 companion-matrix power.
u64 gegenbauer_mod(i64 k, i64 t, i64 n, const PrimeModulus& p, WeightReduction mode = WeightReduction::Periodic);
/// P_k(t, n) mod p by running the linear recurrence k - 2 steps over F_p.
u64 gegenbauer_mod_recurrence(i64 k, i64 t, i64 n, const PrimeModulus& p);

/// dim S_k = m in k = 12m + 4delta + 6eps. Throws std::invalid_argument for odd k or k < 4.
i64 dim_cusp_forms(i64 k);

/// Exact Tr_k(n) = -(X + 12Y)/24 with X = sum_t P_k(t,n) 12H(4n - t^2) and
/// Y = sum_{dd'=n} min(d,d')^{k-1}. Throws std::logic_error if 24 does not
/// divide X + 12Y. Uses `table` for class numbers (must cover 4n).
mpz_class eichler_selberg_trace_exact(i64 k, i64 n, const HurwitzTable& table);
/// Same, computing class numbers on the fly.
mpz_class eichler_selberg_trace_exact(i64 k, i64 n);

/// Tr_k(n) mod p; every term reduced and the sum multiplied by (-24)^{-1}.
u64 eichler_selberg_trace_mod(i64 k, i64 n, const PrimeModulus& p, const HurwitzTable& table,
                              WeightReduction mode = WeightReduction::Periodic);

/// T_k = (dim S_k) q + sum_{n>=2} Tr_k(n) q^n mod p, to precision N (N >= 2).
QExpansion trace_form(i64 k, const PrimeModulus& p, std::size_t precision, const HurwitzTable& table);
/// Tr_k(n) for gcd(n, p) = 1, zero otherwise; weight tag k + p^2 - 1.
QExpansion modified_trace_form(i64 k, const PrimeModulus& p, std::size_t precision, const HurwitzTable& table);

/// Largest class-number argument a trace form of this precision needs.
inline std::size_t hurwitz_bound_for_precision(std::size_t precision) {
  return precision == 0 ? 0 : 4 * (precision - 1);
}

/// Owns a shared, read-only Hurwitz table and grows it (by replacement) on demand.
class TraceEngine {
 public:
  TraceEngine() : table_(std::make_shared<const HurwitzTable>(0)) {}
  explicit TraceEngine(std::shared_ptr<const HurwitzTable> table) : table_(std::move(table)) {}

  /// Ensures the table covers 12H(n) for n <= max_n.
  void reserve(std::size_t max_n);
  const HurwitzTable& table() const noexcept { return *table_; }
  std::shared_ptr<const HurwitzTable> shared_table() const noexcept { return table_; }
  /// Number of times reserve() had to rebuild the table.
  std::size_t rebuilds() const noexcept { return rebuilds_; }

  QExpansion trace_form(i64 k, const PrimeModulus& p, std::size_t precision);
  QExpansion modified_trace_form(i64 k, const PrimeModulus& p, std::size_t precision);
  u64 trace_mod(i64 k, i64 n, const PrimeModulus& p);
  mpz_class trace_exact(i64 k, i64 n);

 private:
  std::shared_ptr<const HurwitzTable> table_;
  std::size_t rebuilds_ = 0;
};

}  // namespace sslforms
