#include "sslforms/trace_formula.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace sslforms {

namespace {

void require_weight(i64 k) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("weight must be an even integer >= 4, got " + std::to_string(k));
}

void require_index(i64 n) {
  if (n < 1) throw std::invalid_argument("Hecke index must be >= 1, got " + std::to_string(n));
}

using Mat2 = std::array<u64, 4>;  // row-major

Mat2 mat_mul(const Mat2& x, const Mat2& y, const PrimeModulus& p) {
  return {p.add(p.mul(x[0], y[0]), p.mul(x[1], y[2])), p.add(p.mul(x[0], y[1]), p.mul(x[1], y[3])),
          p.add(p.mul(x[2], y[0]), p.mul(x[3], y[2])), p.add(p.mul(x[2], y[1]), p.mul(x[3], y[3]))};
}

// Divisor pairs (d, n/d) contribute min(d, n/d)^{k-1}.
template <typename Fn>
void for_each_divisor(i64 n, Fn&& fn) {
  for (i64 d = 1; d <= n; ++d) {
    if (n % d == 0) fn(d);
  }
}

}  // namespace

u64 gegenbauer_period(const PrimeModulus& p) {
  const u64 q = p.value();
  return q * (q * q - 1);
}

i64 reduce_weight(i64 k, const PrimeModulus& p) {
  if (k < 4) return k;
  const auto period = static_cast<i64>(gegenbauer_period(p));
  return 4 + (k - 4) % period;
}

mpz_class gegenbauer_exact(i64 k, i64 t, i64 n) {
  if (k < 2) throw std::invalid_argument("P_k needs k >= 2");
  mpz_class prev = 1;  // p_0
  if (k == 2) return prev;
  mpz_class cur = t;  // p_1
  const mpz_class tt = t;
  const mpz_class nn = n;
  for (i64 a = 2; a <= k - 2; ++a) {
    mpz_class next = tt * cur - nn * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

u64 gegenbauer_mod(i64 k, i64 t, i64 n, const PrimeModulus& p, WeightReduction mode) {
  if (k < 2) throw std::invalid_argument("P_k needs k >= 2");
  if (mode == WeightReduction::Periodic) k = reduce_weight(k, p);
  // [p_{a+1}, p_a]^T = M [p_a, p_{a-1}]^T with M = [[t, -n], [1, 0]]; p_{k-2} = (M^{k-2})_{00}.
  Mat2 result{1, 0, 0, 1};
  Mat2 m{p.reduce(t), p.neg(p.reduce(n)), 1, 0};
  auto e = static_cast<u64>(k - 2);
  while (e) {
    if (e & 1) result = mat_mul(result, m, p);
    e >>= 1;
    if (e) m = mat_mul(m, m, p);
  }
  return result[0];
}

u64 gegenbauer_mod_recurrence(i64 k, i64 t, i64 n, const PrimeModulus& p) {
  if (k < 2) throw std::invalid_argument("P_k needs k >= 2");
  u64 prev = 1;
  if (k == 2) return prev;
  u64 cur = p.reduce(t);
  const u64 tt = cur;
  const u64 nn = p.reduce(n);
  for (i64 a = 2; a <= k - 2; ++a) {
    const u64 next = p.sub(p.mul(tt, cur), p.mul(nn, prev));
    prev = cur;
    cur = next;
  }
  return cur;
}

i64 dim_cusp_forms(i64 k) {
  require_weight(k);
  return k % 12 == 2 ? k / 12 - 1 : k / 12;
}

mpz_class eichler_selberg_trace_exact(i64 k, i64 n, const HurwitzTable& table) {
  require_weight(k);
  require_index(n);
  mpz_class x = 0;
  for (i64 t = 0; t * t <= 4 * n; ++t) {
    const i64 h = table(4 * n - t * t);
    if (h == 0) continue;
    mpz_class term = gegenbauer_exact(k, t, n) * h;
    x += t == 0 ? term : 2 * term;  // P_k(-t, n) = P_k(t, n) for even k
  }
  mpz_class y = 0;
  for_each_divisor(n, [&](i64 d) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(std::min(d, n / d)), static_cast<unsigned long>(k - 1));
    y += m;
  });
  mpz_class total = x + 12 * y;
  if (!mpz_divisible_ui_p(total.get_mpz_t(), 24)) {
    throw std::logic_error("trace formula: X + 12Y not divisible by 24 at k=" + std::to_string(k) +
                           ", n=" + std::to_string(n));
  }
  mpz_class tr = total / 24;
  return -tr;
}

mpz_class eichler_selberg_trace_exact(i64 k, i64 n) {
  require_index(n);
  std::vector<i64> values(static_cast<std::size_t>(4 * n + 1));
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = hurwitz_12(static_cast<i64>(i));
  return eichler_selberg_trace_exact(k, n, HurwitzTable::from_values(std::move(values)));
}

u64 eichler_selberg_trace_mod(i64 k, i64 n, const PrimeModulus& p, const HurwitzTable& table, WeightReduction mode) {
  require_weight(k);
  require_index(n);
  u64 x = 0;
  for (i64 t = 0; t * t <= 4 * n; ++t) {
    const i64 h = table(4 * n - t * t);
    if (h == 0) continue;
    const u64 term = p.mul(gegenbauer_mod(k, t, n, p, mode), p.reduce(t == 0 ? h : 2 * h));
    x = p.add(x, term);
  }
  u64 y = 0;
  const u64 e = static_cast<u64>(k - 1);
  for_each_divisor(n, [&](i64 d) { y = p.add(y, p.pow(p.reduce(std::min(d, n / d)), e)); });
  const u64 total = p.add(x, p.mul(12, y));
  return p.mul(total, p.inv(p.reduce(-24)));
}

QExpansion trace_form(i64 k, const PrimeModulus& p, std::size_t precision, const HurwitzTable& table) {
  require_weight(k);
  if (precision < 2) throw std::invalid_argument("trace form precision must be >= 2");
  std::vector<u64> c(precision, 0);
  c[1] = p.reduce(dim_cusp_forms(k));
  for (std::size_t n = 2; n < precision; ++n) c[n] = eichler_selberg_trace_mod(k, static_cast<i64>(n), p, table);
  return QExpansion(p, static_cast<int>(k), std::move(c));
}

QExpansion modified_trace_form(i64 k, const PrimeModulus& p, std::size_t precision, const HurwitzTable& table) {
  require_weight(k);
  if (precision < 2) throw std::invalid_argument("trace form precision must be >= 2");
  const u64 q = p.value();
  std::vector<u64> c(precision, 0);
  c[1] = p.reduce(dim_cusp_forms(k));
  for (std::size_t n = 2; n < precision; ++n) {
    if (n % q == 0) continue;
    c[n] = eichler_selberg_trace_mod(k, static_cast<i64>(n), p, table);
  }
  return QExpansion(p, static_cast<int>(k + static_cast<i64>(q * q) - 1), std::move(c));
}

void TraceEngine::reserve(std::size_t max_n) {
  if (table_->max_n() >= max_n) return;
  // Grow geometrically so a sequence of slightly larger requests rebuilds rarely.
  const std::size_t target = std::max(max_n, 2 * table_->max_n());
  table_ = std::make_shared<const HurwitzTable>(target);
  ++rebuilds_;
}

QExpansion TraceEngine::trace_form(i64 k, const PrimeModulus& p, std::size_t precision) {
  reserve(hurwitz_bound_for_precision(precision));
  return sslforms::trace_form(k, p, precision, *table_);
}

QExpansion TraceEngine::modified_trace_form(i64 k, const PrimeModulus& p, std::size_t precision) {
  reserve(hurwitz_bound_for_precision(precision));
  return sslforms::modified_trace_form(k, p, precision, *table_);
}

u64 TraceEngine::trace_mod(i64 k, i64 n, const PrimeModulus& p) {
  require_index(n);
  reserve(static_cast<std::size_t>(4 * n));
  return eichler_selberg_trace_mod(k, n, p, *table_);
}

mpz_class TraceEngine::trace_exact(i64 k, i64 n) {
  require_index(n);
  reserve(static_cast<std::size_t>(4 * n));
  return eichler_selberg_trace_exact(k, n, *table_);
}

}  // namespace sslforms
