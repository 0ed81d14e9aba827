#include "sslforms/qseries.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sslforms {

namespace {

void require_even(int weight) {
  if (weight % 2 != 0) throw std::invalid_argument("q-expansion weight must be even, got " + std::to_string(weight));
}

// Power-series inverse of a unit series to n terms.
std::vector<u64> unit_inverse(const PrimeModulus& p, const std::vector<u64>& a, std::size_t n) {
  if (a.empty() || a[0] == 0) throw std::domain_error("series inverse: leading coefficient is not a unit");
  std::vector<u64> inv(n, 0);
  const u64 c0 = p.inv(a[0]);
  const u64 budget = p.lazy_budget();
  inv[0] = c0;
  for (std::size_t k = 1; k < n; ++k) {
    u64 acc = 0;
    u64 pending = 0;
    const std::size_t hi = std::min(k, a.size() - 1);
    for (std::size_t i = 1; i <= hi; ++i) {
      acc += a[i] * inv[k - i];
      if (++pending == budget) {
        acc %= p.value();
        pending = 0;
      }
    }
    inv[k] = p.mul(p.neg(acc % p.value()), c0);
  }
  return inv;
}

std::vector<u64> pow_coefficients(const PrimeModulus& p, std::vector<u64> base, u64 e, std::size_t n) {
  std::vector<u64> r(n, 0);
  r[0] = 1;
  base.resize(n, 0);
  while (e) {
    if (e & 1) r = truncated_product(p, r, base, n);
    e >>= 1;
    if (e) base = truncated_product(p, base, base, n);
  }
  return r;
}

}  // namespace

std::vector<u64> truncated_product(const PrimeModulus& p, const std::vector<u64>& a,
                                   const std::vector<u64>& b, std::size_t n) {
  if (a.empty() || b.empty()) return std::vector<u64>(n, 0);
  n = std::min(n, a.size() + b.size() - 1);
  std::vector<u64> out(n, 0);
  const u64 budget = p.lazy_budget();
  const u64 mod = p.value();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
    const std::size_t hi = std::min(k, a.size() - 1);
    u64 acc = 0;
    u64 pending = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      acc += a[i] * b[k - i];
      if (++pending == budget) {
        acc %= mod;
        pending = 0;
      }
    }
    out[k] = acc % mod;
  }
  return out;
}

QExpansion::QExpansion(const PrimeModulus& p, int weight, std::vector<u64> coefficients)
    : p_(p), weight_(weight), c_(std::move(coefficients)) {
  require_even(weight);
  if (c_.empty()) throw std::invalid_argument("q-expansion precision must be >= 1");
  for (auto& v : c_) v = p_.reduce_unsigned(v);
}

QExpansion QExpansion::zero(const PrimeModulus& p, int weight, std::size_t precision) {
  return QExpansion(p, weight, std::vector<u64>(precision, 0));
}

QExpansion QExpansion::constant(const PrimeModulus& p, int weight, std::size_t precision, i64 c) {
  std::vector<u64> v(precision, 0);
  if (!v.empty()) v[0] = p.reduce(c);
  return QExpansion(p, weight, std::move(v));
}

bool QExpansion::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

QExpansion QExpansion::truncated(std::size_t n) const {
  if (n > c_.size()) throw std::invalid_argument("truncated: cannot extend precision");
  return QExpansion(p_, weight_, std::vector<u64>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

QExpansion QExpansion::scaled(u64 s) const {
  std::vector<u64> r(c_);
  for (auto& v : r) v = p_.mul(v, s);
  return QExpansion(p_, weight_, std::move(r));
}

QExpansion QExpansion::operator+(const QExpansion& o) const {
  if (!(o.p_ == p_) || o.weight_ != weight_) throw std::invalid_argument("q-expansion sum: modulus or weight mismatch");
  std::vector<u64> r(std::min(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = p_.add(c_[i], o.c_[i]);
  return QExpansion(p_, weight_, std::move(r));
}

QExpansion QExpansion::operator-(const QExpansion& o) const {
  if (!(o.p_ == p_) || o.weight_ != weight_) throw std::invalid_argument("q-expansion difference: modulus or weight mismatch");
  std::vector<u64> r(std::min(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = p_.sub(c_[i], o.c_[i]);
  return QExpansion(p_, weight_, std::move(r));
}

LaurentExpansion::LaurentExpansion(const PrimeModulus& p, int weight, int valuation, std::vector<u64> coefficients)
    : p_(p), weight_(weight), v_(valuation), c_(std::move(coefficients)) {
  if (c_.empty()) throw std::invalid_argument("Laurent expansion needs at least one coefficient");
  for (auto& v : c_) v = p_.reduce_unsigned(v);
  normalize();
}

LaurentExpansion::LaurentExpansion(const QExpansion& f)
    : LaurentExpansion(f.modulus(), f.weight(), 0, f.coefficients()) {}

void LaurentExpansion::normalize() {
  auto first = std::find_if(c_.begin(), c_.end(), [](u64 v) { return v != 0; });
  if (first == c_.end() || first == c_.begin()) return;
  v_ += static_cast<int>(first - c_.begin());
  c_.erase(c_.begin(), first);
}

bool LaurentExpansion::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

u64 LaurentExpansion::coefficient(int e) const {
  if (e > last_exponent()) throw std::out_of_range("Laurent coefficient beyond known precision");
  if (e < v_) return 0;
  return c_[static_cast<std::size_t>(e - v_)];
}

QExpansion LaurentExpansion::to_qexpansion() const {
  if (last_exponent() < 0) throw std::domain_error("Laurent expansion has no known non-negative terms");
  std::vector<u64> r(static_cast<std::size_t>(last_exponent() + 1), 0);
  for (int e = std::max(0, v_); e <= last_exponent(); ++e) r[static_cast<std::size_t>(e)] = coefficient(e);
  return QExpansion(p_, weight_, std::move(r));
}

QExpansion series_mul(const QExpansion& f, const QExpansion& g) {
  if (!(f.modulus() == g.modulus())) throw std::invalid_argument("series_mul: modulus mismatch");
  const std::size_t n = std::min(f.precision(), g.precision());
  return QExpansion(f.modulus(), f.weight() + g.weight(),
                    truncated_product(f.modulus(), f.coefficients(), g.coefficients(), n));
}

LaurentExpansion series_mul(const LaurentExpansion& f, const LaurentExpansion& g) {
  if (!(f.modulus() == g.modulus())) throw std::invalid_argument("series_mul: modulus mismatch");
  const std::size_t n = std::min(f.precision(), g.precision());
  return LaurentExpansion(f.modulus(), f.weight() + g.weight(), f.valuation() + g.valuation(),
                          truncated_product(f.modulus(), f.coefficients(), g.coefficients(), n));
}

LaurentExpansion series_inv(const LaurentExpansion& f) {
  if (f.is_zero()) throw std::domain_error("series_inv: series is zero to the known precision");
  return LaurentExpansion(f.modulus(), -f.weight(), -f.valuation(),
                          unit_inverse(f.modulus(), f.coefficients(), f.precision()));
}

LaurentExpansion series_inv(const QExpansion& f) { return series_inv(LaurentExpansion(f)); }

QExpansion series_inv_unit(const QExpansion& f) {
  return QExpansion(f.modulus(), -f.weight(), unit_inverse(f.modulus(), f.coefficients(), f.precision()));
}

QExpansion series_pow(const QExpansion& f, u64 e) {
  const i64 w = static_cast<i64>(f.weight()) * static_cast<i64>(e);
  return QExpansion(f.modulus(), static_cast<int>(w), pow_coefficients(f.modulus(), f.coefficients(), e, f.precision()));
}

LaurentExpansion series_pow(const LaurentExpansion& f, int e) {
  if (e < 0) return series_pow(series_inv(f), -e);
  return LaurentExpansion(f.modulus(), f.weight() * e, f.valuation() * e,
                          pow_coefficients(f.modulus(), f.coefficients(), static_cast<u64>(e), f.precision()));
}

QExpansion delta_over_q(const PrimeModulus& p, std::size_t precision) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  // Euler: prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2} over all integers k.
  std::vector<u64> eta(precision, 0);
  eta[0] = 1;
  for (i64 k = 1;; ++k) {
    const u64 e1 = static_cast<u64>(k * (3 * k - 1) / 2);
    const u64 e2 = static_cast<u64>(k * (3 * k + 1) / 2);
    if (e1 >= precision) break;
    const u64 sign = (k % 2 == 0) ? 1 : p.neg(1);
    eta[e1] = p.add(eta[e1], sign);
    if (e2 < precision) eta[e2] = p.add(eta[e2], sign);
  }
  return QExpansion(p, 12, pow_coefficients(p, std::move(eta), 24, precision));
}

QExpansion delta_series(const PrimeModulus& p, std::size_t precision) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  std::vector<u64> c(precision, 0);
  if (precision > 1) {
    QExpansion dq = delta_over_q(p, precision - 1);
    std::copy(dq.coefficients().begin(), dq.coefficients().end(), c.begin() + 1);
  }
  return QExpansion(p, 12, std::move(c));
}

QExpansion eisenstein_series(Eisenstein which, const PrimeModulus& p, std::size_t precision) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  const u64 power = which == Eisenstein::E4 ? 3 : 5;
  const u64 scale = which == Eisenstein::E4 ? p.reduce(240) : p.reduce(-504);
  std::vector<u64> sigma(precision, 0);
  for (std::size_t d = 1; d < precision; ++d) {
    const u64 dp = p.pow(p.reduce_unsigned(d), power);
    for (std::size_t n = d; n < precision; n += d) sigma[n] = p.add(sigma[n], dp);
  }
  std::vector<u64> c(precision, 0);
  c[0] = 1;
  for (std::size_t n = 1; n < precision; ++n) c[n] = p.mul(scale, sigma[n]);
  return QExpansion(p, which == Eisenstein::E4 ? 4 : 6, std::move(c));
}

LaurentExpansion j_series(const PrimeModulus& p, std::size_t precision) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  const QExpansion e4 = eisenstein_series(Eisenstein::E4, p, precision);
  const QExpansion num = series_pow(e4, 3);
  const QExpansion den = series_inv_unit(delta_over_q(p, precision));
  return LaurentExpansion(p, 0, -1, truncated_product(p, num.coefficients(), den.coefficients(), precision));
}

QExpansion theta_operator(const QExpansion& f) {
  const PrimeModulus& p = f.modulus();
  std::vector<u64> c(f.coefficients());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = p.mul(c[n], p.reduce_unsigned(n));
  return QExpansion(p, f.weight() + static_cast<int>(p.value()) + 1, std::move(c));
}

namespace {

// Deuring-Hasse route: expand the trinomial power as a polynomial in x whose
// coefficients are q-series, truncating x-degrees above d.
QExpansion deuring_hasse_coefficient(const PrimeModulus& p, int d, std::size_t n) {
  using XPoly = std::vector<std::vector<u64>>;  // index = x-degree
  const auto ds = static_cast<std::size_t>(d);
  auto mul = [&](const XPoly& a, const XPoly& b) {
    XPoly r(ds + 1, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i <= ds; ++i) {
      if (a[i].empty()) continue;
      for (std::size_t j = 0; i + j <= ds; ++j) {
        if (b[j].empty()) continue;
        auto prod = truncated_product(p, a[i], b[j], n);
        for (std::size_t t = 0; t < n; ++t) r[i + j][t] = p.add(r[i + j][t], prod[t]);
      }
    }
    for (auto& c : r) {
      if (std::all_of(c.begin(), c.end(), [](u64 v) { return v == 0; })) c.clear();
    }
    return r;
  };
  XPoly base(ds + 1);
  base[0] = std::vector<u64>(n, 0);
  base[0][0] = 1;
  const QExpansion e4 = eisenstein_series(Eisenstein::E4, p, n);
  const QExpansion e6 = eisenstein_series(Eisenstein::E6, p, n);
  if (ds >= 4) base[4] = e4.scaled(p.reduce(-3)).coefficients();
  if (ds >= 6) base[6] = e6.scaled(2).coefficients();
  XPoly result(ds + 1);
  result[0] = std::vector<u64>(n, 0);
  result[0][0] = 1;
  u64 e = (p.value() - 1) / 2;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  std::vector<u64> out = result[ds];
  if (out.empty()) out.assign(n, 0);
  return QExpansion(p, d, std::move(out));
}

// Kaneko-Zagier route: binomial series with exponent -1/2,
// coefficient of (-3E4)^i (2E6)^j x^{4i+6j} is binom(-1/2, i+j) * binom(i+j, i).
QExpansion kaneko_zagier_coefficient(const PrimeModulus& p, int d, std::size_t n) {
  const QExpansion e4 = eisenstein_series(Eisenstein::E4, p, n);
  const QExpansion e6 = eisenstein_series(Eisenstein::E6, p, n);
  const u64 minus_half = p.neg(p.inv(2));
  std::vector<u64> acc(n, 0);
  for (int j = 0; 6 * j <= d; ++j) {
    if ((d - 6 * j) % 4 != 0) continue;
    const int i = (d - 6 * j) / 4;
    const int s = i + j;
    if (static_cast<u64>(s) >= p.value()) {
      throw std::domain_error("binomial series coefficient needs s! to be a unit mod p");
    }
    // binom(-1/2, s) * binom(s, i) = prod_{r<s} (-1/2 - r) / (i! j!)
    u64 coeff = 1;
    for (int r = 0; r < s; ++r) coeff = p.mul(coeff, p.sub(minus_half, p.reduce(r)));
    u64 denom = 1;
    for (int r = 2; r <= i; ++r) denom = p.mul(denom, p.reduce(r));
    for (int r = 2; r <= j; ++r) denom = p.mul(denom, p.reduce(r));
    coeff = p.mul(coeff, p.inv(denom));
    coeff = p.mul(coeff, p.mul(p.pow(p.reduce(-3), static_cast<u64>(i)), p.pow(2, static_cast<u64>(j))));
    const QExpansion term = series_mul(series_pow(e4, static_cast<u64>(i)), series_pow(e6, static_cast<u64>(j)));
    for (std::size_t t = 0; t < n; ++t) acc[t] = p.add(acc[t], p.mul(coeff, term[t]));
  }
  return QExpansion(p, d, std::move(acc));
}

}  // namespace

QExpansion binomial_half_coefficient(const PrimeModulus& p, HalfFamily family, int d, std::size_t precision) {
  if (d < 0 || d % 2 != 0) throw std::invalid_argument("x-degree must be even and non-negative");
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  return family == HalfFamily::DeuringHasse ? deuring_hasse_coefficient(p, d, precision)
                                            : kaneko_zagier_coefficient(p, d, precision);
}

QExpansion binomial_half_expansion(const PrimeModulus& p, HalfFamily family, std::size_t precision) {
  return binomial_half_coefficient(p, family, static_cast<int>(p.value()) - 1, precision);
}

}  // namespace sslforms
