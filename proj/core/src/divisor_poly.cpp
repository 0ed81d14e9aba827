#include "sslforms/divisor_poly.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace sslforms {

namespace {

// Indexed [k2 mod 12 / 2][k1 mod 12 / 2].
constexpr std::array<std::array<ProductExponents, 6>, 6> kProductTable{{
    {{{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
    {{{0, 0}, {1, 1}, {1, 0}, {0, 1}, {1, 0}, {1, 1}}},
    {{{0, 0}, {1, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}}},
    {{{0, 0}, {0, 1}, {0, 0}, {0, 1}, {0, 0}, {0, 1}}},
    {{{0, 0}, {1, 0}, {1, 0}, {0, 0}, {1, 0}, {1, 0}}},
    {{{0, 0}, {1, 1}, {0, 0}, {0, 1}, {1, 0}, {0, 1}}},
}};

std::size_t residue_class_12(i64 k) {
  if (k % 2 != 0) throw std::invalid_argument("product_exponents needs even weights");
  const i64 r = ((k % 12) + 12) % 12;
  return static_cast<std::size_t>(r / 2);
}

// (Delta/q)^m E4^delta E6^eps to n terms: a unit series with constant term 1.
std::vector<u64> normalizer(const PrimeModulus& p, const WeightProfile& w, std::size_t n) {
  QExpansion u = series_pow(delta_over_q(p, n), static_cast<u64>(w.m));
  if (w.delta > 0) u = series_mul(u, series_pow(eisenstein_series(Eisenstein::E4, p, n), static_cast<u64>(w.delta)));
  if (w.eps > 0) u = series_mul(u, eisenstein_series(Eisenstein::E6, p, n));
  return u.coefficients();
}

// q * j = E4^3 / (Delta/q) to n terms.
std::vector<u64> j_times_q(const PrimeModulus& p, std::size_t n) {
  const QExpansion e4_cubed = series_pow(eisenstein_series(Eisenstein::E4, p, n), 3);
  const QExpansion inv = series_inv_unit(delta_over_q(p, n));
  return truncated_product(p, e4_cubed.coefficients(), inv.coefficients(), n);
}

}  // namespace

WeightProfile weight_profile(i64 k) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("weight must be an even integer >= 4, got " + std::to_string(k));
  WeightProfile w;
  w.k = k;
  w.delta = k % 6 == 0 ? 0 : (k % 6 == 4 ? 1 : 2);
  w.eps = k % 4 == 0 ? 0 : 1;
  w.m = (k - 4 * w.delta - 6 * w.eps) / 12;
  return w;
}

DivisorDecomposition divisor_polynomial(const QExpansion& f) { return divisor_polynomial(f, weight_profile(f.weight())); }

DivisorDecomposition divisor_polynomial(const QExpansion& f, const WeightProfile& profile) {
  const PrimeModulus& p = f.modulus();
  const auto m = static_cast<std::size_t>(profile.m);
  const std::size_t n = m + 1;
  if (f.precision() < n) {
    throw std::invalid_argument("divisor_polynomial: weight " + std::to_string(profile.k) + " needs precision " +
                                std::to_string(n) + ", got " + std::to_string(f.precision()));
  }
  // L[e] is the coefficient of q^{e-m} in f / (Delta^m E4^delta E6^eps).
  const QExpansion u(p, 0, normalizer(p, profile, n));
  std::vector<u64> lau = truncated_product(p, f.coefficients(), series_inv_unit(u).coefficients(), n);

  // jq_pow[d] = (q j)^d to n terms, so j^d = q^{-d} jq_pow[d].
  const std::vector<u64> jq = j_times_q(p, n);
  std::vector<std::vector<u64>> jq_pow(n);
  jq_pow[0].assign(n, 0);
  jq_pow[0][0] = 1;
  for (std::size_t d = 1; d <= m; ++d) jq_pow[d] = truncated_product(p, jq_pow[d - 1], jq, n);

  std::vector<u64> F(n, 0);
  for (std::size_t d = m + 1; d-- > 0;) {
    const u64 c = lau[m - d];
    F[d] = c;
    if (c == 0) continue;
    const u64 nc = p.neg(c);
    const auto& jd = jq_pow[d];
    for (std::size_t i = 0; i <= d; ++i) lau[m - d + i] = p.add(lau[m - d + i], p.mul(nc, jd[i]));
  }
  return {profile, FpPolynomial(p, std::move(F))};
}

QExpansion recompose(const DivisorDecomposition& d, const PrimeModulus& p, std::size_t precision) {
  const auto m = static_cast<std::size_t>(d.profile.m);
  // Delta^m F(j) = (Delta/q)^m * sum_e c_e q^{m-e} (qj)^e.
  const std::vector<u64> jq = j_times_q(p, precision);
  std::vector<u64> g(precision, 0);
  std::vector<u64> jq_pow(precision, 0);
  jq_pow[0] = 1;
  for (std::size_t e = 0; e <= m; ++e) {
    if (e > 0) jq_pow = truncated_product(p, jq_pow, jq, precision);
    const u64 c = d.F[e];
    if (c == 0) continue;
    for (std::size_t i = 0; i + (m - e) < precision; ++i) {
      g[i + m - e] = p.add(g[i + m - e], p.mul(c, jq_pow[i]));
    }
  }
  const std::vector<u64> u = normalizer(p, d.profile, precision);
  return QExpansion(p, static_cast<int>(d.profile.k), truncated_product(p, g, u, precision));
}

ProductExponents product_exponents(i64 k1, i64 k2) { return kProductTable[residue_class_12(k2)][residue_class_12(k1)]; }

SupersingularExponents ssp_exponents(const PrimeModulus& p) {
  return {p.value() % 3 == 2 ? 1 : 0, p.value() % 4 == 3 ? 1 : 0};
}

FpPolynomial x_minus_1728(const PrimeModulus& p) { return FpPolynomial::linear(p, 1728); }

FpPolynomial eisenstein_divisor_polynomial(const PrimeModulus& p) {
  const WeightProfile w = weight_profile(static_cast<i64>(p.value()) - 1);
  const QExpansion one = QExpansion::constant(p, static_cast<int>(w.k), static_cast<std::size_t>(w.m) + 1, 1);
  return divisor_polynomial(one, w).F;
}

FpPolynomial epn_divisor_polynomial(const PrimeModulus& p, i64 n, const FpPolynomial& base) {
  if (n < 1) throw std::invalid_argument("epn_divisor_polynomial needs n >= 1");
  const SupersingularExponents se = ssp_exponents(p);
  return poly_pow(base, static_cast<u64>(n)) * FpPolynomial::monomial(p, static_cast<std::size_t>(se.delta_p * (n / 3))) *
         poly_pow(x_minus_1728(p), static_cast<u64>(se.eps_p * (n / 2)));
}

FpPolynomial epn_divisor_polynomial_inductive(const PrimeModulus& p, i64 n, const FpPolynomial& base) {
  if (n < 1) throw std::invalid_argument("epn_divisor_polynomial needs n >= 1");
  const i64 w = static_cast<i64>(p.value()) - 1;
  FpPolynomial acc = base;
  for (i64 i = 2; i <= n; ++i) {
    const ProductExponents ab = product_exponents(w, (i - 1) * w);
    acc = acc * base * FpPolynomial::monomial(p, static_cast<std::size_t>(ab.a)) *
          poly_pow(x_minus_1728(p), static_cast<u64>(ab.b));
  }
  return acc;
}

FpPolynomial transfer_divisor_polynomial(const FpPolynomial& Ff, i64 k, i64 n, const PrimeModulus& p,
                                         const FpPolynomial& s_tilde) {
  if (n < 1) throw std::invalid_argument("transfer_divisor_polynomial needs n >= 1");
  const SupersingularExponents se = ssp_exponents(p);
  const ProductExponents ab = product_exponents(k, n * (static_cast<i64>(p.value()) - 1));
  const i64 x_exp = se.delta_p * (n / 3) + ab.a;
  const i64 y_exp = se.eps_p * (n / 2) + ab.b;
  return Ff * poly_pow(s_tilde, static_cast<u64>(n)) * FpPolynomial::monomial(p, static_cast<std::size_t>(x_exp)) *
         poly_pow(x_minus_1728(p), static_cast<u64>(y_exp));
}

FpPolynomial transfer_divisor_polynomial(const FpPolynomial& Ff, i64 k, i64 n, const PrimeModulus& p) {
  return transfer_divisor_polynomial(Ff, k, n, p, eisenstein_divisor_polynomial(p));
}

}  // namespace sslforms
