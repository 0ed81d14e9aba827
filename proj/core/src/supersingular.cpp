#include "sslforms/supersingular.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sslforms/divisor_poly.hpp"

namespace sslforms {

namespace {

std::vector<Fp2Element> powers(const Fp2Element& x, std::size_t n) {
  std::vector<Fp2Element> out;
  out.reserve(n + 1);
  out.push_back(Fp2Element::from_base(x.field(), 1));
  for (std::size_t i = 1; i <= n; ++i) out.push_back(out.back() * x);
  return out;
}

// prod (x - r) over F_{p^2}, lowest degree first.
std::vector<Fp2Element> product_of_linears(const Fp2Field& f, const std::vector<Fp2Element>& roots) {
  std::vector<Fp2Element> c{Fp2Element::from_base(f, 1)};
  for (const auto& r : roots) {
    std::vector<Fp2Element> next(c.size() + 1, Fp2Element::from_base(f, 0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = next[i + 1] + c[i];
      next[i] = next[i] - c[i] * r;
    }
    c = std::move(next);
  }
  return c;
}

FpPolynomial forced_factor(const PrimeModulus& p) {
  const SupersingularExponents se = ssp_exponents(p);
  FpPolynomial g = FpPolynomial::constant(p, 1);
  if (se.delta_p) g = g * FpPolynomial::monomial(p, 1);
  if (se.eps_p) g = g * x_minus_1728(p);
  return g;
}

}  // namespace

Fp2Element hasse_invariant(const Fp2Element& a, const Fp2Element& b) {
  const Fp2Field& f = a.field();
  const PrimeModulus& p = f.base();
  const u64 e = (p.value() - 1) / 2;
  // Terms x^{3i} (a x)^j b^l with i + j + l = e and 3i + j = 2e, so j = 2e - 3i and l = 2i - e.
  std::vector<u64> fact(e + 1, 1);
  for (u64 i = 1; i <= e; ++i) fact[i] = p.mul(fact[i - 1], i);
  const auto a_pow = powers(a, e);
  const auto b_pow = powers(b, e);
  Fp2Element sum = Fp2Element::from_base(f, 0);
  for (u64 i = (e + 1) / 2; 3 * i <= 2 * e; ++i) {
    const u64 j = 2 * e - 3 * i;
    const u64 l = 2 * i - e;
    const u64 coeff = p.mul(fact[e], p.inv(p.mul(fact[i], p.mul(fact[j], fact[l]))));
    sum = sum + Fp2Element::from_base(f, static_cast<i64>(coeff)) * a_pow[j] * b_pow[l];
  }
  return sum;
}

bool is_supersingular_j(const Fp2Element& j) {
  const Fp2Field& f = j.field();
  const Fp2Element zero = Fp2Element::from_base(f, 0);
  const Fp2Element one = Fp2Element::from_base(f, 1);
  const Fp2Element k1728 = Fp2Element::from_base(f, 1728);
  if (j.is_zero()) return hasse_invariant(zero, one).is_zero();
  if (j == k1728) return hasse_invariant(one, zero).is_zero();
  const Fp2Element c = j / (k1728 - j);
  return hasse_invariant(Fp2Element::from_base(f, 3) * c, Fp2Element::from_base(f, 2) * c).is_zero();
}

std::vector<Fp2Element> supersingular_j_invariants(const PrimeModulus& p) {
  const Fp2Field f(p);
  std::vector<Fp2Element> roots;
  for (u64 a = 0; a < p.value(); ++a) {
    for (u64 b = 0; b < p.value(); ++b) {
      const Fp2Element j(f, a, b);
      if (is_supersingular_j(j)) roots.push_back(j);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

SupersingularLocus supersingular_oracle(const PrimeModulus& p) {
  if (p.value() > kOracleMaxPrime) {
    throw std::invalid_argument("supersingular_oracle: p = " + std::to_string(p.value()) + " exceeds " +
                                std::to_string(kOracleMaxPrime));
  }
  const Fp2Field f(p);
  const auto prod = product_of_linears(f, supersingular_j_invariants(p));
  std::vector<u64> coeffs;
  coeffs.reserve(prod.size());
  for (std::size_t i = 0; i < prod.size(); ++i) {
    if (!prod[i].in_base_field()) {
      throw std::logic_error("supersingular_oracle: coefficient of x^" + std::to_string(i) + " is not in F_p");
    }
    coeffs.push_back(prod[i].a());
  }
  FpPolynomial s(p, std::move(coeffs));
  DivRem dr = poly_divrem(s, forced_factor(p));
  if (!dr.remainder.is_zero()) throw std::logic_error("supersingular_oracle: forced roots 0/1728 missing");
  return {p, std::move(s), std::move(dr.quotient)};
}

SupersingularLocus supersingular_deligne(const PrimeModulus& p) {
  FpPolynomial s_tilde = eisenstein_divisor_polynomial(p);
  FpPolynomial s = forced_factor(p) * s_tilde;
  return {p, std::move(s), std::move(s_tilde)};
}

FamilyCrosscheck crosscheck_families(const PrimeModulus& p, HalfFamily family) {
  const WeightProfile w = weight_profile(static_cast<i64>(p.value()) - 1);
  const QExpansion form = binomial_half_expansion(p, family, static_cast<std::size_t>(w.m) + 1);
  FamilyCrosscheck out{false, form[0], 0, FpPolynomial(p), supersingular_oracle(p).s_poly};
  if (out.constant_term == 0) throw std::domain_error("crosscheck_families: constant term is zero");
  const QExpansion normalized = form.scaled(p.inv(out.constant_term));
  out.family_poly = forced_factor(p) * divisor_polynomial(normalized, w).F;
  if (out.family_poly.degree() == out.s_poly.degree() && !out.family_poly.is_zero()) {
    const u64 u = out.family_poly.leading_coefficient();
    if (out.family_poly == out.s_poly.scaled(u)) {
      out.agrees = true;
      out.scalar = u;
    }
  }
  return out;
}

}  // namespace sslforms
