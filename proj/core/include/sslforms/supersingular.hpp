#pragma once

#include <vector>

#include "sslforms/finite_field.hpp"
#include "sslforms/polynomial.hpp"
#include "sslforms/qseries.hpp"

namespace sslforms {

/// S_p = x^{delta_p} (x - 1728)^{eps_p} S~_p.
struct SupersingularLocus {
  PrimeModulus p;
  FpPolynomial s_poly;
  FpPolynomial s_tilde;
};

/// Largest p accepted by supersingular_oracle.
inline constexpr u64 kOracleMaxPrime = 1000;

/// x^{p-1} coefficient of (x^3 + a x + b)^{(p-1)/2} over F_{p^2}.
Fp2Element hasse_invariant(const Fp2Element& a, const Fp2Element& b);

/// Hasse-invariant test on a curve with j-invariant j: y^2 = x^3 + 1 for
/// j = 0, y^2 = x^3 + x for j = 1728, else y^2 = x^3 + 3c x + 2c with
/// c = j / (1728 - j).
bool is_supersingular_j(const Fp2Element& j);

/// Supersingular j-invariants in F_{p^2}, sorted.
std::vector<Fp2Element> supersingular_j_invariants(const PrimeModulus& p);

/// prod (x - j) over the supersingular j found by scanning F_{p^2}. Throws
/// std::invalid_argument for p > kOracleMaxPrime and std::logic_error if the
/// product has a coefficient outside F_p.
SupersingularLocus supersingular_oracle(const PrimeModulus& p);

/// S~_p = F(E_{p-1}; x) from the constant series 1 at weight p - 1.
SupersingularLocus supersingular_deligne(const PrimeModulus& p);

/// Divisor polynomial of a binomial-family form versus S_p.
struct FamilyCrosscheck {
  bool agrees = false;
  /// Constant term of the weight p-1 form before normalization.
  u64 constant_term = 0;
  /// u with x^{delta_p} (x - 1728)^{eps_p} F = u * S_p (0 when they are not proportional).
  u64 scalar = 0;
  /// x^{delta_p} (x - 1728)^{eps_p} F of the normalized form.
  FpPolynomial family_poly;
  FpPolynomial s_poly;
};

/// Normalizes the weight p-1 member of `family` by its constant term, extracts
/// its divisor polynomial F and compares x^{delta_p} (x - 1728)^{eps_p} F with
/// the oracle's S_p up to a unit. Throws std::domain_error on a zero constant term.
FamilyCrosscheck crosscheck_families(const PrimeModulus& p, HalfFamily family);

}  // namespace sslforms
