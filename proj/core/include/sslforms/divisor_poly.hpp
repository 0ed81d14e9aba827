#pragma once

#include <cstddef>

#include "sslforms/finite_field.hpp"
#include "sslforms/polynomial.hpp"
#include "sslforms/qseries.hpp"

namespace sslforms {

/// k = 12m + 4*delta + 6*eps with delta in {0,1,2}, eps in {0,1}; m = dim S_k.
struct WeightProfile {
  i64 k = 0;
  i64 m = 0;
  int delta = 0;
  int eps = 0;
  friend bool operator==(const WeightProfile&, const WeightProfile&) = default;
};

/// Throws std::invalid_argument for odd k or k < 4.
WeightProfile weight_profile(i64 k);

/// f = Delta^m E4^delta E6^eps F(j). `F` has its trailing zeros stripped, so
/// its degree may be below profile.m (it is exactly m iff f has nonzero
/// constant term).
struct DivisorDecomposition {
  WeightProfile profile;
  FpPolynomial F;
};

/// Greedy extraction of F(f; x) from the first m + 1 coefficients of f,
/// using the weight tag carried by f. Throws std::invalid_argument if f has
/// precision below m + 1.
DivisorDecomposition divisor_polynomial(const QExpansion& f);
DivisorDecomposition divisor_polynomial(const QExpansion& f, const WeightProfile& profile);

/// Delta^m E4^delta E6^eps F(j) to the given precision (the inverse of extraction).
QExpansion recompose(const DivisorDecomposition& d, const PrimeModulus& p, std::size_t precision);

/// (a, b) with F(fg) = x^a (x - 1728)^b F(f) F(g) for weights k1, k2. Depends
/// only on k1, k2 mod 12 and is symmetric.
struct ProductExponents {
  int a = 0;
  int b = 0;
  friend bool operator==(const ProductExponents&, const ProductExponents&) = default;
};
ProductExponents product_exponents(i64 k1, i64 k2);

/// delta_p = [p = 2 mod 3], eps_p = [p = 3 mod 4]: the forced roots 0 and 1728 of S_p.
struct SupersingularExponents {
  int delta_p = 0;
  int eps_p = 0;
  friend bool operator==(const SupersingularExponents&, const SupersingularExponents&) = default;
};
SupersingularExponents ssp_exponents(const PrimeModulus& p);

/// x - 1728 with 1728 reduced mod p.
FpPolynomial x_minus_1728(const PrimeModulus& p);

/// F(E_{p-1}; x) mod p, extracted from the constant series 1 tagged with
/// weight p - 1 (E_{p-1} is congruent to 1 mod p).
FpPolynomial eisenstein_divisor_polynomial(const PrimeModulus& p);

/// F(E_{p-1}^n; x) = base^n x^{delta_p floor(n/3)} (x - 1728)^{eps_p floor(n/2)}.
FpPolynomial epn_divisor_polynomial(const PrimeModulus& p, i64 n, const FpPolynomial& base);
/// The same polynomial built one factor of E_{p-1} at a time from the product table.
FpPolynomial epn_divisor_polynomial_inductive(const PrimeModulus& p, i64 n, const FpPolynomial& base);

/// F(g; x) for g congruent to f with weight(g) = k + n(p-1):
/// F(f) * S~_p^n * x^{delta_p floor(n/3) + a} * (x - 1728)^{eps_p floor(n/2) + b},
/// (a, b) = product_exponents(k, n(p-1)).
FpPolynomial transfer_divisor_polynomial(const FpPolynomial& Ff, i64 k, i64 n, const PrimeModulus& p,
                                         const FpPolynomial& s_tilde);
/// As above, computing S~_p through eisenstein_divisor_polynomial.
FpPolynomial transfer_divisor_polynomial(const FpPolynomial& Ff, i64 k, i64 n, const PrimeModulus& p);

}  // namespace sslforms
