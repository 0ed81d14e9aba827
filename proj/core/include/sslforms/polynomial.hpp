#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sslforms/finite_field.hpp"

namespace sslforms {

/// Dense univariate polynomial over F_p, lowest degree first.
///
/// Trailing zeros are stripped on every construction, so two polynomials are
/// equal iff their modulus and coefficient vectors are equal. The zero
/// polynomial has no coefficients and degree() == -1.
class FpPolynomial {
 public:
  explicit FpPolynomial(const PrimeModulus& p) : p_(p) {}
  FpPolynomial(const PrimeModulus& p, std::vector<u64> residues);
  /// Coefficients given as arbitrary signed integers, reduced mod p.
  static FpPolynomial from_integers(const PrimeModulus& p, std::span<const i64> coeffs);
  static FpPolynomial from_integers(const PrimeModulus& p, std::initializer_list<i64> coeffs) {
    return from_integers(p, std::span<const i64>(coeffs.begin(), coeffs.size()));
  }
  static FpPolynomial constant(const PrimeModulus& p, i64 c);
  /// c * x^d.
  static FpPolynomial monomial(const PrimeModulus& p, std::size_t d, u64 c = 1);
  /// x - root.
  static FpPolynomial linear(const PrimeModulus& p, i64 root);

  const PrimeModulus& modulus() const noexcept { return p_; }
  const std::vector<u64>& coefficients() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  /// Coefficient of x^i (zero past the degree).
  u64 operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  FpElement coefficient(std::size_t i) const { return FpElement::from_residue(p_, (*this)[i]); }
  u64 leading_coefficient() const noexcept { return c_.empty() ? 0 : c_.back(); }

  FpPolynomial monic() const;
  FpPolynomial derivative() const;
  FpPolynomial scaled(u64 s) const;
  u64 evaluate(u64 x) const;

  FpPolynomial operator+(const FpPolynomial& o) const;
  FpPolynomial operator-(const FpPolynomial& o) const;
  FpPolynomial operator*(const FpPolynomial& o) const;
  FpPolynomial operator-() const { return scaled(p_.neg(1)); }

  friend bool operator==(const FpPolynomial&, const FpPolynomial&) = default;

  /// Descending-degree display, e.g. "x^2+31*x+31".
  std::string to_string() const;

 private:
  void normalize();
  void require_same(const FpPolynomial& o) const;

  PrimeModulus p_;
  std::vector<u64> c_;
};

struct DivRem {
  FpPolynomial quotient;
  FpPolynomial remainder;
};

/// Throws std::invalid_argument on modulus mismatch.
FpPolynomial poly_mul(const FpPolynomial& f, const FpPolynomial& g);
/// f = q*g + r with deg r < deg g. Throws std::domain_error if g is zero.
DivRem poly_divrem(const FpPolynomial& f, const FpPolynomial& g);
FpPolynomial poly_pow(const FpPolynomial& base, u64 e);
/// base^e mod m by binary exponentiation. Throws std::domain_error unless deg m >= 1.
FpPolynomial poly_pow_mod(const FpPolynomial& base, u64 e, const FpPolynomial& m);
/// Monic gcd (zero if both inputs are zero).
FpPolynomial poly_gcd(FpPolynomial a, FpPolynomial b);
/// Largest e with g^e | f; g must have positive degree and f must be nonzero.
int poly_multiplicity(const FpPolynomial& f, const FpPolynomial& g);

struct FactorPower {
  FpPolynomial factor;
  int multiplicity;
  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

/// unit * prod factor^multiplicity, each factor monic irreducible.
struct Factorization {
  u64 unit = 0;
  std::vector<FactorPower> factors;

  FpPolynomial expand(const PrimeModulus& p) const;
  /// Multiplicity of a monic factor (0 if absent).
  int multiplicity_of(const FpPolynomial& factor) const;
  /// e.g. "2*x^184*(x+4)^552*(x+7)*(x+20)^276"; "1" for the unit polynomial.
  std::string to_string() const;
};

/// Squarefree + distinct-degree + equal-degree factorization. The equal-degree
/// step draws from a PRNG seeded by a constant mixed with a hash of the input,
/// so output is reproducible. Factors are sorted by degree, then by coefficient
/// vector (constant term first). Throws std::domain_error on the zero polynomial.
Factorization poly_factor(const FpPolynomial& f);

}  // namespace sslforms
