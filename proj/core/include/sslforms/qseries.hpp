#pragma once

#include <cstddef>
#include <vector>

#include "sslforms/finite_field.hpp"

namespace sslforms {

/// Truncated q-expansion c_0 + c_1 q + ... + c_{N-1} q^{N-1} over F_p, tagged
/// with the (even) weight of the modular form it reduces from.
class QExpansion {
 public:
  /// Throws std::invalid_argument if the coefficient list is empty or the weight is odd.
  QExpansion(const PrimeModulus& p, int weight, std::vector<u64> coefficients);
  static QExpansion zero(const PrimeModulus& p, int weight, std::size_t precision);
  static QExpansion constant(const PrimeModulus& p, int weight, std::size_t precision, i64 c);

  const PrimeModulus& modulus() const noexcept { return p_; }
  int weight() const noexcept { return weight_; }
  std::size_t precision() const noexcept { return c_.size(); }
  const std::vector<u64>& coefficients() const noexcept { return c_; }
  u64 operator[](std::size_t n) const { return c_.at(n); }
  bool is_zero() const noexcept;

  QExpansion truncated(std::size_t n) const;
  QExpansion with_weight(int weight) const { return QExpansion(p_, weight, c_); }
  QExpansion scaled(u64 s) const;

  /// Coefficientwise sum; weights must agree, precision is the minimum.
  QExpansion operator+(const QExpansion& o) const;
  QExpansion operator-(const QExpansion& o) const;

  friend bool operator==(const QExpansion&, const QExpansion&) = default;

 private:
  PrimeModulus p_;
  int weight_;
  std::vector<u64> c_;
};

/// q^v (c_0 + c_1 q + ... + c_{N-1} q^{N-1}) with c_0 != 0 unless every stored
/// coefficient is zero. Known through q^{v+N-1}.
class LaurentExpansion {
 public:
  LaurentExpansion(const PrimeModulus& p, int weight, int valuation, std::vector<u64> coefficients);
  explicit LaurentExpansion(const QExpansion& f);

  const PrimeModulus& modulus() const noexcept { return p_; }
  int weight() const noexcept { return weight_; }
  int valuation() const noexcept { return v_; }
  /// Number of stored coefficients (relative precision).
  std::size_t precision() const noexcept { return c_.size(); }
  /// Exponent of the last known coefficient.
  int last_exponent() const noexcept { return v_ + static_cast<int>(c_.size()) - 1; }
  const std::vector<u64>& coefficients() const noexcept { return c_; }
  /// Coefficient of q^e; zero below the valuation. Throws past the known range.
  u64 coefficient(int e) const;
  bool is_zero() const noexcept;

  /// Drops negative-exponent terms; requires last_exponent() >= 0.
  QExpansion to_qexpansion() const;

  friend bool operator==(const LaurentExpansion&, const LaurentExpansion&) = default;

 private:
  void normalize();

  PrimeModulus p_;
  int weight_;
  int v_;
  std::vector<u64> c_;
};

/// Product truncated to the smaller precision; weights add.
QExpansion series_mul(const QExpansion& f, const QExpansion& g);
LaurentExpansion series_mul(const LaurentExpansion& f, const LaurentExpansion& g);
/// Inverse; weight negates. Throws std::domain_error if the series is zero to precision.
LaurentExpansion series_inv(const QExpansion& f);
LaurentExpansion series_inv(const LaurentExpansion& f);
/// Power-series inverse of a unit series (c_0 != 0); throws std::domain_error otherwise.
QExpansion series_inv_unit(const QExpansion& f);
QExpansion series_pow(const QExpansion& f, u64 e);
LaurentExpansion series_pow(const LaurentExpansion& f, int e);

/// Raw truncated product of coefficient vectors, used by the hot loops elsewhere.
std::vector<u64> truncated_product(const PrimeModulus& p, const std::vector<u64>& a,
                                   const std::vector<u64>& b, std::size_t n);

/// prod_{n>=1} (1 - q^n)^24 = Delta/q, to precision N.
QExpansion delta_over_q(const PrimeModulus& p, std::size_t precision);
/// Delta = q prod (1 - q^n)^24 (weight 12).
QExpansion delta_series(const PrimeModulus& p, std::size_t precision);

enum class Eisenstein { E4, E6 };
/// E4 = 1 + 240 sum sigma_3(n) q^n, E6 = 1 - 504 sum sigma_5(n) q^n.
QExpansion eisenstein_series(Eisenstein which, const PrimeModulus& p, std::size_t precision);

/// j = E4^3 / Delta as a Laurent series q^{-1} + 744 + ..., with `precision` stored terms.
LaurentExpansion j_series(const PrimeModulus& p, std::size_t precision);

/// Theta = q d/dq: c_n -> n c_n, weight k -> k + p + 1.
QExpansion theta_operator(const QExpansion& f);

enum class HalfFamily { DeuringHasse, KanekoZagierG };

/// Coefficient of x^d in (1 - 3E4 x^4 + 2E6 x^6)^e, with e = (p-1)/2 for
/// Deuring-Hasse and e = -1/2 for Kaneko-Zagier G. The result has weight d.
QExpansion binomial_half_coefficient(const PrimeModulus& p, HalfFamily family, int d, std::size_t precision);
/// The weight p-1 member of the family (d = p - 1).
QExpansion binomial_half_expansion(const PrimeModulus& p, HalfFamily family, std::size_t precision);

}  // namespace sslforms
