#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sslforms {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// A prime p >= 5. All residues handled by the library live in [0, p).
///
/// The modulus is capped at 2^31 so that a product of two residues fits in a
/// u64 with headroom for a few lazy accumulations.
class PrimeModulus {
 public:
  static constexpr u64 kMaxPrime = (u64{1} << 31) - 1;

  /// Throws std::invalid_argument unless p is a prime in [5, kMaxPrime].
  explicit PrimeModulus(u64 p);

  u64 value() const noexcept { return p_; }

  u64 reduce(i64 x) const noexcept {
    i64 r = x % static_cast<i64>(p_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
  }
  u64 reduce_unsigned(u64 x) const noexcept { return x % p_; }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const noexcept { return (a * b) % p_; }
  u64 pow(u64 base, u64 e) const noexcept;
  /// Throws std::domain_error on zero.
  u64 inv(u64 a) const;

  /// Number of products (p-1)^2 that can be summed in a u64 before reducing.
  u64 lazy_budget() const noexcept { return lazy_budget_; }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  u64 p_;
  u64 lazy_budget_;
};

bool is_prime(u64 n) noexcept;

/// Euler's criterion: 0 if p | a, 1 for a nonzero square, -1 otherwise.
int legendre_symbol(i64 a, const PrimeModulus& p);

/// Smallest positive quadratic non-residue mod p.
u64 smallest_nonresidue(const PrimeModulus& p);

/// Residue class in F_p.
class FpElement {
 public:
  FpElement(const PrimeModulus& p, i64 v) : p_(p), v_(p.reduce(v)) {}
  static FpElement from_residue(const PrimeModulus& p, u64 r) { return FpElement(p, r, Raw{}); }

  u64 value() const noexcept { return v_; }
  const PrimeModulus& modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return v_ == 0; }

  FpElement operator+(const FpElement& o) const { return raw(p_.add(v_, check(o).v_)); }
  FpElement operator-(const FpElement& o) const { return raw(p_.sub(v_, check(o).v_)); }
  FpElement operator*(const FpElement& o) const { return raw(p_.mul(v_, check(o).v_)); }
  FpElement operator/(const FpElement& o) const { return raw(p_.mul(v_, p_.inv(check(o).v_))); }
  FpElement operator-() const { return raw(p_.neg(v_)); }
  FpElement pow(u64 e) const { return raw(p_.pow(v_, e)); }
  FpElement inverse() const { return raw(p_.inv(v_)); }

  friend bool operator==(const FpElement&, const FpElement&) = default;

 private:
  struct Raw {};
  FpElement(const PrimeModulus& p, u64 r, Raw) : p_(p), v_(r) {}
  FpElement raw(u64 r) const { return FpElement(p_, r, Raw{}); }
  const FpElement& check(const FpElement& o) const {
    if (!(o.p_ == p_)) throw std::invalid_argument("FpElement: modulus mismatch");
    return o;
  }

  PrimeModulus p_;
  u64 v_;
};

/// F_{p^2} = F_p[w]/(w^2 - d) with d the smallest non-residue.
class Fp2Field {
 public:
  explicit Fp2Field(const PrimeModulus& p) : p_(p), d_(smallest_nonresidue(p)) {}

  const PrimeModulus& base() const noexcept { return p_; }
  u64 nonresidue() const noexcept { return d_; }

  friend bool operator==(const Fp2Field&, const Fp2Field&) = default;

 private:
  PrimeModulus p_;
  u64 d_;
};

/// a + b*w with w^2 = d.
class Fp2Element {
 public:
  Fp2Element(const Fp2Field& field, u64 a, u64 b)
      : f_(field), a_(field.base().reduce_unsigned(a)), b_(field.base().reduce_unsigned(b)) {}
  static Fp2Element from_base(const Fp2Field& field, i64 a) {
    return Fp2Element(field, field.base().reduce(a), 0);
  }

  u64 a() const noexcept { return a_; }
  u64 b() const noexcept { return b_; }
  const Fp2Field& field() const noexcept { return f_; }
  bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }
  bool in_base_field() const noexcept { return b_ == 0; }

  Fp2Element operator+(const Fp2Element& o) const;
  Fp2Element operator-(const Fp2Element& o) const;
  Fp2Element operator*(const Fp2Element& o) const;
  Fp2Element operator/(const Fp2Element& o) const { return *this * o.inverse(); }
  Fp2Element operator-() const;
  Fp2Element pow(u64 e) const;
  /// Throws std::domain_error on zero.
  Fp2Element inverse() const;
  /// x -> x^p, computed as a - b*w.
  Fp2Element frobenius() const;

  friend bool operator==(const Fp2Element&, const Fp2Element&) = default;
  friend auto operator<=>(const Fp2Element& x, const Fp2Element& y) {
    if (auto c = x.a_ <=> y.a_; c != 0) return c;
    return x.b_ <=> y.b_;
  }

 private:
  Fp2Field f_;
  u64 a_;
  u64 b_;
};

std::ostream& operator<<(std::ostream& os, const FpElement& x);
std::ostream& operator<<(std::ostream& os, const Fp2Element& x);

}  // namespace sslforms
