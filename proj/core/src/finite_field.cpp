#include "sslforms/finite_field.hpp"

#include <limits>
#include <ostream>

namespace sslforms {

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (u64 d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(u64 p) : p_(p), lazy_budget_(1) {
  if (p < 5 || p > kMaxPrime || !is_prime(p)) {
    throw std::invalid_argument("modulus must be a prime p >= 5 (got " + std::to_string(p) + ")");
  }
  const u64 sq = (p - 1) * (p - 1);
  lazy_budget_ = std::numeric_limits<u64>::max() / sq - 1;
  if (lazy_budget_ == 0) lazy_budget_ = 1;
}

u64 PrimeModulus::pow(u64 base, u64 e) const noexcept {
  u64 r = 1 % p_;
  u64 x = base % p_;
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

u64 PrimeModulus::inv(u64 a) const {
  a %= p_;
  if (a == 0) throw std::domain_error("inverse of zero mod " + std::to_string(p_));
  return pow(a, p_ - 2);
}

int legendre_symbol(i64 a, const PrimeModulus& p) {
  const u64 r = p.reduce(a);
  if (r == 0) return 0;
  return p.pow(r, (p.value() - 1) / 2) == 1 ? 1 : -1;
}

u64 smallest_nonresidue(const PrimeModulus& p) {
  for (u64 d = 2;; ++d) {
    if (legendre_symbol(static_cast<i64>(d), p) == -1) return d;
  }
}

Fp2Element Fp2Element::operator+(const Fp2Element& o) const {
  const auto& p = f_.base();
  return Fp2Element(f_, p.add(a_, o.a_), p.add(b_, o.b_));
}

Fp2Element Fp2Element::operator-(const Fp2Element& o) const {
  const auto& p = f_.base();
  return Fp2Element(f_, p.sub(a_, o.a_), p.sub(b_, o.b_));
}

Fp2Element Fp2Element::operator-() const {
  const auto& p = f_.base();
  return Fp2Element(f_, p.neg(a_), p.neg(b_));
}

Fp2Element Fp2Element::operator*(const Fp2Element& o) const {
  const auto& p = f_.base();
  const u64 bb = p.mul(b_, o.b_);
  const u64 re = p.add(p.mul(a_, o.a_), p.mul(bb, f_.nonresidue()));
  const u64 im = p.add(p.mul(a_, o.b_), p.mul(b_, o.a_));
  return Fp2Element(f_, re, im);
}

Fp2Element Fp2Element::pow(u64 e) const {
  Fp2Element r(f_, 1, 0);
  Fp2Element x = *this;
  while (e) {
    if (e & 1) r = r * x;
    x = x * x;
    e >>= 1;
  }
  return r;
}

Fp2Element Fp2Element::inverse() const {
  // (a + bw)^{-1} = (a - bw) / (a^2 - d b^2); the norm is nonzero because d is a non-residue.
  const auto& p = f_.base();
  const u64 norm = p.sub(p.mul(a_, a_), p.mul(f_.nonresidue(), p.mul(b_, b_)));
  if (norm == 0) throw std::domain_error("inverse of zero in F_{p^2}");
  const u64 ni = p.inv(norm);
  return Fp2Element(f_, p.mul(a_, ni), p.mul(p.neg(b_), ni));
}

Fp2Element Fp2Element::frobenius() const {
  return Fp2Element(f_, a_, f_.base().neg(b_));
}

std::ostream& operator<<(std::ostream& os, const FpElement& x) { return os << x.value(); }

std::ostream& operator<<(std::ostream& os, const Fp2Element& x) {
  return os << x.a() << '+' << x.b() << "*w";
}

}  // namespace sslforms
