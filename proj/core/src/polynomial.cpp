#include "sslforms/polynomial.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sslforms {

namespace {

constexpr u64 kFactorSeed = 0x5eed'c0de'2024'0001ULL;

std::vector<u64> mul_kernel(const PrimeModulus& p, const std::vector<u64>& a,
                            const std::vector<u64>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size() + b.size() - 1;
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

u64 hash_coefficients(const std::vector<u64>& c) {
  u64 h = 0xcbf29ce484222325ULL;
  for (u64 v : c) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool factor_less(const FpPolynomial& a, const FpPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.coefficients() < b.coefficients();
}

// Yun-style squarefree decomposition adapted to characteristic p.
void squarefree_parts(const FpPolynomial& f, int scale, std::vector<FactorPower>& out) {
  const PrimeModulus& p = f.modulus();
  if (f.degree() < 1) return;
  const FpPolynomial d = f.derivative();
  if (d.is_zero()) {
    // f(x) = g(x^p) = g(x)^p over F_p.
    std::vector<u64> root(f.coefficients().size() / p.value() + 1, 0);
    for (std::size_t i = 0; i < f.coefficients().size(); i += p.value()) root[i / p.value()] = f[i];
    squarefree_parts(FpPolynomial(p, std::move(root)), scale * static_cast<int>(p.value()), out);
    return;
  }
  FpPolynomial c = poly_gcd(f, d);
  FpPolynomial w = poly_divrem(f, c).quotient;
  int i = 1;
  while (w.degree() > 0) {
    FpPolynomial y = poly_gcd(w, c);
    FpPolynomial fac = poly_divrem(w, y).quotient;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * scale});
    w = std::move(y);
    c = poly_divrem(c, w).quotient;
    ++i;
  }
  if (c.degree() > 0) squarefree_parts(c, scale, out);
}

// Returns (product of all degree-d irreducible factors, d) pairs of a squarefree monic f.
std::vector<std::pair<FpPolynomial, int>> distinct_degree(FpPolynomial f) {
  const PrimeModulus& p = f.modulus();
  std::vector<std::pair<FpPolynomial, int>> out;
  const FpPolynomial x = FpPolynomial::monomial(p, 1);
  FpPolynomial h = poly_divrem(x, f).remainder;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = poly_pow_mod(h, p.value(), f);
    FpPolynomial g = poly_gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = poly_divrem(f, g).quotient;
      h = poly_divrem(h, f).remainder;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

// Cantor-Zassenhaus split of a squarefree monic f whose irreducible factors all have degree d.
void equal_degree(const FpPolynomial& f, int d, std::mt19937_64& rng, std::vector<FpPolynomial>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const PrimeModulus& p = f.modulus();
  const FpPolynomial one = FpPolynomial::constant(p, 1);
  std::uniform_int_distribution<u64> coeff(0, p.value() - 1);
  for (;;) {
    std::vector<u64> r(static_cast<std::size_t>(f.degree()));
    for (auto& v : r) v = coeff(rng);
    FpPolynomial a(p, std::move(r));
    if (a.degree() < 1) continue;
    FpPolynomial g = poly_gcd(a, f);
    if (g.degree() < 1) {
      // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
      FpPolynomial t = a;
      FpPolynomial s = a;
      for (int i = 1; i < d; ++i) {
        t = poly_pow_mod(t, p.value(), f);
        s = poly_divrem(s * t, f).remainder;
      }
      FpPolynomial b = poly_pow_mod(s, (p.value() - 1) / 2, f);
      g = poly_gcd(b - one, f);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(poly_divrem(f, g).quotient, d, rng, out);
      return;
    }
  }
}

}  // namespace

FpPolynomial::FpPolynomial(const PrimeModulus& p, std::vector<u64> residues) : p_(p), c_(std::move(residues)) {
  for (auto& v : c_) v = p_.reduce_unsigned(v);
  normalize();
}

FpPolynomial FpPolynomial::from_integers(const PrimeModulus& p, std::span<const i64> coeffs) {
  std::vector<u64> r(coeffs.size());
  std::transform(coeffs.begin(), coeffs.end(), r.begin(), [&](i64 v) { return p.reduce(v); });
  return FpPolynomial(p, std::move(r));
}

FpPolynomial FpPolynomial::constant(const PrimeModulus& p, i64 c) { return FpPolynomial(p, {p.reduce(c)}); }

FpPolynomial FpPolynomial::monomial(const PrimeModulus& p, std::size_t d, u64 c) {
  std::vector<u64> r(d + 1, 0);
  r[d] = c;
  return FpPolynomial(p, std::move(r));
}

FpPolynomial FpPolynomial::linear(const PrimeModulus& p, i64 root) {
  return FpPolynomial(p, {p.neg(p.reduce(root)), 1});
}

void FpPolynomial::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void FpPolynomial::require_same(const FpPolynomial& o) const {
  if (!(o.p_ == p_)) throw std::invalid_argument("FpPolynomial: modulus mismatch");
}

FpPolynomial FpPolynomial::monic() const {
  if (c_.empty()) return *this;
  return scaled(p_.inv(c_.back()));
}

FpPolynomial FpPolynomial::derivative() const {
  if (c_.size() < 2) return FpPolynomial(p_);
  std::vector<u64> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = p_.mul(c_[i], p_.reduce_unsigned(i));
  return FpPolynomial(p_, std::move(r));
}

FpPolynomial FpPolynomial::scaled(u64 s) const {
  std::vector<u64> r(c_);
  for (auto& v : r) v = p_.mul(v, s);
  return FpPolynomial(p_, std::move(r));
}

u64 FpPolynomial::evaluate(u64 x) const {
  u64 acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = p_.add(p_.mul(acc, x), *it);
  return acc;
}

FpPolynomial FpPolynomial::operator+(const FpPolynomial& o) const {
  require_same(o);
  std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = p_.add((*this)[i], o[i]);
  return FpPolynomial(p_, std::move(r));
}

FpPolynomial FpPolynomial::operator-(const FpPolynomial& o) const {
  require_same(o);
  std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = p_.sub((*this)[i], o[i]);
  return FpPolynomial(p_, std::move(r));
}

FpPolynomial FpPolynomial::operator*(const FpPolynomial& o) const {
  require_same(o);
  return FpPolynomial(p_, mul_kernel(p_, c_, o.c_));
}

std::string FpPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const u64 c = c_[k];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (k == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << 'x';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

FpPolynomial poly_mul(const FpPolynomial& f, const FpPolynomial& g) { return f * g; }

DivRem poly_divrem(const FpPolynomial& f, const FpPolynomial& g) {
  if (!(f.modulus() == g.modulus())) throw std::invalid_argument("poly_divrem: modulus mismatch");
  if (g.is_zero()) throw std::domain_error("poly_divrem: division by the zero polynomial");
  const PrimeModulus& p = f.modulus();
  if (f.degree() < g.degree()) return {FpPolynomial(p), f};
  std::vector<u64> rem = f.coefficients();
  const auto& gc = g.coefficients();
  const std::size_t dg = gc.size() - 1;
  const u64 lead_inv = p.inv(gc.back());
  std::vector<u64> quot(rem.size() - dg, 0);
  for (std::size_t k = rem.size(); k-- > dg;) {
    const u64 q = p.mul(rem[k], lead_inv);
    quot[k - dg] = q;
    if (q == 0) continue;
    const u64 nq = p.neg(q);
    for (std::size_t i = 0; i <= dg; ++i) rem[k - dg + i] = p.add(rem[k - dg + i], p.mul(nq, gc[i]));
  }
  rem.resize(dg);
  return {FpPolynomial(p, std::move(quot)), FpPolynomial(p, std::move(rem))};
}

FpPolynomial poly_pow(const FpPolynomial& base, u64 e) {
  FpPolynomial r = FpPolynomial::constant(base.modulus(), 1);
  FpPolynomial x = base;
  while (e) {
    if (e & 1) r = r * x;
    e >>= 1;
    if (e) x = x * x;
  }
  return r;
}

FpPolynomial poly_pow_mod(const FpPolynomial& base, u64 e, const FpPolynomial& m) {
  if (m.degree() < 1) throw std::domain_error("poly_pow_mod: modulus polynomial must have degree >= 1");
  FpPolynomial r = FpPolynomial::constant(base.modulus(), 1);
  FpPolynomial x = poly_divrem(base, m).remainder;
  while (e) {
    if (e & 1) r = poly_divrem(r * x, m).remainder;
    e >>= 1;
    if (e) x = poly_divrem(x * x, m).remainder;
  }
  return r;
}

FpPolynomial poly_gcd(FpPolynomial a, FpPolynomial b) {
  while (!b.is_zero()) {
    FpPolynomial r = poly_divrem(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

int poly_multiplicity(const FpPolynomial& f, const FpPolynomial& g) {
  if (g.degree() < 1) throw std::domain_error("poly_multiplicity: factor must have positive degree");
  if (f.is_zero()) throw std::domain_error("poly_multiplicity: zero polynomial");
  int e = 0;
  FpPolynomial cur = f;
  for (;;) {
    DivRem qr = poly_divrem(cur, g);
    if (!qr.remainder.is_zero()) return e;
    cur = std::move(qr.quotient);
    ++e;
  }
}

FpPolynomial Factorization::expand(const PrimeModulus& p) const {
  FpPolynomial r = FpPolynomial::constant(p, static_cast<i64>(unit));
  for (const auto& fp : factors) r = r * poly_pow(fp.factor, static_cast<u64>(fp.multiplicity));
  return r;
}

int Factorization::multiplicity_of(const FpPolynomial& factor) const {
  for (const auto& fp : factors) {
    if (fp.factor == factor) return fp.multiplicity;
  }
  return 0;
}

std::string Factorization::to_string() const {
  if (factors.empty()) return std::to_string(unit);
  const bool sole = unit == 1 && factors.size() == 1;
  std::ostringstream os;
  bool first = true;
  if (unit != 1) {
    os << unit;
    first = false;
  }
  for (const auto& fp : factors) {
    if (!first) os << '*';
    first = false;
    const FpPolynomial& g = fp.factor;
    const bool bare_x = g.degree() == 1 && g[0] == 0;
    const bool parens = !bare_x && (fp.multiplicity > 1 || !sole);
    if (parens) os << '(';
    os << g.to_string();
    if (parens) os << ')';
    if (fp.multiplicity > 1) os << '^' << fp.multiplicity;
  }
  return os.str();
}

Factorization poly_factor(const FpPolynomial& f) {
  if (f.is_zero()) throw std::domain_error("poly_factor: zero polynomial");
  Factorization out;
  out.unit = f.leading_coefficient();
  std::vector<FactorPower> sqf;
  squarefree_parts(f.monic(), 1, sqf);

  std::mt19937_64 rng(kFactorSeed ^ hash_coefficients(f.coefficients()));
  for (const auto& part : sqf) {
    for (const auto& [block, d] : distinct_degree(part.factor)) {
      std::vector<FpPolynomial> irreducibles;
      equal_degree(block, d, rng, irreducibles);
      for (auto& g : irreducibles) out.factors.push_back({g.monic(), part.multiplicity});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorPower& a, const FactorPower& b) { return factor_less(a.factor, b.factor); });
  std::vector<FactorPower> merged;
  for (auto& fp : out.factors) {
    if (!merged.empty() && merged.back().factor == fp.factor) {
      merged.back().multiplicity += fp.multiplicity;
    } else {
      merged.push_back(std::move(fp));
    }
  }
  out.factors = std::move(merged);
  return out;
}

}  // namespace sslforms
