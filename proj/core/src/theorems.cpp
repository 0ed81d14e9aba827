#include "sslforms/theorems.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "sslforms/divisor_poly.hpp"
#include "sslforms/supersingular.hpp"

namespace sslforms {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(std::chrono::microseconds& sink) : sink_(sink), start_(Clock::now()) {}
  ~Stopwatch() { sink_ = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start_); }
  Stopwatch(const Stopwatch&) = delete;
  Stopwatch& operator=(const Stopwatch&) = delete;

 private:
  std::chrono::microseconds& sink_;
  Clock::time_point start_;
};

i64 weight_tag(i64 k, FormKind kind, const PrimeModulus& p) {
  const auto q = static_cast<i64>(p.value());
  return kind == FormKind::TraceForm ? k : k + q * q - 1;
}

QExpansion form_of(i64 k, FormKind kind, const PrimeModulus& p, std::size_t precision, TraceEngine& engine) {
  return kind == FormKind::TraceForm ? engine.trace_form(k, p, precision) : engine.modified_trace_form(k, p, precision);
}

std::size_t sturm_precision(i64 tag) { return static_cast<std::size_t>(std::max<i64>(sturm_bound(tag) + 1, 2)); }

std::string claim_label(const CongruenceClaim& c) {
  const char* t = c.kind == FormKind::TraceForm ? "T" : "T^";
  return std::string(t) + "_" + std::to_string(c.k2) + " = " + std::to_string(c.m) + "*" + t + "_" +
         std::to_string(c.k1) + " mod " + std::to_string(c.p.value());
}

// Compares two precomputed expansions over n = 1..bound.
void compare_scaled(VerificationReport& r, const QExpansion& lower, const QExpansion& upper, u64 m, i64 bound,
                    const std::string& label) {
  const PrimeModulus& p = lower.modulus();
  for (i64 n = 1; n <= bound; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const u64 expected = p.mul(m, lower[i]);
    ++r.checks;
    if (upper[i] != expected) {
      r.fail({label + ", coefficient of q^" + std::to_string(n), std::to_string(expected), std::to_string(upper[i])});
    }
  }
}

void absorb(VerificationReport& total, const VerificationReport& part, const CongruenceClaim& claim) {
  total.checks += part.checks;
  total.claims.push_back({claim, part.pass});
  for (const auto& w : part.witnesses) total.fail(w);
  total.dropped_witnesses += part.dropped_witnesses;
  if (!part.pass) total.pass = false;
}

void require_small_prime(const PrimeModulus& p, const char* which) {
  if (p.value() > 11) {
    throw std::invalid_argument(std::string("case ") + which + " is stated only for p <= 11, got p = " +
                                std::to_string(p.value()));
  }
}

FpPolynomial extract_F(i64 k, FormKind kind, const PrimeModulus& p, TraceEngine& engine) {
  const WeightProfile w = weight_profile(weight_tag(k, kind, p));
  const QExpansion f = form_of(k, kind, p, std::max<std::size_t>(static_cast<std::size_t>(w.m) + 1, 2), engine);
  return divisor_polynomial(f, w).F;
}

}  // namespace

i64 sturm_bound(i64 k) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("sturm_bound needs an even weight >= 4");
  return k / 12;
}

void VerificationReport::fail(Witness w) {
  pass = false;
  if (witnesses.size() < kMaxWitnesses) {
    witnesses.push_back(std::move(w));
  } else {
    ++dropped_witnesses;
  }
}

void validate_claim(const CongruenceClaim& c) {
  if (c.k1 < 4 || c.k1 % 2 != 0 || c.k2 % 2 != 0) throw std::invalid_argument("claim weights must be even and >= 4");
  if (c.k2 <= c.k1) throw std::invalid_argument("claim needs k2 > k1");
  if ((c.k2 - c.k1) % static_cast<i64>(c.p.value() - 1) != 0) {
    throw std::invalid_argument("k2 - k1 = " + std::to_string(c.k2 - c.k1) + " is not a multiple of p - 1 = " +
                                std::to_string(c.p.value() - 1));
  }
  if (c.m >= c.p.value()) throw std::invalid_argument("claim scalar must be a residue in [0, p)");
}

VerificationReport check_congruence(const CongruenceClaim& claim, TraceEngine& engine) {
  validate_claim(claim);
  VerificationReport r;
  r.id = claim_label(claim);
  Stopwatch sw(r.runtime);
  const i64 tag = weight_tag(claim.k2, claim.kind, claim.p);
  const std::size_t prec = sturm_precision(tag);
  const QExpansion lower = form_of(claim.k1, claim.kind, claim.p, prec, engine);
  const QExpansion upper = form_of(claim.k2, claim.kind, claim.p, prec, engine);
  compare_scaled(r, lower, upper, claim.m, sturm_bound(tag), r.id);
  return r;
}

VerificationReport verify_thm_2_1_i(const PrimeModulus& p, i64 k1, i64 c, TraceEngine& engine) {
  if (c < 1) throw std::invalid_argument("case (i) needs c >= 1");
  VerificationReport r;
  r.id = "thm-2.1-i";
  Stopwatch sw(r.runtime);
  const CongruenceClaim claim{p, k1, k1 + c * static_cast<i64>(gegenbauer_period(p)), 1, FormKind::TraceForm};
  absorb(r, check_congruence(claim, engine), claim);
  return r;
}

VerificationReport verify_thm_2_1_ii(const PrimeModulus& p, i64 c_max, TraceEngine& engine) {
  require_small_prime(p, "(ii)");
  VerificationReport r;
  r.id = "thm-2.1-ii";
  Stopwatch sw(r.runtime);
  const auto q = static_cast<i64>(p.value());
  const i64 step = q * q - 1;
  for (i64 offset : kHatOffsets) {
    const i64 k1 = step + offset;
    for (i64 c = 1; c <= c_max; ++c) {
      if ((c + 1) % q == 0) continue;
      const CongruenceClaim claim{p, k1, k1 + c * step, p.reduce(c + 1), FormKind::TraceForm};
      absorb(r, check_congruence(claim, engine), claim);
    }
  }
  return r;
}

VerificationReport verify_thm_2_1_iii(const PrimeModulus& p, i64 k_max, TraceEngine& engine) {
  require_small_prime(p, "(iii)");
  VerificationReport r;
  r.id = "thm-2.1-iii";
  Stopwatch sw(r.runtime);
  const auto step = static_cast<i64>(p.value() - 1);
  for (i64 k1 = 4; k1 <= k_max; k1 += 2) {
    const i64 d1 = dim_cusp_forms(k1);
    if (d1 == 0) continue;
    for (i64 k2 = k1 + step; k2 <= k_max; k2 += step) {
      if (dim_cusp_forms(k2) != d1) continue;
      const CongruenceClaim claim{p, k1, k2, 1, FormKind::TraceForm};
      absorb(r, check_congruence(claim, engine), claim);
    }
  }
  if (r.claims.empty()) r.notes.push_back("no weight pairs in range");
  return r;
}

bool is_hat_offset(i64 k) { return std::find(std::begin(kHatOffsets), std::end(kHatOffsets), k) != std::end(kHatOffsets); }

VerificationReport verify_thm_2_2(const PrimeModulus& p, i64 k, i64 m, std::size_t precision, TraceEngine& engine) {
  if (!is_hat_offset(k)) throw std::invalid_argument("k must be one of 0, 4, 6, 8, 10, 14");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (precision < 2) throw std::invalid_argument("precision must be >= 2");
  VerificationReport r;
  r.id = "thm-2.2";
  Stopwatch sw(r.runtime);
  const auto q = static_cast<i64>(p.value());
  const i64 base = k + q * q - 1;
  const i64 top = k + m * (q * q - 1);
  const QExpansion lower = engine.modified_trace_form(base, p, precision);
  const QExpansion upper = engine.modified_trace_form(top, p, precision);
  const std::string label = "T^_" + std::to_string(top) + " = " + std::to_string(m) + "*T^_" + std::to_string(base);
  compare_scaled(r, lower, upper, p.reduce(m), static_cast<i64>(precision) - 1, label);
  if (precision < sturm_precision(top + q * q - 1)) {
    r.notes.push_back("coefficientwise identity through q^" + std::to_string(precision - 1) +
                      "; below the Sturm bound of the weight tag");
  }
  return r;
}

Ramification classify_ramification(i64 t, i64 n, const PrimeModulus& p) {
  if (n < 1 || p.reduce(n) == 0) throw std::invalid_argument("classify_ramification needs gcd(p, n) = 1");
  if (t * t > 4 * n) throw std::invalid_argument("classify_ramification needs t^2 <= 4n");
  const i64 disc = t * t - 4 * n;
  if (disc == 0 || p.reduce(disc) == 0) return Ramification::Ramified;
  return legendre_symbol(disc, p) == 1 ? Ramification::Split : Ramification::Inert;
}

std::string to_string(Ramification r) {
  switch (r) {
    case Ramification::Inert: return "inert";
    case Ramification::Split: return "split";
    case Ramification::Ramified: return "ramified";
  }
  return "?";
}

u64 lemma_2_4_prediction(i64 k, i64 m, i64 t, i64 n, const PrimeModulus& p) {
  const Ramification ram = classify_ramification(t, n, p);
  const u64 nn = p.reduce(n);
  if (ram == Ramification::Ramified) {
    const u64 power = k == 0 ? p.inv(nn) : p.pow(nn, static_cast<u64>((k - 2) / 2));
    return p.mul(p.reduce(k - m - 1), power);
  }
  if (k == 0) return p.neg(p.inv(nn));
  return gegenbauer_mod_recurrence(k, t, n, p);
}

VerificationReport verify_lemma_2_4(const PrimeModulus& p, i64 k, i64 m, i64 n_max) {
  if (k != 0 && (k < 4 || k % 2 != 0)) throw std::invalid_argument("k must be 0 or an even integer >= 4");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  VerificationReport r;
  r.id = "lemma-2.4";
  Stopwatch sw(r.runtime);
  const auto q = static_cast<i64>(p.value());
  const i64 weight = k + m * (q * q - 1);
  for (i64 n = 1; n <= n_max; ++n) {
    if (n % q == 0) continue;
    for (i64 t = 0; t * t <= 4 * n; ++t) {
      for (i64 s : {t, -t}) {
        if (t == 0 && s < 0) continue;
        const u64 expected = lemma_2_4_prediction(k, m, s, n, p);
        const u64 got = gegenbauer_mod_recurrence(weight, s, n, p);
        ++r.checks;
        if (got != expected) {
          r.fail({"P_" + std::to_string(weight) + "(" + std::to_string(s) + "," + std::to_string(n) + ") [" +
                      to_string(classify_ramification(s, n, p)) + "]",
                  std::to_string(expected), std::to_string(got)});
        }
      }
    }
  }
  return r;
}

std::string to_string(FactorizationKind kind) {
  switch (kind) {
    case FactorizationKind::Thm41: return "4.1";
    case FactorizationKind::Cor42: return "4.2";
    case FactorizationKind::Thm43: return "4.3";
  }
  return "?";
}

void validate_factorization_hypotheses(const PrimeModulus& p, i64 k, FactorizationKind kind) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("k must be an even integer >= 4");
  const auto q = static_cast<i64>(p.value());
  if (kind == FactorizationKind::Cor42) {
    const i64 r = k % (q * q * q - q);
    if (r != 12 && r != 16 && r != 18 && r != 20 && r != 22 && r != 26) {
      throw std::invalid_argument("k mod (p^3 - p) must be one of 12, 16, 18, 20, 22, 26");
    }
  } else if (kind == FactorizationKind::Thm43) {
    if (k < q * q - 1) throw std::invalid_argument("k must be >= p^2 - 1");
    if (!is_hat_offset(k % (q * q - 1))) throw std::invalid_argument("k mod (p^2 - 1) must be one of 0, 4, 6, 8, 10, 14");
  }
}

i64 guaranteed_multiplicity(const PrimeModulus& p, i64 k, FactorizationKind kind) {
  validate_factorization_hypotheses(p, k, kind);
  const auto q = static_cast<i64>(p.value());
  if (kind == FactorizationKind::Thm43) return (q + 1) * (k / (q * q - 1) - 1);
  const i64 period = q * q * q - q;
  const i64 blocks = k / period;
  const i64 r = k % period;
  if (kind == FactorizationKind::Thm41 && (r == 0 || r == 2)) return (q * q + q) * (blocks - 1);
  return (q * q + q) * blocks;
}

FactorizationCheck verify_factorization_theorem(const PrimeModulus& p, i64 k, FactorizationKind kind,
                                                TraceEngine& engine) {
  validate_factorization_hypotheses(p, k, kind);
  FactorizationCheck out{{}, k, k, 0, 0, 0, 1, FpPolynomial(p), FpPolynomial(p), FpPolynomial(p), std::nullopt, false};
  VerificationReport& r = out.report;
  r.id = "thm-" + to_string(kind) + " p=" + std::to_string(p.value()) + " k=" + std::to_string(k);
  Stopwatch sw(r.runtime);

  const auto q = static_cast<i64>(p.value());
  const FormKind form = kind == FactorizationKind::Thm43 ? FormKind::ModifiedTraceForm : FormKind::TraceForm;
  out.n = guaranteed_multiplicity(p, k, kind);
  out.k_lower = k - out.n * (q - 1);
  out.s_tilde = supersingular_deligne(p).s_tilde;
  if (kind == FactorizationKind::Thm43) out.scalar = p.reduce(k / (q * q - 1));

  out.lhs = extract_F(k, form, p, engine);
  if (out.n == 0) {
    out.rhs = out.lhs;
    r.notes.push_back("n = 0: the statement reduces to F = F");
  } else {
    const FpPolynomial lower = kind == FactorizationKind::Cor42 ? FpPolynomial::constant(p, 1)
                                                                : extract_F(out.k_lower, form, p, engine);
    const i64 lower_tag = weight_tag(out.k_lower, form, p);
    const ProductExponents ab = product_exponents(lower_tag, out.n * (q - 1));
    out.a = ab.a;
    out.b = ab.b;
    out.rhs = transfer_divisor_polynomial(lower, lower_tag, out.n, p, out.s_tilde).scaled(out.scalar);
  }
  ++r.checks;
  if (!(out.lhs == out.rhs)) r.fail({"F(lhs) vs theorem right-hand side", out.rhs.to_string(), out.lhs.to_string()});

  if (out.lhs.is_zero() || out.s_tilde.degree() < 1) {
    out.divisible = true;
    if (out.lhs.is_zero()) r.notes.push_back("F is zero; divisibility holds vacuously");
    if (out.s_tilde.degree() < 1) r.notes.push_back("S~_p = 1; divisibility holds vacuously");
  } else {
    out.observed = poly_multiplicity(out.lhs, out.s_tilde);
    out.divisible = *out.observed >= out.n;
    ++r.checks;
    if (!out.divisible) {
      r.fail({"multiplicity of S~_p", ">= " + std::to_string(out.n), std::to_string(*out.observed)});
    }
  }
  return out;
}

CongruencePredictor::CongruencePredictor(const PrimeModulus& p, i64 k_max)
    : p_(p), limit_(k_max + static_cast<i64>(gegenbauer_period(p))) {
  const std::size_t slots = static_cast<std::size_t>(limit_ / 2) + 1;
  parent_.resize(slots);
  ratio_.assign(slots, 1);
  for (std::size_t i = 0; i < slots; ++i) parent_[i] = i;

  const auto q = static_cast<i64>(p.value());
  const i64 period = static_cast<i64>(gegenbauer_period(p));
  // Zero forms (dim S_k = 0) carry no scalar information and are left out.
  auto live = [](i64 k) { return dim_cusp_forms(k) > 0; };
  for (i64 k = 4; k + period <= limit_; k += 2) {
    if (live(k) && live(k + period)) unite(k, k + period, 1);
  }
  if (q > 11) return;
  const i64 step = q * q - 1;
  for (i64 offset : kHatOffsets) {
    const i64 k1 = step + offset;
    if (!live(k1)) continue;
    for (i64 c = 1; k1 + c * step <= limit_; ++c) {
      if ((c + 1) % q != 0) unite(k1, k1 + c * step, p.reduce(c + 1));
    }
  }
  for (i64 k1 = 4; k1 <= limit_; k1 += 2) {
    const i64 d1 = dim_cusp_forms(k1);
    if (d1 == 0) continue;
    for (i64 k2 = k1 + q - 1; k2 <= limit_; k2 += q - 1) {
      if (dim_cusp_forms(k2) == d1) unite(k1, k2, 1);
    }
  }
}

std::size_t CongruencePredictor::find(std::size_t x) const {
  if (parent_[x] == x) return x;
  const std::size_t up = parent_[x];
  const std::size_t root = find(up);
  ratio_[x] = p_.mul(ratio_[x], ratio_[up]);
  parent_[x] = root;
  return root;
}

u64 CongruencePredictor::ratio_to_root(std::size_t x) const {
  find(x);
  return ratio_[x];
}

void CongruencePredictor::unite(i64 a, i64 b, u64 m) {
  const auto ia = static_cast<std::size_t>(a / 2);
  const auto ib = static_cast<std::size_t>(b / 2);
  const std::size_t ra = find(ia);
  const std::size_t rb = find(ib);
  const u64 fa = ratio_[ia];
  const u64 fb = ratio_[ib];
  if (ra == rb) {
    if (fb != p_.mul(m, fa)) {
      conflicts_.push_back("T_" + std::to_string(b) + " = " + std::to_string(m) + "*T_" + std::to_string(a) +
                           " contradicts an earlier chain");
    }
    return;
  }
  parent_[rb] = ra;
  ratio_[rb] = p_.mul(p_.mul(m, fa), p_.inv(fb));
}

std::optional<u64> CongruencePredictor::predicted_scalar(i64 k1, i64 k2) const {
  if (k1 < 4 || k2 < 4 || k1 > limit_ || k2 > limit_ || k1 % 2 != 0 || k2 % 2 != 0) return std::nullopt;
  const auto i1 = static_cast<std::size_t>(k1 / 2);
  const auto i2 = static_cast<std::size_t>(k2 / 2);
  if (find(i1) != find(i2)) return std::nullopt;
  return p_.mul(ratio_to_root(i2), p_.inv(ratio_to_root(i1)));
}

ScanResult scan_congruences(const PrimeModulus& p, i64 k_max, TraceEngine& engine) {
  if (k_max < 8) throw std::invalid_argument("scan needs k_max >= 8");
  ScanResult out;
  Stopwatch sw(out.runtime);
  const std::size_t prec = sturm_precision(k_max);
  std::map<i64, QExpansion> forms;
  for (i64 k = 4; k <= k_max; k += 2) {
    if (dim_cusp_forms(k) > 0) forms.emplace(k, engine.trace_form(k, p, prec));
  }
  const CongruencePredictor predictor(p, k_max);
  const auto step = static_cast<i64>(p.value() - 1);
  for (const auto& [k1, f1] : forms) {
    for (i64 k2 = k1 + step; k2 <= k_max; k2 += step) {
      const auto it = forms.find(k2);
      if (it == forms.end()) continue;
      const QExpansion& f2 = it->second;
      ++out.pairs_examined;
      const i64 bound = sturm_bound(k2);
      i64 lead = 0;
      for (i64 n = 1; n <= bound && lead == 0; ++n) {
        if (f1[static_cast<std::size_t>(n)] != 0) lead = n;
      }
      const std::string pair = "(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
      if (lead == 0) {
        out.skipped.push_back(pair + ": T_" + std::to_string(k1) + " vanishes through the Sturm bound");
        continue;
      }
      const auto li = static_cast<std::size_t>(lead);
      const u64 m = p.mul(f2[li], p.inv(f1[li]));
      if (m == 0) {
        bool upper_zero = true;
        for (i64 n = 1; n <= bound && upper_zero; ++n) upper_zero = f2[static_cast<std::size_t>(n)] == 0;
        if (upper_zero) out.skipped.push_back(pair + ": T_" + std::to_string(k2) + " vanishes through the Sturm bound");
        continue;
      }
      bool agree = true;
      for (i64 n = 1; n <= bound && agree; ++n) {
        const auto i = static_cast<std::size_t>(n);
        agree = f2[i] == p.mul(m, f1[i]);
      }
      if (!agree) continue;
      const CongruenceClaim claim{p, k1, k2, m, FormKind::TraceForm};
      const auto predicted = predictor.predicted_scalar(k1, k2);
      out.findings.push_back({claim, predicted.has_value() && *predicted == m});
    }
  }
  for (const auto& c : predictor.conflicts()) out.skipped.push_back("predictor: " + c);
  return out;
}

}  // namespace sslforms
