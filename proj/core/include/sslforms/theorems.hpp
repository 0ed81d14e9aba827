#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sslforms/finite_field.hpp"
#include "sslforms/polynomial.hpp"
#include "sslforms/trace_formula.hpp"

namespace sslforms {

/// floor(k / 12): coefficients n = 1..B certify a congruence of weight-k forms.
i64 sturm_bound(i64 k);

enum class FormKind { TraceForm, ModifiedTraceForm };

/// T_{k2} = m * T_{k1} mod p (or the same for the modified forms).
struct CongruenceClaim {
  PrimeModulus p;
  i64 k1 = 0;
  i64 k2 = 0;
  u64 m = 1;
  FormKind kind = FormKind::TraceForm;
};

struct Witness {
  std::string where;
  std::string expected;
  std::string got;
};

struct ClaimOutcome {
  CongruenceClaim claim;
  bool pass = false;
};

/// A failing report always carries at least one witness.
struct VerificationReport {
  std::string id;
  bool pass = true;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
  std::vector<ClaimOutcome> claims;
  std::size_t checks = 0;
  std::chrono::microseconds runtime{0};

  /// Records a failure; witnesses beyond kMaxWitnesses are counted but dropped.
  void fail(Witness w);
  std::size_t dropped_witnesses = 0;
  static constexpr std::size_t kMaxWitnesses = 32;
};

/// Throws std::invalid_argument unless k2 > k1 >= 4, both even, p - 1 | k2 - k1.
void validate_claim(const CongruenceClaim& claim);

/// Compares coefficients n = 1..B, B the Sturm bound of the larger weight
/// (of its weight tag k2 + p^2 - 1 for modified forms).
VerificationReport check_congruence(const CongruenceClaim& claim, TraceEngine& engine);

/// Case (i): T_{k1 + c p (p^2 - 1)} = T_{k1}.
VerificationReport verify_thm_2_1_i(const PrimeModulus& p, i64 k1, i64 c, TraceEngine& engine);
/// Case (ii): k1 = p^2 - 1 + offset for offset in {0, 4, 6, 8, 10, 14}, c = 1..c_max
/// with c + 1 != 0 mod p; m = c + 1. Requires p <= 11.
VerificationReport verify_thm_2_1_ii(const PrimeModulus& p, i64 c_max, TraceEngine& engine);
/// Case (iii): every 4 <= k1 < k2 <= k_max with p - 1 | k2 - k1 and
/// dim S_{k1} = dim S_{k2} > 0; m = 1. Requires p <= 11.
VerificationReport verify_thm_2_1_iii(const PrimeModulus& p, i64 k_max, TraceEngine& engine);

/// The allowed k of the modified-form identity.
inline constexpr i64 kHatOffsets[] = {0, 4, 6, 8, 10, 14};
bool is_hat_offset(i64 k);

/// T^_{k + m(p^2-1)} = m * T^_{k + p^2 - 1} for n < N with gcd(n, p) = 1.
VerificationReport verify_thm_2_2(const PrimeModulus& p, i64 k, i64 m, std::size_t precision, TraceEngine& engine);

enum class Ramification { Inert, Split, Ramified };
/// Splitting of p in Q(sqrt(t^2 - 4n)); t^2 = 4n counts as ramified.
/// Throws std::invalid_argument if p | n or t^2 > 4n.
Ramification classify_ramification(i64 t, i64 n, const PrimeModulus& p);
std::string to_string(Ramification r);

/// The lemma's predicted value of P_{k + m(p^2-1)}(t, n) mod p.
u64 lemma_2_4_prediction(i64 k, i64 m, i64 t, i64 n, const PrimeModulus& p);
/// Checks the prediction against the plain recurrence for 1 <= n <= n_max,
/// gcd(n, p) = 1, t^2 <= 4n. k must be 0 or even >= 4, m >= 1.
VerificationReport verify_lemma_2_4(const PrimeModulus& p, i64 k, i64 m, i64 n_max);

enum class FactorizationKind { Thm41, Cor42, Thm43 };
std::string to_string(FactorizationKind kind);

/// The exponent n of S~_p guaranteed by the theorem (0 when it says nothing).
i64 guaranteed_multiplicity(const PrimeModulus& p, i64 k, FactorizationKind kind);
/// Throws std::invalid_argument when k is outside the theorem's hypotheses.
void validate_factorization_hypotheses(const PrimeModulus& p, i64 k, FactorizationKind kind);

struct FactorizationCheck {
  VerificationReport report;
  i64 k = 0;
  /// Weight of the lower form the theorem transfers from.
  i64 k_lower = 0;
  i64 n = 0;
  int a = 0;
  int b = 0;
  /// Theorem scalar (m of the modified-form statement, 1 otherwise).
  u64 scalar = 1;
  FpPolynomial lhs;
  FpPolynomial rhs;
  FpPolynomial s_tilde;
  /// Multiplicity of S~_p in lhs; empty when S~_p = 1 or lhs = 0.
  std::optional<int> observed;
  bool divisible = false;
};

/// Extracts F of the form of weight k directly and compares with the
/// theorem's right-hand side; also checks S~_p^n | F.
FactorizationCheck verify_factorization_theorem(const PrimeModulus& p, i64 k, FactorizationKind kind,
                                                TraceEngine& engine);

struct ScanFinding {
  CongruenceClaim claim;
  bool predicted = false;
};

struct ScanResult {
  std::vector<ScanFinding> findings;
  /// Pairs skipped for a zero form below the Sturm bound or a zero scalar.
  std::vector<std::string> skipped;
  std::size_t pairs_examined = 0;
  std::chrono::microseconds runtime{0};
};

/// Scalar m with T_{k2} = m T_{k1} implied by chaining the clauses of the
/// trace-form classification, or empty if they do not relate k1 and k2.
class CongruencePredictor {
 public:
  /// Covers weights up to k_max + p(p^2 - 1).
  CongruencePredictor(const PrimeModulus& p, i64 k_max);
  std::optional<u64> predicted_scalar(i64 k1, i64 k2) const;
  /// Clause edges that contradicted an earlier chain (should stay empty).
  const std::vector<std::string>& conflicts() const noexcept { return conflicts_; }

 private:
  std::size_t find(std::size_t x) const;
  void unite(i64 a, i64 b, u64 m);
  u64 ratio_to_root(std::size_t x) const;

  PrimeModulus p_;
  i64 limit_;
  mutable std::vector<std::size_t> parent_;
  // T_x = ratio_[x] * T_{parent_[x]}.
  mutable std::vector<u64> ratio_;
  std::vector<std::string> conflicts_;
};

/// Every pair 4 <= k1 < k2 <= k_max with p - 1 | k2 - k1 and both cusp spaces
/// nonzero: m is inferred from the first n with T_{k1}(n) != 0, then checked
/// through the Sturm bound of k2. Returns the passing claims.
ScanResult scan_congruences(const PrimeModulus& p, i64 k_max, TraceEngine& engine);

}  // namespace sslforms
