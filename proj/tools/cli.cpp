#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hurwitz_cache.hpp"
#include "sslforms/divisor_poly.hpp"
#include "sslforms/supersingular.hpp"
#include "sslforms/theorems.hpp"
#include "sslforms/trace_formula.hpp"

namespace sslforms::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string format = "text";
  std::string cache_dir;
  bool no_cache = false;
};

class Context {
 public:
  Context(const CommonOptions& opts, std::ostream& err) : cache_(resolve_dir(opts), err) {}

  /// Engine whose table already covers n <= max_n.
  TraceEngine& engine(std::size_t max_n) {
    if (!engine_) {
      engine_.emplace(cache_.table(max_n));
    } else {
      engine_->reserve(max_n);
    }
    return *engine_;
  }

  void finish() {
    if (engine_) cache_.persist(engine_->shared_table());
  }

  const CacheStats& cache_stats() const noexcept { return cache_.stats(); }

 private:
  static std::optional<std::filesystem::path> resolve_dir(const CommonOptions& opts) {
    if (opts.no_cache) return std::nullopt;
    if (!opts.cache_dir.empty()) return std::filesystem::path(opts.cache_dir);
    return default_cache_dir();
  }

  HurwitzCache cache_;
  std::optional<TraceEngine> engine_;
};

struct Outcome {
  int code = kOk;
  json payload = json::object();
  std::string text;
  std::string diagnostics;
};

std::string factored(const FpPolynomial& f) { return f.is_zero() ? "0" : poly_factor(f).to_string(); }

json poly_json(const FpPolynomial& f) {
  return {{"coefficients", f.coefficients()}, {"degree", f.degree()}, {"factored", factored(f)}};
}

std::string list_string(const std::vector<u64>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::size_t table_bound_for_weight(i64 tag) { return 4 * static_cast<std::size_t>(std::max<i64>(sturm_bound(tag), 1)); }

json report_json(const VerificationReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back({{"where", w.where}, {"expected", w.expected}, {"got", w.got}});
  json claims = json::array();
  for (const auto& c : r.claims) {
    claims.push_back({{"k1", c.claim.k1}, {"k2", c.claim.k2}, {"m", c.claim.m}, {"pass", c.pass}});
  }
  return {{"id", r.id},          {"pass", r.pass},   {"checks", r.checks},
          {"notes", r.notes},    {"claims", claims}, {"witnesses", witnesses},
          {"dropped_witnesses", r.dropped_witnesses}};
}

void report_text(const VerificationReport& r, std::ostream& text, std::ostream& diag) {
  text << (r.pass ? "PASS " : "FAIL ") << r.id << " (" << r.checks << " checks";
  if (!r.claims.empty()) text << ", " << r.claims.size() << " claims";
  text << ")\n";
  for (const auto& c : r.claims) {
    text << "  T_" << c.claim.k2 << " = " << c.claim.m << "*T_" << c.claim.k1 << ": " << (c.pass ? "pass" : "FAIL")
         << "\n";
  }
  for (const auto& n : r.notes) text << "  note: " << n << "\n";
  for (const auto& w : r.witnesses) diag << "witness: " << w.where << ": expected " << w.expected << ", got " << w.got << "\n";
  if (r.dropped_witnesses) diag << "witness: " << r.dropped_witnesses << " more not shown\n";
}

// ssp ------------------------------------------------------------------------

struct SspOptions {
  u64 p = 0;
  std::string method = "both";
  bool families = false;
};

Outcome cmd_ssp(const SspOptions& o) {
  const PrimeModulus p(o.p);
  if (o.method != "deligne" && o.p > kOracleMaxPrime) {
    throw std::invalid_argument("oracle method supports p <= " + std::to_string(kOracleMaxPrime));
  }
  Outcome out;
  std::optional<SupersingularLocus> oracle, deligne;
  if (o.method != "deligne") oracle = supersingular_oracle(p);
  if (o.method != "oracle") deligne = supersingular_deligne(p);
  const SupersingularLocus& shown = deligne ? *deligne : *oracle;
  const SupersingularExponents se = ssp_exponents(p);

  std::ostringstream text;
  const std::string ps = std::to_string(o.p);
  text << "S_" << ps << " = " << factored(shown.s_poly) << ", S~_" << ps << " = " << factored(shown.s_tilde) << "\n";
  text << "S_" << ps << " coefficients (ascending): " << list_string(shown.s_poly.coefficients()) << "\n";
  text << "S~_" << ps << " coefficients (ascending): " << list_string(shown.s_tilde.coefficients()) << "\n";

  out.payload = {{"p", o.p},
                 {"method", o.method},
                 {"delta_p", se.delta_p},
                 {"eps_p", se.eps_p},
                 {"s_poly", poly_json(shown.s_poly)},
                 {"s_tilde", poly_json(shown.s_tilde)}};
  if (oracle && deligne) {
    const bool agree = oracle->s_poly == deligne->s_poly;
    out.payload["agree"] = agree;
    out.payload["oracle"] = poly_json(oracle->s_poly);
    out.payload["deligne"] = poly_json(deligne->s_poly);
    text << "oracle and deligne " << (agree ? "agree" : "DISAGREE") << "\n";
    if (!agree) {
      out.code = kDisagreement;
      out.diagnostics += "oracle S_p = " + factored(oracle->s_poly) + ", deligne S_p = " + factored(deligne->s_poly) + "\n";
    }
  }
  if (o.families) {
    json fam = json::object();
    const std::pair<const char*, HalfFamily> kinds[] = {{"deuring_hasse", HalfFamily::DeuringHasse},
                                                        {"kaneko_zagier_g", HalfFamily::KanekoZagierG}};
    for (const auto& [name, family] : kinds) {
      const FamilyCrosscheck c = crosscheck_families(p, family);
      fam[name] = {{"agrees", c.agrees}, {"scalar", c.scalar}, {"constant_term", c.constant_term}};
      text << name << ": " << (c.agrees ? "agrees" : "DISAGREES") << " with S_" << ps << " (scalar " << c.scalar
           << ")\n";
      if (!c.agrees) out.code = kDisagreement;
    }
    out.payload["families"] = fam;
  }
  out.text = text.str();
  return out;
}

// trace ----------------------------------------------------------------------

struct TraceOptions {
  i64 k = 0;
  i64 n = 0;
  std::optional<u64> mod;
  bool exact = false;
};

Outcome cmd_trace(const TraceOptions& o, Context& ctx) {
  dim_cusp_forms(o.k);
  if (o.n < 1) throw std::invalid_argument("--n must be >= 1");
  Outcome out;
  TraceEngine& engine = ctx.engine(static_cast<std::size_t>(4 * o.n));
  out.payload = {{"k", o.k}, {"n", o.n}};
  if (o.mod) {
    const PrimeModulus p(*o.mod);
    const u64 v = engine.trace_mod(o.k, o.n, p);
    out.payload["mode"] = "mod";
    out.payload["p"] = *o.mod;
    out.payload["value"] = v;
    out.text = std::to_string(v) + "\n";
  } else {
    const std::string v = engine.trace_exact(o.k, o.n).get_str();
    out.payload["mode"] = "exact";
    out.payload["value"] = v;
    out.payload["digits"] = v.size() - (v.front() == '-' ? 1 : 0);
    out.text = v + "\n";
  }
  return out;
}

// divpoly --------------------------------------------------------------------

struct DivpolyOptions {
  std::string form = "traceform";
  i64 k = 0;
  u64 p = 0;
};

Outcome cmd_divpoly(const DivpolyOptions& o, Context& ctx) {
  const PrimeModulus p(o.p);
  const bool hat = o.form == "hatform";
  const FactorizationKind kind = hat ? FactorizationKind::Thm43 : FactorizationKind::Thm41;
  validate_factorization_hypotheses(p, o.k, kind);
  const auto q = static_cast<i64>(o.p);
  const i64 tag = hat ? o.k + q * q - 1 : o.k;
  const WeightProfile w = weight_profile(tag);
  const std::size_t precision = static_cast<std::size_t>(std::max<i64>(w.m + 1, 2));
  TraceEngine& engine = ctx.engine(hurwitz_bound_for_precision(precision));
  const QExpansion f = hat ? engine.modified_trace_form(o.k, p, precision) : engine.trace_form(o.k, p, precision);
  const FpPolynomial F = divisor_polynomial(f, w).F;
  const FpPolynomial s_tilde = supersingular_deligne(p).s_tilde;
  const i64 guaranteed = guaranteed_multiplicity(p, o.k, kind);
  std::optional<int> observed;
  if (!F.is_zero() && s_tilde.degree() >= 1) observed = poly_multiplicity(F, s_tilde);

  Outcome out;
  const std::size_t head = std::min<std::size_t>(precision, 10);
  const std::vector<u64> head_coeffs(f.coefficients().begin(), f.coefficients().begin() + static_cast<std::ptrdiff_t>(head));
  out.payload = {{"form", o.form},
                 {"k", o.k},
                 {"p", o.p},
                 {"weight_tag", tag},
                 {"m", w.m},
                 {"delta", w.delta},
                 {"eps", w.eps},
                 {"q_expansion_head", head_coeffs},
                 {"F", poly_json(F)},
                 {"s_tilde", poly_json(s_tilde)},
                 {"guaranteed", guaranteed},
                 {"observed", observed ? json(*observed) : json(nullptr)}};

  std::ostringstream text;
  const std::string name = hat ? "T^(" + std::to_string(o.p) + ")_" + std::to_string(o.k) : "T_" + std::to_string(o.k);
  text << "F(" << name << "; x) = " << factored(F) << " mod " << o.p << "\n";
  text << "coefficients (ascending): " << list_string(F.coefficients()) << "\n";
  text << "S~_" << o.p << " = " << factored(s_tilde) << ", guaranteed " << guaranteed << ", observed "
       << (observed ? std::to_string(*observed) : std::string("n/a")) << "\n";
  out.text = text.str();
  if (observed && *observed < guaranteed) {
    out.code = kTheoremViolation;
    out.diagnostics = "S~_p multiplicity " + std::to_string(*observed) + " is below the guaranteed " +
                      std::to_string(guaranteed) + "\n";
  }
  return out;
}

// verify ---------------------------------------------------------------------

struct VerifyOptions {
  std::string theorem;
  u64 p = 0;
  std::string case_name;
  std::optional<i64> k;
  std::optional<i64> k1;
  i64 c = 1;
  std::optional<i64> c_max;
  std::optional<i64> k_max;
  std::optional<i64> m;
  i64 n_max = 20;
  std::optional<std::size_t> precision;
};

template <typename T>
T required(const std::optional<T>& v, const char* flag) {
  if (!v) throw std::invalid_argument(std::string("missing ") + flag);
  return *v;
}

Outcome finish_report(const VerificationReport& r) {
  Outcome out;
  out.payload = report_json(r);
  std::ostringstream text, diag;
  report_text(r, text, diag);
  out.text = text.str();
  out.diagnostics = diag.str();
  out.code = r.pass ? kOk : kDisagreement;
  return out;
}

Outcome cmd_verify(const VerifyOptions& o, Context& ctx) {
  const PrimeModulus p(o.p);
  const auto q = static_cast<i64>(o.p);
  const i64 hat_step = q * q - 1;
  if (o.theorem == "2.1") {
    if (o.case_name == "i") {
      const i64 k1 = required(o.k1, "--k1");
      const i64 k2 = k1 + o.c * static_cast<i64>(gegenbauer_period(p));
      return finish_report(verify_thm_2_1_i(p, k1, o.c, ctx.engine(table_bound_for_weight(k2))));
    }
    if (o.case_name == "ii") {
      const i64 c_max = o.c_max.value_or(q);
      const i64 k2 = hat_step + 14 + c_max * hat_step;
      return finish_report(verify_thm_2_1_ii(p, c_max, ctx.engine(table_bound_for_weight(k2))));
    }
    if (o.case_name == "iii") {
      const i64 k_max = o.k_max.value_or(static_cast<i64>(gegenbauer_period(p)) + 2);
      return finish_report(verify_thm_2_1_iii(p, k_max, ctx.engine(table_bound_for_weight(std::max<i64>(k_max, 4)))));
    }
    throw std::invalid_argument("--case must be i, ii or iii for theorem 2.1");
  }
  if (o.theorem == "2.2") {
    const i64 k = required(o.k, "--k");
    const i64 m = required(o.m, "--m");
    const i64 tag = k + m * hat_step + hat_step;
    const std::size_t precision = o.precision.value_or(static_cast<std::size_t>(sturm_bound(tag) + 1));
    return finish_report(verify_thm_2_2(p, k, m, precision, ctx.engine(hurwitz_bound_for_precision(precision))));
  }
  if (o.theorem == "2.4") {
    std::vector<i64> ks = o.k ? std::vector<i64>{*o.k} : std::vector<i64>(std::begin(kHatOffsets), std::end(kHatOffsets));
    std::vector<i64> ms;
    if (o.m) {
      ms.push_back(*o.m);
    } else {
      for (i64 m = 1; m <= 4; ++m) ms.push_back(m);
    }
    VerificationReport total;
    total.id = "lemma-2.4";
    for (i64 k : ks) {
      for (i64 m : ms) {
        const VerificationReport r = verify_lemma_2_4(p, k, m, o.n_max);
        total.checks += r.checks;
        for (const auto& w : r.witnesses) total.fail(w);
        total.dropped_witnesses += r.dropped_witnesses;
        total.notes.push_back("k=" + std::to_string(k) + " m=" + std::to_string(m) + ": " +
                              (r.pass ? "pass" : "FAIL") + " (" + std::to_string(r.checks) + " checks)");
      }
    }
    return finish_report(total);
  }
  if (o.theorem == "4.1" || o.theorem == "4.2" || o.theorem == "4.3") {
    const FactorizationKind kind = o.theorem == "4.1"   ? FactorizationKind::Thm41
                                   : o.theorem == "4.2" ? FactorizationKind::Cor42
                                                        : FactorizationKind::Thm43;
    const i64 k = required(o.k, "--k");
    validate_factorization_hypotheses(p, k, kind);
    const i64 tag = kind == FactorizationKind::Thm43 ? k + hat_step : k;
    const FactorizationCheck fc = verify_factorization_theorem(p, k, kind, ctx.engine(table_bound_for_weight(tag)));
    Outcome out = finish_report(fc.report);
    out.payload["k_lower"] = fc.k_lower;
    out.payload["n"] = fc.n;
    out.payload["a"] = fc.a;
    out.payload["b"] = fc.b;
    out.payload["scalar"] = fc.scalar;
    out.payload["lhs"] = poly_json(fc.lhs);
    out.payload["rhs"] = poly_json(fc.rhs);
    out.payload["s_tilde"] = poly_json(fc.s_tilde);
    out.payload["observed"] = fc.observed ? json(*fc.observed) : json(nullptr);
    out.payload["divisible"] = fc.divisible;
    out.text += "  F = " + factored(fc.lhs) + "\n  n = " + std::to_string(fc.n) + ", observed " +
                (fc.observed ? std::to_string(*fc.observed) : std::string("n/a")) + "\n";
    return out;
  }
  throw std::invalid_argument("--theorem must be one of 2.1, 2.2, 2.4, 4.1, 4.2, 4.3");
}

// scan -----------------------------------------------------------------------

struct ScanOptions {
  u64 p = 0;
  i64 k_max = 0;
};

Outcome cmd_scan(const ScanOptions& o, Context& ctx) {
  const PrimeModulus p(o.p);
  if (o.k_max < 8) throw std::invalid_argument("--kmax must be >= 8");
  const ScanResult s = scan_congruences(p, o.k_max, ctx.engine(table_bound_for_weight(o.k_max)));
  Outcome out;
  json findings = json::array();
  std::size_t unpredicted = 0;
  std::ostringstream text;
  for (const auto& f : s.findings) {
    findings.push_back({{"k1", f.claim.k1}, {"k2", f.claim.k2}, {"m", f.claim.m}, {"predicted", f.predicted}});
    if (!f.predicted) ++unpredicted;
    text << "T_" << f.claim.k2 << " = " << f.claim.m << "*T_" << f.claim.k1 << " mod " << o.p << "  "
         << (f.predicted ? "predicted" : "UNPREDICTED") << "\n";
  }
  out.payload = {{"p", o.p},
                 {"kmax", o.k_max},
                 {"pairs_examined", s.pairs_examined},
                 {"findings", findings},
                 {"unpredicted", unpredicted},
                 {"skipped", s.skipped},
                 {"pass", unpredicted == 0}};
  text << s.findings.size() << " congruences among " << s.pairs_examined << " pairs, " << unpredicted
       << " unpredicted\n";
  for (const auto& sk : s.skipped) text << "  skipped " << sk << "\n";
  out.text = text.str();
  out.code = unpredicted == 0 ? kOk : kDisagreement;
  return out;
}

json cache_json(const CacheStats& s) {
  return {{"enabled", s.enabled},
          {"path", s.path},
          {"hit", s.hit},
          {"corrupt", s.corrupt},
          {"loaded_max_n", s.loaded_max_n},
          {"written_max_n", s.written_max_n}};
}

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--cache-dir", c.cache_dir, "Directory for the Hurwitz class-number cache");
  sub->add_flag("--no-cache", c.no_cache, "Keep the class-number table in memory only");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supersingular polynomials from Hecke trace forms", "sslforms"};
  app.require_subcommand(1);
  CommonOptions common;

  SspOptions ssp;
  auto* ssp_cmd = app.add_subcommand("ssp", "Supersingular polynomial S_p");
  ssp_cmd->add_option("--p", ssp.p, "Prime p >= 5")->required();
  ssp_cmd->add_option("--method", ssp.method)->check(CLI::IsMember({"oracle", "deligne", "both"}));
  ssp_cmd->add_flag("--families", ssp.families, "Cross-check the Deuring-Hasse and Kaneko-Zagier families");
  add_common(ssp_cmd, common);

  TraceOptions trace;
  std::optional<u64> trace_mod;
  auto* trace_cmd = app.add_subcommand("trace", "Hecke trace Tr_k(n)");
  trace_cmd->add_option("--k", trace.k, "Even weight >= 4")->required();
  trace_cmd->add_option("--n", trace.n, "Hecke index >= 1")->required();
  auto* mod_opt = trace_cmd->add_option("--mod", trace_mod, "Reduce mod this prime");
  trace_cmd->add_flag("--exact", trace.exact, "Exact integer (default)")->excludes(mod_opt);
  add_common(trace_cmd, common);

  DivpolyOptions divpoly;
  auto* div_cmd = app.add_subcommand("divpoly", "Divisor polynomial of a trace form mod p");
  div_cmd->add_option("--form", divpoly.form)->check(CLI::IsMember({"traceform", "hatform"}));
  div_cmd->add_option("--k", divpoly.k)->required();
  div_cmd->add_option("--p", divpoly.p)->required();
  add_common(div_cmd, common);

  VerifyOptions verify;
  auto* ver_cmd = app.add_subcommand("verify", "Check a congruence or factorization theorem");
  ver_cmd->add_option("--theorem", verify.theorem)->required()->check(
      CLI::IsMember({"2.1", "2.2", "2.4", "4.1", "4.2", "4.3"}));
  ver_cmd->add_option("--p", verify.p)->required();
  ver_cmd->add_option("--case", verify.case_name, "Case i, ii or iii of theorem 2.1");
  ver_cmd->add_option("--k", verify.k);
  ver_cmd->add_option("--k1", verify.k1);
  ver_cmd->add_option("--c", verify.c, "Multiplier c for case i");
  ver_cmd->add_option("--cmax", verify.c_max, "Largest c for case ii (default p)");
  ver_cmd->add_option("--kmax", verify.k_max, "Weight bound for case iii (default p(p^2-1)+2)");
  ver_cmd->add_option("--m", verify.m);
  ver_cmd->add_option("--nmax", verify.n_max, "Largest n for lemma 2.4");
  ver_cmd->add_option("--precision", verify.precision, "Coefficients compared for theorem 2.2");
  add_common(ver_cmd, common);

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Search for trace-form congruences");
  scan_cmd->add_option("--p", scan.p)->required();
  scan_cmd->add_option("--kmax", scan.k_max)->required();
  add_common(scan_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalidInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Context ctx(common, err);
  Outcome result;
  std::string command;
  try {
    if (*ssp_cmd) {
      command = "ssp";
      result = cmd_ssp(ssp);
    } else if (*trace_cmd) {
      command = "trace";
      trace.mod = trace_mod;
      result = cmd_trace(trace, ctx);
    } else if (*div_cmd) {
      command = "divpoly";
      result = cmd_divpoly(divpoly, ctx);
    } else if (*ver_cmd) {
      command = "verify";
      result = cmd_verify(verify, ctx);
    } else {
      command = "scan";
      result = cmd_scan(scan, ctx);
    }
    ctx.finish();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();

  if (common.format == "json") {
    const json doc = {{"argv", args},
                      {"command", command},
                      {"exit_code", result.code},
                      {"payload", result.payload},
                      {"timing", {{"total_us", elapsed}}},
                      {"cache", cache_json(ctx.cache_stats())}};
    out << doc.dump(2) << "\n";
  } else {
    out << result.text;
  }
  err << result.diagnostics;
  return result.code;
}

}  // namespace sslforms::cli
