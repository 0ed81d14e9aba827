#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sslforms/trace_formula.hpp"

using namespace sslforms;

namespace {

std::vector<u64> head(const QExpansion& f, std::size_t n) {
  return std::vector<u64>(f.coefficients().begin(), f.coefficients().begin() + static_cast<std::ptrdiff_t>(n));
}

/// Delta E4^delta E6^eps over Z, the normalized generator of a one-dimensional cusp space.
oracle::ZSeries generator(int delta, int eps, std::size_t n) {
  oracle::ZSeries f(n, 0);
  const auto dq = oracle::delta_over_q(n);
  for (std::size_t i = 1; i < n; ++i) f[i] = dq[i - 1];
  const auto e4 = oracle::eisenstein(4, n);
  const auto e6 = oracle::eisenstein(6, n);
  for (int i = 0; i < delta; ++i) f = oracle::zmul(f, e4, n);
  for (int i = 0; i < eps; ++i) f = oracle::zmul(f, e6, n);
  return f;
}

}  // namespace

TEST_CASE("gegenbauer polynomials") {
  CHECK(gegenbauer_exact(24, 0, 2) == -2048);
  CHECK(gegenbauer_exact(24, 1, 2) == 967);
  CHECK(gegenbauer_exact(24, -1, 2) == 967);
  CHECK(gegenbauer_exact(28, 0, 2) == -8192);
  CHECK(gegenbauer_exact(28, 1, 2) == 8279);
  CHECK(gegenbauer_exact(28, 2, 2) == 8192);
  CHECK(gegenbauer_exact(6, 2, 1) == 5);
  CHECK(gegenbauer_exact(2, 7, 3) == 1);
  for (i64 t = -5; t <= 5; ++t) {
    for (i64 n = 1; n <= 6; ++n) CHECK(gegenbauer_exact(4, t, n) == t * t - n);
  }
  // t^2 = 4n: P_k = (k-1) (t/2)^{k-2}.
  CHECK(gegenbauer_exact(6, 2, 1) == oracle::gegenbauer_closed(6, 2, 1));

  SUBCASE("recurrence against the closed binomial sum") {
    for (i64 k = 2; k <= 60; k += 2) {
      for (i64 n = 1; n <= 12; ++n) {
        for (i64 t = 0; t * t <= 4 * n; ++t) {
          REQUIRE(gegenbauer_exact(k, t, n) == oracle::gegenbauer_closed(k, t, n));
          REQUIRE(gegenbauer_exact(k, -t, n) == gegenbauer_exact(k, t, n));
        }
      }
    }
  }

  SUBCASE("modular evaluations agree with the exact value") {
    for (u64 q : {5, 7, 13, 23}) {
      const PrimeModulus p(q);
      for (i64 k = 4; k <= 120; k += 2) {
        for (i64 n = 1; n <= 10; ++n) {
          for (i64 t = -6; t * t <= 4 * n; ++t) {
            if (t * t > 4 * n) continue;
            const u64 want = oracle::mod(gegenbauer_exact(k, t, n), q);
            REQUIRE(gegenbauer_mod(k, t, n, p, WeightReduction::None) == want);
            REQUIRE(gegenbauer_mod(k, t, n, p) == want);
            REQUIRE(gegenbauer_mod_recurrence(k, t, n, p) == want);
          }
        }
      }
    }
  }

  SUBCASE("period p(p^2 - 1) in the weight") {
    const PrimeModulus p(5);
    CHECK(gegenbauer_period(p) == 120);
    CHECK(reduce_weight(124, p) == 4);
    CHECK(reduce_weight(3, p) == 3);
    for (i64 k = 4; k <= 40; k += 2) {
      for (i64 n = 1; n <= 10; ++n) {
        for (i64 t = 0; t * t <= 4 * n; ++t) {
          for (i64 s : {t, -t}) {
            REQUIRE(gegenbauer_mod_recurrence(k, s, n, p) == gegenbauer_mod_recurrence(k + 120, s, n, p));
          }
        }
      }
    }
    const PrimeModulus p13(13);
    for (i64 n = 1; n <= 5; ++n) {
      for (i64 t = 0; t * t <= 4 * n; ++t) {
        REQUIRE(gegenbauer_mod(2196, t, n, p13) == gegenbauer_mod_recurrence(2196, t, n, p13));
      }
    }
  }
}

TEST_CASE("dimension of cusp forms") {
  CHECK(dim_cusp_forms(2196) == 183);
  CHECK(dim_cusp_forms(12) == 1);
  CHECK(dim_cusp_forms(26) == 1);
  CHECK(dim_cusp_forms(1084) == 90);
  CHECK(dim_cusp_forms(14) == 0);
  CHECK(dim_cusp_forms(4) == 0);
  CHECK(dim_cusp_forms(24) == 2);
  CHECK_THROWS_AS(dim_cusp_forms(13), std::invalid_argument);
  CHECK_THROWS_AS(dim_cusp_forms(2), std::invalid_argument);
}

TEST_CASE("exact traces") {
  const HurwitzTable table(4 * 40);
  CHECK(eichler_selberg_trace_exact(24, 1, table) == 2);
  CHECK(eichler_selberg_trace_exact(28, 1, table) == 2);
  CHECK(eichler_selberg_trace_exact(14, 5, table) == 0);
  CHECK(eichler_selberg_trace_exact(12, 2, table) == -24);
  CHECK(eichler_selberg_trace_exact(12, 2) == -24);

  SUBCASE("trace equals dimension at n = 1") {
    for (i64 k = 4; k <= 200; k += 2) REQUIRE(eichler_selberg_trace_exact(k, 1, table) == dim_cusp_forms(k));
  }

  SUBCASE("one-dimensional spaces reproduce the generator over Z") {
    const std::size_t n = 40;
    const struct {
      i64 k;
      int delta;
      int eps;
    } cases[] = {{12, 0, 0}, {16, 1, 0}, {18, 0, 1}, {20, 2, 0}, {22, 1, 1}, {26, 2, 1}};
    for (const auto& c : cases) {
      const auto g = generator(c.delta, c.eps, n);
      for (i64 m = 1; m < static_cast<i64>(n); ++m) {
        REQUIRE(eichler_selberg_trace_exact(c.k, m, table) == g[static_cast<std::size_t>(m)]);
      }
    }
  }

  SUBCASE("the 329-digit trace") {
    const auto t = eichler_selberg_trace_exact(2196, 2);
    const std::string s = t.get_str();
    CHECK(s.size() == 329);
    CHECK(s.starts_with("930885"));
    CHECK(s.ends_with("406856"));
    CHECK(oracle::mod(t, 13) == 2);
  }
}

TEST_CASE("modular traces agree with exact traces") {
  const HurwitzTable table(4 * 30);
  for (u64 q : {5, 13, 23}) {
    const PrimeModulus p(q);
    for (i64 k = 4; k <= 40; k += 2) {
      for (i64 n = 1; n <= 30; ++n) {
        const auto exact = eichler_selberg_trace_exact(k, n, table);
        REQUIRE(eichler_selberg_trace_mod(k, n, p, table) == oracle::mod(exact, q));
        REQUIRE(eichler_selberg_trace_mod(k, n, p, table, WeightReduction::None) == oracle::mod(exact, q));
      }
    }
  }
  CHECK(eichler_selberg_trace_mod(2196, 2, PrimeModulus(13), table) == 2);
}

TEST_CASE("trace forms") {
  TraceEngine engine;

  SUBCASE("one-dimensional weights give the generator to precision 50") {
    const std::size_t n = 50;
    const struct {
      i64 k;
      int delta;
      int eps;
    } cases[] = {{12, 0, 0}, {16, 1, 0}, {18, 0, 1}, {20, 2, 0}, {22, 1, 1}, {26, 2, 1}};
    for (const auto& c : cases) {
      const auto g = generator(c.delta, c.eps, n);
      for (u64 q : {5, 7, 11, 13, 17, 23, 29}) {
        const PrimeModulus p(q);
        const auto t = engine.trace_form(c.k, p, n);
        REQUIRE(t.weight() == c.k);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(t[i] == oracle::mod(g[i], q));
      }
    }
  }

  SUBCASE("paper expansions") {
    const PrimeModulus p13(13);
    const auto t = engine.trace_form(2196, p13, 6);
    CHECK(t[0] == 0);
    CHECK(head(t, 6) == std::vector<u64>{0, 1, 2, 5, 10, 7});

    const auto t23 = engine.trace_form(12172, PrimeModulus(23), 7);
    CHECK(head(t23, 7) == std::vector<u64>{0, 2, 0, 18, 9, 18, 9});

    const auto h19 = engine.modified_trace_form(724, PrimeModulus(19), 10);
    CHECK(h19.weight() == 724 + 360);
    CHECK(head(h19, 10) == std::vector<u64>{0, 3, 0, 0, 12, 10, 0, 14, 0, 8});

    const auto h17 = engine.modified_trace_form(582, PrimeModulus(17), 16);
    CHECK(h17[1] == 14);
    CHECK(h17[4] == 3);
    CHECK(h17[9] == 12);
    CHECK(h17[13] == 13);
    CHECK(h17[15] == 16);
  }

  SUBCASE("modified form is theta^(p-1) of the trace form") {
    for (u64 q : {5, 7, 13}) {
      const PrimeModulus p(q);
      for (i64 k = 12; k <= 80; k += 2) {
        const auto t = engine.trace_form(k, p, 40);
        auto th = t;
        for (u64 i = 0; i + 1 < q; ++i) th = theta_operator(th);
        const auto hat = engine.modified_trace_form(k, p, 40);
        REQUIRE(hat.weight() == th.weight());
        REQUIRE(hat.coefficients() == th.coefficients());
        for (std::size_t n = 0; n < 40; n += q) REQUIRE(hat[n] == 0);
      }
    }
  }

  SUBCASE("engine grows its table") {
    TraceEngine e;
    e.reserve(10);
    const auto before = e.rebuilds();
    e.reserve(5);
    CHECK(e.rebuilds() == before);
    (void)e.trace_form(30, PrimeModulus(5), 50);
    CHECK(e.table().max_n() >= hurwitz_bound_for_precision(50));
    CHECK(e.trace_exact(24, 2) == eichler_selberg_trace_exact(24, 2));
    CHECK(e.trace_mod(24, 2, PrimeModulus(5)) == oracle::mod(eichler_selberg_trace_exact(24, 2), 5));
  }

  CHECK(hurwitz_bound_for_precision(0) == 0);
  CHECK(hurwitz_bound_for_precision(184) == 732);
}
