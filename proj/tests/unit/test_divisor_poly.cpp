#include <random>
#include <set>

#include "doctest.h"
#include "sslforms/divisor_poly.hpp"
#include "sslforms/supersingular.hpp"
#include "sslforms/trace_formula.hpp"

using namespace sslforms;

namespace {

constexpr std::size_t kPrecision = 48;

/// Delta^a E4^b E6^c mod p.
QExpansion monomial_form(const PrimeModulus& p, int a, int b, int c) {
  auto f = QExpansion::constant(p, 0, kPrecision, 1);
  f = series_mul(f, series_pow(delta_series(p, kPrecision), static_cast<u64>(a)));
  f = series_mul(f, series_pow(eisenstein_series(Eisenstein::E4, p, kPrecision), static_cast<u64>(b)));
  f = series_mul(f, series_pow(eisenstein_series(Eisenstein::E6, p, kPrecision), static_cast<u64>(c)));
  return f;
}

/// With b = 3u + delta and c = 2v + eps, E4^3 = Delta j and E6^2 = Delta (j - 1728)
/// give F = x^u (x - 1728)^v.
FpPolynomial monomial_prediction(const PrimeModulus& p, int b, int c) {
  return poly_pow(FpPolynomial::monomial(p, 1), static_cast<u64>(b / 3)) *
         poly_pow(x_minus_1728(p), static_cast<u64>(c / 2));
}

struct Monomial {
  int a;
  int b;
  int c;
  int weight() const { return 12 * a + 4 * b + 6 * c; }
};

/// Random monomial of weight congruent to `residue` mod 12 (residue in {0,2,...,10}), weight <= 200.
Monomial random_monomial(int residue, std::mt19937_64& rng) {
  // Base exponents reaching each even residue with weight >= 4.
  static const Monomial base[] = {{1, 0, 0}, {0, 2, 1}, {0, 1, 0}, {0, 0, 1}, {0, 2, 0}, {0, 1, 1}};
  Monomial m = base[residue / 2];
  m.a += static_cast<int>(rng() % 4);
  m.b += 3 * static_cast<int>(rng() % 3);
  m.c += 2 * static_cast<int>(rng() % 3);
  return m;
}

/// Random F_p-combination of several monomials of the same weight.
QExpansion random_form(const PrimeModulus& p, int residue, std::mt19937_64& rng, int* weight_out) {
  const Monomial shape = random_monomial(residue, rng);
  const int k = shape.weight();
  QExpansion f = QExpansion::zero(p, k, kPrecision);
  for (int a = 0; 12 * a <= k; ++a) {
    for (int b = 0; 12 * a + 4 * b <= k; ++b) {
      const int rest = k - 12 * a - 4 * b;
      if (rest % 6 != 0) continue;
      f = f + monomial_form(p, a, b, rest / 6).scaled(rng() % p.value());
    }
  }
  *weight_out = k;
  return f;
}

}  // namespace

TEST_CASE("weight profile") {
  CHECK(weight_profile(2196) == WeightProfile{2196, 183, 0, 0});
  CHECK(weight_profile(26) == WeightProfile{26, 1, 2, 1});
  CHECK(weight_profile(870) == WeightProfile{870, 72, 0, 1});
  CHECK(weight_profile(4) == WeightProfile{4, 0, 1, 0});
  CHECK(weight_profile(14) == WeightProfile{14, 0, 2, 1});
  CHECK_THROWS_AS(weight_profile(2), std::invalid_argument);
  CHECK_THROWS_AS(weight_profile(15), std::invalid_argument);
  for (i64 k = 4; k <= 2000; k += 2) {
    const auto w = weight_profile(k);
    REQUIRE(k == 12 * w.m + 4 * w.delta + 6 * w.eps);
    REQUIRE(w.m == dim_cusp_forms(k));
    REQUIRE(w.delta >= 0);
    REQUIRE(w.delta <= 2);
    REQUIRE(w.eps >= 0);
    REQUIRE(w.eps <= 1);
  }
}

TEST_CASE("divisor polynomial extraction") {
  SUBCASE("delta has F = 1") {
    for (u64 q : {5, 7, 13, 97}) {
      const PrimeModulus p(q);
      const auto d = divisor_polynomial(delta_series(p, 2));
      CHECK(d.profile.m == 1);
      CHECK(d.F.is_one());
    }
  }

  SUBCASE("constant series at weight 12 mod 13") {
    const PrimeModulus p(13);
    const auto d = divisor_polynomial(QExpansion::constant(p, 12, 2, 1));
    CHECK(d.F == FpPolynomial(p, {8, 1}));
    CHECK(eisenstein_divisor_polynomial(p) == FpPolynomial(p, {8, 1}));
  }

  SUBCASE("T_2196 mod 13") {
    const PrimeModulus p(13);
    TraceEngine engine;
    const auto d = divisor_polynomial(engine.trace_form(2196, p, 184));
    CHECK(d.profile.m == 183);
    CHECK(d.F.degree() == 182);
    CHECK(d.F == poly_pow(FpPolynomial(p, {8, 1}), 182));
    CHECK(poly_factor(d.F).to_string() == "(x+8)^182");
  }

  SUBCASE("precision below m + 1 is rejected") {
    const PrimeModulus p(13);
    CHECK_THROWS_AS(divisor_polynomial(QExpansion::constant(p, 24, 2, 1)), std::invalid_argument);
    CHECK_NOTHROW(divisor_polynomial(QExpansion::constant(p, 24, 3, 1)));
  }

  SUBCASE("monomial round trip on 200 random forms") {
    std::mt19937_64 rng(21);
    const u64 primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int i = 0; i < 200; ++i) {
      const PrimeModulus p(primes[i % 10]);
      const Monomial m = random_monomial(2 * static_cast<int>(rng() % 6), rng);
      const auto f = monomial_form(p, m.a, m.b, m.c).with_weight(m.weight());
      const auto d = divisor_polynomial(f);
      REQUIRE(d.F == monomial_prediction(p, m.b, m.c));
      REQUIRE(recompose(d, p, kPrecision) == f);
    }
  }

  SUBCASE("degree law and recomposition on random combinations") {
    std::mt19937_64 rng(22);
    for (u64 q : {5, 13, 37}) {
      const PrimeModulus p(q);
      for (int i = 0; i < 60; ++i) {
        int k = 0;
        const auto f = random_form(p, 2 * static_cast<int>(rng() % 6), rng, &k);
        const auto d = divisor_polynomial(f);
        REQUIRE(recompose(d, p, kPrecision) == f);
        if (f[0] != 0) {
          REQUIRE(d.F.degree() == d.profile.m);
          REQUIRE(d.F.leading_coefficient() == f[0]);
        } else {
          REQUIRE(d.F.degree() < d.profile.m);
        }
        // Multiplying by Delta leaves F unchanged and raises m by one.
        const auto cusp = series_mul(f, delta_series(p, kPrecision));
        const auto dc = divisor_polynomial(cusp.with_weight(k + 12));
        REQUIRE(dc.F.degree() < dc.profile.m);
        REQUIRE(dc.F == d.F);
      }
    }
  }
}

TEST_CASE("product exponents") {
  for (i64 k2 = 4; k2 <= 14; k2 += 2) {
    CHECK(product_exponents(12, k2) == ProductExponents{0, 0});
    CHECK(product_exponents(24, k2 + 12) == ProductExponents{0, 0});
  }
  CHECK(product_exponents(14, 22) == ProductExponents{1, 1});
  CHECK(product_exponents(4, 8) == ProductExponents{1, 0});

  // Rows k2 = 0, 2, ..., 10 mod 12; columns k1 likewise.
  const ProductExponents table[6][6] = {
      {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
      {{0, 0}, {1, 1}, {1, 0}, {0, 1}, {1, 0}, {1, 1}},
      {{0, 0}, {1, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}},
      {{0, 0}, {0, 1}, {0, 0}, {0, 1}, {0, 0}, {0, 1}},
      {{0, 0}, {1, 0}, {1, 0}, {0, 0}, {1, 0}, {1, 0}},
      {{0, 0}, {1, 1}, {0, 0}, {0, 1}, {1, 0}, {0, 1}},
  };
  for (int r2 = 0; r2 < 6; ++r2) {
    for (int r1 = 0; r1 < 6; ++r1) CHECK(product_exponents(12 + 2 * r1, 12 + 2 * r2) == table[r2][r1]);
  }
  for (i64 k1 = 4; k1 <= 40; k1 += 2) {
    for (i64 k2 = 4; k2 <= 40; k2 += 2) {
      REQUIRE(product_exponents(k1, k2) == product_exponents(k2, k1));
      REQUIRE(product_exponents(k1, k2) == product_exponents(k1 + 12, k2 + 24));
    }
  }

  SUBCASE("product law covers every residue pair") {
    std::mt19937_64 rng(23);
    std::set<std::pair<int, int>> cells;
    for (u64 q : {5, 7, 13, 29}) {
      const PrimeModulus p(q);
      for (int r1 = 0; r1 < 12; r1 += 2) {
        for (int r2 = 0; r2 < 12; r2 += 2) {
          for (int rep = 0; rep < 3; ++rep) {
            int k1 = 0;
            int k2 = 0;
            const auto f = random_form(p, r1, rng, &k1);
            const auto g = random_form(p, r2, rng, &k2);
            const auto fg = series_mul(f, g);
            const auto e = product_exponents(k1, k2);
            const auto lhs = divisor_polynomial(fg).F;
            const auto rhs = divisor_polynomial(f).F * divisor_polynomial(g).F *
                             poly_pow(FpPolynomial::monomial(p, 1), static_cast<u64>(e.a)) *
                             poly_pow(x_minus_1728(p), static_cast<u64>(e.b));
            REQUIRE(lhs == rhs);
            cells.insert({r1, r2});
          }
        }
      }
    }
    CHECK(cells.size() == 36);
  }
}

TEST_CASE("supersingular exponents") {
  CHECK(ssp_exponents(PrimeModulus(5)) == SupersingularExponents{1, 0});
  CHECK(ssp_exponents(PrimeModulus(7)) == SupersingularExponents{0, 1});
  CHECK(ssp_exponents(PrimeModulus(13)) == SupersingularExponents{0, 0});
  CHECK(ssp_exponents(PrimeModulus(23)) == SupersingularExponents{1, 1});
  CHECK(x_minus_1728(PrimeModulus(23)) == FpPolynomial(PrimeModulus(23), {20, 1}));
  CHECK(x_minus_1728(PrimeModulus(7)) == FpPolynomial(PrimeModulus(7), {1, 1}));
}

TEST_CASE("Deligne's observation matches the oracle for 5 <= p <= 97") {
  for (u64 q = 5; q <= 97; ++q) {
    if (!is_prime(q)) continue;
    const PrimeModulus p(q);
    const auto base = eisenstein_divisor_polynomial(p);
    CHECK(base == supersingular_oracle(p).s_tilde);
    CHECK(base.degree() == static_cast<int>(q / 12));
  }
}

TEST_CASE("powers of the Eisenstein series") {
  SUBCASE("n = 1 is the base polynomial") {
    for (u64 q : {5, 7, 13, 23, 37}) {
      const PrimeModulus p(q);
      const auto base = eisenstein_divisor_polynomial(p);
      CHECK(epn_divisor_polynomial(p, 1, base) == base);
    }
  }

  SUBCASE("paper values") {
    const PrimeModulus p5(5);
    CHECK(epn_divisor_polynomial(p5, 12, eisenstein_divisor_polynomial(p5)) == FpPolynomial::monomial(p5, 4));
    const PrimeModulus p23(23);
    const auto got = epn_divisor_polynomial(p23, 552, eisenstein_divisor_polynomial(p23));
    CHECK(poly_factor(got).to_string() == "x^184*(x+4)^552*(x+20)^276");
  }

  SUBCASE("closed form against one factor at a time") {
    for (u64 q : {5, 7, 11, 13, 17, 19, 23}) {
      const PrimeModulus p(q);
      const auto base = eisenstein_divisor_polynomial(p);
      for (i64 n = 1; n <= 30; ++n) {
        REQUIRE(epn_divisor_polynomial(p, n, base) == epn_divisor_polynomial_inductive(p, n, base));
      }
    }
  }

  SUBCASE("against direct extraction from the constant series") {
    for (u64 q : {5, 7, 11, 13}) {
      const PrimeModulus p(q);
      const auto base = eisenstein_divisor_polynomial(p);
      for (i64 n = 1; n <= 12; ++n) {
        const int k = static_cast<int>(n * static_cast<i64>(q - 1));
        const auto direct = divisor_polynomial(QExpansion::constant(p, k, static_cast<std::size_t>(k / 12 + 1), 1)).F;
        REQUIRE(direct == epn_divisor_polynomial(p, n, base));
      }
    }
  }
}

TEST_CASE("transfer formula") {
  TraceEngine engine;

  SUBCASE("p = 5, weight 28 to 76") {
    const PrimeModulus p(5);
    const auto f28 = divisor_polynomial(engine.trace_form(28, p, 3)).F;
    CHECK(f28.scaled(3) == FpPolynomial(p, {4, 1}));
    const auto t = transfer_divisor_polynomial(f28.scaled(3), 28, 12, p);
    CHECK(t == FpPolynomial(p, {0, 0, 0, 0, 4, 1}));
    CHECK(t == divisor_polynomial(engine.trace_form(76, p, 7)).F);
  }

  SUBCASE("p = 23, weight 28 to 12172") {
    const PrimeModulus p(23);
    const auto f28 = divisor_polynomial(engine.trace_form(28, p, 3)).F;
    CHECK(f28 == FpPolynomial(p, {14, 2}));
    const auto t = transfer_divisor_polynomial(f28, 28, 552, p);
    CHECK(poly_factor(t).to_string() == "2*x^184*(x+4)^552*(x+7)*(x+20)^276");
  }

  SUBCASE("identity when every factor is trivial") {
    const PrimeModulus p(7);
    const FpPolynomial f(p, {3, 1, 4});
    CHECK(transfer_divisor_polynomial(f, 12, 1, p) == f);
  }

  SUBCASE("random forms times constant series") {
    std::mt19937_64 rng(24);
    for (u64 q : {5, 7, 13}) {
      const PrimeModulus p(q);
      const auto base = eisenstein_divisor_polynomial(p);
      for (int i = 0; i < 20; ++i) {
        int k = 0;
        const auto f = random_form(p, 2 * static_cast<int>(rng() % 6), rng, &k);
        const i64 n = 1 + static_cast<i64>(rng() % 6);
        const int k2 = k + static_cast<int>(n * static_cast<i64>(q - 1));
        // The same q-expansion read at weight k + n(p-1).
        const auto lifted = divisor_polynomial(f.with_weight(k2)).F;
        REQUIRE(lifted == transfer_divisor_polynomial(divisor_polynomial(f).F, k, n, p, base));
      }
    }
  }
}
