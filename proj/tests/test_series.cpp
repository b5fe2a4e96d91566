#include <doctest.h>

#include <nlohmann/json.hpp>

#include "wittlab/laurent.hpp"

using namespace wittlab;

TEST_CASE("construction and normalization") {
    LaurentSeries unit = LaurentSeries::make(2, 0, {1}, 10);
    CHECK(unit.valuation() == Valuation::exactly(0));
    CHECK(unit.precision() == 10);

    LaurentSeries tm2 = LaurentSeries::make(3, -2, {1}, 8);
    CHECK(tm2.valuation() == Valuation::exactly(-2));

    LaurentSeries z = LaurentSeries::make(2, 0, {0, 0}, 2);
    CHECK(z.is_zero_within_precision());
    CHECK(!z.is_exact_zero());
    CHECK(z.valuation() == Valuation::at_least(2));

    // leading zeros absorbed into the valuation
    LaurentSeries lead = LaurentSeries::make(5, 1, {0, 0, 3, 0}, 20);
    CHECK(lead.valuation() == Valuation::exactly(3));
    CHECK(lead.coeff_at(3) == 3);
    CHECK(lead.coeff_at(4) == 0);

    CHECK(LaurentSeries::zero(3).is_exact_zero());
    CHECK_THROWS_AS(LaurentSeries::make(2, 5, {1, 1}, 6), PrecisionWindowInvalid);
    CHECK_THROWS_AS(LaurentSeries::make(9, 0, {1}, 6), ConfigError);
}

TEST_CASE("arithmetic examples") {
    for (int p : {2, 3, 5}) {
        LaurentSeries t = LaurentSeries::monomial(p, 1);
        CHECK(t.mul(t).identical(LaurentSeries::monomial(p, 2)));
    }
    LaurentSeries one_plus_t = LaurentSeries::make(2, 0, {1, 1});
    CHECK(one_plus_t.add(one_plus_t).is_exact_zero());

    LaurentSeries a = LaurentSeries::monomial(2, -1);
    LaurentSeries b = LaurentSeries::monomial(2, 3);
    CHECK(a.mul(b).identical(LaurentSeries::monomial(2, 2)));

    CHECK_THROWS_AS(LaurentSeries::one(2).add(LaurentSeries::one(3)), ModulusMismatch);
}

TEST_CASE("precision window propagation") {
    // add: N = min(N_a, N_b)
    LaurentSeries a = LaurentSeries::make(3, 0, {1, 2}, 7);
    LaurentSeries b = LaurentSeries::make(3, 1, {1}, 5);
    CHECK(a.add(b).precision() == 5);

    // mul: N = min(N_a + val(b), N_b + val(a))
    LaurentSeries c = LaurentSeries::make(3, 2, {1}, 9);   // val 2, N 9
    LaurentSeries d = LaurentSeries::make(3, -1, {2}, 4);  // val -1, N 4
    CHECK(c.mul(d).precision() == std::min(9 + (-1), 4 + 2));
    CHECK(c.mul(d).valuation() == Valuation::exactly(1));

    // exact zero is absorbing and window-neutral
    CHECK(a.add(LaurentSeries::zero(3)).precision() == 7);
    CHECK(a.mul(LaurentSeries::zero(3)).is_exact_zero());

    // coefficients beyond the window are not reported
    CHECK_THROWS_AS(b.coeff_at(5), PrecisionExhausted);
    CHECK(b.coeff_at(4) == 0);
}

TEST_CASE("inverse") {
    LaurentSeries g = LaurentSeries::make(3, 0, {1, 1}, 3);  // 1 + t, known below t^3
    LaurentSeries inv = g.inv();
    CHECK(inv.precision() == 3);
    CHECK(inv.coeff_at(0) == 1);
    CHECK(inv.coeff_at(1) == 2);
    CHECK(inv.coeff_at(2) == 1);

    CHECK(LaurentSeries::monomial(5, 1).inv().identical(LaurentSeries::monomial(5, -1)));
    CHECK_THROWS_AS(LaurentSeries::zero(3, 6).inv(), NotInvertible);
    CHECK_THROWS_AS(LaurentSeries::zero(3).inv(), NotInvertible);
    // exact non-monomial needs an explicit output precision
    LaurentSeries exact_poly = LaurentSeries::make(3, 0, {1, 1});
    CHECK_THROWS_AS(exact_poly.inv(), ConfigError);
    LaurentSeries inv2 = exact_poly.inv(5);
    CHECK(exact_poly.mul(inv2).agree_on_common_window(LaurentSeries::one(3)));
}

TEST_CASE("explicit truncation") {
    LaurentSeries a = LaurentSeries::make(3, 0, {1, 2, 1}, 10);
    LaurentSeries cut = a.truncate(2);
    CHECK(cut.precision() == 2);
    CHECK(cut.coeff_at(1) == 2);
    CHECK_THROWS_AS(cut.coeff_at(2), PrecisionExhausted);
    CHECK_THROWS_AS(cut.truncate(5), PrecisionWindowInvalid);
    CHECK(a.truncate(0).is_zero_within_precision());
}

TEST_CASE("valuation queries") {
    LaurentSeries x = LaurentSeries::make(5, 2, {1, 0, 0, 1});  // t^2 + t^5
    CHECK(x.valuation() == Valuation::exactly(2));
    CHECK(LaurentSeries::zero(5, 12).valuation() == Valuation::at_least(12));
    CHECK(LaurentSeries::monomial(5, -2).valuation() == Valuation::exactly(-2));

    CHECK(Valuation::at_least(4).known_at_least(3));
    CHECK(!Valuation::at_least(2).known_at_least(3));
    CHECK(Valuation::exactly(1).decided_below(3));
    CHECK(!Valuation::at_least(1).decided_below(3));
}

TEST_CASE("deterministic random series") {
    Rng r1(42), r2(42), r3(43);
    LaurentSeries a = LaurentSeries::random(3, -2, 4, 9, r1);
    LaurentSeries b = LaurentSeries::random(3, -2, 4, 9, r2);
    LaurentSeries c = LaurentSeries::random(3, -2, 4, 9, r3);
    CHECK(a.identical(b));
    CHECK(!a.identical(c));  // different seed, overwhelmingly different draw
    CHECK(a.exact());

    for (int i = 0; i < 200; ++i) {
        Rng r(derive_seed(7, static_cast<std::uint64_t>(i)));
        LaurentSeries x = LaurentSeries::random(5, -3, 2, 6, r);
        Valuation v = x.valuation();
        CHECK(v.exact);
        CHECK(v.value >= -3);
        CHECK(v.value <= 2);
    }
    Rng r(1);
    CHECK(LaurentSeries::random(3, 0, 0, 5, r).valuation() == Valuation::exactly(0));
    CHECK_THROWS_AS(LaurentSeries::random(3, 2, 1, 5, r), PrecisionWindowInvalid);
}

TEST_CASE("ring axioms and valuation laws on samples") {
    for (int p : {2, 3, 5}) {
        for (int i = 0; i < 60; ++i) {
            Rng rng(derive_seed(11 * p, static_cast<std::uint64_t>(i)));
            LaurentSeries a = LaurentSeries::random(p, -3, 3, 8, rng);
            LaurentSeries b = LaurentSeries::random(p, -3, 3, 8, rng);
            LaurentSeries c = LaurentSeries::random(p, -3, 3, 8, rng);

            CHECK(a.add(b).identical(b.add(a)));
            CHECK(a.mul(b).identical(b.mul(a)));
            CHECK(a.add(b).add(c).identical(a.add(b.add(c))));
            CHECK(a.mul(b).mul(c).identical(a.mul(b.mul(c))));
            CHECK(a.mul(b.add(c)).identical(a.mul(b).add(a.mul(c))));
            CHECK(a.sub(a).is_exact_zero());

            // integral domain: valuations add
            CHECK(a.mul(b).valuation() ==
                  Valuation::exactly(a.valuation().value + b.valuation().value));

            // ultrametric inequality, equality on distinct valuations
            Valuation vs = a.add(b).valuation();
            long long lo = std::min(a.valuation().value, b.valuation().value);
            CHECK(vs.value >= lo);
            if (a.valuation().value != b.valuation().value) {
                CHECK(vs.exact);
                CHECK(vs.value == lo);
            }

            // a * inv(a) = 1 on the inverse's full window
            LaurentSeries inv = a.inv(a.valuation().value + 12);
            CHECK(a.mul(inv).agree_on_common_window(LaurentSeries::one(p)));
        }
    }
}

TEST_CASE("serialization round trip") {
    Rng rng(5);
    LaurentSeries a = LaurentSeries::random(5, -2, 3, 7, rng);
    CHECK(LaurentSeries::from_json(a.to_json()).identical(a));

    LaurentSeries trunc = LaurentSeries::make(3, -1, {2, 0, 1}, 6);
    CHECK(LaurentSeries::from_json(trunc.to_json()).identical(trunc));
    CHECK(trunc.to_json()["N"] == 6);
    CHECK(a.to_json()["N"].is_null());

    CHECK(LaurentSeries::from_json(LaurentSeries::zero(2).to_json()).is_exact_zero());
    LaurentSeries zp = LaurentSeries::zero(2, 9);
    CHECK(LaurentSeries::from_json(zp.to_json()).valuation() == Valuation::at_least(9));
}

TEST_CASE("parsing CLI series forms") {
    CHECK(parse_series(3, "t^-2").identical(LaurentSeries::monomial(3, -2)));
    CHECK(parse_series(3, "0").is_exact_zero());
    CHECK(parse_series(3, "1").identical(LaurentSeries::one(3)));
    LaurentSeries sparse = parse_series(3, "1:-2,2:0");
    CHECK(sparse.coeff_at(-2) == 1);
    CHECK(sparse.coeff_at(0) == 2);
    CHECK_THROWS_AS(parse_series(3, "nonsense"), ConfigError);
}
