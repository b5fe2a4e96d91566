#include <doctest.h>

#include <nlohmann/json.hpp>

#include "wittlab/sampling.hpp"
#include "wittlab/wittring.hpp"

using namespace wittlab;

namespace {
bool same_element(const ExtElement& a, const ExtElement& b) {
    return a.sub(b).is_zero_within_precision();
}

bool same_vector(const WittVector& a, const WittVector& b) {
    if (a.length() != b.length()) return false;
    for (int i = 0; i < a.length(); ++i)
        if (!same_element(a.component(i), b.component(i))) return false;
    return true;
}

WittVector random_witt(const WittContext& ctx, int n, Rng& rng) {
    std::vector<ExtElement> comps;
    for (int i = 0; i < n; ++i) comps.push_back(random_integral_element(ctx.ext(), rng));
    return WittVector(ctx.ext(), std::move(comps));
}
}  // namespace

TEST_CASE("witt addition basics at p=2") {
    auto ext = Extension::make(2, 1);
    WittContext ctx(ext, 2);
    Rng rng(5);

    for (int i = 0; i < 30; ++i) {
        WittVector a = random_witt(ctx, 2, rng);
        WittVector b = random_witt(ctx, 2, rng);

        CHECK(same_vector(witt_add(ctx, a, WittVector::zero(ext, 2)), a));
        CHECK(same_vector(witt_add(ctx, a, b), witt_add(ctx, b, a)));
        CHECK(witt_add(ctx, a, witt_neg(ctx, a)).is_zero_within_precision());

        // closed form for length 2 at p=2: (x0+y0, x1+y1+x0*y0)
        WittVector s = witt_add(ctx, a, b);
        CHECK(same_element(s.component(0), a.component(0).add(b.component(0))));
        CHECK(same_element(s.component(1), a.component(1)
                                               .add(b.component(1))
                                               .add(a.component(0).mul(b.component(0)))));
    }
}

TEST_CASE("witt ring laws on random triples") {
    for (auto [p, s, n] : {std::tuple{2, 3, 3}, {3, 2, 2}}) {
        auto ext = Extension::make(p, s);
        WittContext ctx(ext, n);
        for (int i = 0; i < 15; ++i) {
            Rng rng(derive_seed(42 * p + s, static_cast<std::uint64_t>(i)));
            WittVector a = random_witt(ctx, n, rng);
            WittVector b = random_witt(ctx, n, rng);
            WittVector c = random_witt(ctx, n, rng);
            CHECK(same_vector(witt_add(ctx, witt_add(ctx, a, b), c),
                              witt_add(ctx, a, witt_add(ctx, b, c))));
            CHECK(same_vector(witt_add(ctx, a, b), witt_add(ctx, b, a)));
            // sigma is additive and has order p
            CHECK(same_vector(witt_sigma(1, witt_add(ctx, a, b)),
                              witt_add(ctx, witt_sigma(1, a), witt_sigma(1, b))));
            WittVector cycled = a;
            for (int j = 0; j < p; ++j) cycled = witt_sigma(1, cycled);
            CHECK(same_vector(cycled, a));
            CHECK(same_vector(witt_sigma(0, a), a));
        }
    }
}

TEST_CASE("length-1 vectors reduce to the ring itself") {
    auto ext = Extension::make(3, 2);
    WittContext ctx(ext, 1);
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        ExtElement x = random_integral_element(ext, rng);
        ExtElement y = random_integral_element(ext, rng);
        WittVector wx(ext, {x}), wy(ext, {y});
        CHECK(same_element(witt_add(ctx, wx, wy).component(0), x.add(y)));
        LaurentSeries tr_w = component_as_series(witt_trace(ctx, wx).component(0));
        CHECK(tr_w.agree_on_common_window(trace(x)));
    }
}

TEST_CASE("witt trace structure") {
    auto ext = Extension::make(2, 1);
    WittContext ctx(ext, 2);
    CHECK(witt_trace(ctx, WittVector::zero(ext, 2)).is_zero_within_precision());

    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        WittVector w = random_witt(ctx, 2, rng);
        WittVector t = witt_trace(ctx, w);
        // independent closed form at p=2, n=2: (tr x0, tr x1 + x0*sigma(x0))
        const ExtElement& x0 = w.component(0);
        const ExtElement& x1 = w.component(1);
        CHECK(component_as_series(t.component(0)).agree_on_common_window(trace(x0)));
        ExtElement expected1 =
            ext->monomial_element(trace(x1), 0).add(x0.mul(x0.galois(1)));
        CHECK(same_element(t.component(1), expected1));
    }

    // trace of a coboundary vanishes
    for (auto [p, s, n] : {std::tuple{2, 3, 3}, {3, 2, 2}}) {
        auto e = Extension::make(p, s);
        WittContext c(e, n);
        for (int i = 0; i < 10; ++i) {
            Rng r(derive_seed(600 + p, static_cast<std::uint64_t>(i)));
            WittVector u = random_witt(c, n, r);
            WittVector d = witt_sub(c, witt_sigma(1, u), u);
            CHECK(witt_trace(c, d).is_zero_within_precision());
        }
    }
}

TEST_CASE("truncation is a homomorphism commuting with sigma and trace") {
    auto ext = Extension::make(2, 3);
    WittContext ctx(ext, 3);
    Rng rng(13);
    for (int i = 0; i < 15; ++i) {
        WittVector a = random_witt(ctx, 3, rng);
        WittVector b = random_witt(ctx, 3, rng);
        CHECK(same_vector(witt_truncate(a, 3), a));
        CHECK(same_vector(witt_truncate(witt_add(ctx, a, b), 2),
                          witt_add(ctx, witt_truncate(a, 2), witt_truncate(b, 2))));
        CHECK(same_vector(witt_truncate(witt_trace(ctx, a), 2),
                          witt_trace(ctx, witt_truncate(a, 2))));
    }
    CHECK_THROWS_AS(witt_truncate(WittVector::zero(ext, 2), 3), DomainError);
}

TEST_CASE("the map F") {
    auto e21 = Extension::make(2, 1);
    LaurentSeries t = LaurentSeries::monomial(2, 1);
    // F(t) = t * sigma(t) = t^2
    CHECK(f_map(e21->monomial_element(t, 0)).identical(LaurentSeries::monomial(2, 2)));
    // F(t lambda) = t^2 (lambda^2 + lambda) = t
    CHECK(f_map(e21->monomial_element(t, 1)).identical(t));
    CHECK(f_map(e21->zero_element()).is_exact_zero());

    for (auto [p, s] : {std::pair{2, 3}, {3, 2}, {5, 2}}) {
        auto e = Extension::make(p, s);
        for (int i = 0; i < 40; ++i) {
            Rng rng(derive_seed(2024 * p + s, static_cast<std::uint64_t>(i)));
            long long target = static_cast<long long>(rng.below(2 * s + 6));
            ExtElement x = random_integral_with_valuation(e, rng, target);
            REQUIRE(x.valuation() == Valuation::exactly(target));
            LaurentSeries fx = f_map(x);
            CHECK(fx.valuation() == Valuation::exactly(target));
            // invariance under conjugation of the argument
            CHECK(f_map(x.galois(1)).agree_on_common_window(fx));
        }
    }
}

TEST_CASE("level-1 trace component equals -F") {
    // The structure-polynomial route and the G-polynomial route must agree:
    // for any x, the level-1 component of the Witt trace of (x, 0) is -F(x).
    for (auto [p, s] : {std::pair{2, 1}, {2, 3}, {3, 2}, {5, 2}}) {
        auto ext = Extension::make(p, s);
        WittContext ctx(ext, 2);
        for (int i = 0; i < 25; ++i) {
            Rng rng(derive_seed(5555 * p + s, static_cast<std::uint64_t>(i)));
            ExtElement x = random_integral_element(ext, rng);
            WittVector w(ext, {x, ext->zero_element()});
            LaurentSeries c1 = component_as_series(witt_trace(ctx, w).component(1));
            CHECK(c1.agree_on_common_window(f_map(x).neg()));
        }
    }
}

TEST_CASE("product polynomials load through the context") {
    auto ext = Extension::make(2, 1);
    WittContext ctx(ext, 2);
    // P_1 at p=2 reduced: x0^2*y1 + x1*y0^2 + 2 x1 y1 = x0^2 y1 + x1 y0^2
    const ModPolynomial& p1 = ctx.product_poly(1);
    CHECK(p1.terms.size() == 2);
    Rng rng(31);
    // ghost-free consistency at level 0: product polynomial is plain product
    ExtElement a = random_integral_element(ext, rng);
    ExtElement b = random_integral_element(ext, rng);
    ExtElement prod = eval_mod_poly(ctx.product_poly(0), ext, {a, b});
    CHECK(prod.sub(a.mul(b)).is_zero_within_precision());
}

TEST_CASE("solve_trace") {
    auto ext = Extension::make(2, 1);
    Rng rng(3);
    LaurentSeries t2 = LaurentSeries::monomial(2, 2);
    ExtElement x = solve_trace(ext, t2, false, rng);
    CHECK(same_element(x, ext->monomial_element(t2, 1)));  // t^2 lambda
    CHECK(trace(x).identical(t2));

    CHECK_THROWS_AS(solve_trace(ext, LaurentSeries::one(2), false, rng), TraceUnsolvable);
    CHECK(solve_trace(ext, LaurentSeries::zero(2), false, rng).is_exact_zero());

    // randomized general solutions still hit the requested trace
    for (auto [p, s] : {std::pair{3, 2}, {5, 3}}) {
        auto e = Extension::make(p, s);
        long long floor = e->trace_image_threshold();
        for (int i = 0; i < 30; ++i) {
            Rng r(derive_seed(4000 + p, static_cast<std::uint64_t>(i)));
            LaurentSeries c = LaurentSeries::random(p, floor, floor + 3, floor + 6, r);
            ExtElement sol = solve_trace(e, c, true, r);
            CHECK(sol.in_integral_ring());
            CHECK(trace(sol).agree_on_common_window(c));
            CHECK(trace(sol, TraceMode::direct).agree_on_common_window(c));
        }
        LaurentSeries low = LaurentSeries::monomial(p, floor - 1);
        Rng r2(0);
        CHECK_THROWS_AS(solve_trace(e, low, false, r2), TraceUnsolvable);
    }
}

TEST_CASE("gen_trace_zero") {
    auto ext = Extension::make(2, 1);
    WittContext ctx(ext, 2);
    Rng rng(7);

    // length 1 accepts any trace-zero start
    GenResult r1 = gen_trace_zero(ctx, 1, ext->one_element(), false, rng);
    REQUIRE(r1.ok());
    CHECK(same_element(r1.vector->component(0), ext->one_element()));

    // x0 = 1 cannot extend: c_1 = F(1) = 1 has v_K = 0 < 1
    GenResult r2 = gen_trace_zero(ctx, 2, ext->one_element(), false, rng);
    REQUIRE(!r2.ok());
    CHECK(r2.failure->level == 1);
    CHECK(r2.failure->c_valuation == 0);

    // x0 = t extends with x1 = t^2 lambda (+ randomization)
    ExtElement x0 = ext->monomial_element(LaurentSeries::monomial(2, 1), 0);
    GenResult r3 = gen_trace_zero(ctx, 2, x0, false, rng);
    REQUIRE(r3.ok());
    CHECK(same_element(r3.vector->component(1),
                       ext->monomial_element(LaurentSeries::monomial(2, 2), 1)));
    CHECK(witt_trace(ctx, *r3.vector).is_zero_within_precision());

    GenResult r4 = gen_trace_zero(ctx, 2, x0, true, rng);
    REQUIRE(r4.ok());
    CHECK(witt_trace(ctx, *r4.vector).is_zero_within_precision());
}

TEST_CASE("generated vectors satisfy the component bounds") {
    for (auto [p, s] : {std::pair{2, 1}, {2, 3}, {3, 2}}) {
        auto ext = Extension::make(p, s);
        int n = step3_length(p, s);
        WittContext ctx(ext, n);
        int successes = 0;
        for (int i = 0; i < 60 && successes < 25; ++i) {
            Rng rng(derive_seed(9000 + 10 * p + s, static_cast<std::uint64_t>(i)));
            GenResult r = gen_trace_zero(ctx, n, std::nullopt, true, rng);
            if (!r.ok()) continue;
            ++successes;
            const WittVector& w = *r.vector;
            for (int idx = 2; idx <= n; ++idx)
                CHECK(w.component(n - idx).valuation().known_at_least(
                    step_bound(p, s, idx).ceil()));
            CHECK(w.component(0).valuation().known_at_least(s));
            CHECK(h1_class_is_zero(w.component(0)));
        }
        CHECK(successes == 25);
    }
}

TEST_CASE("step bounds, exact rationals") {
    CHECK(step_bound(2, 3, 2) == Rational::of(3, 2));
    CHECK(step_bound(2, 3, 3) == Rational::of(9, 4));
    CHECK(step_bound(2, 3, 3).str() == "9/4");
    CHECK(step_bound(2, 3, 3).ceil() == 3);
    CHECK(step3_length(2, 3) == 3);
    CHECK(step3_length(2, 1) == 2);
    CHECK(step3_length(3, 2) == 2);
    CHECK(step3_length(5, 3) == 2);
    CHECK_THROWS_AS(step_bound(2, 3, 1), DomainError);
}

TEST_CASE("witt coboundary solving") {
    for (auto [p, s, n] : {std::tuple{2, 1, 2}, {2, 3, 3}, {3, 2, 2}}) {
        auto ext = Extension::make(p, s);
        WittContext ctx(ext, n);
        for (int i = 0; i < 10; ++i) {
            Rng rng(derive_seed(31337 + p, static_cast<std::uint64_t>(i)));
            WittVector u(ext, [&] {
                std::vector<ExtElement> cs;
                for (int k = 0; k < n; ++k) cs.push_back(random_integral_element(ext, rng));
                return cs;
            }());
            WittVector w = witt_sub(ctx, witt_sigma(1, u), u);
            auto solved = witt_coboundary_solve(ctx, w);
            REQUIRE(solved.has_value());
            WittVector check = witt_sub(ctx, witt_sigma(1, *solved), *solved);
            for (int k = 0; k < n; ++k)
                CHECK(same_element(check.component(k), w.component(k)));
        }
    }

    // a vector whose level-0 class is nonzero has no solution
    auto ext = Extension::make(2, 1);
    WittContext ctx(ext, 2);
    WittVector bad(ext, {ext->one_element(), ext->zero_element()});
    CHECK(!witt_coboundary_solve(ctx, bad).has_value());
}

TEST_CASE("witt vector serialization round trip") {
    auto ext = Extension::make(2, 3);
    WittContext ctx(ext, 2);
    Rng rng(21);
    WittVector w = random_witt(ctx, 2, rng);
    auto j = w.to_json();
    CHECK(j["p"] == 2);
    CHECK(j["s"] == 3);
    CHECK(j["n"] == 2);
    CHECK(j["components"].size() == 2);
    CHECK(same_vector(WittVector::from_json(ext, j), w));
}
