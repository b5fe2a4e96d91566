#include <doctest.h>

#include "wittlab/fp.hpp"

using namespace wittlab;

TEST_CASE("prime field examples") {
    CHECK(Fp(3, 5).mul(Fp(4, 5)).value() == 2);
    CHECK(Fp(2, 3).inv().value() == 2);
    CHECK(Fp(1, 2).add(Fp(1, 2)).value() == 0);
    CHECK(Fp(-1, 7).value() == 6);
    CHECK(Fp(0, 5).neg().value() == 0);
    CHECK(Fp(3, 7).div(Fp(5, 7)).mul(Fp(5, 7)).value() == 3);
}

TEST_CASE("prime field errors") {
    CHECK_THROWS_AS(Fp(1, 4), ConfigError);
    CHECK_THROWS_AS(Fp(1, 17), ConfigError);
    CHECK_THROWS_AS(Fp(0, 5).inv(), DivisionByZero);
    CHECK_THROWS_AS(Fp(1, 5).div(Fp(0, 5)), DivisionByZero);
    CHECK_THROWS_AS(Fp(1, 5).add(Fp(1, 7)), ModulusMismatch);
}

TEST_CASE("field axioms hold exhaustively") {
    for (int p : {2, 3, 5, 7, 11, 13}) {
        for (int a = 0; a < p; ++a) {
            Fp fa(a, p);
            if (a != 0) CHECK(fa.mul(fa.inv()).value() == 1);
            CHECK(fa.add(fa.neg()).value() == 0);
            CHECK(fa.pow(p).value() == a);  // Frobenius fixes F_p
            for (int b = 0; b < p; ++b) {
                Fp fb(b, p);
                CHECK(fa.add(fb).value() == fb.add(fa).value());
                CHECK(fa.mul(fb).value() == fb.mul(fa).value());
                for (int c = 0; c < p && p <= 7; ++c) {
                    Fp fc(c, p);
                    CHECK(fa.mul(fb.add(fc)).value() == fa.mul(fb).add(fa.mul(fc)).value());
                    CHECK(fa.add(fb).add(fc).value() == fa.add(fb.add(fc)).value());
                    CHECK(fa.mul(fb).mul(fc).value() == fa.mul(fb.mul(fc)).value());
                }
            }
        }
    }
}

TEST_CASE("binomials mod p") {
    CHECK(binom_mod_p(4, 2, 5).value() == 1);
    CHECK(binom_mod_p(3, 1, 3).value() == 0);
    CHECK(binom_mod_p(5, 2, 5).value() == 0);
    CHECK_THROWS_AS(binom_mod_p(2, 3, 5), DomainError);
    // p divides binom(p, k) for 0 < k < p
    for (int p : {2, 3, 5, 7, 11, 13})
        for (int k = 1; k < p; ++k)
            CHECK(binom_mod_p(static_cast<unsigned>(p), static_cast<unsigned>(k), p).value() ==
                  0);
}

TEST_CASE("power sums by literal summation") {
    // exact integer sums behind the examples: 0^2+..+4^2 = 30, 0^4+..+4^4 = 354
    CHECK(power_sum_mod_p(2, 5).value() == 0);
    CHECK(power_sum_mod_p(4, 5).value() == 4);
    CHECK(power_sum_mod_p(1, 2).value() == 1);

    for (int p : {2, 3, 5, 7, 11, 13}) {
        for (int k = 0; k + 1 < p; ++k)
            CHECK(power_sum_mod_p(static_cast<unsigned>(k), p).value() == 0);
        CHECK(power_sum_mod_p(static_cast<unsigned>(p - 1), p).value() == p - 1);
    }
}

namespace {
void scan_compositions(int p, std::vector<int>& parts, size_t pos, int remaining, int& count) {
    if (pos + 1 == parts.size()) {
        if (remaining >= p) return;
        parts[pos] = remaining;
        CHECK_NOTHROW(multinomial_div_p(p, parts));
        ++count;
        return;
    }
    for (int k = 0; k <= std::min(remaining, p - 1); ++k) {
        parts[pos] = k;
        scan_compositions(p, parts, pos + 1, remaining - k, count);
    }
}
}  // namespace

TEST_CASE("multinomial divided by p") {
    CHECK(multinomial_div_p(2, {1, 1}) == 1);
    CHECK(multinomial_div_p(3, {1, 2, 0}) == 1);
    CHECK(multinomial_div_p(3, {1, 1, 1}) == 2);
    CHECK_THROWS_AS(multinomial_div_p(3, {3, 0, 0}), DomainError);
    CHECK_THROWS_AS(multinomial_div_p(3, {1, 1}), DomainError);
    CHECK_THROWS_AS(multinomial_div_p(3, {1, 1, 0}), DomainError);

    // the division is exact over the whole composition space for p <= 7
    for (int p : {2, 3, 5, 7}) {
        std::vector<int> parts(static_cast<size_t>(p), 0);
        int count = 0;
        scan_compositions(p, parts, 0, p, count);
        CHECK(count > 0);
    }
}
