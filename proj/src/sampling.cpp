#include "wittlab/sampling.hpp"

namespace wittlab {

namespace {
long long ceil_div_nonneg(long long a, long long b) { return (a + b - 1) / b; }

// The argument order of nested rng calls is compiler-dependent, so draw
// everything in named steps.
LaurentSeries random_coeff(int p, long long v_min, int spread, Rng& rng) {
    long long v_max = v_min + spread;
    long long support = v_max + 1 + static_cast<long long>(rng.below(3));
    return LaurentSeries::random(p, v_min, v_max, support, rng);
}
}  // namespace

ExtElement random_integral_element(const ExtensionPtr& ext, Rng& rng, int margin) {
    const int p = ext->p();
    std::vector<LaurentSeries> a;
    a.reserve(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) {
        if (rng.chance(1, 5)) {
            a.push_back(LaurentSeries::zero(p));
            continue;
        }
        a.push_back(random_coeff(p, ext->integral_threshold(i), margin, rng));
    }
    return ExtElement(ext, std::move(a));
}

ExtElement random_mixed_element(const ExtensionPtr& ext, Rng& rng, int below, int above) {
    const int p = ext->p();
    std::vector<LaurentSeries> a;
    a.reserve(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) {
        if (rng.chance(1, 5)) {
            a.push_back(LaurentSeries::zero(p));
            continue;
        }
        long long lo = ext->integral_threshold(i) - below;
        long long hi = ext->integral_threshold(i) + above;
        long long support = hi + 1 + static_cast<long long>(rng.below(3));
        a.push_back(LaurentSeries::random(p, lo, hi, support, rng));
    }
    return ExtElement(ext, std::move(a));
}

ExtElement random_trace_zero(const ExtensionPtr& ext, Rng& rng, long long min_vL, int margin) {
    if (min_vL < 0) throw DomainError("random_trace_zero needs min_vL >= 0");
    const int p = ext->p();
    const int s = ext->s();
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<LaurentSeries> a;
        a.reserve(static_cast<size_t>(p));
        bool any = false;
        for (int i = 0; i + 1 < p; ++i) {
            if (rng.chance(1, 4)) {
                a.push_back(LaurentSeries::zero(p));
                continue;
            }
            long long base = ceil_div_nonneg(min_vL + (long long)i * s, p);
            a.push_back(random_coeff(p, base, margin, rng));
            any = true;
        }
        a.push_back(LaurentSeries::zero(p));  // a_{p-1} = 0: trace zero by construction
        if (!any) continue;
        return ExtElement(ext, std::move(a));
    }
    // All draws degenerate; fall back to a single forced coefficient.
    std::vector<LaurentSeries> a(static_cast<size_t>(p), LaurentSeries::zero(p));
    a[0] = LaurentSeries::monomial(p, ceil_div_nonneg(min_vL, p));
    return ExtElement(ext, std::move(a));
}

ExtElement random_integral_with_valuation(const ExtensionPtr& ext, Rng& rng, long long target) {
    if (target < 0) throw DomainError("target valuation must be nonnegative for O_L elements");
    const int p = ext->p();
    const int s = ext->s();
    // Unique monomial slot with p*j - i*s = target.
    int s_inv = mod_inv(s % p, p);
    int i_star = mod_mul(static_cast<int>(((-target) % p + p) % p), s_inv, p);
    long long j_star = (target + (long long)i_star * s) / p;
    std::vector<LaurentSeries> a;
    a.reserve(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) {
        if (i == i_star) {
            long long support = j_star + 1 + static_cast<long long>(rng.below(3));
            a.push_back(LaurentSeries::random(p, j_star, j_star, support, rng));
            continue;
        }
        if (rng.chance(2, 5)) {
            a.push_back(LaurentSeries::zero(p));
            continue;
        }
        // Keep every other term strictly above target and inside O_L.
        long long floor_above = (target + (long long)i * s) / p + 1;
        long long lo = std::max(ext->integral_threshold(i), floor_above);
        a.push_back(random_coeff(p, lo, 2, rng));
    }
    return ExtElement(ext, std::move(a));
}

}  // namespace wittlab
