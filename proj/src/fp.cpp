#include "wittlab/fp.hpp"

namespace wittlab {

Fp binom_mod_p(unsigned long long n, unsigned long long k, int p) {
    require_supported_prime(p);
    if (k > n)
        throw DomainError("binom(" + std::to_string(n) + "," + std::to_string(k) +
                          "): k exceeds n");
    ExactInt b = binomial(n, k);
    return Fp(static_cast<long long>(b % p), p);
}

Fp power_sum_mod_p(unsigned long long k, int p) {
    require_supported_prime(p);
    ExactInt sum = 0;
    for (int n = 0; n < p; ++n) {
        // 0^0 = 1 (empty product), so S_0 = p.
        sum += exact_pow(ExactInt(n), static_cast<unsigned long>(k));
    }
    return Fp(static_cast<long long>(sum % p), p);
}

ExactInt multinomial_div_p(int p, const std::vector<int>& parts) {
    require_supported_prime(p);
    if (static_cast<int>(parts.size()) != p)
        throw DomainError("multinomial_div_p: expected a composition into exactly p parts");
    int total = 0;
    for (int k : parts) {
        if (k < 0 || k >= p)
            throw DomainError("multinomial_div_p: each part must lie in [0, p)");
        total += k;
    }
    if (total != p) throw DomainError("multinomial_div_p: parts must sum to p");

    ExactInt m = factorial(static_cast<unsigned>(p));
    for (int k : parts) m /= factorial(static_cast<unsigned>(k));
    if (m % p != 0)
        throw NotDivisible("multinomial not divisible by p; this indicates a bug");
    return m / p;
}

}  // namespace wittlab
