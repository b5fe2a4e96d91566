#pragma once

#include <string>
#include <vector>

#include "wittlab/errors.hpp"
#include "wittlab/exact_int.hpp"

namespace wittlab {

// Primes the artifact supports. Symbolic Witt-polynomial cost grows
// super-exponentially in p, so everything beyond 13 is rejected at
// configuration time rather than allowed to blow up.
inline bool is_supported_prime(int p) {
    return p == 2 || p == 3 || p == 5 || p == 7 || p == 11 || p == 13;
}

inline void require_supported_prime(int p) {
    if (!is_supported_prime(p))
        throw ConfigError("unsupported prime p=" + std::to_string(p) +
                          " (supported: 2, 3, 5, 7, 11, 13)");
}

/// Element of the prime field F_p, canonical representative in [0, p).
class Fp {
public:
    Fp(long long value, int p) : p_(p) {
        require_supported_prime(p);
        long long r = value % p;
        v_ = static_cast<int>(r < 0 ? r + p : r);
    }

    int value() const { return v_; }
    int modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp add(const Fp& o) const { return Fp(v_ + check(o).v_, p_); }
    Fp sub(const Fp& o) const { return Fp(v_ - check(o).v_, p_); }
    Fp mul(const Fp& o) const { return Fp(static_cast<long long>(v_) * check(o).v_, p_); }
    Fp neg() const { return Fp(-v_, p_); }

    Fp pow(long long e) const {
        if (e < 0) return inv().pow(-e);
        long long r = 1, b = v_;
        while (e > 0) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return Fp(r, p_);
    }

    Fp inv() const {
        if (v_ == 0) throw DivisionByZero("inverse of 0 in F_" + std::to_string(p_));
        return pow(p_ - 2);
    }

    Fp div(const Fp& o) const { return mul(check(o).inv()); }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

private:
    const Fp& check(const Fp& o) const {
        if (o.p_ != p_)
            throw ModulusMismatch("F_p operands have different moduli: " +
                                  std::to_string(p_) + " vs " + std::to_string(o.p_));
        return o;
    }

    int v_;
    int p_;
};

// Small mod-p helpers for the internal coefficient representation (plain
// ints in [0, p)); Fp is the checked public scalar type.
inline int mod_add(int a, int b, int p) { int r = a + b; return r >= p ? r - p : r; }
inline int mod_sub(int a, int b, int p) { int r = a - b; return r < 0 ? r + p : r; }
inline int mod_mul(int a, int b, int p) { return static_cast<int>(static_cast<long long>(a) * b % p); }
inline int mod_neg(int a, int p) { return a == 0 ? 0 : p - a; }
inline int mod_inv(int a, int p) { return Fp(a, p).inv().value(); }

/// Binomial coefficient mod p, computed exactly over the integers and then
/// reduced. Requires 0 <= k <= n.
Fp binom_mod_p(unsigned long long n, unsigned long long k, int p);

/// S_k = sum_{n=0}^{p-1} n^k reduced mod p, by literal exact summation (the
/// congruences S_k = 0 for k <= p-2 and S_{p-1} = -1 are what the tests
/// validate, so they must not be baked into the computation).
Fp power_sum_mod_p(unsigned long long k, int p);

/// p! / (k_1! ... k_p!) / p, exactly. Requires sum k_i = p and every
/// k_i < p; divisibility by p is asserted (NotDivisible signals a bug).
ExactInt multinomial_div_p(int p, const std::vector<int>& parts);

}  // namespace wittlab
