#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace wittlab {

// Arbitrary-precision signed integer. All symbolic coefficient arithmetic is
// exact; there is no overflow and no rounding anywhere in the library.
using ExactInt = boost::multiprecision::cpp_int;

inline ExactInt exact_pow(const ExactInt& base, unsigned long exp) {
    return boost::multiprecision::pow(base, exp);
}

inline ExactInt factorial(unsigned n) {
    ExactInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// Exact binomial coefficient; requires 0 <= k <= n.
inline ExactInt binomial(unsigned long long n, unsigned long long k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    ExactInt r = 1;
    for (unsigned long long i = 1; i <= k; ++i) {
        r *= static_cast<ExactInt>(n - k + i);
        r /= static_cast<ExactInt>(i);
    }
    return r;
}

}  // namespace wittlab
