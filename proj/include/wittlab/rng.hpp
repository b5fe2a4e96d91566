#pragma once

#include <cstdint>

namespace wittlab {

// Deterministic splitmix64 stream. Used everywhere randomness is needed so
// that reports are reproducible bit-for-bit across platforms; std::
// distributions are implementation-defined and therefore avoided.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is negligible for the tiny n used here
    // and keeps the mapping platform-independent.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    long long range(long long lo, long long hi) {  // inclusive ends
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(unsigned num, unsigned den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

// Fixed mixing function deriving a per-sample seed from a master seed, so
// sample streams are identical regardless of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace wittlab
