#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wittlab/errors.hpp"
#include "wittlab/fp.hpp"
#include "wittlab/rng.hpp"

namespace wittlab {

// Exponent value standing in for "known at every exponent". Anything at or
// beyond this bound is treated as exact; precision arithmetic saturates here.
inline constexpr long long kExactPrec = 1LL << 60;

inline long long clamp_prec(long long n) { return n >= kExactPrec ? kExactPrec : n; }
inline bool is_exact_prec(long long n) { return n >= kExactPrec; }

/// Result of a valuation query: either an exact value, or a certified lower
/// bound ("every coefficient below `value` is known to vanish").
struct Valuation {
    bool exact;
    long long value;

    static Valuation exactly(long long v) { return {true, v}; }
    static Valuation at_least(long long b) { return {false, clamp_prec(b)}; }

    // True lower bound in both cases.
    bool known_at_least(long long c) const { return value >= c; }
    // Decidably below c (only meaningful for exact valuations).
    bool decided_below(long long c) const { return exact && value < c; }

    bool operator==(const Valuation& o) const = default;
};

/// Truncated Laurent series over F_p: coefficients of t^e are known exactly
/// for every e < precision(); stored support is [v, v + coeffs.size()).
/// A series with precision() == kExactPrec is a Laurent polynomial known at
/// all exponents (in particular the exact zero element).
class LaurentSeries {
public:
    static LaurentSeries zero(int p, long long prec = kExactPrec);
    static LaurentSeries one(int p);
    static LaurentSeries monomial(int p, long long e, int coeff = 1);
    /// Coefficients attached to exponents v, v+1, ...; requires
    /// v + coeffs.size() <= prec.
    static LaurentSeries make(int p, long long v, const std::vector<int>& coeffs,
                              long long prec = kExactPrec);
    /// Deterministic random polynomial with valuation uniform in
    /// [v_min, v_max], nonzero leading coefficient, support within
    /// [v_min, support_end). Exact: the generator knows the tail is zero.
    static LaurentSeries random(int p, long long v_min, long long v_max,
                                long long support_end, Rng& rng);

    int prime() const { return p_; }
    long long precision() const { return prec_; }
    bool exact() const { return is_exact_prec(prec_); }

    bool certified_nonzero() const { return !coeffs_.empty(); }
    bool is_exact_zero() const { return coeffs_.empty() && exact(); }
    /// No stored coefficient is nonzero (exact zero qualifies).
    bool is_zero_within_precision() const { return coeffs_.empty(); }

    Valuation valuation() const;

    /// Coefficient of t^e; throws PrecisionExhausted for e >= precision().
    int coeff_at(long long e) const;
    long long lowest_exponent() const { return v_; }
    long long support_end() const { return v_ + static_cast<long long>(coeffs_.size()); }

    LaurentSeries add(const LaurentSeries& o) const;
    LaurentSeries sub(const LaurentSeries& o) const;
    LaurentSeries mul(const LaurentSeries& o) const;
    LaurentSeries neg() const;
    LaurentSeries scalar_mul(int c) const;
    /// Multiplicative inverse. The input must be certified nonzero. For a
    /// finite-precision input the output window is N - 2*val(a); for an exact
    /// non-monomial input a target precision must be supplied.
    LaurentSeries inv() const;
    LaurentSeries inv(long long out_prec) const;
    /// Forget everything at exponents >= new_prec.
    LaurentSeries truncate(long long new_prec) const;

    /// Same p, same stored representation, same window.
    bool identical(const LaurentSeries& o) const;
    /// Stored coefficients agree for every exponent both windows cover.
    bool agree_on_common_window(const LaurentSeries& o) const;

    nlohmann::ordered_json to_json() const;
    static LaurentSeries from_json(const nlohmann::json& j);

    std::string str() const;

private:
    LaurentSeries(int p, long long v, std::vector<int> coeffs, long long prec);
    void normalize();

    int p_;
    long long v_;               // lowest stored exponent; == prec_ when no stored terms
    std::vector<int> coeffs_;   // front() and back() nonzero after normalization
    long long prec_;
};

/// Parse "t^-3", "t^2", "1", "0", or a sparse list "c:e,c:e,..." (coefficient
/// at exponent). Used by the CLI for the --f flag.
LaurentSeries parse_series(int p, const std::string& text);

}  // namespace wittlab
