#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wittlab/laurent.hpp"

namespace wittlab {

class ExtElement;

/// The degree-p extension L = K(lambda) with lambda^p = lambda + f, totally
/// ramified with ramification break s = -v_K(f), gcd(s, p) = 1. Immutable
/// after construction; elements hold a shared reference.
class Extension : public std::enable_shared_from_this<Extension> {
public:
    /// Default f = t^{-s}. An override must have exact valuation -s.
    static std::shared_ptr<const Extension> make(int p, int s,
                                                 std::optional<LaurentSeries> f_override = {});

    int p() const { return p_; }
    int s() const { return s_; }
    const LaurentSeries& f() const { return f_; }

    /// Entry [i][m] of the matrix expanding (lambda+j)^i on the basis:
    /// binom(i, m) * j^{i-m} mod p.
    int galois_entry(int j, int i, int m) const { return galois_[j][i * p_ + m]; }

    /// lambda^{p+u} on the basis, u in [0, p-1): coefficient of lambda^u is f,
    /// of lambda^{u+1} is 1.
    const std::vector<LaurentSeries>& reduction_row(int u) const { return reduction_[u]; }

    /// Membership threshold for coefficient i of O_L: ceil(i*s/p).
    long long integral_threshold(int i) const;
    /// Coboundary threshold for coefficient i: ceil((i+1)*s/p).
    long long coboundary_threshold(int i) const;
    /// Valuation floor of the trace image tr(O_L) in O_K: ceil((p-1)*s/p).
    long long trace_image_threshold() const { return coboundary_threshold(p_ - 2); }

    ExtElement zero_element() const;
    ExtElement one_element() const;
    /// c * lambda^i as an element of L.
    ExtElement monomial_element(const LaurentSeries& c, int i) const;

private:
    Extension(int p, int s, LaurentSeries f);

    int p_;
    int s_;
    LaurentSeries f_;
    std::vector<std::vector<int>> galois_;            // [j] -> p*p row-major (i, m)
    std::vector<std::vector<LaurentSeries>> reduction_;  // [u] -> basis coefficients
};

using ExtensionPtr = std::shared_ptr<const Extension>;

/// Element of L on the basis {1, lambda, ..., lambda^{p-1}} with Laurent
/// series coefficients a_0..a_{p-1}.
class ExtElement {
public:
    ExtElement(ExtensionPtr ext, std::vector<LaurentSeries> coeffs);

    const ExtensionPtr& ext() const { return ext_; }
    const LaurentSeries& coeff(int i) const { return a_[static_cast<size_t>(i)]; }
    const std::vector<LaurentSeries>& coeffs() const { return a_; }

    ExtElement add(const ExtElement& o) const;
    ExtElement sub(const ExtElement& o) const;
    ExtElement neg() const;
    ExtElement mul(const ExtElement& o) const;
    /// Multiply by an element of K.
    ExtElement scalar_mul(const LaurentSeries& c) const;
    ExtElement pow(unsigned e) const;

    /// sigma^j with the fixed generator sigma(lambda) = lambda + 1.
    ExtElement galois(int j) const;

    /// v_L via min over nonzero terms of p*v_K(a_i) - i*s (the term
    /// valuations are pairwise distinct). AtLeast bound when not certifiable.
    Valuation valuation() const;

    /// True iff v_K(a_i) >= ceil(i*s/p) for every i.
    bool in_integral_ring() const;

    bool is_zero_within_precision() const;
    bool is_exact_zero() const;

    nlohmann::ordered_json to_json() const;
    static ExtElement from_json(ExtensionPtr ext, const nlohmann::json& j);
    std::string str() const;

private:
    void require_same_ext(const ExtElement& o) const;

    ExtensionPtr ext_;
    std::vector<LaurentSeries> a_;
};

enum class TraceMode { direct, formula };

/// Trace to K. direct sums the p conjugates and checks that all coefficients
/// above lambda^0 vanish; formula returns -a_{p-1}.
LaurentSeries trace(const ExtElement& x, TraceMode mode = TraceMode::formula);

/// True iff a_{p-1} is exactly zero; certified-nonzero gives false; zero only
/// up to precision raises PrecisionExhausted rather than being accepted.
bool is_trace_zero(const ExtElement& x);

/// True iff v_K(a_i) >= ceil((i+1)*s/p) for all 0 <= i <= p-2. Requires a
/// trace-zero element of O_L.
bool coboundary_test(const ExtElement& x);

/// Solve sigma(y) - y = x by back-substitution on the triangular system
/// a_k = sum_{m>k} binom(m,k) b_m, with the free b_0 set to 0. y lies in O_L
/// exactly when coboundary_test(x) holds.
ExtElement coboundary_solve(const ExtElement& x);

/// Class of x in ker(tr)/im(sigma-1). Equals coboundary_test(x); also checks
/// that v_L(x) >= s forces a zero class.
bool h1_class_is_zero(const ExtElement& x);

struct H1Description {
    long long dimension;
    std::vector<std::pair<int, long long>> basis;  // (lambda power i, t power j)
    std::string render() const;
};

/// Closed form: sum_i (ceil((i+1)s/p) - ceil(is/p)) = ceil((p-1)s/p), with
/// representatives t^j lambda^i for ceil(is/p) <= j < ceil((i+1)s/p).
H1Description h1_dimension(int p, int s);

struct OracleResult {
    long long value;                      // stabilized defect
    std::array<long long, 3> window;      // at N-p, N, N+p
};

/// Independent check of the H^1 dimension by plain F_p linear algebra on the
/// span of monomials t^j lambda^i with v_L in [0, N): dim ker(trace) minus
/// dim (sigma-1)(span with v_L in [0, N-s)), maps computed exactly from
/// galois/ring arithmetic with no truncation of outputs. Requires N >= 2sp;
/// throws NotStabilized if the three window values disagree.
OracleResult h1_truncated_oracle(const ExtensionPtr& ext, long long N);

/// Default CLI/sampling precision for a given configuration.
inline long long default_precision(int p, int s) { return 4LL * s * p + 16; }

}  // namespace wittlab
