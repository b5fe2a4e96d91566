#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wittlab/extension.hpp"
#include "wittlab/intpoly.hpp"
#include "wittlab/wittpoly.hpp"

namespace wittlab {

/// Loaded, mod-p-reduced structure polynomials for W_n(O_L) over one
/// extension. Generates (or loads from cache_dir) sum and negation
/// polynomials at construction; product on demand.
class WittContext {
public:
    WittContext(ExtensionPtr ext, int n, std::string cache_dir = "");

    const ExtensionPtr& ext() const { return ext_; }
    int n() const { return n_; }
    const ModPolynomial& sum_poly(int level) const;
    const ModPolynomial& neg_poly(int level) const;
    const ModPolynomial& product_poly(int level) const;

private:
    std::vector<ModPolynomial> reduce_all(WittKind kind) const;
    std::vector<IntPolynomial> obtain(WittKind kind) const;

    ExtensionPtr ext_;
    int n_;
    std::string cache_dir_;
    std::vector<ModPolynomial> sum_;
    std::vector<ModPolynomial> neg_;
    mutable std::vector<ModPolynomial> product_;  // filled lazily
};

/// Element of W_n(O_L): every component certified integral at construction.
class WittVector {
public:
    WittVector(ExtensionPtr ext, std::vector<ExtElement> components);
    static WittVector zero(const ExtensionPtr& ext, int n);

    const ExtensionPtr& ext() const { return ext_; }
    int length() const { return static_cast<int>(x_.size()); }
    const ExtElement& component(int i) const { return x_[static_cast<size_t>(i)]; }
    const std::vector<ExtElement>& components() const { return x_; }

    bool is_zero_within_precision() const;

    nlohmann::ordered_json to_json() const;
    static WittVector from_json(ExtensionPtr ext, const nlohmann::json& j);
    std::string str() const;

private:
    ExtensionPtr ext_;
    std::vector<ExtElement> x_;
};

/// Evaluate a reduced structure polynomial at ring elements (memoized powers).
ExtElement eval_mod_poly(const ModPolynomial& poly, const ExtensionPtr& ext,
                         const std::vector<ExtElement>& args);

WittVector witt_add(const WittContext& ctx, const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittContext& ctx, const WittVector& a);
WittVector witt_sub(const WittContext& ctx, const WittVector& a, const WittVector& b);
/// sigma acts coordinatewise.
WittVector witt_sigma(int j, const WittVector& w);
/// w + sigma(w) + ... + sigma^{p-1}(w); asserts every component lands in K.
WittVector witt_trace(const WittContext& ctx, const WittVector& w);
/// The K-series of a component that is known to lie in K.
LaurentSeries component_as_series(const ExtElement& x);
WittVector witt_truncate(const WittVector& w, int n_prime);

/// F(x) = G(x, sigma(x), ..., sigma^{p-1}(x)). Requires x in O_L; asserts the
/// result is Galois-invariant and that v_K(F(x)) = v_L(x) whenever v_L(x) is
/// exact.
LaurentSeries f_map(const ExtElement& x);

/// Particular solution x = -c lambda^{p-1} of trace(x) = c; requires
/// v_K(c) >= ceil((p-1)s/p) (the valuation floor of tr(O_L)), else
/// TraceUnsolvable. With randomize, adds a random trace-zero element whose
/// valuation sits just above the floor.
ExtElement solve_trace(const ExtensionPtr& ext, const LaurentSeries& c, bool randomize,
                       Rng& rng);

struct GenFailure {
    int level;
    std::optional<long long> c_valuation;
    std::string message;
};

/// Either a verified trace-zero Witt vector or a structured failure naming
/// the level where the trace equation left the image of the trace.
struct GenResult {
    std::optional<WittVector> vector;
    std::optional<GenFailure> failure;
    bool ok() const { return vector.has_value(); }
};

/// Build a trace-zero element of W_n(O_L) component by component: with
/// x_0..x_{l-1} fixed, the level-l trace component with slot x_l = 0 yields
/// c_l, and x_l := solve_trace(-c_l). The returned vector satisfies
/// witt_trace(w) = 0, re-verified directly.
GenResult gen_trace_zero(const WittContext& ctx, int n, std::optional<ExtElement> x0,
                         bool randomize, Rng& rng);

/// Solve sigma(u) - u = w in W_n(O_L) level by level with canonical
/// translates (b_0 = 0 at each level). Success certifies the class of w in
/// H^1(G, W_n(O_L)) is zero; nullopt means no solution on this branch.
std::optional<WittVector> witt_coboundary_solve(const WittContext& ctx, const WittVector& w);

/// Exact rational, used for the component bounds; floating point is
/// deliberately not involved.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long n, long long d);
    Rational add(const Rational& o) const;
    Rational mul(const Rational& o) const;
    bool greater_than_int(long long x) const;
    long long ceil() const;
    std::string str() const;
    bool operator==(const Rational& o) const = default;
};

/// bound(i) = s(p-1)/p * (1 + 1/p + ... + 1/p^{i-2}), exactly; i >= 2.
Rational step_bound(int p, int s, int i);
/// Least M with bound(M) > s - 1; a trace-zero vector of that length forces
/// v_L(x_0) >= s.
int step3_length(int p, int s);

}  // namespace wittlab
