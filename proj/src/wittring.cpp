#include "wittlab/wittring.hpp"

#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wittlab/sampling.hpp"

namespace wittlab {

namespace {

// The sequential solver depends on level i of the sum being X_i + Y_i plus
// lower-coordinate terms (and negation being -X_i plus lower terms). Checked
// here on the generated polynomials rather than assumed.
void assert_linear_leading(const std::vector<IntPolynomial>& polys, WittKind kind) {
    for (int i = 0; i < static_cast<int>(polys.size()); ++i) {
        const IntPolynomial& poly = polys[static_cast<size_t>(i)];
        size_t xi = static_cast<size_t>(i);
        IntPolynomial rest(poly.arity());
        if (kind == WittKind::sum) {
            size_t yi = 2 * static_cast<size_t>(i) + 1;
            rest = poly.sub(IntPolynomial::variable(poly.arity(), xi))
                       .sub(IntPolynomial::variable(poly.arity(), yi));
            if (rest.uses_variable(xi) || rest.uses_variable(yi))
                throw ContractViolation("sum polynomial at level " + std::to_string(i) +
                                        " is not X_i + Y_i + lower terms");
        } else if (kind == WittKind::negation) {
            rest = poly.add(IntPolynomial::variable(poly.arity(), xi));
            if (rest.uses_variable(xi))
                throw ContractViolation("negation polynomial at level " + std::to_string(i) +
                                        " is not -X_i + lower terms");
        }
    }
}

}  // namespace

WittContext::WittContext(ExtensionPtr ext, int n, std::string cache_dir)
    : ext_(std::move(ext)), n_(n), cache_dir_(std::move(cache_dir)) {
    require_witt_budget(ext_->p(), n_);
    std::vector<IntPolynomial> sums = obtain(WittKind::sum);
    std::vector<IntPolynomial> negs = obtain(WittKind::negation);
    assert_linear_leading(sums, WittKind::sum);
    assert_linear_leading(negs, WittKind::negation);
    for (const auto& poly : sums) sum_.push_back(reduce_mod_p(poly, ext_->p()));
    for (const auto& poly : negs) neg_.push_back(reduce_mod_p(poly, ext_->p()));
}

std::vector<IntPolynomial> WittContext::obtain(WittKind kind) const {
    const int p = ext_->p();
    if (!cache_dir_.empty() && cache_has(cache_dir_, p, n_, kind)) {
        try {
            return cache_load(cache_dir_, p, n_, kind);
        } catch (const CacheCorrupt&) {
            // regenerate below
        }
    }
    std::vector<IntPolynomial> polys = witt_structure_polynomials(p, n_, kind);
    if (!cache_dir_.empty()) cache_store(cache_dir_, p, n_, kind, polys);
    return polys;
}

const ModPolynomial& WittContext::sum_poly(int level) const {
    if (level < 0 || level >= n_) throw DomainError("structure polynomial level out of range");
    return sum_[static_cast<size_t>(level)];
}

const ModPolynomial& WittContext::neg_poly(int level) const {
    if (level < 0 || level >= n_) throw DomainError("structure polynomial level out of range");
    return neg_[static_cast<size_t>(level)];
}

const ModPolynomial& WittContext::product_poly(int level) const {
    if (level < 0 || level >= n_) throw DomainError("structure polynomial level out of range");
    if (product_.empty())
        for (const auto& poly : obtain(WittKind::product))
            product_.push_back(reduce_mod_p(poly, ext_->p()));
    return product_[static_cast<size_t>(level)];
}

WittVector::WittVector(ExtensionPtr ext, std::vector<ExtElement> components)
    : ext_(std::move(ext)), x_(std::move(components)) {
    if (x_.empty()) throw DomainError("Witt vector needs length >= 1");
    for (const auto& c : x_) {
        if (c.ext()->p() != ext_->p() || c.ext()->s() != ext_->s())
            throw DomainError("Witt component from a different extension");
        if (!c.in_integral_ring())
            throw DomainError("Witt component lies outside O_L");
    }
}

WittVector WittVector::zero(const ExtensionPtr& ext, int n) {
    return WittVector(ext, std::vector<ExtElement>(static_cast<size_t>(n), ext->zero_element()));
}

bool WittVector::is_zero_within_precision() const {
    for (const auto& c : x_)
        if (!c.is_zero_within_precision()) return false;
    return true;
}

nlohmann::ordered_json WittVector::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = ext_->p();
    j["s"] = ext_->s();
    j["f"] = ext_->f().to_json();
    j["n"] = length();
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& c : x_) {
        nlohmann::ordered_json cj = nlohmann::ordered_json::array();
        for (const auto& series : c.coeffs()) cj.push_back(series.to_json());
        comps.push_back(cj);
    }
    j["components"] = comps;
    return j;
}

WittVector WittVector::from_json(ExtensionPtr ext, const nlohmann::json& j) {
    if (j.at("p").get<int>() != ext->p() || j.at("s").get<int>() != ext->s())
        throw DomainError("serialized Witt vector does not match the extension");
    std::vector<ExtElement> comps;
    for (const auto& cj : j.at("components")) {
        std::vector<LaurentSeries> a;
        for (const auto& sj : cj) a.push_back(LaurentSeries::from_json(sj));
        comps.emplace_back(ext, std::move(a));
    }
    return WittVector(std::move(ext), std::move(comps));
}

std::string WittVector::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < length(); ++i) {
        if (i) os << " ; ";
        os << component(i).str();
    }
    os << ")";
    return os.str();
}

ExtElement eval_mod_poly(const ModPolynomial& poly, const ExtensionPtr& ext,
                         const std::vector<ExtElement>& args) {
    if (args.size() != poly.arity) throw DomainError("wrong number of evaluation arguments");
    std::vector<std::vector<ExtElement>> powers(args.size());
    auto power_of = [&](size_t v, std::uint32_t e) -> const ExtElement& {
        auto& memo = powers[v];
        if (memo.empty()) memo.push_back(ext->one_element());
        while (memo.size() <= e) memo.push_back(memo.back().mul(args[v]));
        return memo[e];
    };
    ExtElement acc = ext->zero_element();
    for (const auto& [exps, c] : poly.terms) {
        ExtElement term = ext->one_element().scalar_mul(LaurentSeries::monomial(ext->p(), 0, c));
        for (size_t v = 0; v < args.size(); ++v)
            if (exps[v] > 0) term = term.mul(power_of(v, exps[v]));
        acc = acc.add(term);
    }
    return acc;
}

namespace {
void require_compatible(const WittVector& a, const WittVector& b) {
    if (a.length() != b.length()) throw DomainError("Witt vectors of different lengths");
    if (a.ext()->p() != b.ext()->p() || a.ext()->s() != b.ext()->s())
        throw DomainError("Witt vectors over different extensions");
}
}  // namespace

WittVector witt_add(const WittContext& ctx, const WittVector& a, const WittVector& b) {
    require_compatible(a, b);
    if (a.length() > ctx.n()) throw DomainError("context loaded for shorter Witt length");
    std::vector<ExtElement> out;
    out.reserve(static_cast<size_t>(a.length()));
    for (int i = 0; i < a.length(); ++i) {
        std::vector<ExtElement> args;
        args.reserve(2 * static_cast<size_t>(i + 1));
        for (int k = 0; k <= i; ++k) args.push_back(a.component(k));
        for (int k = 0; k <= i; ++k) args.push_back(b.component(k));
        out.push_back(eval_mod_poly(ctx.sum_poly(i), a.ext(), args));
    }
    return WittVector(a.ext(), std::move(out));
}

WittVector witt_neg(const WittContext& ctx, const WittVector& a) {
    if (a.length() > ctx.n()) throw DomainError("context loaded for shorter Witt length");
    std::vector<ExtElement> out;
    out.reserve(static_cast<size_t>(a.length()));
    for (int i = 0; i < a.length(); ++i) {
        std::vector<ExtElement> args;
        for (int k = 0; k <= i; ++k) args.push_back(a.component(k));
        out.push_back(eval_mod_poly(ctx.neg_poly(i), a.ext(), args));
    }
    return WittVector(a.ext(), std::move(out));
}

WittVector witt_sub(const WittContext& ctx, const WittVector& a, const WittVector& b) {
    return witt_add(ctx, a, witt_neg(ctx, b));
}

WittVector witt_sigma(int j, const WittVector& w) {
    std::vector<ExtElement> out;
    out.reserve(static_cast<size_t>(w.length()));
    for (int i = 0; i < w.length(); ++i) out.push_back(w.component(i).galois(j));
    return WittVector(w.ext(), std::move(out));
}

WittVector witt_trace(const WittContext& ctx, const WittVector& w) {
    WittVector acc = w;
    for (int j = 1; j < w.ext()->p(); ++j) acc = witt_add(ctx, acc, witt_sigma(j, w));
    for (int i = 0; i < acc.length(); ++i) {
        const ExtElement& c = acc.component(i);
        for (int m = 1; m < acc.ext()->p(); ++m)
            if (!c.coeff(m).is_zero_within_precision())
                throw ContractViolation("Witt trace component " + std::to_string(i) +
                                        " is not Galois-invariant");
    }
    return acc;
}

LaurentSeries component_as_series(const ExtElement& x) {
    for (int m = 1; m < x.ext()->p(); ++m)
        if (!x.coeff(m).is_zero_within_precision())
            throw ContractViolation("component does not lie in K");
    return x.coeff(0);
}

WittVector witt_truncate(const WittVector& w, int n_prime) {
    if (n_prime < 1 || n_prime > w.length())
        throw DomainError("truncation length out of range");
    std::vector<ExtElement> out(w.components().begin(), w.components().begin() + n_prime);
    return WittVector(w.ext(), std::move(out));
}

LaurentSeries f_map(const ExtElement& x) {
    const ExtensionPtr& ext = x.ext();
    const int p = ext->p();
    if (!x.in_integral_ring()) throw DomainError("f_map requires an element of O_L");
    static std::map<int, ModPolynomial> g_cache;
    auto it = g_cache.find(p);
    if (it == g_cache.end()) it = g_cache.emplace(p, reduce_mod_p(g_polynomial(p), p)).first;
    std::vector<ExtElement> conjugates;
    conjugates.reserve(static_cast<size_t>(p));
    for (int j = 0; j < p; ++j) conjugates.push_back(x.galois(j));
    ExtElement y = eval_mod_poly(it->second, ext, conjugates);
    LaurentSeries result = component_as_series(y);  // Galois-invariant, so in K
    Valuation vx = x.valuation();
    if (vx.exact) {
        Valuation vr = result.valuation();
        if (!vr.exact || vr.value != vx.value)
            throw ContractViolation("v_K(F(x)) = " + (vr.exact ? std::to_string(vr.value) : ">=" + std::to_string(vr.value)) +
                                    " differs from v_L(x) = " + std::to_string(vx.value));
    }
    return result;
}

ExtElement solve_trace(const ExtensionPtr& ext, const LaurentSeries& c, bool randomize,
                       Rng& rng) {
    if (c.prime() != ext->p()) throw ModulusMismatch("trace value over the wrong prime");
    const long long threshold = ext->trace_image_threshold();
    ExtElement x = ext->zero_element();
    if (!c.is_exact_zero()) {
        Valuation v = c.valuation();
        if (v.exact && v.value < threshold)
            throw TraceUnsolvable("v_K(c) = " + std::to_string(v.value) +
                                      " is below the trace image floor " +
                                      std::to_string(threshold),
                                  v.value);
        if (!v.exact && v.value < threshold)
            throw PrecisionExhausted("cannot certify v_K(c) against the trace image floor");
        x = ext->monomial_element(c.neg(), ext->p() - 1);
    }
    if (randomize)
        x = x.add(random_trace_zero(ext, rng, threshold, 2));
    return x;
}

GenResult gen_trace_zero(const WittContext& ctx, int n, std::optional<ExtElement> x0,
                         bool randomize, Rng& rng) {
    const ExtensionPtr& ext = ctx.ext();
    if (n < 1 || n > ctx.n()) throw DomainError("requested length outside the loaded context");
    ExtElement first = x0 ? *x0 : random_trace_zero(ext, rng, 0, ext->s() + 2);
    if (!is_trace_zero(first)) throw NotTraceZero("x0 must be trace-zero");
    if (!first.in_integral_ring()) throw DomainError("x0 must lie in O_L");

    std::vector<ExtElement> comps{first};
    for (int level = 1; level < n; ++level) {
        std::vector<ExtElement> padded = comps;
        padded.push_back(ext->zero_element());
        WittVector t = witt_trace(ctx, WittVector(ext, padded));
        for (int i = 0; i < level; ++i)
            if (!t.component(i).is_zero_within_precision())
                throw ContractViolation("lower trace component became nonzero at level " +
                                        std::to_string(level));
        LaurentSeries c = component_as_series(t.component(level));
        try {
            comps.push_back(solve_trace(ext, c.neg(), randomize, rng));
        } catch (const TraceUnsolvable& e) {
            GenResult r;
            r.failure = GenFailure{level, e.certified_valuation, e.what()};
            return r;
        }
    }
    WittVector w(ext, comps);
    if (!witt_trace(ctx, w).is_zero_within_precision())
        throw ContractViolation("generated vector fails the trace-zero re-verification");
    GenResult r;
    r.vector = std::move(w);
    return r;
}

std::optional<WittVector> witt_coboundary_solve(const WittContext& ctx, const WittVector& w) {
    const ExtensionPtr& ext = ctx.ext();
    const int n = w.length();
    if (n > ctx.n()) throw DomainError("context loaded for shorter Witt length");
    std::vector<ExtElement> u;
    for (int level = 0; level < n; ++level) {
        // Level component of sigma(u-hat) - u-hat with slot `level` zeroed is
        // exactly the lower-coordinate contribution at this level.
        std::vector<ExtElement> padded = u;
        padded.push_back(ext->zero_element());
        WittVector uh(ext, padded);
        WittVector d = witt_sub(ctx, witt_sigma(1, uh), uh);
        ExtElement rhs = w.component(level).sub(d.component(level));
        try {
            if (!is_trace_zero(rhs) || !coboundary_test(rhs)) return std::nullopt;
        } catch (const NotTraceZero&) {
            return std::nullopt;
        }
        ExtElement y = coboundary_solve(rhs);
        if (!y.in_integral_ring()) return std::nullopt;
        u.push_back(std::move(y));
    }
    WittVector result(ext, u);
    WittVector check = witt_sub(ctx, witt_sigma(1, result), result);
    for (int i = 0; i < n; ++i)
        if (!check.component(i).sub(w.component(i)).is_zero_within_precision())
            throw ContractViolation("Witt coboundary solution fails direct re-verification");
    return result;
}

Rational Rational::of(long long n, long long d) {
    if (d == 0) throw DivisionByZero("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational{n, d};
}

Rational Rational::add(const Rational& o) const {
    return Rational::of(num * o.den + o.num * den, den * o.den);
}

Rational Rational::mul(const Rational& o) const {
    return Rational::of(num * o.num, den * o.den);
}

bool Rational::greater_than_int(long long x) const { return num > x * den; }

long long Rational::ceil() const {
    if (num >= 0) return (num + den - 1) / den;
    return -((-num) / den);
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational step_bound(int p, int s, int i) {
    if (i < 2) throw DomainError("component bounds are defined for i >= 2");
    if (i > 40) throw ConfigError("component bound index too large for exact arithmetic");
    Rational geo = Rational::of(0, 1);
    long long pj = 1;
    for (int j = 0; j <= i - 2; ++j) {
        geo = geo.add(Rational::of(1, pj));
        if (pj > (1LL << 50) / p) throw ConfigError("component bound overflows exact arithmetic");
        pj *= p;
    }
    return geo.mul(Rational::of(static_cast<long long>(s) * (p - 1), p));
}

int step3_length(int p, int s) {
    require_supported_prime(p);
    if (s < 1) throw InvalidBreak("ramification break must be positive");
    int m = 2;
    while (!step_bound(p, s, m).greater_than_int(s - 1)) ++m;
    return m;
}

}  // namespace wittlab
