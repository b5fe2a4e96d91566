#include "wittlab/laurent.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wittlab {

LaurentSeries::LaurentSeries(int p, long long v, std::vector<int> coeffs, long long prec)
    : p_(p), v_(v), coeffs_(std::move(coeffs)), prec_(clamp_prec(prec)) {
    normalize();
}

void LaurentSeries::normalize() {
    // Drop stored coefficients at exponents >= precision.
    if (!coeffs_.empty() && v_ + static_cast<long long>(coeffs_.size()) > prec_) {
        long long keep = prec_ - v_;
        coeffs_.resize(keep > 0 ? static_cast<size_t>(keep) : 0);
    }
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        v_ = prec_;
        return;
    }
    size_t tail = coeffs_.size();
    while (tail > lead && coeffs_[tail - 1] == 0) --tail;
    if (lead > 0 || tail < coeffs_.size()) {
        coeffs_ = std::vector<int>(coeffs_.begin() + lead, coeffs_.begin() + tail);
        v_ += static_cast<long long>(lead);
    }
}

LaurentSeries LaurentSeries::zero(int p, long long prec) {
    require_supported_prime(p);
    return LaurentSeries(p, clamp_prec(prec), {}, prec);
}

LaurentSeries LaurentSeries::one(int p) { return monomial(p, 0, 1); }

LaurentSeries LaurentSeries::monomial(int p, long long e, int coeff) {
    require_supported_prime(p);
    int c = coeff % p;
    if (c < 0) c += p;
    return LaurentSeries(p, e, {c}, kExactPrec);
}

LaurentSeries LaurentSeries::make(int p, long long v, const std::vector<int>& coeffs,
                                  long long prec) {
    require_supported_prime(p);
    prec = clamp_prec(prec);
    if (v + static_cast<long long>(coeffs.size()) > prec)
        throw PrecisionWindowInvalid("series window [" + std::to_string(v) + ", " +
                                     std::to_string(v + (long long)coeffs.size()) +
                                     ") exceeds precision " + std::to_string(prec));
    std::vector<int> cs(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        int c = coeffs[i] % p;
        cs[i] = c < 0 ? c + p : c;
    }
    return LaurentSeries(p, v, std::move(cs), prec);
}

LaurentSeries LaurentSeries::random(int p, long long v_min, long long v_max,
                                    long long support_end, Rng& rng) {
    require_supported_prime(p);
    if (v_min > v_max || v_max >= support_end)
        throw PrecisionWindowInvalid("random series requires v_min <= v_max < support end");
    long long v = rng.range(v_min, v_max);
    std::vector<int> cs(static_cast<size_t>(support_end - v));
    cs[0] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p - 1)));
    for (size_t i = 1; i < cs.size(); ++i)
        cs[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
    return LaurentSeries(p, v, std::move(cs), kExactPrec);
}

Valuation LaurentSeries::valuation() const {
    if (coeffs_.empty()) return Valuation::at_least(prec_);
    return Valuation::exactly(v_);
}

int LaurentSeries::coeff_at(long long e) const {
    if (e >= prec_)
        throw PrecisionExhausted("coefficient of t^" + std::to_string(e) +
                                 " requested beyond precision " + std::to_string(prec_));
    if (e < v_ || e >= support_end()) return 0;
    return coeffs_[static_cast<size_t>(e - v_)];
}

namespace {
void require_same_prime(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.prime() != b.prime())
        throw ModulusMismatch("series over different primes: " + std::to_string(a.prime()) +
                              " vs " + std::to_string(b.prime()));
}

// Certified lower bound on the valuation: exact valuation when a nonzero
// coefficient is stored, otherwise the precision bound.
long long val_floor(const LaurentSeries& a) {
    return a.certified_nonzero() ? a.valuation().value : a.precision();
}
}  // namespace

LaurentSeries LaurentSeries::add(const LaurentSeries& o) const {
    require_same_prime(*this, o);
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    long long prec = std::min(prec_, o.prec_);
    long long lo = std::min(v_, o.v_);
    long long hi = std::min(std::max(support_end(), o.support_end()), prec);
    if (hi <= lo) return LaurentSeries(p_, prec, {}, prec);
    std::vector<int> cs(static_cast<size_t>(hi - lo), 0);
    for (long long e = lo; e < hi; ++e) {
        int a = (e >= v_ && e < support_end()) ? coeffs_[size_t(e - v_)] : 0;
        int b = (e >= o.v_ && e < o.support_end()) ? o.coeffs_[size_t(e - o.v_)] : 0;
        cs[size_t(e - lo)] = mod_add(a, b, p_);
    }
    return LaurentSeries(p_, lo, std::move(cs), prec);
}

LaurentSeries LaurentSeries::sub(const LaurentSeries& o) const { return add(o.neg()); }

LaurentSeries LaurentSeries::neg() const {
    std::vector<int> cs(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) cs[i] = mod_neg(coeffs_[i], p_);
    return LaurentSeries(p_, v_, std::move(cs), prec_);
}

LaurentSeries LaurentSeries::scalar_mul(int c) const {
    c %= p_;
    if (c < 0) c += p_;
    if (c == 0) return zero(p_, exact() ? kExactPrec : prec_);
    std::vector<int> cs(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) cs[i] = mod_mul(coeffs_[i], c, p_);
    return LaurentSeries(p_, v_, std::move(cs), prec_);
}

LaurentSeries LaurentSeries::mul(const LaurentSeries& o) const {
    require_same_prime(*this, o);
    if (is_exact_zero() || o.is_exact_zero()) return zero(p_);
    // Window rule: N = min(N_a + val(b), N_b + val(a)), using the certified
    // valuation floor for operands that are zero up to precision.
    long long prec = std::min(clamp_prec(exact() ? kExactPrec : prec_ + val_floor(o)),
                              clamp_prec(o.exact() ? kExactPrec : o.prec_ + val_floor(*this)));
    prec = clamp_prec(std::min(prec, kExactPrec));
    if (coeffs_.empty() || o.coeffs_.empty())
        return LaurentSeries(p_, prec, {}, prec);
    long long lo = v_ + o.v_;
    if (lo >= prec) return LaurentSeries(p_, prec, {}, prec);
    long long hi = std::min(support_end() + o.support_end() - 1, prec);
    std::vector<int> cs(static_cast<size_t>(hi - lo), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j) {
            long long e = v_ + (long long)i + o.v_ + (long long)j;
            if (e >= hi) break;
            cs[size_t(e - lo)] =
                mod_add(cs[size_t(e - lo)], mod_mul(coeffs_[i], o.coeffs_[j], p_), p_);
        }
    }
    return LaurentSeries(p_, lo, std::move(cs), prec);
}

LaurentSeries LaurentSeries::inv() const {
    if (!certified_nonzero())
        throw NotInvertible("cannot invert a series that is zero up to precision");
    if (coeffs_.size() == 1)  // monomial: exact inverse
        return LaurentSeries(p_, -v_, {mod_inv(coeffs_[0], p_)},
                             exact() ? kExactPrec : prec_ - 2 * v_);
    if (exact())
        throw ConfigError("inverse of an exact non-monomial series needs a target precision");
    return inv(prec_ - 2 * v_);
}

LaurentSeries LaurentSeries::inv(long long out_prec) const {
    if (!certified_nonzero())
        throw NotInvertible("cannot invert a series that is zero up to precision");
    out_prec = clamp_prec(out_prec);
    long long n_terms = out_prec - (-v_);
    if (n_terms <= 0)
        throw PrecisionExhausted("inverse precision window is empty");
    if (!exact() && out_prec > prec_ - 2 * v_)
        throw PrecisionExhausted("requested inverse precision exceeds what the input certifies");
    // b_{-v+k} via the standard recurrence against the coefficients of a.
    int lead_inv = mod_inv(coeffs_[0], p_);
    std::vector<int> b(static_cast<size_t>(n_terms), 0);
    b[0] = lead_inv;
    for (long long k = 1; k < n_terms; ++k) {
        int acc = 0;
        for (long long j = 1; j <= k && j < (long long)coeffs_.size(); ++j)
            acc = mod_add(acc, mod_mul(coeffs_[size_t(j)], b[size_t(k - j)], p_), p_);
        b[size_t(k)] = mod_mul(mod_neg(acc, p_), lead_inv, p_);
    }
    return LaurentSeries(p_, -v_, std::move(b), out_prec);
}

LaurentSeries LaurentSeries::truncate(long long new_prec) const {
    new_prec = clamp_prec(new_prec);
    if (new_prec > prec_)
        throw PrecisionWindowInvalid("truncate cannot increase precision");
    return LaurentSeries(p_, coeffs_.empty() ? new_prec : v_, coeffs_, new_prec);
}

bool LaurentSeries::identical(const LaurentSeries& o) const {
    return p_ == o.p_ && v_ == o.v_ && coeffs_ == o.coeffs_ && prec_ == o.prec_;
}

bool LaurentSeries::agree_on_common_window(const LaurentSeries& o) const {
    require_same_prime(*this, o);
    long long prec = std::min(prec_, o.prec_);
    long long lo = std::min(coeffs_.empty() ? prec : v_, o.coeffs_.empty() ? prec : o.v_);
    // Beyond both stored supports every coefficient below prec is known zero.
    long long hi = std::min(prec, std::max(support_end(), o.support_end()));
    for (long long e = lo; e < hi; ++e)
        if (coeff_at(e) != o.coeff_at(e)) return false;
    return true;
}

nlohmann::ordered_json LaurentSeries::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["v"] = coeffs_.empty() ? 0 : v_;
    j["coeffs"] = coeffs_;
    if (exact())
        j["N"] = nullptr;
    else
        j["N"] = prec_;
    return j;
}

LaurentSeries LaurentSeries::from_json(const nlohmann::json& j) {
    int p = j.at("p").get<int>();
    long long v = j.at("v").get<long long>();
    std::vector<int> coeffs = j.at("coeffs").get<std::vector<int>>();
    long long prec = j.at("N").is_null() ? kExactPrec : j.at("N").get<long long>();
    return make(p, coeffs.empty() ? std::min(v, prec) : v, coeffs, prec);
}

std::string LaurentSeries::str() const {
    std::ostringstream os;
    if (coeffs_.empty()) {
        if (exact()) return "0";
        os << "O(t^" << prec_ << ")";
        return os.str();
    }
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        long long e = v_ + (long long)i;
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << coeffs_[i];
        } else {
            if (coeffs_[i] != 1) os << coeffs_[i] << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    if (!exact()) os << " + O(t^" << prec_ << ")";
    return os.str();
}

LaurentSeries parse_series(int p, const std::string& text) {
    require_supported_prime(p);
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw ConfigError("empty series specification");
    if (s == "0") return LaurentSeries::zero(p);
    if (s == "1") return LaurentSeries::one(p);
    if (s.rfind("t^", 0) == 0) {
        try {
            return LaurentSeries::monomial(p, std::stoll(s.substr(2)));
        } catch (const std::exception&) {
            throw ConfigError("bad series shorthand: " + text);
        }
    }
    if (s == "t") return LaurentSeries::monomial(p, 1);
    // sparse "c:e,c:e,..." form
    LaurentSeries acc = LaurentSeries::zero(p);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("bad series term '" + item + "' (want coeff:exponent)");
        try {
            int c = std::stoi(item.substr(0, colon));
            long long e = std::stoll(item.substr(colon + 1));
            acc = acc.add(LaurentSeries::monomial(p, e, c));
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad series term '" + item + "'");
        }
    }
    return acc;
}

}  // namespace wittlab
