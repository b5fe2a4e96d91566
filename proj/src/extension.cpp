#include "wittlab/extension.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wittlab {

namespace {
long long ceil_div_nonneg(long long a, long long b) {
    // a >= 0, b > 0
    return (a + b - 1) / b;
}
}  // namespace

Extension::Extension(int p, int s, LaurentSeries f)
    : p_(p), s_(s), f_(std::move(f)) {
    // (lambda + j)^i = sum_m binom(i,m) j^{i-m} lambda^m
    galois_.assign(static_cast<size_t>(p), std::vector<int>(static_cast<size_t>(p * p), 0));
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i)
            for (int m = 0; m <= i; ++m) {
                int b = binom_mod_p(static_cast<unsigned>(i), static_cast<unsigned>(m), p).value();
                int pw = Fp(j, p).pow(i - m).value();
                galois_[j][static_cast<size_t>(i * p + m)] = mod_mul(b, pw, p);
            }
    // lambda^{p+u} = lambda^{u+1} + f * lambda^u for u = 0..p-2
    reduction_.resize(static_cast<size_t>(p - 1));
    for (int u = 0; u + 1 < p; ++u) {
        std::vector<LaurentSeries> row(static_cast<size_t>(p), LaurentSeries::zero(p));
        row[static_cast<size_t>(u)] = f_;
        row[static_cast<size_t>(u + 1)] = LaurentSeries::one(p);
        reduction_[static_cast<size_t>(u)] = std::move(row);
    }
}

std::shared_ptr<const Extension> Extension::make(int p, int s,
                                                 std::optional<LaurentSeries> f_override) {
    require_supported_prime(p);
    if (s <= 0)
        throw InvalidBreak("ramification break must be positive (s=" + std::to_string(s) + ")");
    if (s % p == 0)
        throw InvalidBreak("ramification break must be coprime to p (p=" + std::to_string(p) +
                           " divides s=" + std::to_string(s) + ")");
    LaurentSeries f = f_override ? *f_override : LaurentSeries::monomial(p, -s);
    if (f.prime() != p) throw InvalidF("f is a series over the wrong prime");
    Valuation v = f.valuation();
    if (!v.exact || v.value != -s)
        throw InvalidF("f must have exact valuation -s = " + std::to_string(-s));
    return std::shared_ptr<const Extension>(new Extension(p, s, std::move(f)));
}

long long Extension::integral_threshold(int i) const {
    return ceil_div_nonneg(static_cast<long long>(i) * s_, p_);
}

long long Extension::coboundary_threshold(int i) const {
    return ceil_div_nonneg(static_cast<long long>(i + 1) * s_, p_);
}

ExtElement Extension::zero_element() const {
    return ExtElement(shared_from_this(),
                      std::vector<LaurentSeries>(static_cast<size_t>(p_), LaurentSeries::zero(p_)));
}

ExtElement Extension::one_element() const {
    return monomial_element(LaurentSeries::one(p_), 0);
}

ExtElement Extension::monomial_element(const LaurentSeries& c, int i) const {
    if (i < 0 || i >= p_) throw DomainError("lambda power out of range");
    std::vector<LaurentSeries> a(static_cast<size_t>(p_), LaurentSeries::zero(p_));
    a[static_cast<size_t>(i)] = c;
    return ExtElement(shared_from_this(), std::move(a));
}

ExtElement::ExtElement(ExtensionPtr ext, std::vector<LaurentSeries> coeffs)
    : ext_(std::move(ext)), a_(std::move(coeffs)) {
    if (static_cast<int>(a_.size()) != ext_->p())
        throw DomainError("element needs exactly p basis coefficients");
    for (const auto& c : a_)
        if (c.prime() != ext_->p()) throw ModulusMismatch("coefficient over wrong prime");
}

void ExtElement::require_same_ext(const ExtElement& o) const {
    if (ext_ == o.ext_) return;
    if (ext_->p() != o.ext_->p() || ext_->s() != o.ext_->s() ||
        !ext_->f().identical(o.ext_->f()))
        throw DomainError("elements of different extensions");
}

ExtElement ExtElement::add(const ExtElement& o) const {
    require_same_ext(o);
    std::vector<LaurentSeries> c;
    c.reserve(a_.size());
    for (size_t i = 0; i < a_.size(); ++i) c.push_back(a_[i].add(o.a_[i]));
    return ExtElement(ext_, std::move(c));
}

ExtElement ExtElement::sub(const ExtElement& o) const { return add(o.neg()); }

ExtElement ExtElement::neg() const {
    std::vector<LaurentSeries> c;
    c.reserve(a_.size());
    for (const auto& s : a_) c.push_back(s.neg());
    return ExtElement(ext_, std::move(c));
}

ExtElement ExtElement::scalar_mul(const LaurentSeries& k) const {
    std::vector<LaurentSeries> c;
    c.reserve(a_.size());
    for (const auto& s : a_) c.push_back(s.mul(k));
    return ExtElement(ext_, std::move(c));
}

ExtElement ExtElement::mul(const ExtElement& o) const {
    require_same_ext(o);
    const int p = ext_->p();
    // Convolve on powers 0..2p-2, then fold powers >= p through
    // lambda^{p+u} = lambda^{u+1} + f lambda^u.
    std::vector<LaurentSeries> conv(static_cast<size_t>(2 * p - 1), LaurentSeries::zero(p));
    for (int i = 0; i < p; ++i) {
        if (a_[size_t(i)].is_exact_zero()) continue;
        for (int j = 0; j < p; ++j) {
            if (o.a_[size_t(j)].is_exact_zero()) continue;
            conv[size_t(i + j)] = conv[size_t(i + j)].add(a_[size_t(i)].mul(o.a_[size_t(j)]));
        }
    }
    std::vector<LaurentSeries> out(conv.begin(), conv.begin() + p);
    for (int u = 0; u + 1 < p; ++u) {
        const LaurentSeries& c = conv[size_t(p + u)];
        if (c.is_exact_zero()) continue;
        const auto& row = ext_->reduction_row(u);
        for (int m = 0; m < p; ++m) {
            if (row[size_t(m)].is_exact_zero()) continue;
            out[size_t(m)] = out[size_t(m)].add(c.mul(row[size_t(m)]));
        }
    }
    return ExtElement(ext_, std::move(out));
}

ExtElement ExtElement::pow(unsigned e) const {
    ExtElement acc = ext_->one_element();
    ExtElement base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc.mul(base);
        if (e >>= 1) base = base.mul(base);
    }
    return acc;
}

ExtElement ExtElement::galois(int j) const {
    const int p = ext_->p();
    j %= p;
    if (j < 0) j += p;
    if (j == 0) return *this;
    std::vector<LaurentSeries> b(static_cast<size_t>(p), LaurentSeries::zero(p));
    for (int m = 0; m < p; ++m) {
        for (int i = m; i < p; ++i) {
            int e = ext_->galois_entry(j, i, m);
            if (e == 0 || a_[size_t(i)].is_exact_zero()) continue;
            b[size_t(m)] = b[size_t(m)].add(a_[size_t(i)].scalar_mul(e));
        }
    }
    return ExtElement(ext_, std::move(b));
}

Valuation ExtElement::valuation() const {
    const int p = ext_->p();
    const int s = ext_->s();
    bool have_exact = false;
    long long exact_min = 0;
    bool have_bound = false;
    long long bound_min = 0;
    for (int i = 0; i < p; ++i) {
        const LaurentSeries& c = a_[size_t(i)];
        if (c.is_exact_zero()) continue;
        if (c.certified_nonzero()) {
            long long t = static_cast<long long>(p) * c.valuation().value -
                          static_cast<long long>(i) * s;
            if (!have_exact || t < exact_min) exact_min = t;
            have_exact = true;
        } else {
            long long b = static_cast<long long>(p) * c.precision() -
                          static_cast<long long>(i) * s;
            if (!have_bound || b < bound_min) bound_min = b;
            have_bound = true;
        }
    }
    if (!have_exact && !have_bound) return Valuation::at_least(kExactPrec);
    if (have_exact && (!have_bound || bound_min > exact_min))
        return Valuation::exactly(exact_min);
    long long b = have_exact ? std::min(exact_min, bound_min) : bound_min;
    return Valuation::at_least(b);
}

bool ExtElement::in_integral_ring() const {
    const int p = ext_->p();
    for (int i = 0; i < p; ++i) {
        const LaurentSeries& c = a_[size_t(i)];
        long long threshold = ext_->integral_threshold(i);
        if (c.is_exact_zero()) continue;
        if (c.certified_nonzero()) {
            if (c.valuation().value < threshold) return false;
        } else if (c.precision() < threshold) {
            throw PrecisionExhausted("cannot certify v_K(a_" + std::to_string(i) +
                                     ") >= " + std::to_string(threshold) +
                                     ": known zero only below " + std::to_string(c.precision()));
        }
    }
    return true;
}

bool ExtElement::is_zero_within_precision() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const LaurentSeries& c) { return c.is_zero_within_precision(); });
}

bool ExtElement::is_exact_zero() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const LaurentSeries& c) { return c.is_exact_zero(); });
}

nlohmann::ordered_json ExtElement::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = ext_->p();
    j["s"] = ext_->s();
    j["f"] = ext_->f().to_json();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : a_) arr.push_back(c.to_json());
    j["a"] = arr;
    return j;
}

ExtElement ExtElement::from_json(ExtensionPtr ext, const nlohmann::json& j) {
    if (j.at("p").get<int>() != ext->p() || j.at("s").get<int>() != ext->s())
        throw DomainError("serialized element does not match the extension");
    std::vector<LaurentSeries> a;
    for (const auto& cj : j.at("a")) a.push_back(LaurentSeries::from_json(cj));
    return ExtElement(std::move(ext), std::move(a));
}

std::string ExtElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i].is_exact_zero()) continue;
        if (!first) os << "  +  ";
        first = false;
        os << "(" << a_[i].str() << ")";
        if (i == 1) os << "*L";
        if (i > 1) os << "*L^" << i;
    }
    if (first) os << "0";
    return os.str();
}

LaurentSeries trace(const ExtElement& x, TraceMode mode) {
    const int p = x.ext()->p();
    if (mode == TraceMode::formula) return x.coeff(p - 1).neg();
    ExtElement acc = x;
    for (int j = 1; j < p; ++j) acc = acc.add(x.galois(j));
    for (int m = 1; m < p; ++m)
        if (!acc.coeff(m).is_zero_within_precision())
            throw ContractViolation("direct trace has a nonzero lambda^" + std::to_string(m) +
                                    " coefficient");
    return acc.coeff(0);
}

bool is_trace_zero(const ExtElement& x) {
    const LaurentSeries& top = x.coeff(x.ext()->p() - 1);
    if (top.is_exact_zero()) return true;
    if (top.certified_nonzero()) return false;
    throw PrecisionExhausted("a_{p-1} is zero only up to precision " +
                             std::to_string(top.precision()) +
                             "; trace-zero certification needs an exact zero");
}

bool coboundary_test(const ExtElement& x) {
    if (!is_trace_zero(x)) throw NotTraceZero("coboundary_test requires a trace-zero element");
    if (!x.in_integral_ring()) throw DomainError("coboundary_test requires an element of O_L");
    const int p = x.ext()->p();
    for (int i = 0; i + 1 < p; ++i) {
        const LaurentSeries& c = x.coeff(i);
        long long threshold = x.ext()->coboundary_threshold(i);
        if (c.is_exact_zero()) continue;
        if (c.certified_nonzero()) {
            if (c.valuation().value < threshold) return false;
        } else if (c.precision() < threshold) {
            throw PrecisionExhausted("cannot certify coboundary threshold for a_" +
                                     std::to_string(i));
        }
    }
    return true;
}

ExtElement coboundary_solve(const ExtElement& x) {
    if (!is_trace_zero(x)) throw NotTraceZero("coboundary_solve requires a trace-zero element");
    const int p = x.ext()->p();
    std::vector<LaurentSeries> b(static_cast<size_t>(p), LaurentSeries::zero(p));
    // a_k = sum_{m>k} binom(m,k) b_m; solve b_{p-1} first, then descend.
    for (int k = p - 2; k >= 0; --k) {
        LaurentSeries rhs = x.coeff(k);
        for (int m = k + 2; m < p; ++m) {
            int c = binom_mod_p(static_cast<unsigned>(m), static_cast<unsigned>(k), p).value();
            if (c == 0) continue;
            rhs = rhs.sub(b[size_t(m)].scalar_mul(c));
        }
        b[size_t(k + 1)] = rhs.scalar_mul(mod_inv((k + 1) % p, p));
    }
    return ExtElement(x.ext(), std::move(b));
}

bool h1_class_is_zero(const ExtElement& x) {
    bool zero = coboundary_test(x);
    Valuation v = x.valuation();
    if (v.known_at_least(x.ext()->s()) && !zero)
        throw ContractViolation("element with v_L >= s must be a coboundary");
    return zero;
}

H1Description h1_dimension(int p, int s) {
    auto ext_check = Extension::make(p, s);  // validates (p, s)
    H1Description d;
    d.dimension = 0;
    for (int i = 0; i + 1 < p; ++i) {
        long long lo = ext_check->integral_threshold(i);
        long long hi = ext_check->coboundary_threshold(i);
        for (long long j = lo; j < hi; ++j) d.basis.emplace_back(i, j);
        d.dimension += hi - lo;
    }
    return d;
}

std::string H1Description::render() const {
    std::ostringstream os;
    bool first = true;
    for (auto [i, j] : basis) {
        if (!first) os << ", ";
        first = false;
        if (j == 0 && i == 0) {
            os << "1";
            continue;
        }
        bool need_star = false;
        if (j != 0) {
            os << "t";
            if (j != 1) os << "^" << j;
            need_star = true;
        }
        if (i != 0) {
            if (need_star) os << "*";
            os << "lambda";
            if (i != 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Rank of a matrix over F_p (rows of equal length), by Gaussian elimination.
int fp_rank(std::vector<std::vector<int>> m, int p) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        int inv = mod_inv(m[row][col], p);
        for (size_t c = col; c < cols; ++c) m[row][c] = mod_mul(m[row][c], inv, p);
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            int factor = m[r][col];
            for (size_t c = col; c < cols; ++c)
                m[r][c] = mod_sub(m[r][c], mod_mul(factor, m[row][c], p), p);
        }
        ++row;
        ++rank;
    }
    return rank;
}

// Basis monomial of O_L with v_L = w: the unique t^j lambda^i with
// p*j - i*s = w.
std::pair<int, long long> monomial_for(long long w, int p, int s) {
    int s_inv = mod_inv(s % p, p);
    int i = mod_mul(static_cast<int>(((-w) % p + p) % p), s_inv, p);
    long long j = (w + static_cast<long long>(i) * s) / p;
    return {i, j};
}

// Expand an exact element into coordinates on the monomial basis indexed by
// v_L; rows are allocated on demand (no output truncation).
void expand_exact(const ExtElement& y, int p, int s, std::map<long long, int>& row_of,
                  std::vector<std::pair<int, int>>& entries) {
    for (int i = 0; i < p; ++i) {
        const LaurentSeries& c = y.coeff(i);
        if (!c.exact())
            throw ContractViolation("oracle arithmetic must stay exact");
        for (long long e = c.lowest_exponent(); e < c.support_end(); ++e) {
            int cv = c.coeff_at(e);
            if (cv == 0) continue;
            long long w = static_cast<long long>(p) * e - static_cast<long long>(i) * s;
            if (w < 0)
                throw ContractViolation("map left O_L during oracle computation");
            auto [it, fresh] = row_of.try_emplace(w, static_cast<int>(row_of.size()));
            entries.emplace_back(it->second, cv);
        }
    }
}

long long oracle_defect(const ExtensionPtr& ext, long long N) {
    const int p = ext->p();
    const int s = ext->s();

    // Kernel of the trace on span{monomials with v_L in [0, N)}.
    std::map<long long, int> trace_rows;
    std::vector<std::vector<std::pair<int, int>>> trace_cols;
    for (long long w = 0; w < N; ++w) {
        auto [i, j] = monomial_for(w, p, s);
        ExtElement e = ext->monomial_element(LaurentSeries::monomial(p, j), i);
        ExtElement acc = e;
        for (int g = 1; g < p; ++g) acc = acc.add(e.galois(g));
        trace_cols.emplace_back();
        expand_exact(acc, p, s, trace_rows, trace_cols.back());
    }
    std::vector<std::vector<int>> tmat(trace_rows.size(), std::vector<int>(size_t(N), 0));
    for (size_t col = 0; col < trace_cols.size(); ++col)
        for (auto [row, c] : trace_cols[col]) tmat[size_t(row)][col] = c;
    long long ker_dim = N - fp_rank(std::move(tmat), p);

    // Image of sigma - 1 on span{monomials with v_L in [0, N - s)}; the map
    // raises v_L by at least s, so these images stay comparable to the
    // kernel window above.
    std::map<long long, int> im_rows;
    std::vector<std::vector<std::pair<int, int>>> im_cols;
    for (long long w = 0; w < N - s; ++w) {
        auto [i, j] = monomial_for(w, p, s);
        ExtElement e = ext->monomial_element(LaurentSeries::monomial(p, j), i);
        ExtElement d = e.galois(1).sub(e);
        im_cols.emplace_back();
        expand_exact(d, p, s, im_rows, im_cols.back());
    }
    std::vector<std::vector<int>> imat(im_rows.size(), std::vector<int>(im_cols.size(), 0));
    for (size_t col = 0; col < im_cols.size(); ++col)
        for (auto [row, c] : im_cols[col]) imat[size_t(row)][col] = c;
    long long im_dim = fp_rank(std::move(imat), p);

    return ker_dim - im_dim;
}

}  // namespace

OracleResult h1_truncated_oracle(const ExtensionPtr& ext, long long N) {
    if (N < 2LL * ext->s() * ext->p())
        throw ConfigError("oracle needs N >= 2*s*p for the stabilization margin");
    OracleResult r;
    r.window = {oracle_defect(ext, N - ext->p()), oracle_defect(ext, N),
                oracle_defect(ext, N + ext->p())};
    if (r.window[0] != r.window[1] || r.window[1] != r.window[2])
        throw NotStabilized("oracle values disagree at N-p, N, N+p: " +
                            std::to_string(r.window[0]) + ", " + std::to_string(r.window[1]) +
                            ", " + std::to_string(r.window[2]));
    r.value = r.window[1];
    return r;
}

}  // namespace wittlab
