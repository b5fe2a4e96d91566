#include "wittlab/intpoly.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace wittlab {

IntPolynomial IntPolynomial::constant(size_t arity, ExactInt c) {
    IntPolynomial r(arity);
    if (c != 0) r.terms_.emplace(ExpVec(arity, 0), std::move(c));
    return r;
}

IntPolynomial IntPolynomial::variable(size_t arity, size_t index, std::uint32_t exp) {
    if (index >= arity) throw DomainError("variable index out of range");
    IntPolynomial r(arity);
    ExpVec e(arity, 0);
    e[index] = exp;
    r.terms_.emplace(std::move(e), 1);
    return r;
}

void IntPolynomial::add_term(const ExpVec& exps, const ExactInt& c) {
    if (exps.size() != arity_) throw DomainError("exponent vector has wrong arity");
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPolynomial IntPolynomial::add(const IntPolynomial& o) const {
    if (arity_ != o.arity_) throw DomainError("polynomial arity mismatch");
    IntPolynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

IntPolynomial IntPolynomial::sub(const IntPolynomial& o) const { return add(o.neg()); }

IntPolynomial IntPolynomial::neg() const {
    IntPolynomial r(arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

IntPolynomial IntPolynomial::mul(const IntPolynomial& o) const {
    if (arity_ != o.arity_) throw DomainError("polynomial arity mismatch");
    IntPolynomial r(arity_);
    ExpVec e(arity_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (size_t v = 0; v < arity_; ++v) e[v] = ea[v] + eb[v];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
    IntPolynomial acc = constant(arity_, 1);
    IntPolynomial base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc.mul(base);
        if (e >>= 1) base = base.mul(base);
    }
    return acc;
}

IntPolynomial IntPolynomial::scalar_mul(const ExactInt& c) const {
    IntPolynomial r(arity_);
    if (c == 0) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
}

IntPolynomial IntPolynomial::div_exact(const ExactInt& d) const {
    if (d == 0) throw DivisionByZero("polynomial division by zero");
    IntPolynomial r(arity_);
    for (const auto& [e, c] : terms_) {
        if (c % d != 0)
            throw NotDivisible("coefficient " + c.str() + " not divisible by " + d.str());
        r.terms_.emplace(e, c / d);
    }
    return r;
}

IntPolynomial IntPolynomial::compose(const std::vector<IntPolynomial>& args) const {
    if (args.size() != arity_) throw DomainError("compose needs one argument per variable");
    size_t out_arity = args.empty() ? 0 : args[0].arity();
    for (const auto& a : args)
        if (a.arity() != out_arity) throw DomainError("compose arguments must share an arity");
    // Memoized powers of each argument.
    std::vector<std::vector<IntPolynomial>> powers(arity_);
    auto power_of = [&](size_t v, std::uint32_t e) -> const IntPolynomial& {
        auto& memo = powers[v];
        if (memo.empty()) memo.push_back(constant(out_arity, 1));
        while (memo.size() <= e) memo.push_back(memo.back().mul(args[v]));
        return memo[e];
    };
    IntPolynomial result(out_arity);
    for (const auto& [e, c] : terms_) {
        IntPolynomial term = constant(out_arity, c);
        for (size_t v = 0; v < arity_; ++v)
            if (e[v] > 0) term = term.mul(power_of(v, e[v]));
        result = result.add(term);
    }
    return result;
}

IntPolynomial IntPolynomial::remap(size_t new_arity, const std::vector<size_t>& index_map) const {
    if (index_map.size() != arity_) throw DomainError("remap needs one target per variable");
    IntPolynomial r(new_arity);
    for (const auto& [e, c] : terms_) {
        ExpVec ne(new_arity, 0);
        for (size_t v = 0; v < arity_; ++v) {
            if (e[v] == 0) continue;
            if (index_map[v] >= new_arity) throw DomainError("remap target out of range");
            ne[index_map[v]] += e[v];
        }
        r.add_term(ne, c);
    }
    return r;
}

bool IntPolynomial::uses_only_below(size_t bound) const {
    for (const auto& [e, c] : terms_)
        for (size_t v = bound; v < arity_; ++v)
            if (e[v] != 0) return false;
    return true;
}

bool IntPolynomial::uses_variable(size_t v) const {
    for (const auto& [e, c] : terms_)
        if (e[v] != 0) return true;
    return false;
}

std::string IntPolynomial::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool printed = false;
        if (c != 1) {
            os << c.str();
            printed = true;
        }
        for (size_t v = 0; v < arity_; ++v) {
            if (e[v] == 0) continue;
            if (printed) os << "*";
            if (v < names.size())
                os << names[v];
            else
                os << "X" << v;
            if (e[v] > 1) os << "^" << e[v];
            printed = true;
        }
        if (!printed) os << "1";
    }
    return os.str();
}

nlohmann::ordered_json IntPolynomial::to_json() const {
    nlohmann::ordered_json j;
    j["arity"] = arity_;
    nlohmann::ordered_json ts = nlohmann::ordered_json::array();
    for (const auto& [e, c] : terms_) {
        // Decimal-string coefficients keep the format word-size independent.
        ts.push_back(nlohmann::ordered_json::array({e, c.str()}));
    }
    j["terms"] = ts;
    return j;
}

IntPolynomial IntPolynomial::from_json(const nlohmann::json& j) {
    IntPolynomial r(j.at("arity").get<size_t>());
    for (const auto& t : j.at("terms")) {
        ExpVec e = t.at(0).get<ExpVec>();
        ExactInt c(t.at(1).get<std::string>());
        r.add_term(e, c);
    }
    return r;
}

ModPolynomial reduce_mod_p(const IntPolynomial& poly, int p) {
    ModPolynomial r;
    r.p = p;
    r.arity = poly.arity();
    for (const auto& [e, c] : poly.terms()) {
        int cv = static_cast<int>(c % p);
        if (cv < 0) cv += p;
        if (cv != 0) r.terms.emplace(e, cv);
    }
    return r;
}

}  // namespace wittlab
