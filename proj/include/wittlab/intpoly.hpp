#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wittlab/errors.hpp"
#include "wittlab/exact_int.hpp"

namespace wittlab {

/// Sparse multivariate polynomial with exact integer coefficients. Terms map
/// fixed-arity exponent vectors to nonzero coefficients; the ordered map
/// keeps iteration and serialization canonical.
class IntPolynomial {
public:
    using ExpVec = std::vector<std::uint32_t>;
    using TermMap = std::map<ExpVec, ExactInt>;

    explicit IntPolynomial(size_t arity) : arity_(arity) {}

    static IntPolynomial constant(size_t arity, ExactInt c);
    static IntPolynomial variable(size_t arity, size_t index, std::uint32_t exp = 1);

    size_t arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const ExpVec& exps, const ExactInt& c);

    IntPolynomial add(const IntPolynomial& o) const;
    IntPolynomial sub(const IntPolynomial& o) const;
    IntPolynomial neg() const;
    IntPolynomial mul(const IntPolynomial& o) const;
    IntPolynomial pow(unsigned e) const;
    IntPolynomial scalar_mul(const ExactInt& c) const;
    /// Divide every coefficient by d; throws NotDivisible on any remainder.
    IntPolynomial div_exact(const ExactInt& d) const;

    /// Substitute args[v] for variable v. All args must share one arity,
    /// which becomes the arity of the result.
    IntPolynomial compose(const std::vector<IntPolynomial>& args) const;
    /// Rename variable v to index_map[v] inside a polynomial of arity
    /// new_arity.
    IntPolynomial remap(size_t new_arity, const std::vector<size_t>& index_map) const;

    /// True when no term uses a variable index >= bound.
    bool uses_only_below(size_t bound) const;
    bool uses_variable(size_t v) const;

    bool operator==(const IntPolynomial& o) const {
        return arity_ == o.arity_ && terms_ == o.terms_;
    }

    std::string str(const std::vector<std::string>& names = {}) const;

    nlohmann::ordered_json to_json() const;
    static IntPolynomial from_json(const nlohmann::json& j);

private:
    size_t arity_;
    TermMap terms_;
};

/// Coefficientwise reduction mod p; zero terms dropped.
struct ModPolynomial {
    int p = 0;
    size_t arity = 0;
    std::map<IntPolynomial::ExpVec, int> terms;

    bool operator==(const ModPolynomial& o) const = default;
};

ModPolynomial reduce_mod_p(const IntPolynomial& poly, int p);

}  // namespace wittlab
