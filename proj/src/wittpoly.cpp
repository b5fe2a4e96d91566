#include "wittlab/wittpoly.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wittlab/fp.hpp"

namespace wittlab {

std::string kind_name(WittKind k) {
    switch (k) {
        case WittKind::sum: return "sum";
        case WittKind::product: return "product";
        case WittKind::negation: return "negation";
    }
    throw DomainError("bad WittKind");
}

WittKind kind_from_name(const std::string& name) {
    if (name == "sum") return WittKind::sum;
    if (name == "product") return WittKind::product;
    if (name == "negation") return WittKind::negation;
    throw ConfigError("unknown polynomial kind '" + name + "'");
}

int witt_budget(int p) {
    switch (p) {
        case 2: return 5;
        case 3: return 4;
        case 5: return 2;
        case 7: return 2;
        case 11: return 1;
        case 13: return 1;
        default: return 0;
    }
}

void require_witt_budget(int p, int n) {
    require_supported_prime(p);
    if (n < 1) throw ConfigError("Witt length must be at least 1");
    if (n > witt_budget(p))
        throw BudgetExceeded("Witt length n=" + std::to_string(n) + " exceeds the budget for p=" +
                             std::to_string(p) + " (max " + std::to_string(witt_budget(p)) + ")");
}

IntPolynomial ghost_polynomial(int p, int i, size_t arity, size_t offset) {
    if (i < 0) throw DomainError("ghost index must be nonnegative");
    IntPolynomial w(arity);
    for (int j = 0; j <= i; ++j) {
        std::uint32_t e = 1;
        for (int k = 0; k < i - j; ++k) e *= static_cast<std::uint32_t>(p);
        IntPolynomial term = IntPolynomial::variable(arity, offset + static_cast<size_t>(j), e);
        w = w.add(term.scalar_mul(exact_pow(ExactInt(p), static_cast<unsigned long>(j))));
    }
    return w;
}

namespace {

// Embed the level-j polynomial (arity 2(j+1) or j+1) into the level-i
// variable layout.
IntPolynomial lift_binary(const IntPolynomial& sj, int j, int i) {
    std::vector<size_t> map(2 * static_cast<size_t>(j + 1));
    for (int k = 0; k <= j; ++k) {
        map[static_cast<size_t>(k)] = static_cast<size_t>(k);                      // X_k
        map[static_cast<size_t>(j + 1 + k)] = static_cast<size_t>(i + 1 + k);      // Y_k
    }
    return sj.remap(2 * static_cast<size_t>(i + 1), map);
}

IntPolynomial lift_unary(const IntPolynomial& ij, int, int i) {
    std::vector<size_t> map(ij.arity());
    for (size_t k = 0; k < map.size(); ++k) map[k] = k;
    return ij.remap(static_cast<size_t>(i + 1), map);
}

// Ghost value the level-i structure polynomial must reproduce.
IntPolynomial ghost_target(int p, int i, WittKind kind) {
    size_t arity = kind == WittKind::negation ? static_cast<size_t>(i + 1)
                                              : 2 * static_cast<size_t>(i + 1);
    IntPolynomial wx = ghost_polynomial(p, i, arity, 0);
    switch (kind) {
        case WittKind::sum:
            return wx.add(ghost_polynomial(p, i, arity, static_cast<size_t>(i + 1)));
        case WittKind::product:
            return wx.mul(ghost_polynomial(p, i, arity, static_cast<size_t>(i + 1)));
        case WittKind::negation:
            return wx.neg();
    }
    throw DomainError("bad WittKind");
}

IntPolynomial lift(const IntPolynomial& poly, int j, int i, WittKind kind) {
    return kind == WittKind::negation ? lift_unary(poly, j, i) : lift_binary(poly, j, i);
}

}  // namespace

std::vector<IntPolynomial> witt_structure_polynomials(int p, int n, WittKind kind) {
    require_witt_budget(p, n);
    std::vector<IntPolynomial> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        IntPolynomial acc = ghost_target(p, i, kind);
        for (int j = 0; j < i; ++j) {
            unsigned e = 1;
            for (int k = 0; k < i - j; ++k) e *= static_cast<unsigned>(p);
            IntPolynomial lifted = lift(out[static_cast<size_t>(j)], j, i, kind);
            acc = acc.sub(lifted.pow(e).scalar_mul(exact_pow(ExactInt(p),
                                                             static_cast<unsigned long>(j))));
        }
        out.push_back(acc.div_exact(exact_pow(ExactInt(p), static_cast<unsigned long>(i))));
    }
    verify_ghost_identities(p, kind, out);
    return out;
}

void verify_ghost_identities(int p, WittKind kind, const std::vector<IntPolynomial>& polys) {
    for (int i = 0; i < static_cast<int>(polys.size()); ++i) {
        size_t arity = kind == WittKind::negation ? static_cast<size_t>(i + 1)
                                                  : 2 * static_cast<size_t>(i + 1);
        // w_i evaluated at the structure polynomials of levels 0..i.
        std::vector<IntPolynomial> args;
        args.reserve(static_cast<size_t>(i + 1));
        for (int j = 0; j <= i; ++j) args.push_back(lift(polys[static_cast<size_t>(j)], j, i, kind));
        IntPolynomial ghost_i(static_cast<size_t>(i + 1));
        ghost_i = ghost_polynomial(p, i, static_cast<size_t>(i + 1), 0);
        IntPolynomial lhs = ghost_i.compose(args);
        IntPolynomial rhs = ghost_target(p, i, kind);
        if (!(lhs == rhs))
            throw ContractViolation("ghost identity failed for " + kind_name(kind) +
                                    " polynomial at level " + std::to_string(i) +
                                    " (p=" + std::to_string(p) + ")");
        if (arity != polys[static_cast<size_t>(i)].arity())
            throw ContractViolation("structure polynomial has unexpected arity at level " +
                                    std::to_string(i));
    }
}

IntPolynomial g_polynomial(int p) {
    require_supported_prime(p);
    if (p > 7)
        throw BudgetExceeded("G polynomial supported only for p <= 7 (got p=" +
                             std::to_string(p) + ")");
    size_t arity = static_cast<size_t>(p);
    IntPolynomial g(arity);
    // Sum over compositions k of p into p parts with every part < p of
    // (multinomial / p) X^k. Parts equal to p are exactly the excluded
    // sum-of-p-th-powers terms.
    std::vector<int> parts(arity, 0);
    IntPolynomial::ExpVec exps(arity, 0);
    auto rec = [&](auto&& self, size_t pos, int remaining) -> void {
        if (pos + 1 == arity) {
            if (remaining >= p) return;
            parts[pos] = remaining;
            for (size_t v = 0; v < arity; ++v) exps[v] = static_cast<std::uint32_t>(parts[v]);
            g.add_term(exps, multinomial_div_p(p, parts));
            return;
        }
        int cap = std::min(remaining, p - 1);
        for (int k = 0; k <= cap; ++k) {
            parts[pos] = k;
            self(self, pos + 1, remaining - k);
        }
    };
    rec(rec, 0, p);

    // Defining identity p*G = (sum X_i)^p - sum X_i^p, checked symbolically.
    IntPolynomial sum(arity), pth(arity);
    for (size_t v = 0; v < arity; ++v) {
        sum = sum.add(IntPolynomial::variable(arity, v));
        pth = pth.add(IntPolynomial::variable(arity, v, static_cast<std::uint32_t>(p)));
    }
    if (!(g.scalar_mul(p) == sum.pow(static_cast<unsigned>(p)).sub(pth)))
        throw ContractViolation("G polynomial identity failed for p=" + std::to_string(p));
    return g;
}

namespace {

constexpr int kCacheFormatVersion = 1;

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string payload_dump(const nlohmann::ordered_json& polys) { return polys.dump(); }

}  // namespace

std::string cache_file_name(int p, int n, WittKind kind) {
    return "witt_p" + std::to_string(p) + "_n" + std::to_string(n) + "_" + kind_name(kind) +
           ".json";
}

void cache_store(const std::string& dir, int p, int n, WittKind kind,
                 const std::vector<IntPolynomial>& polys) {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json j;
    j["format_version"] = kCacheFormatVersion;
    j["p"] = p;
    j["n"] = n;
    j["kind"] = kind_name(kind);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& poly : polys) arr.push_back(poly.to_json());
    j["checksum"] = fnv1a(payload_dump(arr));
    j["polys"] = arr;
    std::filesystem::path path = std::filesystem::path(dir) / cache_file_name(p, n, kind);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write cache file " + path.string());
    out << j.dump(1) << "\n";
    if (!out) throw IoError("failed writing cache file " + path.string());
}

std::vector<IntPolynomial> cache_load(const std::string& dir, int p, int n, WittKind kind,
                                      bool paranoid) {
    std::filesystem::path path = std::filesystem::path(dir) / cache_file_name(p, n, kind);
    std::ifstream in(path);
    if (!in) throw CacheMiss("no cache file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw CacheCorrupt("unparsable cache file " + path.string() + ": " + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != kCacheFormatVersion)
            throw CacheMiss("cache format version mismatch in " + path.string());
        if (j.at("p").get<int>() != p || j.at("n").get<int>() != n ||
            j.at("kind").get<std::string>() != kind_name(kind))
            throw CacheMiss("cache metadata mismatch in " + path.string());
        nlohmann::ordered_json arr = j.at("polys");
        if (fnv1a(payload_dump(arr)) != j.at("checksum").get<std::uint64_t>())
            throw CacheCorrupt("checksum mismatch in " + path.string());
        std::vector<IntPolynomial> polys;
        for (const auto& pj : arr) polys.push_back(IntPolynomial::from_json(pj));
        if (static_cast<int>(polys.size()) != n)
            throw CacheCorrupt("cache holds wrong number of polynomials");
        if (paranoid) verify_ghost_identities(p, kind, polys);
        return polys;
    } catch (const Error&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw CacheCorrupt("malformed cache file " + path.string() + ": " + e.what());
    }
}

bool cache_has(const std::string& dir, int p, int n, WittKind kind) {
    return std::filesystem::exists(std::filesystem::path(dir) / cache_file_name(p, n, kind));
}

}  // namespace wittlab
