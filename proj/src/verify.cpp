#include "wittlab/verify.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "wittlab/sampling.hpp"
#include "wittlab/wittring.hpp"

namespace wittlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ExtensionPtr make_ext(const CheckParams& cp) {
    std::optional<LaurentSeries> f;
    if (cp.f_spec) f = parse_series(cp.p, *cp.f_spec);
    return Extension::make(cp.p, cp.s, f);
}

ordered_json params_json(const CheckParams& cp) {
    ordered_json j;
    j["p"] = cp.p;
    j["s"] = cp.s;
    j["f"] = cp.f_spec ? ordered_json(*cp.f_spec) : ordered_json("t^-" + std::to_string(cp.s));
    j["n"] = cp.n;
    j["N"] = cp.precision > 0 ? cp.precision : default_precision(cp.p, cp.s);
    j["samples"] = cp.samples;
    j["seed"] = cp.seed;
    return j;
}

ordered_json elem_ce(const char* key, const ExtElement& x, std::uint64_t sample_seed,
                     int sample_index) {
    ordered_json j;
    j["sample_index"] = sample_index;
    j["sample_seed"] = sample_seed;
    j[key] = x.to_json();
    return j;
}

struct CheckBody {
    bool pass = true;
    bool sampled = false;
    ordered_json details;
    ordered_json counterexample;

    void fail(ordered_json ce) {
        if (pass) counterexample = std::move(ce);  // keep the first witness
        pass = false;
    }
};

// ---------------------------------------------------------------- lemma_sums

void check_lemma_sums(const CheckParams&, CheckBody& out) {
    const int primes[] = {2, 3, 5, 7, 11, 13};
    int verified = 0;
    for (int p : primes) {
        for (int k = 0; k < p; ++k) {
            int expect = (k == p - 1) ? p - 1 : 0;
            Fp got = power_sum_mod_p(static_cast<unsigned>(k), p);
            ++verified;
            if (got.value() != expect) {
                ordered_json ce;
                ce["p"] = p;
                ce["k"] = k;
                ce["expected"] = expect;
                ce["got"] = got.value();
                out.fail(ce);
            }
        }
    }
    out.details["cases"] = verified;
}

// -------------------------------------------------------- prop_integral_ring

void check_prop_integral_ring(const CheckParams& cp, CheckBody& out) {
    ExtensionPtr ext = make_ext(cp);
    int agree = 0, members = 0;
    for (int i = 0; i < cp.samples; ++i) {
        std::uint64_t ss = derive_seed(cp.seed, static_cast<std::uint64_t>(i));
        Rng rng(ss);
        ExtElement x = random_mixed_element(ext, rng);
        bool member = x.in_integral_ring();
        bool val_nonneg = x.valuation().known_at_least(0);
        if (member) ++members;
        if (member == val_nonneg) {
            ++agree;
        } else {
            ordered_json ce = elem_ce("x", x, ss, i);
            ce["in_integral_ring"] = member;
            ce["valuation_nonnegative"] = val_nonneg;
            out.fail(ce);
        }
    }
    out.details["agreements"] = agree;
    out.details["members"] = members;
    out.details["non_members"] = cp.samples - members;
}

// --------------------------------------------------------- trace_consistency

void check_trace_consistency(const CheckParams& cp, CheckBody& out) {
    ExtensionPtr ext = make_ext(cp);
    for (int i = 0; i < cp.samples; ++i) {
        std::uint64_t ss = derive_seed(cp.seed, static_cast<std::uint64_t>(i));
        Rng rng(ss);
        ExtElement x = random_integral_element(ext, rng);
        LaurentSeries direct = trace(x, TraceMode::direct);
        LaurentSeries formula = trace(x, TraceMode::formula);
        if (!direct.agree_on_common_window(formula)) {
            ordered_json ce = elem_ce("x", x, ss, i);
            ce["direct"] = direct.to_json();
            ce["formula"] = formula.to_json();
            out.fail(ce);
        }
    }
    out.details["samples"] = cp.samples;
}

// ------------------------------------------------------------------- prop_h1

void check_prop_h1(const CheckParams& cp, CheckBody& out) {
    ExtensionPtr ext = make_ext(cp);
    // Forward: every sigma(y) - y with y in O_L satisfies the valuation
    // description of the coboundary set.
    for (int i = 0; i < cp.samples; ++i) {
        std::uint64_t ss = derive_seed(cp.seed, static_cast<std::uint64_t>(i));
        Rng rng(ss);
        ExtElement y = random_integral_element(ext, rng);
        ExtElement x = y.galois(1).sub(y);
        ordered_json ce = elem_ce("y", y, ss, i);
        ce["direction"] = "forward";
        if (!x.in_integral_ring() || !is_trace_zero(x)) {
            out.fail(ce);
            continue;
        }
        if (!coboundary_test(x)) {
            ce["x"] = x.to_json();
            out.fail(ce);
        }
    }
    // Backward: every element satisfying the description is solved back into
    // O_L, re-verified by direct arithmetic.
    for (int i = 0; i < cp.samples; ++i) {
        std::uint64_t ss = derive_seed(cp.seed, static_cast<std::uint64_t>(cp.samples + i));
        Rng rng(ss);
        ExtElement x = random_trace_zero(ext, rng, ext->s(), 2);
        ExtElement y = coboundary_solve(x);
        ordered_json ce = elem_ce("x", x, ss, i);
        ce["direction"] = "backward";
        if (!y.in_integral_ring()) {
            ce["y"] = y.to_json();
            out.fail(ce);
            continue;
        }
        if (!y.galois(1).sub(y).sub(x).is_zero_within_precision()) {
            ce["y"] = y.to_json();
            out.fail(ce);
        }
    }
    out.details["samples_per_direction"] = cp.samples;
}

// ----------------------------------------------------------------- cor_bound

void check_cor_bound(const CheckParams& cp, CheckBody& out) {
    ExtensionPtr ext = make_ext(cp);
    for (int i = 0; i < cp.samples; ++i) {
        std::uint64_t ss = derive_seed(cp.seed, static_cast<std::uint64_t>(i));
        Rng rng(ss);
        ExtElement x = random_trace_zero(ext, rng, ext->s(), 2);
        ordered_json ce = elem_ce("x", x, ss, i);
        if (!h1_class_is_zero(x)) {
            out.fail(ce);
            continue;
        }
        // Constructive confirmation rather than just the lattice test.
        ExtElement y = coboundary_solve(x);
        if (!y.in_integral_ring() || !y.galois(1).sub(y).sub(x).is_zero_within_precision()) {
            ce["y"] = y.to_json();
            out.fail(ce);
        }
    }
    // The witness x = 1 is trace-zero with v_L = 0 <= s-1 and must define a
    // nonzero class for every (p, s).
    ExtElement one = ext->one_element();
    bool witness_nonzero = is_trace_zero(one) && !coboundary_test(one);
    out.details["witness_x"] = "1";
    out.details["witness_vL"] = 0;
    out.details["witness_class_nonzero"] = witness_nonzero;
    if (!witness_nonzero) {
        ordered_json ce;
        ce["witness"] = one.to_json();
        ce["reason"] = "x = 1 should define a nonzero class";
        out.fail(ce);
    }
}

// ------------------------------------------------------------ ghost_identities

void check_ghost_identities(const CheckParams& cp, CheckBody& out) {
    int n = cp.n > 0 ? cp.n : witt_budget(cp.p);
    require_witt_budget(cp.p, n);
    ordered_json kinds = ordered_json::array();
    for (WittKind kind : {WittKind::sum, WittKind::product, WittKind::negation}) {
        std::vector<IntPolynomial> polys = witt_structure_polynomials(cp.p, n, kind);
        verify_ghost_identities(cp.p, kind, polys);  // raises on failure
        ordered_json k;
        k["kind"] = kind_name(kind);
        k["levels"] = n;
        k["terms_at_top"] = polys.back().term_count();
        kinds.push_back(k);
        if (cp.inject_failure && kind == WittKind::sum) {
            std::vector<IntPolynomial> corrupted = polys;
            IntPolynomial::ExpVec e(corrupted.back().arity(), 0);
            corrupted.back().add_term(e, 1);
            bool detected = false;
            try {
                verify_ghost_identities(cp.p, kind, corrupted);
            } catch (const ContractViolation&) {
                detected = true;
            }
            out.details["injection_detected"] = detected;
            ordered_json ce;
            ce["reason"] = detected ? "deliberately corrupted sum polynomial rejected"
                                    : "corruption was NOT detected";
            ce["level"] = n - 1;
            out.fail(ce);
        }
    }
    out.details["kinds"] = kinds;
}

// ------------------------------------------------------------- g_integrality

void check_g_integrality(const CheckParams&, CheckBody& out) {
    for (int p : {2, 3, 5, 7}) {
        IntPolynomial g = g_polynomial(p);  // identity verified on construction
        if (p == 2) {
            IntPolynomial expect =
                IntPolynomial::variable(2, 0).mul(IntPolynomial::variable(2, 1));
            if (!(g == expect)) {
                ordered_json ce;
                ce["p"] = 2;
                ce["reason"] = "G(p=2) != X1*X2";
                out.fail(ce);
            }
        }
        out.details["terms_p" + std::to_string(p)] = g.term_count();
    }
}

// --------------------------------------------------------- lemma_F_valuation

void check_lemma_F_valuation(const CheckParams& cp, CheckBody& out) {
    ExtensionPtr ext = make_ext(cp);
    for (int i = 0; i < cp.samples; ++i) {
        std::uint64_t ss = derive_seed(cp.seed, static_cast<std::uint64_t>(i));
        Rng rng(ss);
        long long target = static_cast<long long>(rng.below(2 * cp.s + 6));
        ExtElement x = random_integral_with_valuation(ext, rng, target);
        ordered_json ce = elem_ce("x", x, ss, i);
        ce["v_L"] = target;
        try {
            LaurentSeries fx = f_map(x);
            Valuation v = fx.valuation();
            if (!v.exact || v.value != target) {
                ce["v_K_F"] = v.exact ? ordered_json(v.value)
                                      : ordered_json(">=" + std::to_string(v.value));
                out.fail(ce);
            }
        } catch (const ContractViolation& e) {
            ce["error"] = e.what();
            out.fail(ce);
        }
    }
    out.details["samples"] = cp.samples;
}

// ------------------------------------------------------------- h1_dimension

void check_h1_dimension(const CheckParams& cp, CheckBody& out) {
    ExtensionPtr ext = make_ext(cp);
    H1Description d = h1_dimension(cp.p, cp.s);
    long long N = std::max<long long>(cp.precision > 0 ? cp.precision : 0,
                                      2LL * cp.s * cp.p + cp.p);
    OracleResult oracle = h1_truncated_oracle(ext, N);
    out.details["formula"] = d.dimension;
    out.details["oracle"] = oracle.value;
    out.details["oracle_window"] = oracle.window;
    out.details["basis"] = d.render();
    if (d.dimension != oracle.value) {
        ordered_json ce;
        ce["formula"] = d.dimension;
        ce["oracle"] = oracle.value;
        out.fail(ce);
    }
}

// -------------------------------------------------- generation-based checks

struct GenStats {
    int successes = 0;
    int failures = 0;
    std::map<int, int> failure_levels;
};

bool check_generated_vector(const WittContext& ctx, const WittVector& w, int n,
                            bool require_main_theorem, ordered_json& why) {
    const int p = ctx.ext()->p();
    const int s = ctx.ext()->s();
    // Step 1 bounds for all but the last two components; Step 2 sharpening
    // counted from the tail; main theorem conditions on x_0 when asked.
    long long tau = (static_cast<long long>(p - 1) * s + p - 1) / p;
    for (int l = 0; l + 2 <= n; ++l) {
        if (!w.component(l).valuation().known_at_least(tau)) {
            why["component"] = l;
            why["bound"] = tau;
            why["rule"] = "step1";
            return false;
        }
    }
    for (int i = 2; i <= n; ++i) {
        long long bound = step_bound(p, s, i).ceil();
        if (!w.component(n - i).valuation().known_at_least(bound)) {
            why["component"] = n - i;
            why["bound"] = bound;
            why["rule"] = "step2";
            return false;
        }
    }
    if (require_main_theorem) {
        const ExtElement& x0 = w.component(0);
        if (!x0.valuation().known_at_least(s)) {
            why["rule"] = "v_L(x_0) >= s";
            return false;
        }
        if (!h1_class_is_zero(x0)) {
            why["rule"] = "h1_class_is_zero(x_0)";
            return false;
        }
    }
    return true;
}

void run_generation_check(const CheckParams& cp, CheckBody& out, bool main_theorem_mode) {
    ExtensionPtr ext = make_ext(cp);
    int n = cp.n > 0 ? cp.n : step3_length(cp.p, cp.s);
    require_witt_budget(cp.p, n);
    WittContext ctx(ext, n, cp.cache_dir);
    GenStats stats;
    const int max_attempts = cp.samples * 60;
    for (int attempt = 0; attempt < max_attempts && stats.successes < cp.samples; ++attempt) {
        std::uint64_t ss = derive_seed(cp.seed, static_cast<std::uint64_t>(attempt));
        Rng rng(ss);
        GenResult r = gen_trace_zero(ctx, n, std::nullopt, true, rng);
        if (!r.ok()) {
            ++stats.failures;
            ++stats.failure_levels[r.failure->level];
            continue;
        }
        ++stats.successes;
        if (!witt_trace(ctx, *r.vector).is_zero_within_precision()) {
            ordered_json ce;
            ce["sample_seed"] = ss;
            ce["vector"] = r.vector->to_json();
            ce["rule"] = "witt_trace == 0";
            out.fail(ce);
            continue;
        }
        ordered_json why;
        if (!check_generated_vector(ctx, *r.vector, n, main_theorem_mode, why)) {
            ordered_json ce;
            ce["sample_seed"] = ss;
            ce["vector"] = r.vector->to_json();
            ce["violated"] = why;
            out.fail(ce);
        }
    }
    out.sampled = true;
    out.details["n"] = n;
    out.details["successes"] = stats.successes;
    out.details["unsolvable_attempts"] = stats.failures;
    ordered_json levels = ordered_json::object();
    for (auto [level, count] : stats.failure_levels)
        levels[std::to_string(level)] = count;
    out.details["unsolvable_by_level"] = levels;
    if (stats.successes < cp.samples) {
        ordered_json ce;
        ce["reason"] = "generation produced too few trace-zero vectors";
        ce["successes"] = stats.successes;
        out.fail(ce);
    }
    if (main_theorem_mode) {
        // At n = 1 the class of x = 1 is nonzero: the transition maps are
        // genuinely needed for the vanishing.
        ExtElement one = ext->one_element();
        bool nonzero_at_level_one = is_trace_zero(one) && !coboundary_test(one);
        out.details["level1_witness_class_nonzero"] = nonzero_at_level_one;
        if (!nonzero_at_level_one) {
            ordered_json ce;
            ce["reason"] = "x = 1 should have a nonzero class at n = 1";
            out.fail(ce);
        }
    }
}

void check_step_bounds_sampled(const CheckParams& cp, CheckBody& out) {
    run_generation_check(cp, out, false);
}

void check_main_theorem(const CheckParams& cp, CheckBody& out) {
    run_generation_check(cp, out, true);
}

// ---------------------------------------------------------- find_vanishing_m

void check_find_vanishing_m(const CheckParams& cp, CheckBody& out) {
    ExtensionPtr ext = make_ext(cp);
    int target_n = cp.n > 0 ? cp.n : 1;
    int theoretical_M = step3_length(cp.p, cp.s) + (target_n - 1);
    int m_max = cp.m_max > 0 ? cp.m_max : theoretical_M + 2;
    m_max = std::min(m_max, witt_budget(cp.p));
    if (m_max < theoretical_M)
        throw ConfigError("m_max " + std::to_string(m_max) +
                          " below the theoretical bound " + std::to_string(theoretical_M));
    WittContext ctx(ext, m_max, cp.cache_dir);

    std::optional<int> empirical_m;
    ordered_json per_m = ordered_json::array();
    // A length-m vector only truncates to level n for m >= n.
    for (int m = target_n; m <= m_max && !empirical_m; ++m) {
        int collected = 0, zero_classes = 0;
        const int max_attempts = cp.samples * 60;
        std::uint64_t m_seed = derive_seed(cp.seed, static_cast<std::uint64_t>(m));
        for (int attempt = 0; attempt < max_attempts && collected < cp.samples; ++attempt) {
            Rng rng(derive_seed(m_seed, static_cast<std::uint64_t>(attempt)));
            GenResult r = gen_trace_zero(ctx, m, std::nullopt, true, rng);
            if (!r.ok()) continue;
            ++collected;
            bool zero;
            if (target_n == 1) {
                zero = h1_class_is_zero(r.vector->component(0));
            } else {
                WittVector cut = witt_truncate(*r.vector, target_n);
                zero = witt_coboundary_solve(ctx, cut).has_value();
            }
            if (zero) ++zero_classes;
        }
        if (collected < cp.samples)
            throw SamplingInconclusive("only " + std::to_string(collected) +
                                       " trace-zero vectors of length " + std::to_string(m));
        ordered_json row;
        row["m"] = m;
        row["zero_classes"] = zero_classes;
        row["samples"] = collected;
        per_m.push_back(row);
        if (zero_classes == collected) empirical_m = m;
    }

    out.sampled = true;
    out.details["label"] = "SAMPLED";
    out.details["target_n"] = target_n;
    out.details["theoretical_M"] = theoretical_M;
    out.details["empirical_m"] = empirical_m ? ordered_json(*empirical_m) : ordered_json(nullptr);
    out.details["per_m"] = per_m;
    if (!empirical_m || *empirical_m > theoretical_M) {
        ordered_json ce;
        ce["reason"] = "no m <= m_max with all sampled classes zero at the target level";
        ce["theoretical_M"] = theoretical_M;
        out.fail(ce);
    }
}

// -------------------------------------------------------------- dispatching

using CheckFn = std::function<void(const CheckParams&, CheckBody&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> reg = {
        {"lemma_sums", check_lemma_sums},
        {"prop_integral_ring", check_prop_integral_ring},
        {"trace_consistency", check_trace_consistency},
        {"prop_h1", check_prop_h1},
        {"cor_bound", check_cor_bound},
        {"ghost_identities", check_ghost_identities},
        {"g_integrality", check_g_integrality},
        {"lemma_F_valuation", check_lemma_F_valuation},
        {"h1_dimension", check_h1_dimension},
        {"step_bounds_sampled", check_step_bounds_sampled},
        {"main_theorem", check_main_theorem},
        {"find_vanishing_m", check_find_vanishing_m},
    };
    return reg;
}

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

bool is_check_name(const std::string& name) {
    for (const auto& [n, fn] : registry())
        if (n == name) return true;
    return false;
}

CheckReport run_check(const std::string& name, const CheckParams& params) {
    const CheckFn* fn = nullptr;
    for (const auto& [n, f] : registry())
        if (n == name) fn = &f;
    if (!fn) throw ConfigError("unknown check '" + name + "'");

    CheckReport report;
    report.name = name;
    report.params = params_json(params);
    CheckBody body;
    auto start = std::chrono::steady_clock::now();
    try {
        (*fn)(params, body);
    } catch (const PrecisionExhausted& e) {
        body.pass = false;
        body.counterexample = ordered_json{{"error_type", "PrecisionExhausted"},
                                           {"error", e.what()}};
    } catch (const SamplingInconclusive& e) {
        body.pass = false;
        body.counterexample = ordered_json{{"error_type", "SamplingInconclusive"},
                                           {"error", e.what()}};
    } catch (const ContractViolation& e) {
        body.pass = false;
        body.counterexample = ordered_json{{"error_type", "ContractViolation"},
                                           {"error", e.what()}};
    } catch (const ConfigError& e) {
        body.pass = false;
        body.counterexample = ordered_json{{"error_type", "ConfigError"}, {"error", e.what()}};
    } catch (const BudgetExceeded& e) {
        body.pass = false;
        body.counterexample = ordered_json{{"error_type", "BudgetExceeded"},
                                           {"error", e.what()}};
    } catch (const Error& e) {
        body.pass = false;
        body.counterexample = ordered_json{{"error_type", "Error"}, {"error", e.what()}};
    }
    auto stop = std::chrono::steady_clock::now();
    report.pass = body.pass;
    report.sampled = body.sampled;
    report.details = std::move(body.details);
    report.counterexample = std::move(body.counterexample);
    report.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return report;
}

std::vector<CheckReport> run_all(const CheckParams& params) {
    std::vector<CheckReport> reports;
    // The G- and Witt-length-dependent checks need p <= 7 and budget >= 2.
    bool witt_feasible = witt_budget(params.p) >= 2;
    for (const auto& [name, fn] : registry()) {
        if (!witt_feasible &&
            (name == "lemma_F_valuation" || name == "step_bounds_sampled" ||
             name == "main_theorem" || name == "find_vanishing_m"))
            continue;
        reports.push_back(run_check(name, params));
    }
    return reports;
}

nlohmann::ordered_json CheckReport::to_json() const {
    ordered_json j;
    j["check"] = name;
    j["params"] = params;
    j["verdict"] = pass ? "pass" : "fail";
    j["sampled"] = sampled;
    j["details"] = details;
    j["counterexample"] = counterexample.is_null() ? ordered_json(nullptr) : counterexample;
    j["runtime_ms"] = runtime_ms;
    j["tool_version"] = kToolVersion;
    return j;
}

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "text-table" || name == "text") return ReportFormat::text_table;
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw ConfigError("unknown report format '" + name + "'");
}

std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format) {
    if (format == ReportFormat::json) {
        ordered_json j;
        j["schema_version"] = kReportSchemaVersion;
        j["tool_version"] = kToolVersion;
        ordered_json checks = ordered_json::array();
        for (const auto& r : reports) checks.push_back(r.to_json());
        j["checks"] = checks;
        return j.dump(1) + "\n";
    }
    if (format == ReportFormat::csv) {
        std::ostringstream os;
        os << "check,p,s,n,N,samples,seed,verdict,runtime_ms\n";
        for (const auto& r : reports) {
            os << r.name << "," << r.params.at("p") << "," << r.params.at("s") << ","
               << r.params.at("n") << "," << r.params.at("N") << "," << r.params.at("samples")
               << "," << r.params.at("seed") << "," << (r.pass ? "pass" : "fail") << ","
               << r.runtime_ms << "\n";
        }
        return os.str();
    }
    std::ostringstream os;
    os << "check                 p   s   n   verdict  sampled  runtime_ms\n";
    os << "--------------------- --- --- --- -------- -------- ----------\n";
    for (const auto& r : reports) {
        std::string name = r.name;
        name.resize(21, ' ');
        std::string p = r.params.at("p").dump();
        std::string s = r.params.at("s").dump();
        std::string n = r.params.at("n").dump();
        p.resize(3, ' ');
        s.resize(3, ' ');
        n.resize(3, ' ');
        std::string verdict = r.pass ? "pass" : "FAIL";
        verdict.resize(8, ' ');
        os << name << " " << p << " " << s << " " << n << " " << verdict << " "
           << (r.sampled ? "yes     " : "no      ") << " " << r.runtime_ms << "\n";
    }
    return os.str();
}

void write_report(const std::vector<CheckReport>& reports, ReportFormat format,
                  const std::string& path) {
    std::string text = emit_report(reports, format);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open report path " + path);
    out << text;
    if (!out) throw IoError("failed writing report to " + path);
}

std::vector<std::pair<std::string, bool>> parse_report_verdicts(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("unparsable report: ") + e.what());
    }
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& c : j.at("checks"))
        out.emplace_back(c.at("check").get<std::string>(),
                         c.at("verdict").get<std::string>() == "pass");
    return out;
}

}  // namespace wittlab
