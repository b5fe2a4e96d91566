// wittlab: exact verification of the integral cohomology of Artin-Schreier
// extensions and the trace structure of truncated Witt vectors over them.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "wittlab/verify.hpp"
#include "wittlab/wittring.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudgetOrPrecision = 3;

std::string cache_dir_or_default(std::string flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("WITTLAB_CACHE_DIR")) return env;
    return "wittcache";
}

int cmd_wittpoly_gen(int p, int n, const std::string& kind, std::string cache_dir,
                     bool paranoid) {
    cache_dir = cache_dir_or_default(cache_dir);
    std::vector<wittlab::WittKind> kinds;
    if (kind == "all") {
        kinds = {wittlab::WittKind::sum, wittlab::WittKind::product,
                 wittlab::WittKind::negation};
    } else {
        kinds = {wittlab::kind_from_name(kind)};
    }
    wittlab::require_witt_budget(p, n);
    for (wittlab::WittKind k : kinds) {
        if (wittlab::cache_has(cache_dir, p, n, k)) {
            try {
                wittlab::cache_load(cache_dir, p, n, k, paranoid);
                std::cerr << "cache hit: " << wittlab::cache_file_name(p, n, k) << "\n";
                continue;
            } catch (const wittlab::Error& e) {
                std::cerr << "regenerating (" << e.what() << ")\n";
            }
        }
        auto polys = wittlab::witt_structure_polynomials(p, n, k);
        wittlab::cache_store(cache_dir, p, n, k, polys);
        std::cerr << "generated + verified: " << wittlab::cache_file_name(p, n, k) << " ("
                  << polys.back().term_count() << " terms at the top level)\n";
    }
    return kExitOk;
}

int cmd_h1(int p, int s, const std::string& f_spec, bool basis, bool oracle,
           long long precision) {
    std::optional<wittlab::LaurentSeries> f;
    if (!f_spec.empty()) f = wittlab::parse_series(p, f_spec);
    auto ext = wittlab::Extension::make(p, s, f);
    wittlab::H1Description d = wittlab::h1_dimension(p, s);
    std::cout << "dim " << d.dimension;
    if (basis) std::cout << "; basis " << d.render();
    std::cout << "\n";
    if (oracle) {
        long long N = std::max<long long>(precision, 2LL * s * p + p);
        wittlab::OracleResult r = wittlab::h1_truncated_oracle(ext, N);
        std::cout << "oracle " << r.value << " (stable at N-p, N, N+p for N=" << N << ")\n";
        if (r.value != d.dimension) {
            std::cerr << "oracle disagrees with the closed form\n";
            return kExitCheckFailed;
        }
    }
    return kExitOk;
}

int cmd_verify(const std::string& check, wittlab::CheckParams params,
               const std::string& format_name, const std::string& out_path) {
    params.cache_dir = cache_dir_or_default(params.cache_dir);
    wittlab::ReportFormat format = wittlab::report_format_from_name(format_name);
    if (check != "all" && !wittlab::is_check_name(check))
        throw wittlab::ConfigError("unknown check '" + check + "'");
    // The run configuration obeys the same rules as extension construction;
    // reject it before any computation starts.
    {
        std::optional<wittlab::LaurentSeries> f;
        if (params.f_spec) f = wittlab::parse_series(params.p, *params.f_spec);
        wittlab::Extension::make(params.p, params.s, f);
    }
    if (params.p > 7 &&
        (check == "lemma_F_valuation" || check == "step_bounds_sampled" ||
         check == "main_theorem" || check == "find_vanishing_m"))
        throw wittlab::ConfigError("check '" + check + "' needs p <= 7 (symbolic budget)");

    std::vector<wittlab::CheckReport> reports;
    if (check == "all")
        reports = wittlab::run_all(params);
    else
        reports.push_back(wittlab::run_check(check, params));
    wittlab::write_report(reports, format, out_path);

    bool precision_exhausted = false;
    bool any_fail = false;
    for (const auto& r : reports) {
        if (r.pass) continue;
        any_fail = true;
        if (r.counterexample.is_object() && r.counterexample.contains("error_type") &&
            r.counterexample["error_type"] == "PrecisionExhausted")
            precision_exhausted = true;
        std::cerr << "FAIL " << r.name << "\n";
    }
    if (precision_exhausted) return kExitBudgetOrPrecision;
    return any_fail ? kExitCheckFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Artin-Schreier / Witt-vector verification"};
    app.require_subcommand(1);

    // wittpoly-gen
    auto* gen = app.add_subcommand("wittpoly-gen", "generate and cache Witt structure polynomials");
    int gen_p = 2, gen_n = 1;
    std::string gen_kind = "all", gen_cache;
    bool gen_paranoid = false;
    gen->add_option("--p", gen_p, "prime")->required();
    gen->add_option("--n", gen_n, "Witt length")->required();
    gen->add_option("--kind", gen_kind, "sum|product|negation|all");
    gen->add_option("--cache-dir", gen_cache, "cache directory (or WITTLAB_CACHE_DIR)");
    gen->add_flag("--paranoid", gen_paranoid, "re-verify ghost identities on cache hits");

    // h1
    auto* h1 = app.add_subcommand("h1", "dimension of H^1(G, O_L) with optional basis/oracle");
    int h1_p = 2, h1_s = 1;
    std::string h1_f;
    bool h1_basis = false, h1_oracle = false;
    long long h1_prec = 0;
    h1->add_option("--p", h1_p, "prime")->required();
    h1->add_option("--s", h1_s, "ramification break")->required();
    h1->add_option("--f", h1_f, "Artin-Schreier f (\"t^-s\" or \"c:e,c:e,...\")");
    h1->add_flag("--basis", h1_basis, "print class representatives");
    h1->add_flag("--oracle", h1_oracle, "cross-check with the truncated linear-algebra oracle");
    h1->add_option("--precision", h1_prec, "oracle window size");

    // verify
    auto* verify = app.add_subcommand("verify", "run named checks and emit a report");
    std::string v_check = "all", v_f, v_format = "text-table", v_out, v_cache;
    wittlab::CheckParams params;
    verify->add_option("--check", v_check, "check name or 'all'")->required();
    verify->add_option("--p", params.p, "prime");
    verify->add_option("--s", params.s, "ramification break");
    verify->add_option("--f", v_f, "Artin-Schreier f override");
    verify->add_option("--n", params.n, "Witt length (0 = derived)");
    verify->add_option("--samples", params.samples, "samples per check");
    verify->add_option("--seed", params.seed, "master seed");
    verify->add_option("--precision", params.precision, "precision window (0 = default)");
    verify->add_option("--format", v_format, "text-table|json|csv");
    verify->add_option("--out", v_out, "report path (stdout when absent)");
    verify->add_option("--cache-dir", v_cache, "polynomial cache directory");
    verify->add_option("--m-max", params.m_max, "search bound for find_vanishing_m");
    verify->add_flag("--inject-ghost-failure", params.inject_failure,
                     "corrupt one structure polynomial (harness self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gen->parsed()) return cmd_wittpoly_gen(gen_p, gen_n, gen_kind, gen_cache, gen_paranoid);
        if (h1->parsed()) return cmd_h1(h1_p, h1_s, h1_f, h1_basis, h1_oracle, h1_prec);
        if (verify->parsed()) {
            if (!v_f.empty()) params.f_spec = v_f;
            params.cache_dir = v_cache;
            return cmd_verify(v_check, params, v_format, v_out);
        }
    } catch (const wittlab::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudgetOrPrecision;
    } catch (const wittlab::PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kExitBudgetOrPrecision;
    } catch (const wittlab::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wittlab::InvalidBreak& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wittlab::InvalidF& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wittlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitConfig;
}
