#include <doctest.h>

#include <regex>

#include "wittlab/verify.hpp"

using namespace wittlab;

namespace {
std::string strip_runtime(std::string text) {
    static const std::regex rx("\"runtime_ms\": [0-9]+");
    return std::regex_replace(text, rx, "\"runtime_ms\": 0");
}
}  // namespace

TEST_CASE("named checks pass on a sound configuration") {
    CheckParams params;
    params.p = 2;
    params.s = 3;
    params.samples = 40;
    params.seed = 7;
    for (const char* name :
         {"lemma_sums", "prop_integral_ring", "trace_consistency", "prop_h1", "cor_bound",
          "g_integrality", "h1_dimension", "step_bounds_sampled", "main_theorem",
          "find_vanishing_m"}) {
        CheckReport r = run_check(name, params);
        INFO(name);
        CHECK(r.pass);
        CHECK(r.counterexample.is_null());
    }
    CHECK_THROWS_AS(run_check("no_such_check", params), ConfigError);
}

TEST_CASE("sampled checks are labeled") {
    CheckParams params;
    params.p = 3;
    params.s = 2;
    params.samples = 25;
    CHECK(run_check("main_theorem", params).sampled);
    CheckReport f = run_check("find_vanishing_m", params);
    CHECK(f.sampled);
    CHECK(f.details.at("label") == "SAMPLED");
    CHECK(f.details.at("theoretical_M") == 2);
    CHECK(f.details.at("empirical_m") == 2);

    // a search bound below the theoretical level is a configuration error
    CheckParams tight = params;
    tight.m_max = 1;
    CheckReport r = run_check("find_vanishing_m", tight);
    CHECK(!r.pass);
    CHECK(r.counterexample.at("error_type") == "ConfigError");
}

TEST_CASE("find_vanishing_m at a deeper target level") {
    // Classes at Witt level 2 are decided by the constructive level-by-level
    // solver; the search starts at m = n and must come in under the adjusted
    // theoretical bound.
    CheckParams params;
    params.p = 2;
    params.s = 3;
    params.n = 2;
    params.samples = 30;
    params.seed = 5;
    CheckReport r = run_check("find_vanishing_m", params);
    CHECK(r.pass);
    CHECK(r.details.at("target_n") == 2);
    CHECK(r.details.at("theoretical_M") == 4);
    CHECK(r.details.at("empirical_m").get<int>() <= 4);
    CHECK(r.details.at("per_m")[0].at("m") == 2);
}

TEST_CASE("injected corruption is detected by ghost_identities") {
    CheckParams params;
    params.p = 2;
    params.s = 1;
    params.n = 3;
    params.inject_failure = true;
    CheckReport r = run_check("ghost_identities", params);
    CHECK(!r.pass);
    CHECK(r.details.at("injection_detected") == true);

    params.inject_failure = false;
    CHECK(run_check("ghost_identities", params).pass);
}

TEST_CASE("cor_bound reports the explicit witness") {
    CheckParams params;
    params.p = 2;
    params.s = 1;
    params.samples = 20;
    CheckReport r = run_check("cor_bound", params);
    CHECK(r.pass);
    CHECK(r.details.at("witness_class_nonzero") == true);
    CHECK(r.details.at("witness_vL") == 0);  // 0 <= s - 1
}

TEST_CASE("reports are deterministic modulo timing") {
    CheckParams params;
    params.p = 2;
    params.s = 3;
    params.samples = 30;
    params.seed = 99;
    auto a = run_all(params);
    auto b = run_all(params);
    CHECK(strip_runtime(emit_report(a, ReportFormat::json)) ==
          strip_runtime(emit_report(b, ReportFormat::json)));
    CHECK(emit_report(a, ReportFormat::csv).substr(0, 48) ==
          "check,p,s,n,N,samples,seed,verdict,runtime_ms\nle");
}

TEST_CASE("report formats") {
    // empty report list still yields a valid document
    std::vector<CheckReport> empty;
    CHECK(emit_report(empty, ReportFormat::csv) ==
          "check,p,s,n,N,samples,seed,verdict,runtime_ms\n");
    auto verdicts = parse_report_verdicts(emit_report(empty, ReportFormat::json));
    CHECK(verdicts.empty());
    CHECK(emit_report(empty, ReportFormat::text_table).find("check") == 0);

    CheckParams params;
    params.p = 2;
    params.s = 1;
    params.samples = 10;
    std::vector<CheckReport> reports{run_check("lemma_sums", params),
                                     run_check("cor_bound", params)};
    auto parsed = parse_report_verdicts(emit_report(reports, ReportFormat::json));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].first == "lemma_sums");
    CHECK(parsed[0].second);
    CHECK(parsed[1].first == "cor_bound");
    CHECK(parsed[1].second);

    // a failing check carries its counterexample inline
    CheckParams bad = params;
    bad.inject_failure = true;
    bad.n = 2;
    CheckReport failing = run_check("ghost_identities", bad);
    CHECK(!failing.pass);
    CHECK(!failing.counterexample.is_null());
    std::string json = emit_report({failing}, ReportFormat::json);
    CHECK(json.find("counterexample") != std::string::npos);
    CHECK(json.find("\"verdict\": \"fail\"") != std::string::npos);
}

TEST_CASE("run_all covers every check applicable to the prime") {
    CheckParams params;
    params.p = 2;
    params.s = 3;
    params.samples = 10;
    auto reports = run_all(params);
    CHECK(reports.size() == check_names().size());

    params.p = 11;
    params.s = 4;
    auto big = run_all(params);
    CHECK(big.size() < reports.size());  // budget-limited checks skipped
    for (const auto& r : big) CHECK(r.pass);
}
