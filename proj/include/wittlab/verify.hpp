#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wittlab/extension.hpp"

namespace wittlab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// Run configuration shared by all checks. Validated against the same rules
/// as extension construction and the polynomial budget before any work.
struct CheckParams {
    int p = 2;
    int s = 1;
    std::optional<std::string> f_spec;  // shorthand "t^-s" or sparse "c:e,..."
    int n = 0;                          // 0 = derived default where applicable
    long long precision = 0;            // 0 = default_precision(p, s)
    int samples = 100;
    std::uint64_t seed = 1;
    std::string cache_dir;
    int m_max = 0;                      // find_vanishing_m search bound; 0 = auto
    bool inject_failure = false;        // deliberately corrupt one structure polynomial
};

/// One reproducible check result. A failing report always carries a
/// replayable counterexample; runtime_ms is the only field that varies
/// between identical runs.
struct CheckReport {
    std::string name;
    nlohmann::ordered_json params;
    bool pass = false;
    bool sampled = false;  // verdict is per-instance evidence, not a proof
    nlohmann::ordered_json details;
    nlohmann::ordered_json counterexample;  // null unless failing
    long long runtime_ms = 0;

    nlohmann::ordered_json to_json() const;
};

/// Registered check names, in report order.
std::vector<std::string> check_names();
bool is_check_name(const std::string& name);

/// Run one named check; unknown names raise ConfigError. Library errors
/// inside a check become failing reports carrying the error.
CheckReport run_check(const std::string& name, const CheckParams& params);

/// Every check applicable to the configured prime, in canonical order.
std::vector<CheckReport> run_all(const CheckParams& params);

enum class ReportFormat { text_table, json, csv };
ReportFormat report_format_from_name(const std::string& name);

std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format);
/// Write to path, or to stdout when path is empty.
void write_report(const std::vector<CheckReport>& reports, ReportFormat format,
                  const std::string& path);

/// Recover (name, verdict) pairs from a JSON report (round-trip support).
std::vector<std::pair<std::string, bool>> parse_report_verdicts(const std::string& json_text);

}  // namespace wittlab
