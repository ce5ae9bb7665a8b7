#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catome/bench.hpp"

namespace catome {

// One benchmark configuration, one row. Mirrors the comparison-table layout:
// method, its parameter, cache setting, time, and the fidelity analogue.
struct ReportRow {
    std::string mode;             // "baseline" | "fixed_rate" | "catome"
    std::optional<double> param;  // threshold or rate; empty for baseline
    std::string schedule;         // empty when not applicable
    double median_time_s = 0.0;
    double time_spread_s = 0.0;   // interquartile range across repetitions
    double speedup = 0.0;         // baseline median / this median; baseline row is exactly 1.0
    double psnr_db = 0.0;         // vs the baseline final grid
    double merge_fraction = 0.0;

    bool operator==(const ReportRow&) const = default;
};

inline constexpr const char* kReportCsvHeader =
    "mode,param,schedule,median_time_s,time_spread_s,speedup,psnr_db,merge_fraction";

std::string to_csv(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_csv(const std::string& csv);

void write_report_csv(const std::vector<ReportRow>& rows, const std::string& path);
std::vector<ReportRow> read_report_csv(const std::string& path);

// JSON report: the same rows plus the exact effective config and the host
// fingerprint, so any number in the file can be traced to what produced it.
nlohmann::json report_json(const std::vector<ReportRow>& rows, const nlohmann::json& effective_config,
                           const EnvFingerprint& env);
void write_report_json(const nlohmann::json& report, const std::string& path);

}  // namespace catome
