#include "catome/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "catome/errors.hpp"

namespace catome {

namespace {

// Shortest representation that round-trips a double exactly.
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[40];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v)
                return shorter;
        }
    }
    return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

}  // namespace

std::string to_csv(const std::vector<ReportRow>& rows) {
    if (rows.empty())
        throw DomainError("to_csv: no rows");
    std::ostringstream out;
    out << kReportCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.mode << ',' << (r.param ? format_double(*r.param) : "") << ',' << r.schedule << ','
            << format_double(r.median_time_s) << ',' << format_double(r.time_spread_s) << ','
            << format_double(r.speedup) << ',' << format_double(r.psnr_db) << ','
            << format_double(r.merge_fraction) << '\n';
    }
    return out.str();
}

std::vector<ReportRow> parse_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != kReportCsvHeader)
        throw IoError("parse_csv: missing or unexpected header");
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto fields = split_fields(line);
        if (fields.size() != 8)
            throw IoError("parse_csv: expected 8 fields, got " + std::to_string(fields.size()));
        ReportRow r;
        r.mode = fields[0];
        if (!fields[1].empty())
            r.param = std::stod(fields[1]);
        r.schedule = fields[2];
        r.median_time_s = std::stod(fields[3]);
        r.time_spread_s = std::stod(fields[4]);
        r.speedup = std::stod(fields[5]);
        r.psnr_db = std::stod(fields[6]);
        r.merge_fraction = std::stod(fields[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_report_csv(const std::vector<ReportRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << to_csv(rows);
    if (!out.flush())
        throw IoError("write failed: " + path);
}

std::vector<ReportRow> read_report_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

nlohmann::json report_json(const std::vector<ReportRow>& rows, const nlohmann::json& effective_config,
                           const EnvFingerprint& env) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row{
            {"mode", r.mode},
            {"schedule", r.schedule},
            {"median_time_s", r.median_time_s},
            {"time_spread_s", r.time_spread_s},
            {"speedup", r.speedup},
            {"psnr_db", r.psnr_db},
            {"merge_fraction", r.merge_fraction},
        };
        if (r.param)
            row["param"] = *r.param;
        j["rows"].push_back(std::move(row));
    }
    j["config"] = effective_config;
    j["environment"] = {
        {"host", env.host},
        {"cores", env.cores},
        {"build", env.build},
        {"compiler", env.compiler},
    };
    return j;
}

void write_report_json(const nlohmann::json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << report.dump(2) << '\n';
    if (!out.flush())
        throw IoError("write failed: " + path);
}

}  // namespace catome
