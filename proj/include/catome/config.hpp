#pragma once

#include <string>

#include <json.hpp>

#include "catome/pipeline.hpp"

namespace catome {

// The JSON run-configuration file. Every field has a default; unknown keys
// are rejected so a typo cannot silently fall back to a default.
struct RunConfig {
    PipelineConfig pipeline;
    int repetitions = 5;
    std::string output_csv = "report.csv";
    std::string output_json = "report.json";

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);

    // Fully materialized config (defaults filled in) for report embedding.
    nlohmann::json to_json() const;
};

}  // namespace catome
