#include "catome/config.hpp"

#include <fstream>
#include <set>

namespace catome {

namespace {

const std::set<std::string> kKnownKeys = {
    "height", "width", "channels", "steps", "seed", "smoothing_radius", "amplitude",
    "weight_seed", "eta", "mode", "rate", "threshold", "schedule", "num_blocks",
    "merge_blocks", "stride_x", "stride_y", "dst_rule", "dst_rule_seed",
    "proportional_attention", "match_features", "heads", "disable_cache",
    "repetitions", "output_csv", "output_json",
};

template <typename T>
T get_or(const nlohmann::json& j, const std::string& key, T fallback) {
    if (!j.contains(key))
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

PipelineMode parse_mode(const std::string& s) {
    if (s == "baseline")
        return PipelineMode::Baseline;
    if (s == "fixed_rate")
        return PipelineMode::FixedRate;
    if (s == "catome")
        return PipelineMode::CaTome;
    throw ConfigError("config: mode must be one of baseline|fixed_rate|catome, got '" + s + "'");
}

std::string mode_name(PipelineMode m) {
    switch (m) {
        case PipelineMode::Baseline: return "baseline";
        case PipelineMode::FixedRate: return "fixed_rate";
        case PipelineMode::CaTome: return "catome";
    }
    return "baseline";
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ConfigError("config: top level must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kKnownKeys.count(key))
            throw ConfigError("config: unknown key '" + key + "'");

    RunConfig rc;
    PipelineConfig& p = rc.pipeline;
    p.height = get_or(j, "height", p.height);
    p.width = get_or(j, "width", p.width);
    p.channels = get_or(j, "channels", p.channels);
    p.steps = get_or(j, "steps", p.steps);
    p.profile.seed = get_or(j, "seed", p.profile.seed);
    p.profile.smoothing_radius = get_or(j, "smoothing_radius", p.profile.smoothing_radius);
    p.profile.amplitude = get_or(j, "amplitude", p.profile.amplitude);
    p.weight_seed = get_or(j, "weight_seed", p.weight_seed);
    p.eta = get_or(j, "eta", p.eta);
    p.mode = parse_mode(get_or<std::string>(j, "mode", mode_name(p.mode)));
    p.rate = get_or(j, "rate", p.rate);
    p.threshold = get_or(j, "threshold", p.threshold);
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        if (s.is_string()) {
            p.schedule_name = s.get<std::string>();
        } else if (s.is_array()) {
            p.schedule_steps = s.get<std::vector<int>>();
        } else {
            throw ConfigError("config: schedule must be a name or an integer list");
        }
    }
    p.num_blocks = get_or(j, "num_blocks", p.num_blocks);
    p.merge_block_positions = get_or(j, "merge_blocks", p.merge_block_positions);
    p.partition.stride_x = get_or(j, "stride_x", p.partition.stride_x);
    p.partition.stride_y = get_or(j, "stride_y", p.partition.stride_y);
    const std::string rule = get_or<std::string>(j, "dst_rule", "top_left");
    if (rule == "top_left") {
        p.partition.dst_rule = DstRule::TopLeft;
    } else if (rule == "random_in_stride") {
        p.partition.dst_rule = DstRule::RandomInStride;
    } else {
        throw ConfigError("config: dst_rule must be top_left|random_in_stride, got '" + rule + "'");
    }
    p.partition.rule_seed = get_or(j, "dst_rule_seed", p.partition.rule_seed);
    p.proportional_attention = get_or(j, "proportional_attention", p.proportional_attention);
    const std::string feats = get_or<std::string>(j, "match_features", "hidden");
    if (feats == "hidden") {
        p.match_features = MatchFeatures::HiddenState;
    } else if (feats == "keys") {
        p.match_features = MatchFeatures::Keys;
    } else {
        throw ConfigError("config: match_features must be hidden|keys, got '" + feats + "'");
    }
    p.heads = get_or(j, "heads", p.heads);
    p.disable_cache = get_or(j, "disable_cache", p.disable_cache);

    rc.repetitions = get_or(j, "repetitions", rc.repetitions);
    if (rc.repetitions < 1)
        throw ConfigError("config: repetitions must be >= 1");
    rc.output_csv = get_or(j, "output_csv", rc.output_csv);
    rc.output_json = get_or(j, "output_json", rc.output_json);

    try {
        p.validate();
        if (p.mode == PipelineMode::CaTome)
            p.schedule();  // surface bad schedule names/lists at load time
    } catch (const Error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return rc;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
    }
    return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
    const PipelineConfig& p = pipeline;
    nlohmann::json j{
        {"height", p.height},
        {"width", p.width},
        {"channels", p.channels},
        {"steps", p.steps},
        {"seed", p.profile.seed},
        {"smoothing_radius", p.profile.smoothing_radius},
        {"amplitude", p.profile.amplitude},
        {"weight_seed", p.weight_seed},
        {"eta", p.eta},
        {"mode", mode_name(p.mode)},
        {"rate", p.rate},
        {"threshold", p.threshold},
        {"num_blocks", p.num_blocks},
        {"merge_blocks", p.merge_block_positions},
        {"stride_x", p.partition.stride_x},
        {"stride_y", p.partition.stride_y},
        {"dst_rule", p.partition.dst_rule == DstRule::TopLeft ? "top_left" : "random_in_stride"},
        {"dst_rule_seed", p.partition.rule_seed},
        {"proportional_attention", p.proportional_attention},
        {"match_features", p.match_features == MatchFeatures::HiddenState ? "hidden" : "keys"},
        {"heads", p.heads},
        {"disable_cache", p.disable_cache},
        {"repetitions", repetitions},
        {"output_csv", output_csv},
        {"output_json", output_json},
    };
    if (p.schedule_steps)
        j["schedule"] = *p.schedule_steps;
    else
        j["schedule"] = p.schedule_name;
    return j;
}

}  // namespace catome
