#include "catome/cache.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <numeric>

namespace catome {

bool CheckpointSchedule::contains(int step) const {
    return std::binary_search(steps.begin(), steps.end(), step);
}

void CheckpointSchedule::validate() const {
    if (total_steps < 1)
        throw ConfigError("schedule '" + name + "': total_steps must be positive");
    if (steps.empty() || steps.front() != 0)
        throw ConfigError("schedule '" + name + "': must contain step 0");
    for (size_t i = 0; i < steps.size(); ++i) {
        if (steps[i] < 0 || steps[i] >= total_steps)
            throw ConfigError("schedule '" + name + "': entry out of [0, T)");
        if (i > 0 && steps[i] <= steps[i - 1])
            throw ConfigError("schedule '" + name + "': entries must be strictly increasing");
    }
}

namespace {

// Uppercase and fold the CONF_/CONFIG_ prefixes together; the published
// tables themselves mix the two spellings.
std::string canonical_name(const std::string& name) {
    std::string up;
    up.reserve(name.size());
    for (char ch : name)
        up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (up.rfind("CONFIG_", 0) == 0)
        up = "CONF_" + up.substr(7);
    return up;
}

std::vector<int> filter_to_range(std::vector<int> steps, int total_steps, const std::string& name) {
    std::vector<int> kept;
    kept.reserve(steps.size());
    for (int s : steps) {
        if (s < total_steps) {
            kept.push_back(s);
        } else {
            std::cerr << "[catome] schedule " << name << ": dropping checkpoint " << s
                      << " (run has " << total_steps << " steps)\n";
        }
    }
    return kept;
}

}  // namespace

CheckpointSchedule named_schedule(const std::string& name, int total_steps) {
    if (total_steps < 1)
        throw ConfigError("named_schedule: total_steps must be positive");

    const std::string key = canonical_name(name);
    std::vector<int> steps;
    if (key == "CONF_1") {
        steps = {0, 1, 2, 3, 5, 10, 15, 25, 35};
    } else if (key == "CONF_2") {
        steps = {0, 10, 11, 12, 15, 20, 25, 30, 35, 45};
    } else if (key == "CONF_3") {
        steps = {0, 8, 11, 13, 20, 25, 30, 35, 45, 46, 47, 48, 49};
    } else if (key == "CONF_4") {
        steps = {0, 9, 13, 14, 15, 28, 29, 32, 36, 45};
    } else if (key == "CONF_ADAPTIVE") {
        // Published as [0,1,5,7,10,12,15,35,40,45,46-51]; the trailing hyphen
        // entry is read as an inclusive range.
        steps = {0, 1, 5, 7, 10, 12, 15, 35, 40, 45};
        for (int s = 46; s <= 51; ++s)
            steps.push_back(s);
    } else if (key == "CONF_FIVE" || key == "CONF_5") {
        steps = {0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    } else if (key == "EVERY_STEP") {
        steps.resize(static_cast<size_t>(total_steps));
        std::iota(steps.begin(), steps.end(), 0);
    } else if (key == "ONLY_FIRST") {
        steps = {0};
    } else {
        throw ConfigError("named_schedule: unknown schedule name '" + name + "'");
    }

    CheckpointSchedule schedule;
    schedule.name = name;
    schedule.total_steps = total_steps;
    schedule.steps = filter_to_range(std::move(steps), total_steps, name);
    schedule.validate();
    return schedule;
}

CheckpointSchedule explicit_schedule(std::vector<int> steps, int total_steps) {
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    CheckpointSchedule schedule;
    schedule.name = "custom";
    schedule.total_steps = total_steps;
    schedule.steps = filter_to_range(std::move(steps), total_steps, schedule.name);
    schedule.validate();
    return schedule;
}

std::pair<MergePlan, bool> PairCache::plan_for_step(int block_id, int step, const CheckpointSchedule& schedule,
                                                    int num_tokens,
                                                    const std::function<MergePlan()>& recompute) {
    if (step < 0 || step >= schedule.total_steps)
        throw DomainError("plan_for_step: step outside [0, T)");

    if (schedule.contains(step)) {
        Entry entry{recompute(), step};
        if (entry.plan.num_tokens != num_tokens)
            throw PlanMismatchError("plan_for_step: recomputed plan token count mismatch");
        auto [it, _] = entries_.insert_or_assign(block_id, std::move(entry));
        return {it->second.plan, true};
    }

    const auto it = entries_.find(block_id);
    if (it == entries_.end())
        throw InvariantViolation("plan_for_step: cache miss on non-checkpoint step " + std::to_string(step) +
                                 " (schedules always contain step 0)");
    if (it->second.plan.num_tokens != num_tokens)
        throw PlanMismatchError("plan_for_step: cached plan token count mismatch");
    return {it->second.plan, false};
}

}  // namespace catome
