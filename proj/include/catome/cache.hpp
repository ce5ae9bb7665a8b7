#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catome/matching.hpp"

namespace catome {

// The inference steps at which merge plans are recomputed; between entries
// the cached plan is reused as-is.
struct CheckpointSchedule {
    std::string name;
    std::vector<int> steps;  // strictly increasing, contains 0, all < total_steps
    int total_steps = 0;

    bool contains(int step) const;
    void validate() const;
};

// Known schedule names: CONFIG_1..CONFIG_4, CONF_ADAPTIVE, CONFIG_FIVE (the
// published lists), plus EVERY_STEP and ONLY_FIRST. Matching is
// case-insensitive and treats the CONF_/CONFIG_ prefixes as equivalent.
// Entries at or beyond total_steps are dropped with a warning on stderr --
// the published lists extend past a 50-step run and must remain loadable.
CheckpointSchedule named_schedule(const std::string& name, int total_steps);

// Explicit step list variant (config files may give the list directly).
CheckpointSchedule explicit_schedule(std::vector<int> steps, int total_steps);

// Per-block storage of the most recent plan. One instance belongs to one
// pipeline run and is mutated sequentially by the step loop.
class PairCache {
public:
    // If `step` is a checkpoint, invoke recompute, store and return the fresh
    // plan (flag true); otherwise return the stored plan (flag false). The
    // stored plan is validated against num_tokens before reuse.
    std::pair<MergePlan, bool> plan_for_step(int block_id, int step, const CheckpointSchedule& schedule,
                                             int num_tokens, const std::function<MergePlan()>& recompute);

private:
    struct Entry {
        MergePlan plan;
        int computed_at_step = -1;
    };
    std::unordered_map<int, Entry> entries_;
};

}  // namespace catome
