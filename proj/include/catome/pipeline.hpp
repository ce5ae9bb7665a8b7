#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catome/analysis.hpp"
#include "catome/attention.hpp"
#include "catome/cache.hpp"
#include "catome/synthetic.hpp"

namespace catome {

enum class PipelineMode { Baseline, FixedRate, CaTome };

// A T-step surrogate denoising loop: x <- x + eta * (block_stack(x) - x).
// Merge-enabled block positions model the topmost encoder/decoder layers,
// the only places the token count is large enough for merging to pay off.
struct PipelineConfig {
    int height = 64;
    int width = 64;
    int channels = 16;
    int steps = 50;
    RedundancyProfile profile{1, 4, 1.0f};
    uint64_t weight_seed = 42;
    double eta = 0.02;

    PipelineMode mode = PipelineMode::Baseline;
    double rate = 0.5;                       // FixedRate
    double threshold = 0.7;                  // CaTome
    std::string schedule_name = "CONFIG_3";  // CaTome; ignored if explicit steps given
    std::optional<std::vector<int>> schedule_steps;

    int num_blocks = 4;
    std::vector<int> merge_block_positions = {0, 3};
    PartitionConfig partition;
    bool proportional_attention = false;
    MatchFeatures match_features = MatchFeatures::HiddenState;
    int heads = 1;

    // Debug/verification switch: in CaTome mode, recompute the plan every
    // step instead of consulting the cache. With an EVERY_STEP schedule the
    // cached run must be bit-identical to this.
    bool disable_cache = false;

    void validate() const;
    std::vector<BlockConfig> block_configs() const;
    CheckpointSchedule schedule() const;
};

struct StepBlockStats {
    int tokens_before = 0;
    int tokens_after = 0;
    int pairs_merged = 0;
    int src_count = 0;
    bool merged_path = false;
    bool plan_recomputed = false;  // a similarity matrix was built this step
    double seconds = 0.0;
};

struct RunOutput {
    TokenGrid final;
    // [step][block]
    std::vector<std::vector<StepBlockStats>> stats;
    // [block][step]; empty per-block vector when the block never merges
    std::vector<std::vector<PairSet>> pair_sets;
    double total_seconds = 0.0;  // step loop only, monotonic clock

    // Similarity-matrix constructions per block over the whole run.
    std::vector<int> recompute_counts() const;
    // pairs merged / source count, averaged over merge-enabled block-steps.
    double merge_fraction() const;
};

RunOutput run_pipeline(const PipelineConfig& cfg);

struct FidelityRecord {
    double psnr_db = 0.0;
    double mean_token_cosine = 0.0;
    double speedup = 0.0;  // reference time / candidate time
    double candidate_merge_fraction = 0.0;
};

FidelityRecord compare_runs(const RunOutput& reference, const RunOutput& candidate);

}  // namespace catome
