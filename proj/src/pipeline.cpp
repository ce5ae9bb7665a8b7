#include "catome/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "catome/rng.hpp"

namespace catome {

void PipelineConfig::validate() const {
    if (height < 1 || width < 1 || channels < 1)
        throw ConfigError("pipeline: grid dims must be positive");
    if (steps < 1)
        throw ConfigError("pipeline: steps must be positive");
    if (!(eta > 0.0))
        throw ConfigError("pipeline: eta must be positive");
    if (num_blocks < 1)
        throw ConfigError("pipeline: need at least one block");
    for (int pos : merge_block_positions)
        if (pos < 0 || pos >= num_blocks)
            throw ConfigError("pipeline: merge block position out of range");
    if (mode == PipelineMode::FixedRate && (rate < 0.0 || rate > 1.0))
        throw ConfigError("pipeline: rate must be in [0, 1]");
    if (mode == PipelineMode::CaTome && (threshold < -1.0 || threshold > 1.0))
        throw ConfigError("pipeline: threshold must be in [-1, 1]");
    if (heads < 1 || channels % heads != 0)
        throw ConfigError("pipeline: heads must divide channels");
}

std::vector<BlockConfig> PipelineConfig::block_configs() const {
    std::vector<BlockConfig> blocks(static_cast<size_t>(num_blocks));
    for (int pos : merge_block_positions) {
        BlockConfig& b = blocks[static_cast<size_t>(pos)];
        // Baseline mode forces every merge flag off.
        b.merge_enabled = mode != PipelineMode::Baseline;
        b.match = mode == PipelineMode::FixedRate ? MatchConfig::fixed_rate(rate)
                                                  : MatchConfig::adaptive_threshold(threshold);
        b.partition = partition;
        b.proportional_attention = proportional_attention;
        b.match_features = match_features;
    }
    return blocks;
}

CheckpointSchedule PipelineConfig::schedule() const {
    if (schedule_steps)
        return explicit_schedule(*schedule_steps, steps);
    return named_schedule(schedule_name, steps);
}

std::vector<int> RunOutput::recompute_counts() const {
    std::vector<int> counts;
    if (stats.empty())
        return counts;
    counts.assign(stats.front().size(), 0);
    for (const auto& step : stats)
        for (size_t b = 0; b < step.size(); ++b)
            counts[b] += step[b].plan_recomputed ? 1 : 0;
    return counts;
}

double RunOutput::merge_fraction() const {
    long pairs = 0, sources = 0;
    for (const auto& step : stats)
        for (const auto& s : step) {
            if (s.merged_path) {
                pairs += s.pairs_merged;
                sources += s.src_count;
            }
        }
    return sources > 0 ? static_cast<double>(pairs) / static_cast<double>(sources) : 0.0;
}

RunOutput run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();

    TokenGrid grid = make_synthetic_grid(cfg.height, cfg.width, cfg.channels, cfg.profile);
    const std::vector<BlockConfig> blocks = cfg.block_configs();
    std::vector<BlockWeights> weights;
    weights.reserve(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b)
        weights.push_back(make_block_weights(cfg.channels, derive_seed(cfg.weight_seed, b), cfg.heads));

    const bool merging = cfg.mode != PipelineMode::Baseline;
    CheckpointSchedule schedule;
    if (cfg.mode == PipelineMode::CaTome)
        schedule = cfg.schedule();
    // The partition depends only on the (fixed) grid dims, so compute it once.
    Partition part;
    if (merging)
        part = partition_strides(cfg.height, cfg.width, cfg.partition);

    RunOutput out;
    out.stats.assign(static_cast<size_t>(cfg.steps), std::vector<StepBlockStats>(blocks.size()));
    out.pair_sets.assign(blocks.size(), {});
    for (size_t b = 0; b < blocks.size(); ++b)
        if (blocks[b].merge_enabled)
            out.pair_sets[b].reserve(static_cast<size_t>(cfg.steps));

    PairCache cache;
    const auto run_start = std::chrono::steady_clock::now();
    for (int step = 0; step < cfg.steps; ++step) {
        TokenGrid x = grid;
        for (size_t b = 0; b < blocks.size(); ++b) {
            const BlockConfig& bc = blocks[b];
            StepBlockStats stats;
            BlockResult result;
            try {
                if (bc.merge_enabled) {
                    MergePlan plan;
                    bool recomputed = true;
                    auto recompute = [&] {
                        return build_plan(matching_features(x.data, weights[b], bc.match_features), part,
                                          bc.match);
                    };
                    if (cfg.mode == PipelineMode::CaTome && !cfg.disable_cache) {
                        std::tie(plan, recomputed) = cache.plan_for_step(
                            static_cast<int>(b), step, schedule, x.num_tokens(), recompute);
                    } else {
                        // FixedRate (the no-cache baseline method) and the
                        // cache-bypass verification path recompute every step.
                        plan = recompute();
                    }
                    result = block_forward(x, weights[b], bc, &plan);
                    stats.plan_recomputed = recomputed;
                    stats.merged_path = true;
                    out.pair_sets[b].push_back(pair_set_of(plan));
                } else {
                    result = block_forward(x, weights[b], bc);
                }
            } catch (const NumericError& e) {
                throw NumericError("step " + std::to_string(step) + ", block " + std::to_string(b) + ": " +
                                   e.what());
            }
            stats.tokens_before = result.stats.tokens_before;
            stats.tokens_after = result.stats.tokens_after;
            stats.pairs_merged = result.stats.pairs_merged;
            stats.src_count = result.stats.src_count;
            stats.seconds = result.stats.seconds;
            out.stats[static_cast<size_t>(step)][b] = stats;
            x = std::move(result.grid);
        }
        // Smooth surrogate update toward the stack output; small eta keeps
        // adjacent steps close, which is the regime plan caching relies on.
        grid.data += static_cast<Scalar>(cfg.eta) * (x.data - grid.data);
        if (!grid.data.allFinite())
            throw NumericError("pipeline diverged at step " + std::to_string(step));
    }
    out.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - run_start).count();
    out.final = std::move(grid);
    return out;
}

FidelityRecord compare_runs(const RunOutput& reference, const RunOutput& candidate) {
    if (reference.final.height != candidate.final.height || reference.final.width != candidate.final.width ||
        reference.final.channels != candidate.final.channels)
        throw ShapeError("compare_runs: grid shape mismatch");
    if (reference.stats.size() != candidate.stats.size())
        throw ShapeError("compare_runs: step count mismatch");

    FidelityRecord record;
    record.psnr_db = psnr(reference.final.data, candidate.final.data);
    double cos_sum = 0.0;
    for (Eigen::Index i = 0; i < reference.final.data.rows(); ++i)
        cos_sum += cosine_similarity(reference.final.data.row(i), candidate.final.data.row(i));
    record.mean_token_cosine = cos_sum / static_cast<double>(reference.final.data.rows());
    record.speedup = reference.total_seconds / candidate.total_seconds;
    record.candidate_merge_fraction = candidate.merge_fraction();
    return record;
}

}  // namespace catome
