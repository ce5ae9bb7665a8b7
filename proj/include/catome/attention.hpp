#pragma once

#include <cstdint>
#include <optional>

#include "catome/merge.hpp"
#include "catome/partition.hpp"

namespace catome {

// Where the matcher reads its features from. Hidden states (the tokens
// entering the block) are the documented default; attention keys are the
// alternative some token-merging implementations use.
enum class MatchFeatures { HiddenState, Keys };

// Weights for one pre-norm transformer block: self-attention plus a 4x
// feed-forward, both behind layer norm and residuals. All entries are a
// deterministic function of the seed.
struct BlockWeights {
    int channels = 0;
    int heads = 1;  // must divide channels
    TokenMatrix wq, wk, wv, wo;  // C x C
    TokenMatrix w1, w2;          // C x 4C, 4C x C
    VectorX ln1_gamma, ln1_beta, ln2_gamma, ln2_beta;
};

// Uniform values in [-1/sqrt(C), 1/sqrt(C)) from SplitMix64; norm params
// start at identity (gamma 1, beta 0).
BlockWeights make_block_weights(int channels, uint64_t seed, int heads = 1);

struct BlockConfig {
    bool merge_enabled = false;
    MatchConfig match;
    PartitionConfig partition;
    bool proportional_attention = false;
    MatchFeatures match_features = MatchFeatures::HiddenState;
};

struct BlockStats {
    int tokens_before = 0;
    int tokens_after = 0;   // tokens the attention actually processed
    int pairs_merged = 0;
    int src_count = 0;      // size of the source set (0 when not merging)
    bool plan_recomputed = false;
    double seconds = 0.0;
};

// softmax(Q K^T / sqrt(C/heads)) V with output projection. When
// `proportional` is set, log(size_j) is added to key j's logit so a merged
// token attends like the duplicates it stands for. Throws NumericError when
// an intermediate overflows to non-finite.
TokenMatrix attention_forward(const TokenMatrix& tokens, const BlockWeights& weights,
                              const std::vector<int>* sizes = nullptr, bool proportional = false);

// Layer norm of each token row: (x - mean) / sqrt(var + 1e-5) * gamma + beta.
TokenMatrix layer_norm(const TokenMatrix& tokens, const VectorX& gamma, const VectorX& beta);

// Full block on a plain token matrix (internal residuals included).
TokenMatrix block_body(const TokenMatrix& tokens, const BlockWeights& weights,
                       const std::vector<int>* sizes = nullptr, bool proportional = false);

// The features the matcher sees for this block under cfg.match_features.
TokenMatrix matching_features(const TokenMatrix& tokens, const BlockWeights& weights, MatchFeatures source);

struct BlockResult {
    TokenGrid grid;
    MergePlan plan_used;  // empty plan when merging was off
    BlockStats stats;
};

// One block over a token grid. With merging enabled the block reduces the
// token set first, runs on the reduced set, and restores the full count by
// unmerging the delta; the residual is taken at full resolution so the
// external shape contract never changes. A plan with no pairs short-circuits
// to the plain path, which is what makes it bit-identical to merging
// disabled. Pass `plan` to reuse a cached plan; otherwise one is computed
// from cfg when merging is enabled.
BlockResult block_forward(const TokenGrid& grid, const BlockWeights& weights, const BlockConfig& cfg,
                          const MergePlan* plan = nullptr);

}  // namespace catome
