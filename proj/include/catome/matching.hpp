#pragma once

#include <utility>
#include <vector>

#include "catome/similarity.hpp"

namespace catome {

enum class MatchMode { FixedRate, Threshold };

// Either "merge the top r proportion of sources" (classic fixed-rate token
// merging) or "merge every source whose best similarity is strictly greater
// than t" (the adaptive mode).
struct MatchConfig {
    MatchMode mode = MatchMode::Threshold;
    double rate = 0.5;       // r in [0, 1], FixedRate only
    double threshold = 0.7;  // t in [-1, 1], Threshold only

    static MatchConfig fixed_rate(double r) {
        if (r < 0.0 || r > 1.0)
            throw DomainError("MatchConfig: rate must be in [0, 1]");
        MatchConfig cfg;
        cfg.mode = MatchMode::FixedRate;
        cfg.rate = r;
        return cfg;
    }
    static MatchConfig adaptive_threshold(double t) {
        if (t < -1.0 || t > 1.0)
            throw DomainError("MatchConfig: threshold must be in [-1, 1]");
        MatchConfig cfg;
        cfg.mode = MatchMode::Threshold;
        cfg.threshold = t;
        return cfg;
    }
};

// The bipartite match result: which sources merge into which destinations,
// plus the bookkeeping needed to apply and later invert the merge. This is
// the unit the pair cache stores.
struct MergePlan {
    int num_tokens = 0;
    std::vector<std::pair<int, int>> pairs;  // (src_index, dst_index), ascending src_index
    std::vector<float> pair_similarity;      // parallel to pairs
    std::vector<int> dst_indices;            // all destinations, ascending
    std::vector<int> unmerged_src_indices;   // sources not merged, ascending

    bool empty() const { return pairs.empty(); }

    bool operator==(const MergePlan& other) const = default;
};

// Sources ranked by best similarity descending (rank ties -> lower source
// index); the first floor(r * |src|) merge. Pairs are stored ascending by
// source index regardless of rank order.
MergePlan plan_top_r(const SimilarityMatrix& sims, const Partition& part, double rate);

// Every source whose best-destination similarity is strictly greater than t
// merges; everything else stays. Equality does not merge.
MergePlan plan_threshold(const SimilarityMatrix& sims, const Partition& part, double threshold);

// Similarity matrix + mode dispatch in one call.
MergePlan build_plan(const TokenMatrix& features, const Partition& part, const MatchConfig& cfg);

// Smallest threshold (taken from the observed best-similarity values) such
// that at least `fraction` of the sources merge under plan_threshold. Used to
// calibrate the adaptive mode against a fixed-rate baseline.
double threshold_for_fraction(const TokenMatrix& features, const Partition& part, double fraction);

// Independent correctness oracle: rebuilds the plan with direct scalar loops
// (no code shared with the production path above) and the same tie-breaking
// and arithmetic contract. Plans must compare equal on any input.
MergePlan oracle_plan(const TokenMatrix& features, const Partition& part, const MatchConfig& cfg);

}  // namespace catome
