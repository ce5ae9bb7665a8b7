// Brute-force reference for the matching module. Everything here is written
// against the documented contracts only -- scalar loops, no calls into the
// production similarity/matching code -- so a bug there cannot hide here.
// It follows the same arithmetic contract (channel-ordered float sums over
// norm-divided rows) and tie-breaking rules, which makes plan equality exact
// rather than approximate.

#include <cmath>
#include <vector>

#include "catome/matching.hpp"

namespace catome {

namespace {

std::vector<float> normalized_row(const TokenMatrix& features, int index) {
    const int c = static_cast<int>(features.cols());
    std::vector<float> out(static_cast<size_t>(c));
    float sq = 0.0f;
    for (int k = 0; k < c; ++k) {
        const float v = features(index, k);
        sq += v * v;
    }
    const float norm = std::sqrt(sq);
    for (int k = 0; k < c; ++k)
        out[static_cast<size_t>(k)] = norm < 1e-12f ? 0.0f : features(index, k) / norm;
    return out;
}

}  // namespace

MergePlan oracle_plan(const TokenMatrix& features, const Partition& part, const MatchConfig& cfg) {
    if (features.rows() != static_cast<Eigen::Index>(part.num_tokens()))
        throw ShapeError("oracle_plan: feature row count != partition token count");
    if (part.dst_indices.empty() || part.src_indices.empty())
        throw DomainError("oracle_plan: empty partition side");

    const size_t n_src = part.src_indices.size();
    const size_t n_dst = part.dst_indices.size();
    const int c = static_cast<int>(features.cols());

    std::vector<std::vector<float>> dst_norm(n_dst);
    for (size_t j = 0; j < n_dst; ++j)
        dst_norm[j] = normalized_row(features, part.dst_indices[j]);

    // Per source: best destination by strict argmax, lowest column on ties.
    std::vector<int> best_dst(n_src);
    std::vector<float> best_sim(n_src);
    for (size_t i = 0; i < n_src; ++i) {
        const std::vector<float> src = normalized_row(features, part.src_indices[i]);
        int arg = 0;
        float val = 0.0f;
        for (size_t j = 0; j < n_dst; ++j) {
            float acc = 0.0f;
            for (int k = 0; k < c; ++k)
                acc += src[static_cast<size_t>(k)] * dst_norm[j][static_cast<size_t>(k)];
            if (j == 0 || acc > val) {
                val = acc;
                arg = static_cast<int>(j);
            }
        }
        best_dst[i] = arg;
        best_sim[i] = val;
    }

    // Select sources to merge.
    std::vector<char> take(n_src, 0);
    if (cfg.mode == MatchMode::FixedRate) {
        if (cfg.rate < 0.0 || cfg.rate > 1.0)
            throw DomainError("oracle_plan: rate must be in [0, 1]");
        const size_t count = static_cast<size_t>(std::floor(cfg.rate * static_cast<double>(n_src)));
        // Repeated max extraction; ranking ties go to the lower source index.
        std::vector<char> used(n_src, 0);
        for (size_t pick = 0; pick < count; ++pick) {
            int arg = -1;
            for (size_t i = 0; i < n_src; ++i) {
                if (used[i])
                    continue;
                if (arg < 0 || best_sim[i] > best_sim[static_cast<size_t>(arg)])
                    arg = static_cast<int>(i);
            }
            used[static_cast<size_t>(arg)] = 1;
            take[static_cast<size_t>(arg)] = 1;
        }
    } else {
        if (cfg.threshold < -1.0 || cfg.threshold > 1.0)
            throw DomainError("oracle_plan: threshold must be in [-1, 1]");
        const float t = static_cast<float>(cfg.threshold);
        for (size_t i = 0; i < n_src; ++i)
            take[i] = best_sim[i] > t ? 1 : 0;
    }

    MergePlan plan;
    plan.num_tokens = part.num_tokens();
    plan.dst_indices = part.dst_indices;
    for (size_t i = 0; i < n_src; ++i) {
        if (take[i]) {
            plan.pairs.emplace_back(part.src_indices[i], part.dst_indices[static_cast<size_t>(best_dst[i])]);
            plan.pair_similarity.push_back(best_sim[i]);
        } else {
            plan.unmerged_src_indices.push_back(part.src_indices[i]);
        }
    }
    return plan;
}

}  // namespace catome
