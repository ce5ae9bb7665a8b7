#include "catome/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace catome {

namespace {

// Assemble a plan from the subset of sources selected for merging.
// `selected` holds positions into part.src_indices.
MergePlan assemble(const Partition& part, const std::vector<BestDestination>& best,
                   std::vector<int> selected) {
    std::sort(selected.begin(), selected.end());  // pairs are stored ascending by src index

    MergePlan plan;
    plan.num_tokens = part.num_tokens();
    plan.dst_indices = part.dst_indices;
    plan.pairs.reserve(selected.size());
    plan.pair_similarity.reserve(selected.size());

    std::vector<char> merged(part.src_indices.size(), 0);
    for (int pos : selected) {
        merged[static_cast<size_t>(pos)] = 1;
        const auto& b = best[static_cast<size_t>(pos)];
        plan.pairs.emplace_back(part.src_indices[static_cast<size_t>(pos)], part.dst_indices[static_cast<size_t>(b.dst_pos)]);
        plan.pair_similarity.push_back(b.similarity);
    }
    for (size_t i = 0; i < part.src_indices.size(); ++i)
        if (!merged[i])
            plan.unmerged_src_indices.push_back(part.src_indices[i]);
    return plan;
}

void check_shapes(const SimilarityMatrix& sims, const Partition& part) {
    if (sims.rows() != static_cast<Eigen::Index>(part.src_indices.size()) ||
        sims.cols() != static_cast<Eigen::Index>(part.dst_indices.size()))
        throw ShapeError("plan: similarity matrix shape does not match partition");
}

}  // namespace

MergePlan plan_top_r(const SimilarityMatrix& sims, const Partition& part, double rate) {
    if (rate < 0.0 || rate > 1.0)
        throw DomainError("plan_top_r: rate must be in [0, 1]");
    check_shapes(sims, part);

    const auto best = best_destination_assignment(sims);
    const size_t n_src = part.src_indices.size();
    const size_t count = static_cast<size_t>(std::floor(rate * static_cast<double>(n_src)));

    std::vector<int> order(n_src);
    std::iota(order.begin(), order.end(), 0);
    // Best similarity descending; rank ties go to the lower source index.
    // stable_sort + index tiebreak keeps the order fully deterministic.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const Scalar sa = best[static_cast<size_t>(a)].similarity;
        const Scalar sb = best[static_cast<size_t>(b)].similarity;
        if (sa != sb)
            return sa > sb;
        return a < b;
    });
    order.resize(count);
    return assemble(part, best, std::move(order));
}

MergePlan plan_threshold(const SimilarityMatrix& sims, const Partition& part, double threshold) {
    if (threshold < -1.0 || threshold > 1.0)
        throw DomainError("plan_threshold: threshold must be in [-1, 1]");
    check_shapes(sims, part);

    const auto best = best_destination_assignment(sims);
    const Scalar t = static_cast<Scalar>(threshold);
    std::vector<int> selected;
    for (size_t i = 0; i < best.size(); ++i)
        if (best[i].similarity > t)  // strictly greater; equality does not merge
            selected.push_back(static_cast<int>(i));
    return assemble(part, best, std::move(selected));
}

MergePlan build_plan(const TokenMatrix& features, const Partition& part, const MatchConfig& cfg) {
    const SimilarityMatrix sims = build_similarity_matrix(features, part);
    return cfg.mode == MatchMode::FixedRate ? plan_top_r(sims, part, cfg.rate)
                                            : plan_threshold(sims, part, cfg.threshold);
}

double threshold_for_fraction(const TokenMatrix& features, const Partition& part, double fraction) {
    if (fraction < 0.0 || fraction > 1.0)
        throw DomainError("threshold_for_fraction: fraction must be in [0, 1]");
    const SimilarityMatrix sims = build_similarity_matrix(features, part);
    const auto best = best_destination_assignment(sims);

    std::vector<Scalar> values(best.size());
    for (size_t i = 0; i < best.size(); ++i)
        values[i] = best[i].similarity;
    std::sort(values.begin(), values.end(), std::greater<>());

    const size_t want = static_cast<size_t>(std::ceil(fraction * static_cast<double>(values.size())));
    if (want == 0)
        return 1.0;
    if (want >= values.size())
        return -1.0;
    // Everything strictly above values[want-1] merges; nudge down one float
    // step so the want-th value itself clears the strict comparison.
    return std::nextafter(values[want - 1], -2.0f);
}

}  // namespace catome
