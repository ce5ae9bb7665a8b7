#include "catome/merge.hpp"

#include <algorithm>
#include <numeric>

namespace catome {

SizedTokens SizedTokens::from_matrix(TokenMatrix m) {
    SizedTokens st;
    st.sizes.assign(static_cast<size_t>(m.rows()), 1);
    st.origin_map.resize(static_cast<size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        st.origin_map[static_cast<size_t>(i)] = {static_cast<int>(i)};
    st.tokens = std::move(m);
    return st;
}

int SizedTokens::total_origins() const {
    return std::accumulate(sizes.begin(), sizes.end(), 0);
}

SizedTokens SizedTokens::with_values(TokenMatrix values) const {
    if (values.rows() != tokens.rows() || values.cols() != tokens.cols())
        throw ShapeError("SizedTokens::with_values: shape mismatch");
    SizedTokens out;
    out.tokens = std::move(values);
    out.sizes = sizes;
    out.origin_map = origin_map;
    return out;
}

SizedTokens apply_merge(const SizedTokens& input, const MergePlan& plan) {
    const int n = input.count();
    if (plan.num_tokens != n)
        throw PlanMismatchError("apply_merge: plan is for " + std::to_string(plan.num_tokens) +
                                " tokens, input has " + std::to_string(n));
    if (static_cast<int>(input.sizes.size()) != n || input.origin_map.size() != static_cast<size_t>(n))
        throw ShapeError("apply_merge: inconsistent size bookkeeping");

    std::vector<char> is_dst(static_cast<size_t>(n), 0);
    for (int dst : plan.dst_indices) {
        if (dst < 0 || dst >= n)
            throw PlanMismatchError("apply_merge: destination index out of range");
        is_dst[static_cast<size_t>(dst)] = 1;
    }

    // Group sources under their destinations. Indices refer to current rows.
    std::vector<std::vector<int>> absorbed(static_cast<size_t>(n));
    std::vector<char> is_merged_src(static_cast<size_t>(n), 0);
    for (size_t p = 0; p < plan.pairs.size(); ++p) {
        const auto [src, dst] = plan.pairs[p];
        if (src < 0 || src >= n || dst < 0 || dst >= n)
            throw PlanMismatchError("apply_merge: pair index out of range");
        if (!is_dst[static_cast<size_t>(dst)] || is_dst[static_cast<size_t>(src)])
            throw PlanMismatchError("apply_merge: pair endpoints disagree with the plan's partition");
        if (is_merged_src[static_cast<size_t>(src)])
            throw PlanMismatchError("apply_merge: source listed twice");
        is_merged_src[static_cast<size_t>(src)] = 1;
        absorbed[static_cast<size_t>(dst)].push_back(src);
    }

    const Eigen::Index c = input.tokens.cols();
    SizedTokens out;
    out.tokens.resize(static_cast<Eigen::Index>(plan.dst_indices.size() + plan.unmerged_src_indices.size()), c);
    out.sizes.reserve(static_cast<size_t>(out.tokens.rows()));
    out.origin_map.reserve(static_cast<size_t>(out.tokens.rows()));

    Eigen::Index row = 0;
    auto emit_copy = [&](int idx) {
        out.tokens.row(row) = input.tokens.row(idx);
        out.sizes.push_back(input.sizes[static_cast<size_t>(idx)]);
        out.origin_map.push_back(input.origin_map[static_cast<size_t>(idx)]);
        ++row;
    };

    // Destinations first (ascending original index), then surviving sources.
    for (int dst : plan.dst_indices) {
        const auto& group = absorbed[static_cast<size_t>(dst)];
        if (group.empty()) {
            emit_copy(dst);  // untouched destinations pass through bit-exactly
            continue;
        }
        // Size-weighted mean in double; group members accumulate in ascending
        // source order after the destination itself.
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(c);
        long total = input.sizes[static_cast<size_t>(dst)];
        acc += input.tokens.row(dst).cast<double>() * static_cast<double>(total);
        std::vector<int> origins = input.origin_map[static_cast<size_t>(dst)];
        for (int src : group) {
            const long w = input.sizes[static_cast<size_t>(src)];
            acc += input.tokens.row(src).cast<double>() * static_cast<double>(w);
            total += w;
            const auto& src_orig = input.origin_map[static_cast<size_t>(src)];
            origins.insert(origins.end(), src_orig.begin(), src_orig.end());
        }
        std::sort(origins.begin(), origins.end());
        out.tokens.row(row) = (acc / static_cast<double>(total)).cast<Scalar>();
        out.sizes.push_back(static_cast<int>(total));
        out.origin_map.push_back(std::move(origins));
        ++row;
    }
    for (int src : plan.unmerged_src_indices)
        emit_copy(src);

    return out;
}

TokenMatrix apply_unmerge(const SizedTokens& merged, const MergePlan& plan) {
    const Eigen::Index expected_rows =
        static_cast<Eigen::Index>(plan.dst_indices.size() + plan.unmerged_src_indices.size());
    if (merged.tokens.rows() != expected_rows)
        throw PlanMismatchError("apply_unmerge: merged token count does not match plan");

    TokenMatrix out(plan.num_tokens, merged.tokens.cols());
    std::vector<char> written(static_cast<size_t>(plan.num_tokens), 0);

    // Rows follow apply_merge's canonical order: destinations, then
    // surviving sources.
    Eigen::Index row = 0;
    for (size_t d = 0; d < plan.dst_indices.size(); ++d, ++row) {
        out.row(plan.dst_indices[d]) = merged.tokens.row(row);
        written[static_cast<size_t>(plan.dst_indices[d])] = 1;
    }
    for (size_t s = 0; s < plan.unmerged_src_indices.size(); ++s, ++row) {
        out.row(plan.unmerged_src_indices[s]) = merged.tokens.row(row);
        written[static_cast<size_t>(plan.unmerged_src_indices[s])] = 1;
    }
    // Merged sources receive their destination's (possibly transformed) value.
    for (const auto& [src, dst] : plan.pairs) {
        const auto it = std::lower_bound(plan.dst_indices.begin(), plan.dst_indices.end(), dst);
        if (it == plan.dst_indices.end() || *it != dst)
            throw PlanMismatchError("apply_unmerge: pair destination not in plan");
        out.row(src) = merged.tokens.row(static_cast<Eigen::Index>(it - plan.dst_indices.begin()));
        written[static_cast<size_t>(src)] = 1;
    }
    for (char w : written)
        if (!w)
            throw PlanMismatchError("apply_unmerge: plan does not cover every token");
    return out;
}

}  // namespace catome
