#include "catome/attention.hpp"

#include <chrono>
#include <cmath>

#include "catome/rng.hpp"

namespace catome {

namespace {

TokenMatrix uniform_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols, float scale) {
    TokenMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = scale * rng.next_symmetric_float();
    return m;
}

void require_finite(const TokenMatrix& m, const char* stage) {
    if (!m.allFinite())
        throw NumericError(std::string("attention: non-finite values after ") + stage);
}

// Row-wise softmax in place, one cache-resident row at a time.
void softmax_rows_inplace(TokenMatrix& logits) {
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        auto row = logits.row(i).array();
        const Scalar m = row.maxCoeff();
        row = (row - m).exp();
        row /= row.sum();
    }
}

}  // namespace

BlockWeights make_block_weights(int channels, uint64_t seed, int heads) {
    if (channels < 1)
        throw DimensionError("make_block_weights: channels must be positive");
    if (heads < 1 || channels % heads != 0)
        throw DimensionError("make_block_weights: heads must divide channels");
    SplitMix64 rng(seed);
    const float scale = 1.0f / std::sqrt(static_cast<float>(channels));
    // The output-side projections carry an extra damping factor so one block
    // adds a perturbation small relative to its input. The surrogate step
    // loop needs that: adjacent steps must stay close at small eta, and the
    // relaxation must not bottom out within a 50-step run even at large eta.
    const float damp = 0.25f;
    BlockWeights w;
    w.channels = channels;
    w.heads = heads;
    w.wq = uniform_matrix(rng, channels, channels, scale);
    w.wk = uniform_matrix(rng, channels, channels, scale);
    w.wv = uniform_matrix(rng, channels, channels, scale);
    w.wo = uniform_matrix(rng, channels, channels, damp * scale);
    w.w1 = uniform_matrix(rng, channels, 4 * channels, scale);
    w.w2 = uniform_matrix(rng, 4 * channels, channels, damp * scale);
    w.ln1_gamma = VectorX::Ones(channels);
    w.ln1_beta = VectorX::Zero(channels);
    w.ln2_gamma = VectorX::Ones(channels);
    w.ln2_beta = VectorX::Zero(channels);
    return w;
}

TokenMatrix layer_norm(const TokenMatrix& tokens, const VectorX& gamma, const VectorX& beta) {
    const Eigen::Index c = tokens.cols();
    if (gamma.size() != c || beta.size() != c)
        throw ShapeError("layer_norm: parameter length mismatch");
    TokenMatrix out(tokens.rows(), c);
    for (Eigen::Index i = 0; i < tokens.rows(); ++i) {
        const auto row = tokens.row(i).array();
        const Scalar mean = row.mean();
        const Scalar var = (row - mean).square().sum() / static_cast<Scalar>(c);
        out.row(i) = (((row - mean) / std::sqrt(var + 1e-5f)) * gamma.transpose().array() +
                      beta.transpose().array())
                         .matrix();
    }
    return out;
}

TokenMatrix attention_forward(const TokenMatrix& tokens, const BlockWeights& weights,
                              const std::vector<int>* sizes, bool proportional) {
    const Eigen::Index m = tokens.rows();
    const Eigen::Index c = tokens.cols();
    if (m < 1)
        throw ShapeError("attention_forward: need at least one token");
    if (c != weights.channels)
        throw ShapeError("attention_forward: channel mismatch with weights");
    if (proportional && (!sizes || static_cast<Eigen::Index>(sizes->size()) != m))
        throw ShapeError("attention_forward: proportional attention needs one size per token");

    const TokenMatrix q = tokens * weights.wq;
    const TokenMatrix k = tokens * weights.wk;
    const TokenMatrix v = tokens * weights.wv;

    VectorX log_sizes;
    if (proportional) {
        log_sizes.resize(m);
        for (Eigen::Index j = 0; j < m; ++j)
            log_sizes(j) = std::log(static_cast<Scalar>((*sizes)[static_cast<size_t>(j)]));
    }

    const Eigen::Index head_dim = c / weights.heads;
    const Scalar inv_scale = 1.0f / std::sqrt(static_cast<Scalar>(head_dim));

    TokenMatrix out(m, c);
    TokenMatrix logits(m, m);
    for (int h = 0; h < weights.heads; ++h) {
        const Eigen::Index off = static_cast<Eigen::Index>(h) * head_dim;
        logits.noalias() = q.middleCols(off, head_dim) * k.middleCols(off, head_dim).transpose();
        logits *= inv_scale;
        if (proportional)
            logits.rowwise() += log_sizes.transpose();
        require_finite(logits, "attention logits");
        softmax_rows_inplace(logits);
        out.middleCols(off, head_dim).noalias() = logits * v.middleCols(off, head_dim);
    }
    TokenMatrix projected = out * weights.wo;
    require_finite(projected, "output projection");
    return projected;
}

TokenMatrix block_body(const TokenMatrix& tokens, const BlockWeights& weights,
                       const std::vector<int>* sizes, bool proportional) {
    TokenMatrix x = tokens;
    x += attention_forward(layer_norm(x, weights.ln1_gamma, weights.ln1_beta), weights, sizes, proportional);

    // Feed-forward with tanh-approximated GELU, also on the (possibly
    // reduced) token set.
    TokenMatrix h = layer_norm(x, weights.ln2_gamma, weights.ln2_beta) * weights.w1;
    constexpr Scalar kSqrt2OverPi = 0.7978845608028654f;
    h = (0.5f * h.array() * (1.0f + (kSqrt2OverPi * (h.array() + 0.044715f * h.array().cube())).tanh())).matrix();
    x += h * weights.w2;
    require_finite(x, "feed-forward");
    return x;
}

TokenMatrix matching_features(const TokenMatrix& tokens, const BlockWeights& weights, MatchFeatures source) {
    if (source == MatchFeatures::HiddenState)
        return tokens;
    return layer_norm(tokens, weights.ln1_gamma, weights.ln1_beta) * weights.wk;
}

BlockResult block_forward(const TokenGrid& grid, const BlockWeights& weights, const BlockConfig& cfg,
                          const MergePlan* plan) {
    const auto t0 = std::chrono::steady_clock::now();

    BlockResult result;
    result.stats.tokens_before = grid.num_tokens();
    result.grid.height = grid.height;
    result.grid.width = grid.width;
    result.grid.channels = grid.channels;

    MergePlan local;
    const MergePlan* active = nullptr;
    if (cfg.merge_enabled) {
        if (plan) {
            if (plan->num_tokens != grid.num_tokens())
                throw PlanMismatchError("block_forward: stale plan (token count mismatch)");
            active = plan;
        } else {
            const Partition part = partition_strides(grid.height, grid.width, cfg.partition);
            local = build_plan(matching_features(grid.data, weights, cfg.match_features), part, cfg.match);
            result.stats.plan_recomputed = true;
            active = &local;
        }
        result.stats.pairs_merged = static_cast<int>(active->pairs.size());
        result.stats.src_count = static_cast<int>(active->pairs.size() + active->unmerged_src_indices.size());
        result.plan_used = *active;
    }

    if (active && !active->empty()) {
        const SizedTokens merged = apply_merge(SizedTokens::from_matrix(grid.data), *active);
        const TokenMatrix transformed =
            block_body(merged.tokens, weights, &merged.sizes, cfg.proportional_attention);
        // Unmerge what the block added, then take the residual at full
        // resolution.
        const TokenMatrix delta = transformed - merged.tokens;
        result.grid.data = grid.data + apply_unmerge(merged.with_values(delta), *active);
        result.stats.tokens_after = merged.count();
    } else {
        // Plain path; also taken for empty plans so a no-op merge is
        // bit-identical to merging disabled.
        result.grid.data = block_body(grid.data, weights, nullptr, false);
        result.stats.tokens_after = result.stats.tokens_before;
    }

    result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace catome
