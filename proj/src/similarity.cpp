#include "catome/similarity.hpp"

#include <cmath>

namespace catome {

namespace {

// Gather the given token rows into a column-major matrix with each row
// divided by its norm. Norm = sqrtf of the channel-ordered float sum of
// squares; rows with norm < 1e-12 become zero rows. This exact sequence is
// part of the similarity arithmetic contract (see header).
Eigen::MatrixXf gather_normalized(const TokenMatrix& features, const std::vector<int>& indices) {
    const int c = static_cast<int>(features.cols());
    Eigen::MatrixXf out(static_cast<Eigen::Index>(indices.size()), c);
    for (size_t i = 0; i < indices.size(); ++i) {
        const auto row = features.row(indices[i]);
        float sq = 0.0f;
        for (int k = 0; k < c; ++k)
            sq += row(k) * row(k);
        const float norm = std::sqrt(sq);
        if (norm < 1e-12f) {
            for (int k = 0; k < c; ++k)
                out(static_cast<Eigen::Index>(i), k) = 0.0f;
        } else {
            for (int k = 0; k < c; ++k)
                out(static_cast<Eigen::Index>(i), k) = row(k) / norm;
        }
    }
    return out;
}

}  // namespace

SimilarityMatrix build_similarity_matrix(const TokenMatrix& features, const Partition& part) {
    if (features.rows() != static_cast<Eigen::Index>(part.num_tokens()))
        throw ShapeError("build_similarity_matrix: feature row count != partition token count");
    if (part.dst_indices.empty() || part.src_indices.empty())
        throw DomainError("build_similarity_matrix: empty partition side");

    const Eigen::MatrixXf src = gather_normalized(features, part.src_indices);
    const Eigen::MatrixXf dst = gather_normalized(features, part.dst_indices);
    const Eigen::Index ns = src.rows(), nd = dst.rows(), c = src.cols();

    // Channel-ordered rank-1 accumulation: entry (i, j) grows by
    // src(i, k) * dst(j, k) for k = 0..C-1 in order, which is the same float
    // sequence as a scalar dot loop but vectorizes down the columns of S.
    // Row blocks keep the slab of S in cache across the C passes.
    SimilarityMatrix sims = SimilarityMatrix::Zero(ns, nd);
    constexpr Eigen::Index kRowBlock = 128;
    for (Eigen::Index i0 = 0; i0 < ns; i0 += kRowBlock) {
        const Eigen::Index rows = std::min(kRowBlock, ns - i0);
        auto block = sims.middleRows(i0, rows);
        for (Eigen::Index k = 0; k < c; ++k)
            block.noalias() += src.col(k).segment(i0, rows) * dst.col(k).transpose();
    }
    return sims;
}

std::vector<BestDestination> best_destination_assignment(const SimilarityMatrix& sims) {
    if (sims.cols() == 0)
        throw DomainError("best_destination_assignment: empty destination set");
    std::vector<BestDestination> best(static_cast<size_t>(sims.rows()));
    for (Eigen::Index i = 0; i < sims.rows(); ++i) {
        int arg = 0;
        Scalar val = sims(i, 0);
        for (Eigen::Index j = 1; j < sims.cols(); ++j) {
            if (sims(i, j) > val) {  // strict: ties keep the lowest column
                val = sims(i, j);
                arg = static_cast<int>(j);
            }
        }
        best[static_cast<size_t>(i)] = {arg, val};
    }
    return best;
}

}  // namespace catome
