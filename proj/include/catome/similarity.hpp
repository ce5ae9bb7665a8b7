#pragma once

#include <vector>

#include "catome/partition.hpp"
#include "catome/types.hpp"

namespace catome {

// cosine(a, b) = dot(a, b) / (|a| * |b|), accumulated in double. If either
// norm is below 1e-12 the result is defined as 0, so zero tokens never look
// similar to anything.
template <typename DerivedA, typename DerivedB>
Scalar cosine_similarity(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.size() != b.size())
        throw ShapeError("cosine_similarity: length mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double x = a(k), y = b(k);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    const double denom = std::sqrt(na) * std::sqrt(nb);
    if (std::sqrt(na) < 1e-12 || std::sqrt(nb) < 1e-12)
        return 0.0f;
    return static_cast<Scalar>(dot / denom);
}

// |src| x |dst| cosine similarities, sources as rows. Column-major so the
// per-channel accumulation below vectorizes down each column.
using SimilarityMatrix = Eigen::MatrixXf;

// Entry (i, j) = cosine of feature rows src_indices[i] and dst_indices[j].
//
// Arithmetic contract (relied on by the matching oracle, which recomputes
// these values with independent scalar loops and asserts identical plans):
// each row is divided by its norm, where norm = sqrt of the channel-ordered
// float sum of squares; each entry is then the channel-ordered float sum of
// products of the normalized rows. Rows with norm < 1e-12 are zeroed.
SimilarityMatrix build_similarity_matrix(const TokenMatrix& features, const Partition& part);

struct BestDestination {
    int dst_pos;        // column position in the similarity matrix
    Scalar similarity;  // value at that column
};

// Per source row, the argmax column; ties break to the lowest column.
std::vector<BestDestination> best_destination_assignment(const SimilarityMatrix& sims);

}  // namespace catome
