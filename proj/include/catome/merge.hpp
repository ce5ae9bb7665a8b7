#pragma once

#include <vector>

#include "catome/matching.hpp"
#include "catome/types.hpp"

namespace catome {

// Token set after zero or more merges. sizes[i] counts the original tokens
// token i stands for; origin_map[i] lists them. sum(sizes) stays equal to the
// original token count.
struct SizedTokens {
    TokenMatrix tokens;  // M x C
    std::vector<int> sizes;
    std::vector<std::vector<int>> origin_map;

    static SizedTokens from_matrix(TokenMatrix m);

    int count() const { return static_cast<int>(tokens.rows()); }
    int total_origins() const;

    // Same bookkeeping, new values (must have matching row count). Used to
    // push a transform's output back through apply_unmerge.
    SizedTokens with_values(TokenMatrix values) const;
};

// Merge each selected source into its destination as the size-weighted mean;
// the destination's size becomes the group sum. Output order is canonical:
// destinations first (ascending original index), then surviving sources
// (ascending original index). Tokens not involved in any merge are copied
// bit-exactly. Throws PlanMismatchError when plan.num_tokens != input count,
// which is also what catches a stale cached plan.
SizedTokens apply_merge(const SizedTokens& input, const MergePlan& plan);

// Inverse of the positional bookkeeping: every original index gets the value
// of the merged token that represents it, in original index order. Values
// that went through a transform between merge and unmerge come back at every
// position they covered (copy-back semantics).
TokenMatrix apply_unmerge(const SizedTokens& merged, const MergePlan& plan);

}  // namespace catome
