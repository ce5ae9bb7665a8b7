#pragma once

#include <cstdint>
#include <vector>

#include "catome/types.hpp"

namespace catome {

enum class DstRule {
    TopLeft,        // the paper's final choice: top-left cell of every stride
    RandomInStride  // uniform cell per stride, seeded
};

struct PartitionConfig {
    int stride_x = 2;
    int stride_y = 2;
    DstRule dst_rule = DstRule::TopLeft;
    uint64_t rule_seed = 0;  // only used by RandomInStride
};

// Destination/source split of the token indices. One destination per stride;
// everything else is a source. Both lists are sorted ascending.
struct Partition {
    std::vector<int> dst_indices;
    std::vector<int> src_indices;

    int num_tokens() const { return static_cast<int>(dst_indices.size() + src_indices.size()); }
};

// Strides must tile the grid exactly (s_x | W, s_y | H); partial strides are
// rejected rather than padded. 1x1 strides are rejected too: they leave no
// source tokens, and nothing downstream is defined for an empty source set.
Partition partition_strides(int height, int width, const PartitionConfig& cfg);

}  // namespace catome
