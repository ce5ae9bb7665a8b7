#include "catome/partition.hpp"

#include <algorithm>

#include "catome/rng.hpp"

namespace catome {

Partition partition_strides(int height, int width, const PartitionConfig& cfg) {
    if (height < 1 || width < 1)
        throw DimensionError("partition_strides: grid dims must be positive");
    if (cfg.stride_x < 1 || cfg.stride_y < 1)
        throw DimensionError("partition_strides: stride must be positive");
    if (cfg.stride_x == 1 && cfg.stride_y == 1)
        throw DimensionError("partition_strides: 1x1 stride leaves no source tokens");
    if (width % cfg.stride_x != 0 || height % cfg.stride_y != 0)
        throw DimensionError("partition_strides: stride does not divide grid dims (no partial strides)");

    const int strides_y = height / cfg.stride_y;
    const int strides_x = width / cfg.stride_x;
    const int n = height * width;

    std::vector<char> is_dst(static_cast<size_t>(n), 0);
    SplitMix64 rng(cfg.rule_seed);
    for (int sy = 0; sy < strides_y; ++sy) {
        for (int sx = 0; sx < strides_x; ++sx) {
            int dr = 0, dc = 0;
            if (cfg.dst_rule == DstRule::RandomInStride) {
                dr = static_cast<int>(rng.next_below(static_cast<uint64_t>(cfg.stride_y)));
                dc = static_cast<int>(rng.next_below(static_cast<uint64_t>(cfg.stride_x)));
            }
            is_dst[static_cast<size_t>(grid_index(sy * cfg.stride_y + dr, sx * cfg.stride_x + dc, width))] = 1;
        }
    }

    Partition part;
    part.dst_indices.reserve(static_cast<size_t>(strides_x) * strides_y);
    part.src_indices.reserve(static_cast<size_t>(n) - static_cast<size_t>(strides_x) * strides_y);
    for (int i = 0; i < n; ++i)
        (is_dst[static_cast<size_t>(i)] ? part.dst_indices : part.src_indices).push_back(i);
    return part;
}

}  // namespace catome
