#include "catome/synthetic.hpp"

#include <algorithm>
#include <vector>

#include "catome/rng.hpp"
#include "catome/similarity.hpp"

namespace catome {

namespace {

// Box filter one channel in place via a summed-area table (double
// accumulation, so the result does not depend on the radius-sized window
// walking order). Windows are clipped to the grid and normalized by the
// actual cell count.
void box_filter_channel(const std::vector<float>& in, std::vector<float>& out, int h, int w, int radius) {
    std::vector<double> sat(static_cast<size_t>(h + 1) * (w + 1), 0.0);
    auto at = [&](int r, int c) -> double& { return sat[static_cast<size_t>(r) * (w + 1) + c]; };
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            at(r + 1, c + 1) = in[static_cast<size_t>(r) * w + c] + at(r, c + 1) + at(r + 1, c) - at(r, c);

    for (int r = 0; r < h; ++r) {
        const int r0 = std::max(0, r - radius), r1 = std::min(h - 1, r + radius);
        for (int c = 0; c < w; ++c) {
            const int c0 = std::max(0, c - radius), c1 = std::min(w - 1, c + radius);
            const double sum = at(r1 + 1, c1 + 1) - at(r0, c1 + 1) - at(r1 + 1, c0) + at(r0, c0);
            out[static_cast<size_t>(r) * w + c] =
                static_cast<float>(sum / ((r1 - r0 + 1) * (c1 - c0 + 1)));
        }
    }
}

}  // namespace

TokenGrid make_synthetic_grid(int height, int width, int channels, const RedundancyProfile& profile) {
    if (height < 1 || width < 1 || channels < 1)
        throw DimensionError("make_synthetic_grid: dims must be positive");
    if (profile.smoothing_radius < 0)
        throw BoundsError("make_synthetic_grid: smoothing_radius must be non-negative");
    if (profile.smoothing_radius > std::min(height, width))
        throw BoundsError("make_synthetic_grid: smoothing_radius exceeds min(H, W)");
    if (!(profile.amplitude > 0.0f))
        throw DomainError("make_synthetic_grid: amplitude must be positive");

    TokenGrid grid;
    grid.height = height;
    grid.width = width;
    grid.channels = channels;
    grid.data.resize(static_cast<Eigen::Index>(height) * width, channels);

    SplitMix64 rng(profile.seed);
    const int n = height * width;
    std::vector<float> plane(static_cast<size_t>(n)), filtered(static_cast<size_t>(n));
    // Channel-by-channel so the draw order (and thus the grid) is independent
    // of any internal blocking.
    for (int ch = 0; ch < channels; ++ch) {
        for (int i = 0; i < n; ++i)
            plane[static_cast<size_t>(i)] = profile.amplitude * rng.next_symmetric_float();
        if (profile.smoothing_radius > 0) {
            box_filter_channel(plane, filtered, height, width, profile.smoothing_radius);
            plane.swap(filtered);
        }
        for (int i = 0; i < n; ++i)
            grid.data(i, ch) = plane[static_cast<size_t>(i)];
    }
    return grid;
}

double mean_adjacent_cosine(const TokenGrid& grid) {
    grid.check_consistent();
    double sum = 0.0;
    long count = 0;
    for (int r = 0; r < grid.height; ++r) {
        for (int c = 0; c < grid.width; ++c) {
            const int i = grid_index(r, c, grid.width);
            if (c + 1 < grid.width) {
                sum += cosine_similarity(grid.data.row(i), grid.data.row(grid_index(r, c + 1, grid.width)));
                ++count;
            }
            if (r + 1 < grid.height) {
                sum += cosine_similarity(grid.data.row(i), grid.data.row(grid_index(r + 1, c, grid.width)));
                ++count;
            }
        }
    }
    return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace catome
