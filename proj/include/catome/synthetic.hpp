#pragma once

#include <cstdint>

#include "catome/types.hpp"

namespace catome {

// Controls how much neighboring tokens resemble each other in a synthetic
// latent. Larger smoothing_radius means a wider box filter and therefore
// more redundancy for the matcher to exploit.
struct RedundancyProfile {
    uint64_t seed = 0;
    int smoothing_radius = 0;  // in cells; must be <= min(H, W)
    float amplitude = 1.0f;
};

// Deterministic synthetic latent: i.i.d. uniform [-amplitude, amplitude)
// draws (SplitMix64), then a per-channel box filter of the given radius.
// Edge handling: the window is intersected with the grid and normalized by
// the true cell count, so a radius spanning the whole grid yields the grid
// mean everywhere. Radius 0 is a no-op.
TokenGrid make_synthetic_grid(int height, int width, int channels, const RedundancyProfile& profile);

// Mean cosine similarity over horizontally and vertically adjacent token
// pairs. Used to quantify how redundant a grid is.
double mean_adjacent_cosine(const TokenGrid& grid);

}  // namespace catome
