#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "catome/errors.hpp"

namespace catome {

// The numeric core is float32 throughout; promote to double only inside
// scalar reductions where the extra bits are needed.
using Scalar = float;

// One row per token, one column per channel. Row-major so a token is a
// contiguous span, matching how the attention kernels walk the data.
using TokenMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Row-major token index of grid cell (row, col).
constexpr int grid_index(int row, int col, int width) {
    return row * width + col;
}

// H x W spatial grid of C-channel tokens (the latent a transformer block sees).
struct TokenGrid {
    int height = 0;
    int width = 0;
    int channels = 0;
    TokenMatrix data;  // (height*width) x channels

    int num_tokens() const { return height * width; }

    void check_consistent() const {
        if (height < 1 || width < 1 || channels < 1)
            throw DimensionError("TokenGrid: dims must be positive");
        if (data.rows() != static_cast<Eigen::Index>(num_tokens()) || data.cols() != channels)
            throw ShapeError("TokenGrid: data shape does not match dims");
        if (!data.allFinite())
            throw NumericError("TokenGrid: non-finite values");
    }
};

}  // namespace catome
