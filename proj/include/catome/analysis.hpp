#pragma once

#include <string>
#include <utility>
#include <vector>

#include "catome/matching.hpp"
#include "catome/types.hpp"

namespace catome {

// The (src, dst) pairs one block merged at one step, sorted and unique.
using PairSet = std::vector<std::pair<int, int>>;

PairSet pair_set_of(const MergePlan& plan);

// 1 - |A n B| / |A u B|. Two empty sets are identical, so the 0/0 case is
// defined as 0.
double jaccard_distance(const PairSet& a, const PairSet& b);

// Adjacent-step distances for one block across one run: length T-1.
struct JaccardTrace {
    std::string block_id;
    std::vector<double> distances;
};

// per_step_sets must cover every step of the run. Throws
// IncompleteTraceError when fewer than two steps were recorded.
JaccardTrace jaccard_trace(const std::string& block_id, const std::vector<PairSet>& per_step_sets);

// Per-step mean/variance/stddev across repeated traces (different seeds or
// blocks). Variance is the population variance; the stddev column is its
// square root -- both are reported since either convention is common for
// shading a spread.
struct TraceSummary {
    std::vector<double> mean;
    std::vector<double> variance;
    std::vector<double> stddev;
};

TraceSummary summarize_traces(const std::vector<JaccardTrace>& traces);

// Latent-space PSNR: 10 log10(R^2 / MSE) with R the dynamic range
// (max - min) of the reference `a`. Identical inputs (and anything below the
// matching MSE) report the 200 dB cap. A reference with zero dynamic range
// is rejected.
double psnr(const TokenMatrix& a, const TokenMatrix& b);

inline constexpr double kPsnrCapDb = 200.0;

}  // namespace catome
