#include "catome/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace catome {

PairSet pair_set_of(const MergePlan& plan) {
    PairSet set = plan.pairs;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

double jaccard_distance(const PairSet& a, const PairSet& b) {
    if (a.empty() && b.empty())
        return 0.0;
    size_t inter = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const size_t uni = a.size() + b.size() - inter;
    return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

JaccardTrace jaccard_trace(const std::string& block_id, const std::vector<PairSet>& per_step_sets) {
    if (per_step_sets.size() < 2)
        throw IncompleteTraceError("jaccard_trace: need pair sets for at least two steps");
    JaccardTrace trace;
    trace.block_id = block_id;
    trace.distances.reserve(per_step_sets.size() - 1);
    for (size_t n = 0; n + 1 < per_step_sets.size(); ++n)
        trace.distances.push_back(jaccard_distance(per_step_sets[n], per_step_sets[n + 1]));
    return trace;
}

TraceSummary summarize_traces(const std::vector<JaccardTrace>& traces) {
    if (traces.empty())
        throw IncompleteTraceError("summarize_traces: no traces");
    const size_t len = traces.front().distances.size();
    for (const auto& t : traces)
        if (t.distances.size() != len)
            throw IncompleteTraceError("summarize_traces: traces have different lengths");

    TraceSummary summary;
    summary.mean.resize(len);
    summary.variance.resize(len);
    summary.stddev.resize(len);
    for (size_t n = 0; n < len; ++n) {
        double mean = 0.0;
        for (const auto& t : traces)
            mean += t.distances[n];
        mean /= static_cast<double>(traces.size());
        double var = 0.0;
        for (const auto& t : traces)
            var += (t.distances[n] - mean) * (t.distances[n] - mean);
        var /= static_cast<double>(traces.size());
        summary.mean[n] = mean;
        summary.variance[n] = var;
        summary.stddev[n] = std::sqrt(var);
    }
    return summary;
}

double psnr(const TokenMatrix& a, const TokenMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("psnr: shape mismatch");
    if (a.size() == 0)
        throw ShapeError("psnr: empty input");

    const double range = static_cast<double>(a.maxCoeff()) - static_cast<double>(a.minCoeff());
    if (range <= 0.0)
        throw DegenerateReferenceError("psnr: reference has zero dynamic range");

    double mse = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double d = static_cast<double>(a(i, j)) - static_cast<double>(b(i, j));
            mse += d * d;
        }
    mse /= static_cast<double>(a.size());

    if (mse == 0.0)
        return kPsnrCapDb;
    return std::min(kPsnrCapDb, 10.0 * std::log10(range * range / mse));
}

}  // namespace catome
