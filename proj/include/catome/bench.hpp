#pragma once

#include <functional>
#include <string>
#include <vector>

namespace catome {

// Host fingerprint attached to every timing record and report.
struct EnvFingerprint {
    std::string host;
    unsigned cores = 0;
    std::string build;     // "release" or "debug"
    std::string compiler;
};

EnvFingerprint environment_fingerprint();

// One timed body: per-repetition wall times (warmup discarded) plus the two
// statistics every report uses. Median rather than mean so a single
// scheduler hiccup cannot move the headline number; the spread is the
// interquartile range.
struct TimingSample {
    std::string label;
    int repetitions = 0;
    std::vector<double> seconds;  // one entry per kept repetition
    double median_s = 0.0;
    double iqr_s = 0.0;
    EnvFingerprint env;
};

double median(std::vector<double> values);
double interquartile_range(std::vector<double> values);

// Runs setup once, then body warmup+repetitions times on the monotonic
// clock, discarding the warmup runs. repetitions must be >= 5 and warmup
// >= 1. All timing claims in reports come through here.
TimingSample time_fn(const std::string& label, const std::function<void()>& setup,
                     const std::function<void()>& body, int repetitions, int warmup = 1);

}  // namespace catome
