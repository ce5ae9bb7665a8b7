#include "catome/bench.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include <unistd.h>

#include "catome/errors.hpp"

namespace catome {

EnvFingerprint environment_fingerprint() {
    EnvFingerprint env;
    char host[256] = {0};
    if (gethostname(host, sizeof(host) - 1) == 0)
        env.host = host;
    env.cores = std::thread::hardware_concurrency();
#ifdef NDEBUG
    env.build = "release";
#else
    env.build = "debug";
#endif
#if defined(__clang__)
    env.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
    env.compiler = "gcc " __VERSION__;
#else
    env.compiler = "unknown";
#endif
    return env;
}

double median(std::vector<double> values) {
    if (values.empty())
        throw DomainError("median: empty sample");
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double interquartile_range(std::vector<double> values) {
    if (values.empty())
        throw DomainError("interquartile_range: empty sample");
    std::sort(values.begin(), values.end());
    const auto quartile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const size_t lo = static_cast<size_t>(pos);
        const size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    return quartile(0.75) - quartile(0.25);
}

TimingSample time_fn(const std::string& label, const std::function<void()>& setup,
                     const std::function<void()>& body, int repetitions, int warmup) {
    if (repetitions < 5)
        throw DomainError("time_fn: repetitions must be >= 5");
    if (warmup < 1)
        throw DomainError("time_fn: need at least one warmup run");

    if (setup)
        setup();
    for (int i = 0; i < warmup; ++i)
        body();

    TimingSample sample;
    sample.label = label;
    sample.repetitions = repetitions;
    sample.seconds.reserve(static_cast<size_t>(repetitions));
    for (int i = 0; i < repetitions; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        sample.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    sample.median_s = median(sample.seconds);
    sample.iqr_s = interquartile_range(sample.seconds);
    sample.env = environment_fingerprint();
    return sample;
}

}  // namespace catome
