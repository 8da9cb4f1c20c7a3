#pragma once

// Small sample-statistics helpers shared by the Monte-Carlo oracles and the
// test suite.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cellload {

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;  // standard error of the mean
    long long n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    out.n = static_cast<long long>(xs.size());
    if (out.n == 0) return out;
    double s = 0.0;
    for (double x : xs) s += x;
    out.mean = s / static_cast<double>(out.n);
    if (out.n < 2) return out;
    double ss = 0.0;
    for (double x : xs) {
        double d = x - out.mean;
        ss += d * d;
    }
    out.stderr_ = std::sqrt(ss / (static_cast<double>(out.n - 1) * static_cast<double>(out.n)));
    return out;
}

// Kolmogorov-Smirnov distance between the empirical CDF of the samples and a
// reference CDF (one-sample, two-sided).
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Empirical CDF of the samples evaluated on a grid (P(X <= g)).
inline std::vector<double> empirical_cdf(std::vector<double> samples,
                                         const std::vector<double>& grid) {
    std::sort(samples.begin(), samples.end());
    std::vector<double> out;
    out.reserve(grid.size());
    double n = static_cast<double>(samples.size());
    for (double g : grid) {
        auto it = std::upper_bound(samples.begin(), samples.end(), g);
        out.push_back(samples.empty() ? 0.0
                                      : static_cast<double>(it - samples.begin()) / n);
    }
    return out;
}

}  // namespace cellload
