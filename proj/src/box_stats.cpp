#include "daolens/common/errors.hpp"
#include "daolens/stats/stats.hpp"

#include <algorithm>
#include <cmath>

namespace daolens::stats {

double quantile_linear(std::vector<double> sorted_sample, double p)
{
    const size_t n = sorted_sample.size();
    if (n == 0)
        throw insufficient_sample_error("quantile of an empty sample");
    if (n == 1)
        return sorted_sample[0];
    double h = (double(n) - 1.0) * p;
    size_t lo = static_cast<size_t>(std::floor(h));
    size_t hi = std::min(lo + 1, n - 1);
    double frac = h - double(lo);
    return sorted_sample[lo] + frac * (sorted_sample[hi] - sorted_sample[lo]);
}

BoxStats box_stats(const std::vector<double>& sample)
{
    if (sample.empty())
        throw insufficient_sample_error("box stats of an empty sample");

    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());

    BoxStats box;
    box.q1 = quantile_linear(sorted, 0.25);
    box.median = quantile_linear(sorted, 0.5);
    box.q3 = quantile_linear(sorted, 0.75);
    box.iqr = box.q3 - box.q1;

    // Whiskers sit on the most extreme observations within 1.5 IQR of the box.
    const double low_fence = box.q1 - 1.5 * box.iqr;
    const double high_fence = box.q3 + 1.5 * box.iqr;
    box.whisker_low = box.median;
    box.whisker_high = box.median;
    bool found = false;
    for (double v : sorted) {
        if (v < low_fence || v > high_fence) {
            box.outliers.push_back(v);
            continue;
        }
        if (!found) {
            box.whisker_low = v;
            found = true;
        }
        box.whisker_high = v;
    }

    const double notch = 1.57 * box.iqr / std::sqrt(double(sorted.size()));
    box.notch_low = box.median - notch;
    box.notch_high = box.median + notch;
    return box;
}

} // namespace daolens::stats
