// Shapiro-Wilk normality test, Royston's AS R94 formulation: Blom-score
// based coefficients with polynomial corrections for the two outermost
// weights, and the log-normal p-value approximation. Valid for
// 3 <= n <= 5000.

#include "daolens/common/errors.hpp"
#include "daolens/stats/distributions.hpp"
#include "daolens/stats/stats.hpp"

#include <algorithm>
#include <cmath>

namespace daolens::stats {

namespace {

double poly(const double* c, int order, double x)
{
    double v = c[0];
    double p = 1.0;
    for (int i = 1; i < order; ++i) {
        p *= x;
        v += c[i] * p;
    }
    return v;
}

constexpr double kC1[6] = { 0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056 };
constexpr double kC2[6] = { 0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633 };
constexpr double kC3[4] = { 0.5440, -0.39978, 0.025054, -6.714e-4 };
constexpr double kC4[4] = { 1.3822, -0.77857, 0.062767, -0.0020322 };
constexpr double kC5[4] = { -1.5861, -0.31082, -0.083751, 0.0038915 };
constexpr double kC6[3] = { -0.4803, -0.082676, 0.0030302 };
constexpr double kG[2] = { -2.273, 0.459 };
constexpr double kPi6 = 1.909859;  // 6/pi
constexpr double kStqr = 1.047198; // asin(sqrt(3/4))

} // namespace

TestResult shapiro_wilk(const std::vector<double>& sample)
{
    const size_t n = sample.size();
    if (n < 3)
        throw insufficient_sample_error("Shapiro-Wilk needs at least 3 observations, got " + std::to_string(n));
    if (n > 5000)
        throw argument_error("Shapiro-Wilk approximation is only valid up to n = 5000");

    std::vector<double> x = sample;
    std::sort(x.begin(), x.end());
    if (x.front() == x.back())
        throw degenerate_sample_error("Shapiro-Wilk undefined on a constant sample");

    const size_t half = n / 2;
    std::vector<double> coeff(n, 0.0);

    if (n == 3) {
        coeff[0] = -std::sqrt(0.5);
        coeff[2] = std::sqrt(0.5);
    } else {
        // Blom scores for the lower half (negative side).
        std::vector<double> m(half);
        double summ2 = 0.0;
        for (size_t i = 0; i < half; ++i) {
            m[i] = normal_quantile((double(i + 1) - 0.375) / (double(n) + 0.25));
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(double(n));

        const double a1 = poly(kC1, 6, rsn) - m[0] / ssumm2;
        size_t start;
        double fac;
        double a2 = 0.0;
        if (n > 5) {
            start = 2;
            a2 = poly(kC2, 6, rsn) - m[1] / ssumm2;
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1])
                            / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
        } else {
            start = 1;
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
        }

        // Lower-half coefficients are negative; the upper half mirrors them.
        coeff[0] = -a1;
        if (n > 5)
            coeff[1] = -a2;
        for (size_t i = start; i < half; ++i)
            coeff[i] = m[i] / fac;
        for (size_t i = 0; i < half; ++i)
            coeff[n - 1 - i] = -coeff[i];
    }

    // W is the squared correlation of the ordered sample with the weights.
    const double range = x.back() - x.front();
    double sx = 0.0;
    double sa = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i] / range;
        sa += coeff[i];
    }
    sx /= double(n);
    sa /= double(n);
    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double asa = coeff[i] - sa;
        const double xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    double w = 1.0 - w1;
    w = std::clamp(w, 1e-12, 1.0);

    TestResult result;
    result.test_name = "shapiro_wilk";
    result.statistic = w;
    result.df1 = double(n);

    if (n == 3) {
        double pw = kPi6 * (std::asin(std::sqrt(w)) - kStqr);
        result.p_value = std::clamp(pw, 0.0, 1.0);
        return result;
    }

    double y = std::log(w1);
    double mu, sigma;
    if (n <= 11) {
        const double an = double(n);
        const double gamma = poly(kG, 2, an);
        if (y >= gamma) {
            result.p_value = 1e-19; // off the approximation's support
            return result;
        }
        y = -std::log(gamma - y);
        mu = poly(kC3, 4, an);
        sigma = std::exp(poly(kC4, 4, an));
    } else {
        const double logn = std::log(double(n));
        mu = poly(kC5, 4, logn);
        sigma = std::exp(poly(kC6, 3, logn));
    }
    result.p_value = std::clamp(normal_sf((y - mu) / sigma), 0.0, 1.0);
    return result;
}

} // namespace daolens::stats
