#include "daolens/stats/stats.hpp"

#include "daolens/common/errors.hpp"
#include "daolens/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace daolens::stats {

size_t GroupedSamples::total_count() const
{
    size_t n = 0;
    for (const auto& g : groups)
        n += g.values.size();
    return n;
}

namespace {

double mean_of(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double median_of(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

void require_finite(const std::vector<double>& v, const char* who)
{
    for (double x : v)
        if (!std::isfinite(x))
            throw argument_error(std::string(who) + " requires finite values");
}

// Tie term sum(t^3 - t) over the pooled sample.
double tie_correction_sum(std::vector<double> pooled)
{
    std::sort(pooled.begin(), pooled.end());
    double sum = 0.0;
    size_t i = 0;
    while (i < pooled.size()) {
        size_t j = i;
        while (j < pooled.size() && pooled[j] == pooled[i])
            ++j;
        double t = double(j - i);
        sum += t * t * t - t;
        i = j;
    }
    return sum;
}

} // namespace

std::vector<double> average_ranks(const std::vector<double>& values)
{
    std::vector<size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(values.size());
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j < order.size() && values[order[j]] == values[order[i]])
            ++j;
        double shared = (double(i + 1) + double(j)) / 2.0; // mean of 1-based ranks
        for (size_t k = i; k < j; ++k)
            ranks[order[k]] = shared;
        i = j;
    }
    return ranks;
}

// ---------------------------------------------------------------------------

TestResult levene(const GroupedSamples& samples, LeveneCenter center)
{
    const size_t k = samples.group_count();
    if (k < 2)
        throw insufficient_sample_error("Levene needs at least 2 groups");
    for (const auto& g : samples.groups) {
        if (g.values.size() < 2)
            throw insufficient_sample_error("Levene needs every group size >= 2 (group " + g.label + ")");
        require_finite(g.values, "Levene");
    }

    const size_t n_total = samples.total_count();

    // Z_ij = |X_ij - center_i|, compared across groups like a one-way ANOVA.
    std::vector<std::vector<double>> z(k);
    std::vector<double> z_group_mean(k);
    double z_grand = 0.0;
    for (size_t i = 0; i < k; ++i) {
        const auto& v = samples.groups[i].values;
        double c = center == LeveneCenter::Mean ? mean_of(v) : median_of(v);
        z[i].reserve(v.size());
        for (double x : v)
            z[i].push_back(std::fabs(x - c));
        z_group_mean[i] = mean_of(z[i]);
        z_grand += z_group_mean[i] * double(v.size());
    }
    z_grand /= double(n_total);

    double between = 0.0;
    double within = 0.0;
    for (size_t i = 0; i < k; ++i) {
        double d = z_group_mean[i] - z_grand;
        between += double(z[i].size()) * d * d;
        for (double zij : z[i]) {
            double e = zij - z_group_mean[i];
            within += e * e;
        }
    }

    TestResult result;
    result.test_name = center == LeveneCenter::Mean ? "levene_mean" : "levene_median";
    result.df1 = double(k - 1);
    result.df2 = double(n_total - k);
    if (within == 0.0) {
        // All deviations identical within every group: no evidence of
        // heterogeneity whatsoever.
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.statistic = (double(n_total - k) / double(k - 1)) * (between / within);
    result.p_value = f_sf(result.statistic, result.df1, result.df2);
    return result;
}

TestResult anova_oneway(const GroupedSamples& samples)
{
    const size_t k = samples.group_count();
    if (k < 2)
        throw insufficient_sample_error("ANOVA needs at least 2 groups");
    const size_t n_total = samples.total_count();
    if (n_total <= k)
        throw insufficient_sample_error("ANOVA needs N > k");
    for (const auto& g : samples.groups) {
        if (g.values.empty())
            throw insufficient_sample_error("ANOVA group " + g.label + " is empty");
        require_finite(g.values, "ANOVA");
    }

    double grand = 0.0;
    for (const auto& g : samples.groups)
        grand += std::accumulate(g.values.begin(), g.values.end(), 0.0);
    grand /= double(n_total);

    double ss_between = 0.0;
    double ss_within = 0.0;
    for (const auto& g : samples.groups) {
        double gm = mean_of(g.values);
        double d = gm - grand;
        ss_between += double(g.values.size()) * d * d;
        for (double x : g.values) {
            double e = x - gm;
            ss_within += e * e;
        }
    }

    if (ss_within == 0.0)
        throw degenerate_sample_error("ANOVA undefined with zero within-group variance everywhere");

    TestResult result;
    result.test_name = "anova_oneway";
    result.df1 = double(k - 1);
    result.df2 = double(n_total - k);
    result.statistic = (ss_between / result.df1) / (ss_within / result.df2);
    result.p_value = f_sf(result.statistic, result.df1, result.df2);
    return result;
}

TestResult kruskal_wallis(const GroupedSamples& samples)
{
    const size_t k = samples.group_count();
    if (k < 2)
        throw insufficient_sample_error("Kruskal-Wallis needs at least 2 groups");
    const size_t n_total = samples.total_count();
    if (n_total < 3)
        throw insufficient_sample_error("Kruskal-Wallis needs N >= 3");

    std::vector<double> pooled;
    pooled.reserve(n_total);
    for (const auto& g : samples.groups) {
        if (g.values.empty())
            throw insufficient_sample_error("Kruskal-Wallis group " + g.label + " is empty");
        require_finite(g.values, "Kruskal-Wallis");
        pooled.insert(pooled.end(), g.values.begin(), g.values.end());
    }

    const double tie_sum = tie_correction_sum(pooled);
    const double n = double(n_total);
    const double tie_factor = 1.0 - tie_sum / (n * n * n - n);
    if (tie_factor <= 0.0)
        throw degenerate_sample_error("Kruskal-Wallis undefined when all values are identical");

    const std::vector<double> ranks = average_ranks(pooled);

    // H = 12/(N(N+1)) * sum n_i * Rbar_i^2 - 3(N+1), tie-corrected.
    double h = 0.0;
    size_t cursor = 0;
    for (const auto& g : samples.groups) {
        double rank_sum = 0.0;
        for (size_t j = 0; j < g.values.size(); ++j)
            rank_sum += ranks[cursor++];
        double mean_rank = rank_sum / double(g.values.size());
        h += double(g.values.size()) * mean_rank * mean_rank;
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
    h /= tie_factor;

    TestResult result;
    result.test_name = "kruskal_wallis";
    result.statistic = h;
    result.df1 = double(k - 1);
    result.p_value = chi_squared_sf(h, result.df1);
    return result;
}

DunnResult dunn_posthoc(const GroupedSamples& samples, Adjust adjust)
{
    const size_t k = samples.group_count();
    if (k < 2)
        throw insufficient_sample_error("post-hoc comparison needs at least 2 groups");

    const size_t n_total = samples.total_count();
    std::vector<double> pooled;
    pooled.reserve(n_total);
    for (const auto& g : samples.groups) {
        if (g.values.empty())
            throw insufficient_sample_error("Dunn group " + g.label + " is empty");
        pooled.insert(pooled.end(), g.values.begin(), g.values.end());
    }

    const std::vector<double> ranks = average_ranks(pooled);
    std::vector<double> mean_rank(k);
    std::vector<double> sizes(k);
    size_t cursor = 0;
    for (size_t i = 0; i < k; ++i) {
        const auto& v = samples.groups[i].values;
        double sum = 0.0;
        for (size_t j = 0; j < v.size(); ++j)
            sum += ranks[cursor++];
        mean_rank[i] = sum / double(v.size());
        sizes[i] = double(v.size());
    }

    const double n = double(n_total);
    const double tie_sum = tie_correction_sum(pooled);
    // Variance of a mean-rank difference with tie correction.
    const double base_var = n * (n + 1.0) / 12.0 - tie_sum / (12.0 * (n - 1.0));
    const double m = double(k * (k - 1)) / 2.0;

    DunnResult result;
    result.posthoc_unnecessary = k < 3;
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            PairwiseResult pair;
            pair.label_a = samples.groups[i].label;
            pair.label_b = samples.groups[j].label;
            double se = std::sqrt(base_var * (1.0 / sizes[i] + 1.0 / sizes[j]));
            pair.z = se == 0.0 ? 0.0 : (mean_rank[i] - mean_rank[j]) / se;
            pair.p_raw = std::clamp(2.0 * normal_sf(std::fabs(pair.z)), 0.0, 1.0);
            pair.p_adjusted = adjust == Adjust::Bonferroni ? std::min(1.0, pair.p_raw * m) : pair.p_raw;
            result.pairs.push_back(std::move(pair));
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

namespace {

TestResult correlation_result(const char* name, double r, size_t n)
{
    TestResult result;
    result.test_name = name;
    result.statistic = std::clamp(r, -1.0, 1.0);
    result.df1 = double(n - 2);
    if (std::fabs(result.statistic) >= 1.0) {
        result.p_value = 0.0;
        return result;
    }
    double t = result.statistic * std::sqrt(double(n - 2) / (1.0 - result.statistic * result.statistic));
    result.p_value = std::clamp(2.0 * student_t_sf(std::fabs(t), double(n - 2)), 0.0, 1.0);
    return result;
}

double pearson_r(const std::vector<double>& x, const std::vector<double>& y)
{
    const size_t n = x.size();
    double mx = mean_of(x);
    double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw degenerate_sample_error("correlation undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

void check_xy(const std::vector<double>& x, const std::vector<double>& y, const char* who)
{
    if (x.size() != y.size())
        throw argument_error(std::string(who) + " requires equal-length inputs");
    if (x.size() < 3)
        throw insufficient_sample_error(std::string(who) + " needs at least 3 pairs");
    require_finite(x, who);
    require_finite(y, who);
}

} // namespace

TestResult pearson(const std::vector<double>& x, const std::vector<double>& y)
{
    check_xy(x, y, "pearson");
    return correlation_result("pearson", pearson_r(x, y), x.size());
}

TestResult spearman(const std::vector<double>& x, const std::vector<double>& y)
{
    check_xy(x, y, "spearman");
    return correlation_result("spearman", pearson_r(average_ranks(x), average_ranks(y)), x.size());
}

} // namespace daolens::stats
