// stats.hpp - the statistical battery: normality and variance gates,
// parametric and rank-based group comparisons, post-hoc pairs,
// correlations, box-plot summaries

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace daolens::stats {

struct Group {
    std::string label;
    std::vector<double> values;
};

struct GroupedSamples {
    std::vector<Group> groups;

    size_t total_count() const;
    size_t group_count() const { return groups.size(); }
};

struct TestResult {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 1.0;
    double df1 = 0.0; // primary degrees of freedom (0 when not applicable)
    double df2 = 0.0;
};

// Shapiro-Wilk W with the Royston AS R94 coefficients and p-value
// approximation; valid for 3 <= n <= 5000.
TestResult shapiro_wilk(const std::vector<double>& sample);

enum class LeveneCenter { Mean, Median };

// Levene's homogeneity-of-variances test; Median center is the
// Brown-Forsythe variant.
TestResult levene(const GroupedSamples& samples, LeveneCenter center = LeveneCenter::Mean);

TestResult anova_oneway(const GroupedSamples& samples);

// Kruskal-Wallis H with the tie correction and the chi-square p-value
// approximation (documented as approximate for group sizes under 5).
TestResult kruskal_wallis(const GroupedSamples& samples);

enum class Adjust { None, Bonferroni };

struct PairwiseResult {
    std::string label_a;
    std::string label_b;
    double z = 0.0;
    double p_raw = 1.0;
    double p_adjusted = 1.0;
};

// Dunn's rank-based post-hoc pairs with optional Bonferroni adjustment.
// For k = 2 a single pair is still returned, flagged unnecessary.
struct DunnResult {
    std::vector<PairwiseResult> pairs;
    bool posthoc_unnecessary = false; // k < 3
};
DunnResult dunn_posthoc(const GroupedSamples& samples, Adjust adjust = Adjust::Bonferroni);

TestResult pearson(const std::vector<double>& x, const std::vector<double>& y);
TestResult spearman(const std::vector<double>& x, const std::vector<double>& y);

struct BoxStats {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    double notch_low = 0.0;
    double notch_high = 0.0;
    std::vector<double> outliers;
};

// Quartiles by linear interpolation over (n-1)p positions; whiskers at the
// most extreme points within 1.5 IQR; notch = median +- 1.57 IQR / sqrt(n).
BoxStats box_stats(const std::vector<double>& sample);

// Midpoint-interpolated quantile used by box_stats, exposed for reuse.
double quantile_linear(std::vector<double> sorted_sample, double p);

// ---------------------------------------------------------------------------
// Gate logic: which omnibus test to run, and whether post-hoc follows.

struct GroupNormality {
    std::string label;
    std::optional<TestResult> shapiro; // absent when n < 3 (unassessed)
};

enum class OmnibusChoice { Anova, KruskalWallis };

struct TestPlan {
    std::vector<GroupNormality> normality;
    TestResult levene;
    OmnibusChoice choice = OmnibusChoice::KruskalWallis;
    TestResult omnibus;
    std::optional<DunnResult> posthoc;
    std::vector<std::string> audit; // one line per decision taken
};

// Runs the normality/homogeneity gates and the selected comparison at the
// given significance level. Post-hoc pairs are appended only when the
// omnibus test is significant and k >= 3.
TestPlan select_test(const GroupedSamples& samples, double alpha = 0.05,
                     LeveneCenter center = LeveneCenter::Mean);

// Average ranks over the pooled values (ties share their mean rank).
std::vector<double> average_ranks(const std::vector<double>& values);

} // namespace daolens::stats
