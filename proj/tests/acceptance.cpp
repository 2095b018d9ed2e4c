// Acceptance suite. Each criterion prints one PASS/FAIL line and the binary
// exits nonzero if any fails. Criteria are pinned here, not configurable:
//   1. 40-case KPI boundary table, 100% agreement, < 1s
//   2. statistical oracle suite, 1e-6 / 1e-4 tolerances, < 10s
//   3. hand-computable Kruskal-Wallis H = 3.857142857 +- 1e-9
//   4. gate fidelity on constructed normality/homogeneity fixtures
//   5. end-to-end oracle closure over 25 synthetic specs, < 60s
//   6. exact balance conservation on transfer fixtures
//   7. decoder round-trip over 1000 generated logs, malformed all counted
//   8. byte-identical report bundles across two full CLI runs
//   9. invariance properties, 100 randomized cases each

#include "daolens/abi/batch_decode.hpp"
#include "daolens/abi/codec.hpp"
#include "daolens/harmonize/balances.hpp"
#include "daolens/harmonize/harmonize.hpp"
#include "daolens/kpi/kpi.hpp"
#include "daolens/pipeline/config.hpp"
#include "daolens/pipeline/serialize.hpp"
#include "daolens/pipeline/stages.hpp"
#include "daolens/stats/distributions.hpp"
#include "daolens/stats/stats.hpp"
#include "daolens/synth/synth.hpp"

#include "helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>

using namespace daolens;

namespace {

int failures = 0;
int criterion_index = 0;

class Criterion {
public:
    explicit Criterion(std::string name)
        : name_(std::move(name))
        , start_(std::chrono::steady_clock::now())
    {
        ++criterion_index;
    }

    void check(bool ok, const std::string& detail)
    {
        if (!ok && problem_.empty())
            problem_ = detail;
        ok_ = ok_ && ok;
    }

    double elapsed_s() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    ~Criterion()
    {
        double secs = elapsed_s();
        if (ok_) {
            std::printf("PASS  [%d] %s  (%.2fs)\n", criterion_index, name_.c_str(), secs);
        } else {
            std::printf("FAIL  [%d] %s  (%.2fs)  -- %s\n", criterion_index, name_.c_str(), secs,
                        problem_.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }

private:
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    bool ok_ = true;
    std::string problem_;
};

// ---------------------------------------------------------------------------
// 1. KPI boundary table

struct BoundaryCase {
    const char* name;
    kpi::KpiOutcome outcome;
    const char* expected_level; // nullptr = expected not assessable
    double expected_score;
};

void criterion_kpi_boundaries()
{
    Criterion c("KPI boundary table: 40 hand-assigned cases classify exactly");
    using namespace kpi;

    auto P = [](uint64_t active, uint64_t total) { return assess_participation({ active, total }); };
    auto F = [](std::optional<double> usd, int64_t circ, int64_t total) {
        TreasuryMetrics m;
        m.treasury_usd = usd;
        m.circulating_supply = BigInt(circ);
        m.total_supply = BigInt(total);
        return assess_funds(m);
    };
    auto V = [](uint64_t approved, uint64_t total, double days) {
        VotingMetrics m;
        m.approved = approved;
        m.total_proposals = total;
        m.avg_duration_days = days;
        return assess_voting(m);
    };
    auto D = [](double share, std::optional<Level> participation, bool automated) {
        DecentralisationMetrics m;
        m.largest_holder_share = share;
        m.participation_level = participation;
        m.fully_automated = automated;
        return assess_decentralisation(m);
    };

    const BoundaryCase cases[] = {
        // participation: Low < 10%, Medium [10%, 40%], High > 40%
        { "participation 0%", P(0, 100), "Low", 1 },
        { "participation 9.99%", P(999, 10'000), "Low", 1 },
        { "participation exactly 10%", P(1'000, 10'000), "Medium", 2 },
        { "participation 11%", P(1'100, 10'000), "Medium", 2 },
        { "participation 39.99%", P(3'999, 10'000), "Medium", 2 },
        { "participation exactly 40%", P(4'000, 10'000), "Medium", 2 },
        { "participation 40.01%", P(4'001, 10'000), "High", 3 },
        { "participation 100%", P(100, 100), "High", 3 },
        { "participation capped above 100%", P(150, 100), "High", 3 },
        { "participation no members", P(0, 0), nullptr, 0 },
        // funds: Low < $100M; band [$100M, $1B] split at 50% circulation; High > $1B
        { "funds $0", F(0.0, 50, 100), "Low", 0.75 },
        { "funds $99,999,999", F(99'999'999.0, 90, 100), "Low", 0.75 },
        { "funds exactly $100M circ 50%", F(1e8, 50, 100), "Medium-Low", 1.5 },
        { "funds exactly $100M circ 51%", F(1e8, 51, 100), "Medium-High", 2.25 },
        { "funds $500M circ 49%", F(5e8, 49, 100), "Medium-Low", 1.5 },
        { "funds $500M circ exactly 50%", F(5e8, 50, 100), "Medium-Low", 1.5 },
        { "funds $500M circ 60%", F(5e8, 60, 100), "Medium-High", 2.25 },
        { "funds exactly $1B circ 10%", F(1e9, 10, 100), "Medium-Low", 1.5 },
        { "funds $1B + 1 circ 10%", F(1e9 + 1, 10, 100), "High", 3 },
        { "funds $2B circ 10%", F(2e9, 10, 100), "High", 3 },
        { "funds absent valuation", F(std::nullopt, 50, 100), nullptr, 0 },
        // voting: window 3-14 days gates everything (out-of-range is Low); approval 30% / 70%
        { "voting 29% at 7d", V(29, 100, 7), "Low", 1 },
        { "voting exactly 30% at 7d", V(30, 100, 7), "Medium", 2 },
        { "voting exactly 70% at 7d", V(70, 100, 7), "Medium", 2 },
        { "voting 71% at 7d", V(71, 100, 7), "High", 3 },
        { "voting 88% at 7d", V(88, 100, 7), "High", 3 },
        { "voting 20% at 5d", V(20, 100, 5), "Low", 1 },
        { "voting 50% at exactly 3d", V(50, 100, 3), "Medium", 2 },
        { "voting 50% at exactly 14d", V(50, 100, 14), "Medium", 2 },
        { "voting 50% at 2.9d", V(50, 100, 2.9), "Low", 1 },
        { "voting 50% at 20d", V(50, 100, 20), "Low", 1 },
        { "voting 90% at 15d", V(90, 100, 15), "Low", 1 },
        { "voting no proposals", V(0, 0, 0), nullptr, 0 },
        // decentralisation: 10% / 33% / 66% with the conservative middle-band fallback
        { "share 70%", D(0.70, Level::High, true), "Low", 0.6 },
        { "share exactly 66%", D(0.66, Level::High, true), "Low", 0.6 },
        { "share 65.9%", D(0.659, Level::High, true), "Medium-Low", 1.2 },
        { "share exactly 33%", D(0.33, Level::High, true), "Medium-Low", 1.2 },
        { "share 20% participation High automated", D(0.20, Level::High, true), "Medium-High", 2.4 },
        { "share 20% participation Medium manual", D(0.20, Level::Medium, false), "Medium", 1.8 },
        { "share 20% participation Low fallback", D(0.20, Level::Low, true), "Medium-Low", 1.2 },
        { "share exactly 10% participation Low fallback", D(0.10, Level::Low, false), "Medium-Low", 1.2 },
        { "share 9.99%", D(0.0999, Level::Low, false), "High", 3 },
        { "share 0%", D(0.0, Level::Low, false), "High", 3 },
    };

    size_t total = std::size(cases);
    c.check(total >= 40, "table shrank below 40 cases");
    for (const auto& b : cases) {
        if (b.expected_level == nullptr) {
            c.check(!b.outcome.assessable(), std::string(b.name) + ": expected not assessable");
            continue;
        }
        if (!b.outcome.assessable()) {
            c.check(false, std::string(b.name) + ": unexpectedly not assessable");
            continue;
        }
        c.check(std::string(kpi::to_string(b.outcome.assessment->level)) == b.expected_level,
                std::string(b.name) + ": level " + kpi::to_string(b.outcome.assessment->level));
        c.check(b.outcome.assessment->score == b.expected_score,
                std::string(b.name) + ": score " + std::to_string(b.outcome.assessment->score));
    }
    c.check(c.elapsed_s() < 1.0, "boundary table exceeded 1s");
}

// ---------------------------------------------------------------------------
// 2. statistical oracle suite

void criterion_stat_oracles()
{
    Criterion c("Statistical oracle suite: >=20 fixtures per test within 1e-6 / 1e-4");
    constexpr double kStatTol = 1e-6;
    constexpr double kPvalTol = 1e-4;

    auto groups_of = [](const testutil::json& j) {
        stats::GroupedSamples samples;
        int i = 0;
        for (const auto& g : j)
            samples.groups.push_back({ std::to_string(i++), g.get<std::vector<double>>() });
        return samples;
    };
    auto close = [](double a, double b, double tol) { return std::fabs(a - b) < tol; };

    {
        auto cases = testutil::load_fixture("stats/shapiro_cases.json");
        c.check(cases.size() >= 20, "shapiro fixture count");
        for (const auto& f : cases) {
            auto r = stats::shapiro_wilk(f.at("sample").get<std::vector<double>>());
            c.check(close(r.statistic, f.at("W").get<double>(), kStatTol), "shapiro W " + f.at("name").dump());
            c.check(close(r.p_value, f.at("p").get<double>(), kPvalTol), "shapiro p " + f.at("name").dump());
        }
    }
    {
        auto cases = testutil::load_fixture("stats/levene_cases.json");
        size_t mean_count = 0, median_count = 0;
        for (const auto& f : cases) {
            auto center = f.at("center") == "mean" ? stats::LeveneCenter::Mean : stats::LeveneCenter::Median;
            (center == stats::LeveneCenter::Mean ? mean_count : median_count) += 1;
            auto r = stats::levene(groups_of(f.at("groups")), center);
            c.check(close(r.statistic, f.at("W").get<double>(), kStatTol), "levene W " + f.at("name").dump());
            c.check(close(r.p_value, f.at("p").get<double>(), kPvalTol), "levene p " + f.at("name").dump());
        }
        c.check(cases.size() >= 20 && mean_count >= 5 && median_count >= 5, "levene fixture coverage");
    }
    {
        auto cases = testutil::load_fixture("stats/anova_cases.json");
        c.check(cases.size() >= 20, "anova fixture count");
        for (const auto& f : cases) {
            auto r = stats::anova_oneway(groups_of(f.at("groups")));
            double expected = f.at("F").get<double>();
            c.check(close(r.statistic, expected, kStatTol * std::max(1.0, std::fabs(expected))),
                    "anova F " + f.at("name").dump());
            c.check(close(r.p_value, f.at("p").get<double>(), kPvalTol), "anova p " + f.at("name").dump());
        }
    }
    {
        auto cases = testutil::load_fixture("stats/kruskal_cases.json");
        c.check(cases.size() >= 20, "kruskal fixture count");
        for (const auto& f : cases) {
            auto r = stats::kruskal_wallis(groups_of(f.at("groups")));
            c.check(close(r.statistic, f.at("H").get<double>(), kStatTol), "kruskal H " + f.at("name").dump());
            c.check(close(r.p_value, f.at("p").get<double>(), kPvalTol), "kruskal p " + f.at("name").dump());
        }
    }
    {
        auto cases = testutil::load_fixture("stats/dunn_cases.json");
        c.check(cases.size() >= 20, "dunn fixture count");
        for (const auto& f : cases) {
            auto result = stats::dunn_posthoc(groups_of(f.at("groups")), stats::Adjust::Bonferroni);
            const auto& pairs = f.at("pairs");
            c.check(result.pairs.size() == pairs.size(), "dunn pair count " + f.at("name").dump());
            for (size_t i = 0; i < result.pairs.size() && i < pairs.size(); ++i) {
                c.check(close(result.pairs[i].z, pairs[i].at("z").get<double>(), kStatTol),
                        "dunn z " + f.at("name").dump());
                c.check(close(result.pairs[i].p_adjusted, pairs[i].at("p_bonferroni").get<double>(), kPvalTol),
                        "dunn p " + f.at("name").dump());
            }
        }
    }
    {
        auto cases = testutil::load_fixture("stats/pearson_cases.json");
        c.check(cases.size() >= 20, "pearson fixture count");
        for (const auto& f : cases) {
            auto r = stats::pearson(f.at("x").get<std::vector<double>>(), f.at("y").get<std::vector<double>>());
            c.check(close(r.statistic, f.at("r").get<double>(), kStatTol), "pearson r " + f.at("name").dump());
            c.check(close(r.p_value, f.at("p").get<double>(), kPvalTol), "pearson p " + f.at("name").dump());
        }
    }
    {
        auto cases = testutil::load_fixture("stats/spearman_cases.json");
        c.check(cases.size() >= 20, "spearman fixture count");
        for (const auto& f : cases) {
            auto r = stats::spearman(f.at("x").get<std::vector<double>>(), f.at("y").get<std::vector<double>>());
            c.check(close(r.statistic, f.at("rho").get<double>(), kStatTol), "spearman rho " + f.at("name").dump());
            c.check(close(r.p_value, f.at("p").get<double>(), kPvalTol), "spearman p " + f.at("name").dump());
        }
    }
    c.check(c.elapsed_s() < 10.0, "oracle suite exceeded 10s");
}

// ---------------------------------------------------------------------------
// 3. hand-computable Kruskal-Wallis

void criterion_kw_hand_check()
{
    Criterion c("Hand-computable KW: {1,2,3} vs {4,5,6} gives H = 3.857142857...");
    stats::GroupedSamples g;
    g.groups = { { "a", { 1, 2, 3 } }, { "b", { 4, 5, 6 } } };
    double h = stats::kruskal_wallis(g).statistic;
    // 12/42 * (3*2^2 + 3*5^2) - 21 = 27/7
    c.check(std::fabs(h - 27.0 / 7.0) <= 1e-9, "H = " + std::to_string(h));
}

// ---------------------------------------------------------------------------
// 4. gate fidelity

void criterion_gate_fidelity()
{
    Criterion c("Gate fidelity: normality/homogeneity violations route the omnibus correctly");
    synth::SplitMix64 rng(1'618);
    auto normal_ish = [&](double mean, double sd, size_t n) {
        std::vector<double> out;
        for (size_t i = 0; i < n; ++i) {
            double sum = 0;
            for (int j = 0; j < 12; ++j)
                sum += rng.unit();
            out.push_back(mean + sd * (sum - 6.0));
        }
        return out;
    };

    // (a) normality violated -> Kruskal-Wallis
    {
        std::vector<double> skewed;
        for (int i = 0; i < 50; ++i)
            skewed.push_back(std::exp(rng.in(0, 4)));
        stats::GroupedSamples g;
        g.groups = { { "skewed", skewed }, { "normal", normal_ish(20, 2, 30) },
                     { "normal2", normal_ish(22, 2, 30) } };
        auto plan = stats::select_test(g, 0.05);
        c.check(plan.choice == stats::OmnibusChoice::KruskalWallis, "normality violation chose ANOVA");
    }
    // (b) homogeneity violated (normal groups, very different spreads) -> Kruskal-Wallis
    {
        stats::GroupedSamples g;
        g.groups = { { "tight", normal_ish(0, 1, 40) }, { "wide", normal_ish(0, 30, 40) },
                     { "wider", normal_ish(0, 60, 40) } };
        auto plan = stats::select_test(g, 0.05);
        c.check(plan.levene.p_value < 0.05, "homogeneity fixture failed to violate Levene");
        c.check(plan.choice == stats::OmnibusChoice::KruskalWallis, "homogeneity violation chose ANOVA");
    }
    // (c) neither violated -> ANOVA (exact normal scores pass the gates by
    // construction, keeping the fixture deterministic)
    {
        auto normal_scores = [](double mean, double sd, size_t n) {
            std::vector<double> out;
            for (size_t i = 0; i < n; ++i)
                out.push_back(mean + sd * stats::normal_quantile((double(i + 1) - 0.375) / (double(n) + 0.25)));
            return out;
        };
        stats::GroupedSamples g;
        g.groups = { { "a", normal_scores(0, 2, 35) }, { "b", normal_scores(0.5, 2, 35) },
                     { "c", normal_scores(1.0, 2, 35) } };
        auto plan = stats::select_test(g, 0.05);
        c.check(plan.choice == stats::OmnibusChoice::Anova, "clean fixture rejected ANOVA");
    }
    // (d) Dunn appended exactly when the omnibus is significant and k >= 3
    {
        stats::GroupedSamples separated;
        separated.groups = { { "a", normal_ish(0, 1, 25) }, { "b", normal_ish(8, 1, 25) },
                             { "c", normal_ish(16, 1, 25) } };
        auto plan = stats::select_test(separated, 0.05);
        c.check(plan.omnibus.p_value < 0.05 && plan.posthoc.has_value(), "significant k=3 without Dunn");

        stats::GroupedSamples two;
        two.groups = { { "a", normal_ish(0, 1, 25) }, { "b", normal_ish(8, 1, 25) } };
        auto plan2 = stats::select_test(two, 0.05);
        c.check(plan2.omnibus.p_value < 0.05 && !plan2.posthoc.has_value(), "k=2 got a post-hoc");

        stats::GroupedSamples same;
        same.groups = { { "a", normal_ish(0, 2, 25) }, { "b", normal_ish(0, 2, 25) },
                        { "c", normal_ish(0, 2, 25) } };
        auto plan3 = stats::select_test(same, 0.05);
        if (plan3.omnibus.p_value >= 0.05)
            c.check(!plan3.posthoc.has_value(), "non-significant omnibus got a post-hoc");
    }
}

// ---------------------------------------------------------------------------
// 5. end-to-end oracle closure

void criterion_oracle_closure()
{
    Criterion c("End-to-end oracle closure: 25 synthetic specs reproduce ground truth");
    synth::SplitMix64 rng(271'828);

    testutil::TempDir dir("acceptance-closure");
    std::vector<synth::SynthSpec> specs;
    for (int i = 0; i < 25; ++i) {
        synth::SynthSpec spec;
        spec.seed = 5'000 + uint64_t(i) * 17;
        spec.dao_id = "closure-" + std::to_string(i);
        spec.member_count = 30 + rng.below(300);
        spec.participation_target = rng.in(0.0, 0.9);
        spec.proposal_count = rng.below(18);
        spec.approval_target = rng.in(0.0, 1.0);
        spec.duration_days_min = rng.in(1.0, 4.0);
        spec.duration_days_max = spec.duration_days_min + rng.in(0.5, 12.0);
        switch (rng.below(3)) {
        case 0: spec.holder_distribution = synth::HolderDistribution::Uniform; break;
        case 1:
            spec.holder_distribution = synth::HolderDistribution::Pareto;
            spec.pareto_alpha = rng.in(1.1, 3.0);
            break;
        default:
            spec.holder_distribution = synth::HolderDistribution::SingleWhale;
            spec.whale_share = rng.in(0.15, 0.85);
            break;
        }
        spec.automated = rng.below(2) == 1;
        spec.treasury_usd = std::pow(10.0, rng.in(6.0, 10.0));
        if (spec.proposal_count == 0)
            spec.participation_target = 0.0; // keep the spec feasible
        specs.push_back(spec);
    }

    auto truths = synth::generate_project(specs, dir.path());
    auto config = pipeline::ProjectConfig::load(dir.path() / "config.json");
    config.validate();
    pipeline::StagePaths paths { dir.path() / "out" };
    pipeline::run_all(config, paths, {});

    for (const auto& truth : truths) {
        auto doc = pipeline::load_json_file(paths.kpi() / (truth.dao_id + ".json"));
        auto record = pipeline::dao_record_from_json(doc);
        auto assessment = pipeline::kpi_assessment_from_json(doc.at("kpi"));
        const std::string tag = " (" + truth.dao_id + ")";

        c.check(record.total_members == truth.total_members, "total_members" + tag);
        c.check(record.active_members == truth.active_members, "active_members" + tag);
        c.check(record.proposals.size() == truth.total_proposals, "proposal count" + tag);
        c.check(record.approved_count() == truth.approved, "approved count" + tag);
        c.check(record.circulating_supply == truth.circulating_supply, "circulating supply" + tag);
        c.check(harmonize::to_string(record.tier) == harmonize::to_string(truth.tier), "tier" + tag);
        c.check(record.validation.anomalies() == 0, "unexpected anomalies" + tag);

        auto close12 = [](double a, double b) { return std::fabs(a - b) <= 1e-12; };
        if (truth.total_members > 0)
            c.check(close12(record.participation_rate().value_or(-1), truth.participation_rate),
                    "participation rate" + tag);
        if (truth.total_proposals > 0) {
            c.check(close12(record.approval_rate().value_or(-1), truth.approval_rate), "approval rate" + tag);
            c.check(close12(record.avg_duration_days().value_or(-1), truth.avg_duration_days),
                    "avg duration" + tag);
        }
        c.check(close12(record.largest_holder_share, truth.largest_holder_share), "holder share" + tag);
        c.check(close12(record.circulating_pct(), truth.circulating_pct), "circulating pct" + tag);
        c.check(close12(record.treasury_usd.value_or(-1), truth.treasury_usd), "treasury" + tag);

        auto level_eq = [&](const kpi::KpiOutcome& got, const synth::LevelScore& expected, const char* what) {
            if (!got.assessable()) {
                c.check(false, std::string(what) + " not assessable" + tag);
                return;
            }
            c.check(kpi::to_string(got.assessment->level) == expected.level,
                    std::string(what) + " level" + tag);
            c.check(got.assessment->score == expected.score, std::string(what) + " score" + tag);
        };
        if (truth.total_proposals > 0) {
            level_eq(assessment.voting, truth.voting, "voting");
            level_eq(assessment.participation, truth.participation, "participation");
            level_eq(assessment.funds, truth.funds, "funds");
            level_eq(assessment.decentralisation, truth.decentralisation, "decentralisation");
            c.check(assessment.composite && std::fabs(*assessment.composite - truth.composite) <= 1e-12,
                    "composite" + tag);
        } else {
            // no proposals: voting is not assessable, composite absent
            c.check(!assessment.voting.assessable(), "voting unexpectedly assessable" + tag);
            c.check(!assessment.composite.has_value(), "composite present without voting" + tag);
        }
    }
    c.check(c.elapsed_s() < 60.0, "closure exceeded 60s");
}

// ---------------------------------------------------------------------------
// 6. balance conservation

void criterion_balance_conservation()
{
    Criterion c("Balance conservation: sum(balances) + burned = minted, exact");
    synth::SplitMix64 rng(161'803);

    for (int fixture = 0; fixture < 8; ++fixture) {
        std::vector<std::string> addresses;
        for (int i = 0; i < 40; ++i) {
            std::string a = "0x";
            static const char digits[] = "0123456789abcdef";
            for (int d = 0; d < 40; ++d)
                a += digits[rng.below(16)];
            addresses.push_back(a);
        }
        std::vector<abi::TokenTransfer> transfers;
        std::map<std::string, BigInt> running;
        uint64_t block = 1;
        uint32_t index = 0;
        for (int i = 0; i < 3'000; ++i) {
            if (rng.below(3) == 0)
                ++block, index = 0;
            abi::TokenTransfer t;
            t.block_number = block;
            t.log_index = index++;
            if (rng.below(3) == 0) {
                t.from = kZeroAddress;
                t.to = addresses[rng.below(addresses.size())];
                // amounts beyond 2^64 keep the arithmetic honest
                t.amount = BigInt("123456789012345678901234567890") * BigInt(1 + rng.below(1'000));
                running[t.to] += t.amount;
            } else {
                t.from = addresses[rng.below(addresses.size())];
                if (running[t.from] == 0)
                    continue;
                t.amount = running[t.from] / BigInt(1 + rng.below(4));
                if (t.amount == 0)
                    continue;
                t.to = rng.below(8) == 0 ? kZeroAddress : addresses[rng.below(addresses.size())];
                running[t.from] -= t.amount;
                if (t.to != kZeroAddress)
                    running[t.to] += t.amount;
            }
            transfers.push_back(std::move(t));
        }

        harmonize::BalanceTotals totals;
        auto balances = harmonize::reconstruct_balances(transfers, block, &totals);
        BigInt sum = 0;
        for (const auto& [_, bal] : balances)
            sum += bal;
        c.check(sum + totals.burned == totals.minted,
                "fixture " + std::to_string(fixture) + ": conservation violated");

        auto serial = harmonize::reconstruct_balances_serial(transfers, block);
        c.check(balances == serial, "fixture " + std::to_string(fixture) + ": parallel != serial");
    }
}

// ---------------------------------------------------------------------------
// 7. decoder round-trip

void criterion_decoder_roundtrip()
{
    Criterion c("Decoder round-trip: 1000 generated logs byte-identical; malformed rejected");
    synth::SplitMix64 rng(314'159);

    auto specs = abi::parse_abi(testutil::read_file(testutil::source_root() / "share" / "abi"
                                                    / "governor_bravo_abi.json"));
    const abi::AbiEventSpec* vote_spec = nullptr;
    for (const auto& s : specs)
        if (s.name == "VoteCast")
            vote_spec = &s;
    c.check(vote_spec != nullptr, "Bravo VoteCast spec missing");

    auto random_address = [&] {
        std::string a = "0x";
        static const char digits[] = "0123456789abcdef";
        for (int d = 0; d < 40; ++d)
            a += digits[rng.below(16)];
        return a;
    };

    abi::SpecRegistry registry;
    registry.add(*vote_spec);
    registry.add(abi::erc20_transfer_spec());

    std::vector<chain::RawLog> good;
    for (int i = 0; i < 1'000; ++i) {
        chain::RawLog log;
        log.address = "0x00000000000000000000000000000000000000aa";
        log.block_number = uint64_t(i);
        log.tx_hash = "0x00";
        const bool vote = rng.below(2) == 1;
        std::string reason(rng.below(60), 'r');
        abi::EncodedLog enc = vote
            ? abi::encode_log(*vote_spec,
                              { abi::Value::from_text(random_address()), abi::Value::from_uint(BigInt(rng.below(500))),
                                abi::Value::from_uint(BigInt(rng.below(3))),
                                abi::Value::from_uint(BigInt(rng.next())), abi::Value::from_text(reason) })
            : abi::encode_log(abi::erc20_transfer_spec(),
                              { abi::Value::from_text(random_address()), abi::Value::from_text(random_address()),
                                abi::Value::from_uint(BigInt(rng.next())) });
        log.topics = enc.topics;
        log.data = enc.data;
        good.push_back(std::move(log));
    }

    // round-trip every log byte-exactly
    for (const auto& log : good) {
        const abi::AbiEventSpec* spec = registry.find(log.topics[0]);
        if (!spec) {
            c.check(false, "registry miss");
            break;
        }
        abi::DecodedEvent decoded = abi::decode_log(*spec, log);
        std::vector<abi::Value> values;
        for (const auto& p : decoded.params)
            values.push_back(p.value);
        abi::EncodedLog re = abi::encode_log(*spec, values);
        if (re.topics != log.topics || re.data != log.data) {
            c.check(false, "round-trip mismatch at block " + std::to_string(log.block_number));
            break;
        }
    }

    // malformed variants must all be rejected and counted
    std::vector<chain::RawLog> malformed;
    for (int i = 0; i < 200; ++i) {
        chain::RawLog log = good[rng.below(good.size())];
        switch (rng.below(4)) {
        case 0: // truncate to a non-multiple of 32
            log.data.resize(log.data.size() / 2 + 1);
            break;
        case 1: // drop a topic
            log.topics.pop_back();
            break;
        case 2:
            if (log.data.size() >= 128) {
                // VoteCast: head slot 3 is the reason offset; blow it out of bounds
                for (int b = 96; b < 104; ++b)
                    log.data[size_t(b)] = 0x7f;
            } else {
                // Transfer has no tail; a stray byte breaks the 32-byte rule
                log.data.push_back(0x00);
            }
            break;
        default: // strip the data entirely
            log.data.clear();
            break;
        }
        malformed.push_back(std::move(log));
    }
    abi::BatchResult result = abi::decode_batch_serial(registry, malformed);
    c.check(result.report.logs_in == malformed.size(), "malformed batch size");
    c.check(result.report.decoded == 0, std::to_string(result.report.decoded) + " malformed logs decoded");
    c.check(result.report.dropped() == malformed.size(), "malformed drop count incomplete");
}

// ---------------------------------------------------------------------------
// 8. determinism across two full CLI runs

void criterion_cli_determinism()
{
    Criterion c("Determinism: two `all` runs over one synth project emit identical bundles");
    testutil::TempDir dir("acceptance-determinism");
    std::string cli = DAOLENS_CLI_PATH;
    std::string project = (dir.path() / "proj").string();

    auto run = [&](const std::string& cmd) {
        int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
        return rc == 0;
    };

    c.check(run(cli + " synth --seed 1337 --daos 4 --output " + project), "synth run failed");
    c.check(run(cli + " all --config " + project + "/config.json --output " + project + "/out1"),
            "first all run failed");
    c.check(run(cli + " all --config " + project + "/config.json --output " + project + "/out2"),
            "second all run failed");

    std::filesystem::path report1 = std::filesystem::path(project) / "out1" / "report";
    std::filesystem::path report2 = std::filesystem::path(project) / "out2" / "report";
    if (!std::filesystem::is_directory(report1) || !std::filesystem::is_directory(report2)) {
        c.check(false, "report directories missing");
        return;
    }
    size_t compared = 0;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(report1)) {
        if (!entry.is_regular_file())
            continue;
        auto rel = std::filesystem::relative(entry.path(), report1);
        ++compared;
        if (testutil::read_file(entry.path()) != testutil::read_file(report2 / rel)) {
            c.check(false, "bundle differs at " + rel.string());
            return;
        }
    }
    c.check(compared >= 10, "suspiciously small report bundle (" + std::to_string(compared) + " files)");
}

// ---------------------------------------------------------------------------
// 9. invariance properties

void criterion_invariances()
{
    Criterion c("Invariance properties: KW/Spearman monotone, Shapiro-Wilk affine (100 cases each)");
    synth::SplitMix64 rng(577'215);

    // Kruskal-Wallis under strictly monotone transforms
    for (int round = 0; round < 100; ++round) {
        stats::GroupedSamples g;
        size_t k = 2 + rng.below(3);
        for (size_t i = 0; i < k; ++i) {
            stats::Group grp;
            grp.label = std::to_string(i);
            size_t n = 4 + rng.below(25);
            for (size_t j = 0; j < n; ++j)
                grp.values.push_back(rng.in(-20, 20));
            g.groups.push_back(std::move(grp));
        }
        double h0 = stats::kruskal_wallis(g).statistic;
        double scale = rng.in(0.5, 5);
        stats::GroupedSamples t = g;
        for (auto& grp : t.groups)
            for (auto& v : grp.values)
                v = std::exp(v / 10.0) * scale;
        if (std::fabs(stats::kruskal_wallis(t).statistic - h0) > 1e-9) {
            c.check(false, "KW monotone invariance broke at round " + std::to_string(round));
            break;
        }
    }

    // Spearman under strictly monotone transforms
    for (int round = 0; round < 100; ++round) {
        size_t n = 5 + rng.below(60);
        std::vector<double> x, y;
        for (size_t i = 0; i < n; ++i) {
            x.push_back(rng.in(-30, 30));
            y.push_back(rng.in(-30, 30));
        }
        double rho = stats::spearman(x, y).statistic;
        std::vector<double> tx, ty;
        for (double v : x)
            tx.push_back(v * v * v + 2 * v); // strictly increasing
        for (double v : y)
            ty.push_back(std::atan(v));
        if (std::fabs(stats::spearman(tx, ty).statistic - rho) > 1e-9) {
            c.check(false, "Spearman monotone invariance broke at round " + std::to_string(round));
            break;
        }
    }

    // Shapiro-Wilk under affine maps
    for (int round = 0; round < 100; ++round) {
        size_t n = 4 + rng.below(120);
        std::vector<double> x;
        for (size_t i = 0; i < n; ++i)
            x.push_back(rng.in(-5, 5) + rng.in(0, 1));
        double a = rng.in(0.01, 100) * (rng.below(2) ? 1.0 : -1.0);
        double b = rng.in(-1'000, 1'000);
        std::vector<double> y;
        for (double v : x)
            y.push_back(a * v + b);
        double w0 = stats::shapiro_wilk(x).statistic;
        double w1 = stats::shapiro_wilk(y).statistic;
        if (std::fabs(w0 - w1) > 1e-10) {
            c.check(false, "Shapiro-Wilk affine invariance broke at round " + std::to_string(round));
            break;
        }
    }
}

} // namespace

int main()
{
    std::printf("daolens acceptance suite\n");
    criterion_kpi_boundaries();
    criterion_stat_oracles();
    criterion_kw_hand_check();
    criterion_gate_fidelity();
    criterion_oracle_closure();
    criterion_balance_conservation();
    criterion_decoder_roundtrip();
    criterion_cli_determinism();
    criterion_invariances();

    if (failures > 0) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
