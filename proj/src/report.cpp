#include "daolens/report/report.hpp"

#include "daolens/common/errors.hpp"
#include "daolens/pipeline/serialize.hpp"
#include "daolens/report/svg.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace daolens::report {

namespace {

const char* kKpiNames[4] = { "participation", "funds", "voting", "decentralisation" };

const kpi::KpiOutcome& outcome_of(const DaoReportEntry& e, int which)
{
    switch (which) {
    case 0: return e.kpi.participation;
    case 1: return e.kpi.funds;
    case 2: return e.kpi.voting;
    default: return e.kpi.decentralisation;
    }
}

// The underlying metric each KPI category groups on. The decentralisation
// comparison uses proposer concentration in percent, matching the figure it
// feeds.
std::optional<double> metric_of(const DaoReportEntry& e, int which)
{
    switch (which) {
    case 0: return e.record.participation_rate();
    case 1: return e.record.treasury_usd;
    case 2: return e.record.approval_rate();
    default: return e.record.proposer_concentration * 100.0;
    }
}

const char* kMetricNames[4] = { "participation_rate", "treasury_usd", "approval_rate",
                                "proposer_concentration_pct" };

double median_sorted(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

} // namespace

EcosystemSummary summarize_ecosystem(const std::vector<DaoReportEntry>& entries)
{
    if (entries.empty())
        throw argument_error("ecosystem summary needs at least one DAO");

    EcosystemSummary summary;
    summary.dao_count = entries.size();

    std::set<std::pair<int64_t, std::string>> voters;
    for (const auto& e : entries) {
        summary.total_proposals += e.record.proposals.size();
        summary.total_members += e.record.total_members;
        for (const auto& v : e.record.voters)
            voters.insert({ e.record.chain_id, v });
    }
    summary.unique_voters = voters.size();

    for (int k = 0; k < 4; ++k) {
        std::map<std::string, std::vector<double>> per_level;
        for (const auto& e : entries) {
            const auto& outcome = outcome_of(e, k);
            if (!outcome.assessable())
                continue;
            std::string level = kpi::to_string(outcome.assessment->level);
            ++summary.level_histograms[kKpiNames[k]][level];
            if (auto metric = metric_of(e, k))
                per_level[level].push_back(*metric);
        }
        for (const auto& [level, values] : per_level)
            if (!values.empty())
                summary.category_medians[kKpiNames[k]][level] = median_sorted(values);
    }
    return summary;
}

// ---------------------------------------------------------------------------

StatReport build_stat_report(const std::vector<DaoReportEntry>& entries, double alpha)
{
    StatReport report;
    report.alpha = alpha;

    for (int k = 0; k < 4; ++k) {
        KpiStatAnalysis analysis;
        analysis.kpi = kKpiNames[k];
        analysis.metric_name = kMetricNames[k];

        std::map<std::string, std::vector<double>> per_level;
        for (const auto& e : entries) {
            const auto& outcome = outcome_of(e, k);
            auto metric = metric_of(e, k);
            if (!outcome.assessable() || !metric)
                continue;
            per_level[kpi::to_string(outcome.assessment->level)].push_back(*metric);
        }

        for (const auto& [level, values] : per_level) {
            if (values.size() < 2)
                continue; // a single observation cannot enter the comparison
            analysis.groups.groups.push_back({ level, values });
        }

        if (analysis.groups.group_count() < 2) {
            analysis.skip_reason = "fewer than 2 populated level groups";
        } else {
            try {
                analysis.plan = stats::select_test(analysis.groups, alpha);
            } catch (const degenerate_sample_error& e) {
                analysis.skip_reason = e.what();
            }
        }
        report.analyses.push_back(std::move(analysis));
    }

    // The two cross-metric relationships reported alongside the categories.
    auto add_correlation = [&](const std::string& label, bool rank,
                               const std::vector<double>& x, const std::vector<double>& y) {
        CorrelationEntry entry;
        entry.label = label;
        try {
            entry.result = rank ? stats::spearman(x, y) : stats::pearson(x, y);
        } catch (const std::runtime_error& e) {
            entry.skip_reason = e.what();
        } catch (const std::invalid_argument& e) {
            entry.skip_reason = e.what();
        }
        report.correlations.push_back(std::move(entry));
    };

    std::vector<double> treasury, circulating;
    for (const auto& e : entries) {
        if (e.record.treasury_usd) {
            treasury.push_back(*e.record.treasury_usd);
            circulating.push_back(e.record.circulating_pct());
        }
    }
    add_correlation("treasury_vs_circulating_pearson", false, treasury, circulating);

    std::vector<double> share, participation;
    for (const auto& e : entries) {
        if (auto rate = e.record.participation_rate()) {
            share.push_back(e.record.largest_holder_share);
            participation.push_back(*rate);
        }
    }
    add_correlation("holder_share_vs_participation_pearson", false, share, participation);
    add_correlation("holder_share_vs_participation_spearman", true, share, participation);

    return report;
}

// ---------------------------------------------------------------------------
// Emission

namespace {

using pipeline::json;

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string level_or_na(const kpi::KpiOutcome& o)
{
    return o.assessable() ? kpi::to_string(o.assessment->level) : "n/a";
}

std::string score_or_na(const kpi::KpiOutcome& o)
{
    return o.assessable() ? format_number(o.assessment->score) : "n/a";
}

std::string opt_number(const std::optional<double>& v)
{
    return v ? format_number(*v) : "n/a";
}

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out)
        throw data_integrity_error("cannot write " + path.string());
}

std::string summary_csv(const std::vector<DaoReportEntry>& entries)
{
    std::string csv = "dao_id,chain_id,tier,total_members,active_members,participation_rate,"
                      "treasury_usd,circulating_pct,total_proposals,approved,approval_rate,"
                      "avg_duration_days,largest_holder_share,proposer_concentration,fully_automated,"
                      "participation_level,participation_score,funds_level,funds_score,"
                      "voting_level,voting_score,decentralisation_level,decentralisation_score,composite\n";
    for (const auto& e : entries) {
        const auto& r = e.record;
        csv += csv_escape(r.dao_id) + "," + std::to_string(r.chain_id) + "," + harmonize::to_string(r.tier) + ","
            + std::to_string(r.total_members) + "," + std::to_string(r.active_members) + ","
            + opt_number(r.participation_rate()) + "," + opt_number(r.treasury_usd) + ","
            + format_number(r.circulating_pct()) + "," + std::to_string(r.proposals.size()) + ","
            + std::to_string(r.approved_count()) + "," + opt_number(r.approval_rate()) + ","
            + opt_number(r.avg_duration_days()) + "," + format_number(r.largest_holder_share) + ","
            + format_number(r.proposer_concentration) + "," + (r.fully_automated ? "true" : "false") + ","
            + level_or_na(e.kpi.participation) + "," + score_or_na(e.kpi.participation) + ","
            + level_or_na(e.kpi.funds) + "," + score_or_na(e.kpi.funds) + ","
            + level_or_na(e.kpi.voting) + "," + score_or_na(e.kpi.voting) + ","
            + level_or_na(e.kpi.decentralisation) + "," + score_or_na(e.kpi.decentralisation) + ","
            + opt_number(e.kpi.composite) + "\n";
    }
    return csv;
}

std::string ecosystem_csv(const EcosystemSummary& s)
{
    std::string csv = "key,value\n";
    csv += "dao_count," + std::to_string(s.dao_count) + "\n";
    csv += "total_proposals," + std::to_string(s.total_proposals) + "\n";
    csv += "unique_voters," + std::to_string(s.unique_voters) + "\n";
    csv += "total_members," + std::to_string(s.total_members) + "\n";
    for (const auto& [kpi_name, histogram] : s.level_histograms)
        for (const auto& [level, count] : histogram)
            csv += "histogram." + kpi_name + "." + level + "," + std::to_string(count) + "\n";
    for (const auto& [kpi_name, medians] : s.category_medians)
        for (const auto& [level, median] : medians)
            csv += "median." + kpi_name + "." + level + "," + format_number(median) + "\n";
    return csv;
}

std::string stats_csv(const StatReport& report)
{
    std::string csv = "kpi,test,statistic,p_value,df1,df2,detail\n";
    auto row = [&](const std::string& kpi_name, const stats::TestResult& r, const std::string& detail) {
        csv += kpi_name + "," + r.test_name + "," + format_number(r.statistic) + "," + format_number(r.p_value)
            + "," + format_number(r.df1) + "," + format_number(r.df2) + "," + csv_escape(detail) + "\n";
    };
    for (const auto& a : report.analyses) {
        if (!a.plan) {
            csv += a.kpi + ",skipped,,,,," + csv_escape(a.skip_reason) + "\n";
            continue;
        }
        for (const auto& n : a.plan->normality)
            if (n.shapiro)
                row(a.kpi, *n.shapiro, "group=" + n.label);
        row(a.kpi, a.plan->levene, "");
        row(a.kpi, a.plan->omnibus, "selected");
        if (a.plan->posthoc)
            for (const auto& p : a.plan->posthoc->pairs)
                csv += a.kpi + ",dunn_bonferroni," + format_number(p.z) + "," + format_number(p.p_adjusted)
                    + ",,," + csv_escape(p.label_a + " vs " + p.label_b) + "\n";
    }
    for (const auto& c : report.correlations) {
        if (c.result)
            row("correlation", *c.result, c.label);
        else
            csv += "correlation," + c.label + ",,,,," + csv_escape(c.skip_reason) + "\n";
    }
    return csv;
}

struct Omission {
    std::string dao_id;
    std::string chart;
    std::string reason;
};

void collect_scatter(const std::vector<DaoReportEntry>& entries, std::vector<Omission>& omissions,
                     std::vector<std::pair<std::string, std::string>>& files, const std::filesystem::path& charts_dir)
{
    using kpi::thresholds::kApprovalHigh;
    using kpi::thresholds::kApprovalLow;
    using kpi::thresholds::kDurationMaxDays;
    using kpi::thresholds::kDurationMinDays;
    using kpi::thresholds::kHolderHigh;
    using kpi::thresholds::kHolderLow;
    using kpi::thresholds::kHolderMedium;
    using kpi::thresholds::kParticipationHigh;
    using kpi::thresholds::kParticipationLow;
    using kpi::thresholds::kTreasuryHighUsd;
    using kpi::thresholds::kTreasuryLowUsd;

    auto render_to = [&](const std::string& name, const ChartData& chart) {
        files.emplace_back("charts/" + name, render_chart_svg(chart));
        (void)charts_dir;
    };

    // participation: members (log x) vs participation rate
    {
        std::vector<ChartData::Point> points;
        for (const auto& e : entries) {
            auto rate = e.record.participation_rate();
            if (!rate) {
                omissions.push_back({ e.record.dao_id, "participation_scatter.svg", "no members at snapshot" });
                continue;
            }
            if (e.record.total_members == 0) {
                omissions.push_back({ e.record.dao_id, "participation_scatter.svg", "nonpositive value on log axis" });
                continue;
            }
            points.push_back({ e.record.dao_id, double(e.record.total_members), *rate });
        }
        if (!points.empty())
            render_to("participation_scatter.svg",
                      make_scatter_chart("Total members vs participation rate", "total members",
                                         "participation rate", std::move(points),
                                         { { "10%", kParticipationLow, false }, { "40%", kParticipationHigh, false } },
                                         AxisScale::Log10, AxisScale::Linear));
    }

    // funds: treasury (log x) vs circulating pct
    {
        std::vector<ChartData::Point> points;
        for (const auto& e : entries) {
            if (!e.record.treasury_usd) {
                omissions.push_back({ e.record.dao_id, "funds_scatter.svg", "no treasury valuation" });
                continue;
            }
            if (*e.record.treasury_usd <= 0) {
                omissions.push_back({ e.record.dao_id, "funds_scatter.svg", "nonpositive value on log axis" });
                continue;
            }
            points.push_back({ e.record.dao_id, *e.record.treasury_usd, e.record.circulating_pct() });
        }
        if (!points.empty())
            render_to("funds_scatter.svg",
                      make_scatter_chart("Treasury value vs circulating token percentage", "treasury (USD)",
                                         "circulating fraction", std::move(points),
                                         { { "$100M", kTreasuryLowUsd, true }, { "$1B", kTreasuryHighUsd, true },
                                           { "50%", 0.5, false } },
                                         AxisScale::Log10, AxisScale::Linear));
    }

    // voting: approval rate vs average duration
    {
        std::vector<ChartData::Point> points;
        for (const auto& e : entries) {
            auto approval = e.record.approval_rate();
            auto duration = e.record.avg_duration_days();
            if (!approval || !duration) {
                omissions.push_back({ e.record.dao_id, "voting_scatter.svg", "no proposals" });
                continue;
            }
            points.push_back({ e.record.dao_id, *approval, *duration });
        }
        if (!points.empty())
            render_to("voting_scatter.svg",
                      make_scatter_chart("Approval rate vs average voting duration", "approval rate",
                                         "average duration (days)", std::move(points),
                                         { { "30%", kApprovalLow, true }, { "70%", kApprovalHigh, true },
                                           { "3d", kDurationMinDays, false }, { "14d", kDurationMaxDays, false } }));
    }

    // decentralisation: largest holder share vs participation rate
    {
        std::vector<ChartData::Point> points;
        for (const auto& e : entries) {
            auto rate = e.record.participation_rate();
            if (!rate) {
                omissions.push_back({ e.record.dao_id, "decentralisation_scatter.svg", "no members at snapshot" });
                continue;
            }
            points.push_back({ e.record.dao_id, e.record.largest_holder_share, *rate });
        }
        if (!points.empty())
            render_to("decentralisation_scatter.svg",
                      make_scatter_chart("Largest holder share vs participation rate", "largest holder share",
                                         "participation rate", std::move(points),
                                         { { "10%", kHolderHigh, true }, { "33%", kHolderMedium, true },
                                           { "66%", kHolderLow, true }, { "10%", kParticipationLow, false },
                                           { "40%", kParticipationHigh, false } }));
    }
}

} // namespace

std::vector<std::string> emit(const ReportBundle& bundle, const std::filesystem::path& out_dir,
                              const EmitOptions& options)
{
    std::vector<DaoReportEntry> entries = bundle.entries;
    std::sort(entries.begin(), entries.end(), [](const DaoReportEntry& a, const DaoReportEntry& b) {
        return a.record.dao_id < b.record.dao_id;
    });

    std::vector<std::pair<std::string, std::string>> files; // relative path -> content
    std::vector<Omission> omissions;

    if (options.csv) {
        files.emplace_back("summary.csv", summary_csv(entries));
        files.emplace_back("ecosystem.csv", ecosystem_csv(bundle.summary));
        files.emplace_back("stats.csv", stats_csv(bundle.stats));
    }

    if (options.json_bundle) {
        json daos = json::array();
        for (const auto& e : entries) {
            json d = pipeline::to_json(e.record);
            d["kpi"] = pipeline::to_json(e.kpi);
            daos.push_back(std::move(d));
        }
        json doc = {
            { "schema_version", pipeline::kSchemaVersion },
            { "daos", daos },
            { "ecosystem", pipeline::to_json(bundle.summary) },
            { "stats", pipeline::to_json(bundle.stats) },
        };
        files.emplace_back("bundle.json", doc.dump(2) + "\n");
    }

    if (options.svg) {
        collect_scatter(entries, omissions, files, out_dir / "charts");

        // one notched-box chart per KPI analysis with groups
        for (const auto& a : bundle.stats.analyses) {
            if (a.groups.group_count() == 0)
                continue;
            std::vector<std::pair<std::string, std::vector<double>>> groups;
            for (const auto& g : a.groups.groups)
                groups.emplace_back(g.label, g.values);
            files.emplace_back("charts/" + a.kpi + "_box.svg",
                               render_chart_svg(make_box_chart(a.kpi + " by level", a.metric_name, groups)));
        }

        // radar: explicit DAO list, else the top 10 by composite
        std::vector<std::pair<std::string, kpi::KpiAssessment>> radar_daos;
        if (!bundle.radar_daos.empty()) {
            for (const auto& wanted : bundle.radar_daos) {
                auto it = std::find_if(entries.begin(), entries.end(),
                                       [&](const DaoReportEntry& e) { return e.record.dao_id == wanted; });
                if (it == entries.end())
                    throw argument_error("radar selection names unknown dao " + wanted);
                if (!it->kpi.complete()) {
                    omissions.push_back({ wanted, "radar.svg", "not all KPIs assessable" });
                    continue;
                }
                radar_daos.emplace_back(wanted, it->kpi);
            }
        } else {
            std::vector<const DaoReportEntry*> complete;
            for (const auto& e : entries)
                if (e.kpi.complete())
                    complete.push_back(&e);
                else
                    omissions.push_back({ e.record.dao_id, "radar.svg", "not all KPIs assessable" });
            std::stable_sort(complete.begin(), complete.end(), [](const DaoReportEntry* a, const DaoReportEntry* b) {
                return *a->kpi.composite > *b->kpi.composite;
            });
            for (size_t i = 0; i < complete.size() && i < 10; ++i)
                radar_daos.emplace_back(complete[i]->record.dao_id, complete[i]->kpi);
        }
        if (!radar_daos.empty())
            files.emplace_back("charts/radar.svg",
                               render_chart_svg(make_radar_chart("KPI composite radar", radar_daos)));

        std::string omissions_csv = "dao_id,chart,reason\n";
        for (const auto& o : omissions)
            omissions_csv += csv_escape(o.dao_id) + "," + o.chart + "," + csv_escape(o.reason) + "\n";
        files.emplace_back("charts/omissions.csv", std::move(omissions_csv));
    }

    std::vector<std::string> written;
    for (const auto& [rel, content] : files) {
        write_text_file(out_dir / rel, content);
        written.push_back(rel);
    }
    return written;
}

} // namespace daolens::report
