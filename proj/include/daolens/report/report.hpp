// report.hpp - cross-DAO aggregation, chart geometry, and the emitted
// output tree (CSV tables, JSON bundle, SVG charts, omissions sidecar)

#pragma once

#include "daolens/harmonize/types.hpp"
#include "daolens/kpi/kpi.hpp"
#include "daolens/stats/stats.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace daolens::report {

struct DaoReportEntry {
    harmonize::DaoRecord record;
    kpi::KpiAssessment kpi;
};

struct EcosystemSummary {
    uint64_t dao_count = 0;
    uint64_t total_proposals = 0;
    uint64_t unique_voters = 0; // deduplicated by (chain, address)
    uint64_t total_members = 0;

    // level -> count per KPI; not-assessable DAOs sit in the omissions.
    std::map<std::string, std::map<std::string, uint64_t>> level_histograms;
    // level -> median of the KPI's underlying metric
    std::map<std::string, std::map<std::string, double>> category_medians;
};

EcosystemSummary summarize_ecosystem(const std::vector<DaoReportEntry>& entries);

// ---------------------------------------------------------------------------
// Charts

enum class ChartKind { NotchedBox, ScatterThreshold, Radar };
enum class AxisScale { Linear, Log10 };

struct ChartData {
    ChartKind kind = ChartKind::ScatterThreshold;
    std::string title;
    std::string x_label;
    std::string y_label;
    AxisScale x_scale = AxisScale::Linear;
    AxisScale y_scale = AxisScale::Linear;

    struct Point {
        std::string label;
        double x = 0.0;
        double y = 0.0;
    };
    std::vector<Point> points;

    struct BoxSeries {
        std::string label;
        stats::BoxStats stats;
        size_t n = 0;
    };
    std::vector<BoxSeries> boxes;

    struct RadarSeries {
        std::string label;
        std::vector<double> axes; // normalized to [0,1]
    };
    std::vector<RadarSeries> radar;
    std::vector<std::string> axis_names;

    struct Threshold {
        std::string label;
        double value = 0.0;
        bool vertical = false; // true: constant-x line
    };
    std::vector<Threshold> thresholds;
};

// Scatter with threshold lines. Log axes reject nonpositive coordinates
// with an error naming the offending DAO.
ChartData make_scatter_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                             std::vector<ChartData::Point> points, std::vector<ChartData::Threshold> thresholds,
                             AxisScale x_scale = AxisScale::Linear, AxisScale y_scale = AxisScale::Linear);

// Notched boxes, one per labeled group, via box_stats.
ChartData make_box_chart(const std::string& title, const std::string& y_label,
                         const std::vector<std::pair<std::string, std::vector<double>>>& groups);

// Radar over the four KPI scores, normalized to score/3.
ChartData make_radar_chart(const std::string& title,
                           const std::vector<std::pair<std::string, kpi::KpiAssessment>>& daos);

std::string render_chart_svg(const ChartData& chart);

// ---------------------------------------------------------------------------
// Statistical report across KPI categories

struct KpiStatAnalysis {
    std::string kpi;         // participation / funds / voting / decentralisation
    std::string metric_name; // what the grouped values measure
    stats::GroupedSamples groups;
    std::optional<stats::TestPlan> plan;
    std::string skip_reason; // set when the comparison could not run
};

struct CorrelationEntry {
    std::string label;
    std::optional<stats::TestResult> result;
    std::string skip_reason;
};

struct StatReport {
    double alpha = 0.05;
    std::vector<KpiStatAnalysis> analyses;
    std::vector<CorrelationEntry> correlations;
};

// Groups each KPI's underlying metric by assessed level and runs the gated
// comparison. Groups with fewer than 2 observations are set aside; the
// comparison is skipped entirely when fewer than 2 groups remain.
StatReport build_stat_report(const std::vector<DaoReportEntry>& entries, double alpha);

// ---------------------------------------------------------------------------
// Emission

struct ReportBundle {
    std::vector<DaoReportEntry> entries; // sorted by dao_id before emission
    EcosystemSummary summary;
    StatReport stats;
    std::vector<std::string> radar_daos; // explicit selection; empty = top 10 by composite
};

struct EmitOptions {
    bool csv = true;
    bool json_bundle = true;
    bool svg = true;
};

// Writes the output tree under out_dir. Deterministic: same bundle, same
// bytes. Returns the list of files written (relative to out_dir).
std::vector<std::string> emit(const ReportBundle& bundle, const std::filesystem::path& out_dir,
                              const EmitOptions& options = {});

} // namespace daolens::report
