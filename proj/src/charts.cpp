// Chart geometry builders and the SVG renderers for the three figure
// families: threshold scatter, notched box, radar.

#include "daolens/common/errors.hpp"
#include "daolens/report/report.hpp"
#include "daolens/report/svg.hpp"

#include <algorithm>
#include <cmath>

namespace daolens::report {

namespace {

void check_log_positive(const ChartData& chart)
{
    for (const auto& p : chart.points) {
        if (chart.x_scale == AxisScale::Log10 && p.x <= 0)
            throw argument_error("log-scale x value must be positive (dao " + p.label + ")");
        if (chart.y_scale == AxisScale::Log10 && p.y <= 0)
            throw argument_error("log-scale y value must be positive (dao " + p.label + ")");
    }
}

} // namespace

ChartData make_scatter_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                             std::vector<ChartData::Point> points, std::vector<ChartData::Threshold> thresholds,
                             AxisScale x_scale, AxisScale y_scale)
{
    if (points.empty())
        throw argument_error("scatter chart needs at least one point");
    ChartData chart;
    chart.kind = ChartKind::ScatterThreshold;
    chart.title = title;
    chart.x_label = x_label;
    chart.y_label = y_label;
    chart.x_scale = x_scale;
    chart.y_scale = y_scale;
    chart.points = std::move(points);
    chart.thresholds = std::move(thresholds);
    check_log_positive(chart);
    return chart;
}

ChartData make_box_chart(const std::string& title, const std::string& y_label,
                         const std::vector<std::pair<std::string, std::vector<double>>>& groups)
{
    if (groups.empty())
        throw argument_error("box chart needs at least one group");
    ChartData chart;
    chart.kind = ChartKind::NotchedBox;
    chart.title = title;
    chart.y_label = y_label;
    for (const auto& [label, values] : groups) {
        if (values.empty())
            continue;
        chart.boxes.push_back({ label, stats::box_stats(values), values.size() });
    }
    return chart;
}

ChartData make_radar_chart(const std::string& title,
                           const std::vector<std::pair<std::string, kpi::KpiAssessment>>& daos)
{
    if (daos.empty())
        throw argument_error("radar chart needs at least one DAO");
    ChartData chart;
    chart.kind = ChartKind::Radar;
    chart.title = title;
    chart.axis_names = { "Participation", "Funds", "Voting", "Decentralisation" };
    for (const auto& [dao_id, assessment] : daos) {
        if (!assessment.complete())
            throw argument_error("radar chart requires fully assessed KPIs (dao " + dao_id + ")");
        ChartData::RadarSeries series;
        series.label = dao_id;
        series.axes = {
            assessment.participation.assessment->score / 3.0,
            assessment.funds.assessment->score / 3.0,
            assessment.voting.assessment->score / 3.0,
            assessment.decentralisation.assessment->score / 3.0,
        };
        chart.radar.push_back(std::move(series));
    }
    return chart;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 70;
constexpr double kMarginRight = 30;
constexpr double kMarginTop = 50;
constexpr double kMarginBottom = 60;

const char* kSeriesColors[] = { "#4878d0", "#ee854a", "#6acc64", "#d65f5f", "#956cb4",
                                "#8c613c", "#dc7ec0", "#797979", "#d5bb67", "#82c6e2" };

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double place(double v, double px_lo, double px_hi) const
    {
        double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                       : (v - lo) / (hi - lo);
        return px_lo + t * (px_hi - px_lo);
    }
};

Axis fit_axis(std::vector<double> values, bool log)
{
    Axis axis;
    axis.log = log;
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (log) {
        axis.lo = std::pow(10.0, std::floor(std::log10(lo)));
        axis.hi = std::pow(10.0, std::ceil(std::log10(hi)));
        if (axis.lo == axis.hi)
            axis.hi *= 10.0;
    } else {
        double pad = (hi - lo) * 0.08;
        if (pad == 0.0)
            pad = std::max(1.0, std::fabs(hi)) * 0.1;
        axis.lo = lo - pad;
        axis.hi = hi + pad;
    }
    return axis;
}

void draw_frame(SvgWriter& svg, const ChartData& chart)
{
    svg.rect(0, 0, kWidth, kHeight, "#ffffff");
    svg.text(chart.title, kWidth / 2, 28, 17, "middle", "#111111");
    svg.line(kMarginLeft, kHeight - kMarginBottom, kWidth - kMarginRight, kHeight - kMarginBottom, "#444444");
    svg.line(kMarginLeft, kMarginTop, kMarginLeft, kHeight - kMarginBottom, "#444444");
    if (!chart.x_label.empty())
        svg.text(chart.x_label, (kMarginLeft + kWidth - kMarginRight) / 2, kHeight - 14, 13, "middle");
    if (!chart.y_label.empty()) {
        svg.open_group("translate(18," + format_number((kMarginTop + kHeight - kMarginBottom) / 2) + ") rotate(-90)");
        svg.text(chart.y_label, 0, 0, 13, "middle");
        svg.close_group();
    }
}

void draw_y_ticks(SvgWriter& svg, const Axis& axis, int count = 6)
{
    for (int i = 0; i <= count; ++i) {
        double v = axis.log ? std::pow(10.0, std::log10(axis.lo) + (std::log10(axis.hi) - std::log10(axis.lo)) * i / count)
                            : axis.lo + (axis.hi - axis.lo) * i / count;
        double y = axis.place(v, kHeight - kMarginBottom, kMarginTop);
        svg.line(kMarginLeft - 4, y, kMarginLeft, y, "#444444");
        svg.text(format_number(v), kMarginLeft - 8, y + 4, 10, "end");
    }
}

std::string render_scatter(const ChartData& chart)
{
    SvgWriter svg(kWidth, kHeight);
    draw_frame(svg, chart);

    std::vector<double> xs, ys;
    for (const auto& p : chart.points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    // Threshold lines must stay inside the plotted range.
    for (const auto& t : chart.thresholds)
        (t.vertical ? xs : ys).push_back(t.value);

    Axis x_axis = fit_axis(xs, chart.x_scale == AxisScale::Log10);
    Axis y_axis = fit_axis(ys, chart.y_scale == AxisScale::Log10);

    draw_y_ticks(svg, y_axis);
    for (int i = 0; i <= 6; ++i) {
        double v = x_axis.log
            ? std::pow(10.0, std::log10(x_axis.lo) + (std::log10(x_axis.hi) - std::log10(x_axis.lo)) * i / 6.0)
            : x_axis.lo + (x_axis.hi - x_axis.lo) * i / 6.0;
        double x = x_axis.place(v, kMarginLeft, kWidth - kMarginRight);
        svg.line(x, kHeight - kMarginBottom, x, kHeight - kMarginBottom + 4, "#444444");
        svg.text(format_number(v), x, kHeight - kMarginBottom + 16, 10, "middle");
    }

    for (const auto& t : chart.thresholds) {
        if (t.vertical) {
            double x = x_axis.place(t.value, kMarginLeft, kWidth - kMarginRight);
            svg.line(x, kMarginTop, x, kHeight - kMarginBottom, "#c0392b", 1.0, "6,4");
            svg.text(t.label, x + 4, kMarginTop + 12, 10, "start", "#c0392b");
        } else {
            double y = y_axis.place(t.value, kHeight - kMarginBottom, kMarginTop);
            svg.line(kMarginLeft, y, kWidth - kMarginRight, y, "#c0392b", 1.0, "6,4");
            svg.text(t.label, kWidth - kMarginRight - 4, y - 4, 10, "end", "#c0392b");
        }
    }

    for (const auto& p : chart.points) {
        double x = x_axis.place(p.x, kMarginLeft, kWidth - kMarginRight);
        double y = y_axis.place(p.y, kHeight - kMarginBottom, kMarginTop);
        svg.circle(x, y, 4, "#4878d0");
    }
    return svg.finish();
}

std::string render_boxes(const ChartData& chart)
{
    SvgWriter svg(kWidth, kHeight);
    draw_frame(svg, chart);

    std::vector<double> ys;
    for (const auto& b : chart.boxes) {
        ys.push_back(b.stats.whisker_low);
        ys.push_back(b.stats.whisker_high);
        for (double o : b.stats.outliers)
            ys.push_back(o);
    }
    Axis y_axis = fit_axis(ys, false);
    draw_y_ticks(svg, y_axis);

    const double plot_width = kWidth - kMarginLeft - kMarginRight;
    const double slot = plot_width / double(chart.boxes.size());
    const double box_width = std::min(80.0, slot * 0.5);
    const double notch_inset = box_width * 0.25;

    auto to_y = [&](double v) { return y_axis.place(v, kHeight - kMarginBottom, kMarginTop); };

    for (size_t i = 0; i < chart.boxes.size(); ++i) {
        const auto& b = chart.boxes[i];
        double cx = kMarginLeft + slot * (double(i) + 0.5);
        double half = box_width / 2;

        // whiskers
        svg.line(cx, to_y(b.stats.whisker_low), cx, to_y(b.stats.q1), "#333333");
        svg.line(cx, to_y(b.stats.q3), cx, to_y(b.stats.whisker_high), "#333333");
        svg.line(cx - half * 0.6, to_y(b.stats.whisker_low), cx + half * 0.6, to_y(b.stats.whisker_low), "#333333");
        svg.line(cx - half * 0.6, to_y(b.stats.whisker_high), cx + half * 0.6, to_y(b.stats.whisker_high), "#333333");

        // notched box outline: sides pinch to the notch interval at the median
        double q1y = to_y(b.stats.q1);
        double q3y = to_y(b.stats.q3);
        double med = to_y(b.stats.median);
        double nlo = to_y(std::max(b.stats.notch_low, b.stats.q1));
        double nhi = to_y(std::min(b.stats.notch_high, b.stats.q3));
        std::string pts;
        auto add = [&](double x, double y) {
            pts += format_number(x) + "," + format_number(y) + " ";
        };
        add(cx - half, q1y);
        add(cx + half, q1y);
        add(cx + half, nlo);
        add(cx + half - notch_inset, med);
        add(cx + half, nhi);
        add(cx + half, q3y);
        add(cx - half, q3y);
        add(cx - half, nhi);
        add(cx - half + notch_inset, med);
        add(cx - half, nlo);
        pts.pop_back();
        svg.polygon(pts, "#aec7e8", "#333333", 1.2, 0.85);
        svg.line(cx - half + notch_inset, med, cx + half - notch_inset, med, "#c0392b", 1.6);

        for (double o : b.stats.outliers)
            svg.circle(cx, to_y(o), 3, "#d65f5f");

        svg.text(b.label + " (n=" + std::to_string(b.n) + ")", cx, kHeight - kMarginBottom + 30, 11, "middle");
    }
    return svg.finish();
}

std::string render_radar(const ChartData& chart)
{
    SvgWriter svg(kWidth, kHeight);
    svg.rect(0, 0, kWidth, kHeight, "#ffffff");
    svg.text(chart.title, kWidth / 2, 28, 17, "middle", "#111111");

    const double cx = kWidth / 2 - 60;
    const double cy = (kHeight + 30) / 2;
    const double radius = std::min(kWidth, kHeight) / 2 - 90;
    const size_t axes = chart.axis_names.size();

    auto point_at = [&](size_t axis, double r01) {
        double angle = -M_PI / 2 + 2 * M_PI * double(axis) / double(axes);
        return std::pair<double, double> { cx + r01 * radius * std::cos(angle),
                                           cy + r01 * radius * std::sin(angle) };
    };

    // grid rings at 25% steps
    for (int ring = 1; ring <= 4; ++ring) {
        std::string pts;
        for (size_t a = 0; a < axes; ++a) {
            auto [x, y] = point_at(a, ring / 4.0);
            pts += format_number(x) + "," + format_number(y) + " ";
        }
        pts.pop_back();
        svg.polygon(pts, "none", "#cccccc", 0.8);
    }
    for (size_t a = 0; a < axes; ++a) {
        auto [x, y] = point_at(a, 1.0);
        svg.line(cx, cy, x, y, "#cccccc", 0.8);
        auto [lx, ly] = point_at(a, 1.12);
        svg.text(chart.axis_names[a], lx, ly + 4, 12, "middle");
    }

    for (size_t s = 0; s < chart.radar.size(); ++s) {
        const auto& series = chart.radar[s];
        std::string pts;
        for (size_t a = 0; a < axes; ++a) {
            auto [x, y] = point_at(a, std::clamp(series.axes[a], 0.0, 1.0));
            pts += format_number(x) + "," + format_number(y) + " ";
        }
        pts.pop_back();
        const char* color = kSeriesColors[s % std::size(kSeriesColors)];
        svg.polygon(pts, color, color, 1.6, 0.15);

        // legend
        double ly = 60 + double(s) * 18;
        svg.rect(kWidth - 170, ly - 9, 12, 12, color);
        svg.text(series.label, kWidth - 152, ly + 1, 11);
    }
    return svg.finish();
}

} // namespace

std::string render_chart_svg(const ChartData& chart)
{
    switch (chart.kind) {
    case ChartKind::ScatterThreshold:
        return render_scatter(chart);
    case ChartKind::NotchedBox:
        return render_boxes(chart);
    case ChartKind::Radar:
        return render_radar(chart);
    }
    throw argument_error("unknown chart kind");
}

} // namespace daolens::report
