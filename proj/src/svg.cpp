#include "daolens/report/svg.hpp"

#include <cmath>
#include <cstdio>

namespace daolens::report {

std::string format_number(double v)
{
    if (v == 0.0)
        return "0"; // avoids "-0"
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

SvgWriter::SvgWriter(double width, double height)
    : width_(width)
    , height_(height)
{
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << format_number(width_)
         << "\" height=\"" << format_number(height_) << "\" viewBox=\"0 0 " << format_number(width_) << " "
         << format_number(height_) << "\">\n";
}

void SvgWriter::line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
                     const std::string& dash)
{
    out_ << "<line x1=\"" << format_number(x1) << "\" y1=\"" << format_number(y1) << "\" x2=\""
         << format_number(x2) << "\" y2=\"" << format_number(y2) << "\" stroke=\"" << stroke
         << "\" stroke-width=\"" << format_number(width) << "\"";
    if (!dash.empty())
        out_ << " stroke-dasharray=\"" << dash << "\"";
    out_ << "/>\n";
}

void SvgWriter::rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke,
                     double stroke_width)
{
    out_ << "<rect x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" width=\"" << format_number(w)
         << "\" height=\"" << format_number(h) << "\" fill=\"" << fill << "\"";
    if (!stroke.empty())
        out_ << " stroke=\"" << stroke << "\" stroke-width=\"" << format_number(stroke_width) << "\"";
    out_ << "/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, const std::string& fill)
{
    out_ << "<circle cx=\"" << format_number(cx) << "\" cy=\"" << format_number(cy) << "\" r=\""
         << format_number(r) << "\" fill=\"" << fill << "\"/>\n";
}

void SvgWriter::polygon(const std::string& points, const std::string& fill, const std::string& stroke,
                        double stroke_width, double fill_opacity)
{
    out_ << "<polygon points=\"" << points << "\" fill=\"" << fill << "\"";
    if (fill_opacity != 1.0)
        out_ << " fill-opacity=\"" << format_number(fill_opacity) << "\"";
    if (!stroke.empty())
        out_ << " stroke=\"" << stroke << "\" stroke-width=\"" << format_number(stroke_width) << "\"";
    out_ << "/>\n";
}

void SvgWriter::text(const std::string& content, double x, double y, double font_size, const std::string& anchor,
                     const std::string& fill)
{
    out_ << "<text x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" font-size=\""
         << format_number(font_size) << "\" font-family=\"sans-serif\" fill=\"" << fill << "\"";
    if (anchor != "start")
        out_ << " text-anchor=\"" << anchor << "\"";
    out_ << ">" << xml_escape(content) << "</text>\n";
}

void SvgWriter::open_group(const std::string& transform)
{
    out_ << "<g transform=\"" << transform << "\">\n";
}

void SvgWriter::close_group()
{
    out_ << "</g>\n";
}

std::string SvgWriter::finish()
{
    if (!finished_) {
        out_ << "</svg>\n";
        finished_ = true;
    }
    return out_.str();
}

} // namespace daolens::report
