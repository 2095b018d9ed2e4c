// svg.hpp - minimal self-contained SVG 1.1 writer

#pragma once

#include <optional>
#include <sstream>
#include <string>

namespace daolens::report {

// Numbers are printed with 6 significant digits so emitted documents are
// byte-stable across runs.
std::string format_number(double v);

class SvgWriter {
public:
    SvgWriter(double width, double height);

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
              const std::string& dash = "");
    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "", double stroke_width = 1.0);
    void circle(double cx, double cy, double r, const std::string& fill);
    void polygon(const std::string& points, const std::string& fill, const std::string& stroke,
                 double stroke_width = 1.0, double fill_opacity = 1.0);
    void text(const std::string& content, double x, double y, double font_size,
              const std::string& anchor = "start", const std::string& fill = "#333333");
    void open_group(const std::string& transform);
    void close_group();

    std::string finish();

private:
    std::ostringstream out_;
    double width_;
    double height_;
    bool finished_ = false;
};

// Escapes &, <, > and quotes for attribute/text content.
std::string xml_escape(const std::string& s);

} // namespace daolens::report
