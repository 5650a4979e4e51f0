#include "linefig/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "linefig/csv.hpp"

namespace linefig {

namespace {

std::string num(double v) { return csv::format_fixed(v, 2); }

}  // namespace

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) {}

void SvgDocument::rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke) {
  body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
        << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
}

void SvgDocument::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width,
                       double opacity) {
  body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
        << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"";
  if (opacity < 1.0) body_ << " stroke-opacity=\"" << num(opacity) << "\"";
  body_ << "/>\n";
}

void SvgDocument::circle(double cx, double cy, double r, std::string_view fill, double opacity,
                         std::string_view title) {
  body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\"" << fill << "\"";
  if (opacity < 1.0) body_ << " fill-opacity=\"" << num(opacity) << "\"";
  if (title.empty()) {
    body_ << "/>\n";
  } else {
    body_ << "><title>" << xml_escape(title) << "</title></circle>\n";
  }
}

void SvgDocument::text(double x, double y, std::string_view content, double size, std::string_view anchor) {
  body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
        << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << xml_escape(content) << "</text>\n";
}

std::string SvgDocument::str() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height_)
     << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
     << body_.str() << "</svg>\n";
  return os.str();
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string categorical_color(std::size_t i) {
  static constexpr std::array<const char*, 10> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % palette.size()];
}

std::string gradient_color(double t) {
  static constexpr std::array<std::array<double, 3>, 5> stops = {{
      {68, 1, 84},
      {59, 82, 139},
      {33, 145, 140},
      {94, 201, 98},
      {253, 231, 37},
  }};
  if (!std::isfinite(t)) t = 0.0;
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace linefig
