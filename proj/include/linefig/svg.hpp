#pragma once

#include <sstream>
#include <string>
#include <string_view>

namespace linefig {

/// Minimal SVG document builder; coordinates are written with two decimals.
class SvgDocument {
 public:
  SvgDocument(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none");
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0,
            double opacity = 1.0);
  void circle(double cx, double cy, double r, std::string_view fill, double opacity = 1.0,
              std::string_view title = {});
  void text(double x, double y, std::string_view content, double size = 12.0, std::string_view anchor = "start");

  [[nodiscard]] std::string str() const;

 private:
  double width_;
  double height_;
  std::ostringstream body_;
};

std::string xml_escape(std::string_view s);

/// Colour for category i of a fixed 10-colour palette (cycled).
std::string categorical_color(std::size_t i);
/// Sequential colour for t in [0, 1] (dark blue to yellow).
std::string gradient_color(double t);

}  // namespace linefig
