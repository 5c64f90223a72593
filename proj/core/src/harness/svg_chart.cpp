#include "parl/harness/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "parl/errors.hpp"

namespace parl {

namespace {

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round tick bounds to a tidy step so axis labels stay readable.
std::pair<double, double> nice_bounds(double lo, double hi) {
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double span = hi - lo;
  const double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step};
}

std::string format_tick(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

std::string svg_line_chart(std::span<const double> values,
                           const SvgChartOptions& options) {
  const int w = options.width;
  const int h = options.height;
  const int margin_left = 70;
  const int margin_right = 20;
  const int margin_top = options.title.empty() ? 20 : 44;
  const int margin_bottom = options.footer.empty() ? 52 : 72;
  const double plot_w = w - margin_left - margin_right;
  const double plot_h = h - margin_top - margin_bottom;

  double lo = 0.0;
  double hi = 1.0;
  if (!values.empty()) {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
  }
  std::tie(lo, hi) = nice_bounds(lo, hi);

  const auto x_at = [&](std::size_t i) {
    if (values.size() <= 1) return margin_left + plot_w / 2.0;
    return margin_left + plot_w * static_cast<double>(i) /
                             static_cast<double>(values.size() - 1);
  };
  const auto y_at = [&](double v) {
    return margin_top + plot_h * (1.0 - (v - lo) / (hi - lo));
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
      << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";

  if (!options.title.empty()) {
    svg << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(options.title)
        << "</text>\n";
  }

  // axes
  svg << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\""
      << margin_left << "\" y2=\"" << margin_top + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top + plot_h
      << "\" x2=\"" << margin_left + plot_w << "\" y2=\"" << margin_top + plot_h
      << "\" stroke=\"black\"/>\n";

  // y ticks
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    const double y = y_at(v);
    svg << "<line x1=\"" << margin_left - 4 << "\" y1=\"" << y << "\" x2=\""
        << margin_left << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << margin_left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_tick(v) << "</text>\n";
    if (t > 0) {
      svg << "<line x1=\"" << margin_left << "\" y1=\"" << y << "\" x2=\""
          << margin_left + plot_w << "\" y2=\"" << y
          << "\" stroke=\"#dddddd\"/>\n";
    }
  }

  // x ticks at quarters
  const std::size_t n = values.size();
  for (int t = 0; t <= 4 && n > 0; ++t) {
    const std::size_t i = static_cast<std::size_t>(
        std::llround(static_cast<double>(n - 1) * t / 4.0));
    const double x = x_at(i);
    svg << "<line x1=\"" << x << "\" y1=\"" << margin_top + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << margin_top + plot_h + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << margin_top + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << (i + 1) << "</text>\n";
  }

  // polyline
  if (!values.empty()) {
    svg << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) svg << ' ';
      svg << x_at(i) << ',' << y_at(values[i]);
    }
    svg << "\"/>\n";
  }

  svg << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\""
      << margin_top + plot_h + 36
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape_xml(options.x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << margin_top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << margin_top + plot_h / 2 << ")\">"
      << escape_xml(options.y_label) << "</text>\n";
  if (!options.footer.empty()) {
    svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
        << "fill=\"#555555\">" << escape_xml(options.footer) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_svg_chart(const std::filesystem::path& path, std::span<const double> values,
                     const SvgChartOptions& options) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write chart: " + path.string());
  out << svg_line_chart(values, options);
}

}  // namespace parl
