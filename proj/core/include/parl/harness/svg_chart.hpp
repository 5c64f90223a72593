#pragma once

#include <filesystem>
#include <span>
#include <string>

namespace parl {

struct SvgChartOptions {
  int width = 960;
  int height = 540;
  std::string title;
  std::string x_label = "episode";
  std::string y_label = "reward";
  std::string footer;  // e.g. the smoothing window used
};

/// Standalone SVG line chart; x runs 1..N. No plotting dependency.
std::string svg_line_chart(std::span<const double> values,
                           const SvgChartOptions& options = {});

void write_svg_chart(const std::filesystem::path& path, std::span<const double> values,
                     const SvgChartOptions& options = {});

}  // namespace parl
