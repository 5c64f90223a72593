#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace parl {

/// One training episode's bookkeeping. `true_reward` is always the
/// environment's reward, regardless of what the prompt displayed.
struct MetricRow {
  int episode = 0;  // 1-based, consecutive
  double true_reward = 0.0;
  int length = 0;
  int fallback_count = 0;
  long prompt_tokens_estimate = 0;
};

struct MetricSeries {
  std::vector<MetricRow> rows;

  void append(MetricRow row) { rows.push_back(row); }
  std::vector<double> rewards() const;
  std::vector<double> lengths() const;
};

/// CSV columns exactly: episode,true_reward,length,fallback_count,prompt_tokens_estimate.
std::string to_csv(const MetricSeries& series);
MetricSeries metric_series_from_csv(const std::string& text);

/// Mean/std summary of an evaluation run. Std uses the population form
/// (divide by N), matching "length 100 (0.0)" style reporting.
struct EvalReport {
  double mean_reward = 0.0;
  double std_reward = 0.0;
  double mean_length = 0.0;
  double std_length = 0.0;
  int episodes = 0;
};

EvalReport summarize(std::span<const double> rewards, std::span<const double> lengths);
std::string to_json(const EvalReport& report);
EvalReport eval_report_from_json(const std::string& text);

/// Trailing moving average: entry i averages the last min(i+1, window)
/// values, so no future value leaks into the curve.
std::vector<double> smooth(std::span<const double> series, int window);

/// Prompt-size proxy: ceil(bytes / 4).
inline long estimate_tokens(std::size_t bytes) {
  return static_cast<long>((bytes + 3) / 4);
}

}  // namespace parl
