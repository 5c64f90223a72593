#include "parl/harness/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "parl/errors.hpp"

namespace parl {

std::vector<double> MetricSeries::rewards() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.true_reward);
  return out;
}

std::vector<double> MetricSeries::lengths() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(static_cast<double>(r.length));
  return out;
}

namespace {

// Shortest round-trip formatting keeps CSVs byte-stable across runs.
std::string format_double(double v) {
  nlohmann::json j = v;
  return j.dump();
}

}  // namespace

std::string to_csv(const MetricSeries& series) {
  std::ostringstream out;
  out << "episode,true_reward,length,fallback_count,prompt_tokens_estimate\n";
  for (const auto& r : series.rows) {
    out << r.episode << ',' << format_double(r.true_reward) << ',' << r.length << ','
        << r.fallback_count << ',' << r.prompt_tokens_estimate << '\n';
  }
  return out.str();
}

MetricSeries metric_series_from_csv(const std::string& text) {
  MetricSeries series;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("metric CSV is empty");
  if (line != "episode,true_reward,length,fallback_count,prompt_tokens_estimate")
    throw ConfigError("metric CSV has an unexpected header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MetricRow row;
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    row.episode = std::stoi(field);
    std::getline(fields, field, ',');
    row.true_reward = std::stod(field);
    std::getline(fields, field, ',');
    row.length = std::stoi(field);
    std::getline(fields, field, ',');
    row.fallback_count = std::stoi(field);
    std::getline(fields, field, ',');
    row.prompt_tokens_estimate = std::stol(field);
    series.rows.push_back(row);
  }
  return series;
}

namespace {

std::pair<double, double> mean_std(std::span<const double> xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  return {mean, std::sqrt(var)};
}

}  // namespace

EvalReport summarize(std::span<const double> rewards, std::span<const double> lengths) {
  EvalReport report;
  report.episodes = static_cast<int>(rewards.size());
  std::tie(report.mean_reward, report.std_reward) = mean_std(rewards);
  std::tie(report.mean_length, report.std_length) = mean_std(lengths);
  return report;
}

std::string to_json(const EvalReport& report) {
  return nlohmann::json{{"mean_reward", report.mean_reward},
                        {"std_reward", report.std_reward},
                        {"mean_length", report.mean_length},
                        {"std_length", report.std_length},
                        {"episodes", report.episodes}}
      .dump(2);
}

EvalReport eval_report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  EvalReport report;
  report.mean_reward = j.at("mean_reward").get<double>();
  report.std_reward = j.at("std_reward").get<double>();
  report.mean_length = j.at("mean_length").get<double>();
  report.std_length = j.at("std_length").get<double>();
  report.episodes = j.at("episodes").get<int>();
  return report;
}

std::vector<double> smooth(std::span<const double> series, int window) {
  if (window < 1) throw std::domain_error("smooth: window must be >= 1");
  std::vector<double> out;
  out.reserve(series.size());
  double running = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    running += series[i];
    if (i >= static_cast<std::size_t>(window)) running -= series[i - window];
    const auto count = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
    out.push_back(running / static_cast<double>(count));
  }
  return out;
}

}  // namespace parl
