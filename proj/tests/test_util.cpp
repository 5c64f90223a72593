#include "test_util.hpp"

#include <deque>
#include <regex>
#include <stdexcept>

namespace parl::oracles {

std::optional<BfsResult> bfs_shortest_path(const FrozenLakeMap& map) {
  const int n = map.nrows * map.ncols;
  const int start = map.start_index();
  int goal = -1;
  for (int i = 0; i < n; ++i) {
    if (map.cells[static_cast<std::size_t>(i)] == 'G') goal = i;
  }
  if (goal < 0) return std::nullopt;

  // deltas indexed by direction id: Left, Down, Right, Up
  const int drow[4] = {0, 1, 0, -1};
  const int dcol[4] = {-1, 0, 1, 0};

  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> via_action(static_cast<std::size_t>(n), -1);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<int> queue{start};
  seen[static_cast<std::size_t>(start)] = true;

  while (!queue.empty()) {
    const int cell = queue.front();
    queue.pop_front();
    if (cell == goal) break;
    if (map.cells[static_cast<std::size_t>(cell)] == 'H') continue;
    const int row = cell / map.ncols;
    const int col = cell % map.ncols;
    for (int a = 0; a < 4; ++a) {
      const int nr = row + drow[a];
      const int nc = col + dcol[a];
      if (nr < 0 || nr >= map.nrows || nc < 0 || nc >= map.ncols) continue;
      const int next = nr * map.ncols + nc;
      if (seen[static_cast<std::size_t>(next)]) continue;
      seen[static_cast<std::size_t>(next)] = true;
      parent[static_cast<std::size_t>(next)] = cell;
      via_action[static_cast<std::size_t>(next)] = a;
      queue.push_back(next);
    }
  }
  if (!seen[static_cast<std::size_t>(goal)]) return std::nullopt;

  BfsResult result;
  result.path_length = 0;
  for (int cell = goal; cell != start; cell = parent[static_cast<std::size_t>(cell)]) {
    result.action_by_state[parent[static_cast<std::size_t>(cell)]] =
        via_action[static_cast<std::size_t>(cell)];
    ++result.path_length;
  }
  return result;
}

ParsedLakeSentence parse_lake_sentence(const std::string& text) {
  static const std::regex pattern(
      R"(row (\d+), column (\d+) in a (\d+)x(\d+) grid)");
  std::smatch m;
  if (!std::regex_search(text, m, pattern))
    throw std::runtime_error("unparseable lake sentence: " + text);
  return {std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4])};
}

ParsedTaxiSentence parse_taxi_sentence(const std::string& text) {
  static const std::regex at_location(
      R"(The taxi is at row (\d+), column (\d+)\. The passenger is at location (\w+), and the destination is (\w+)\.)");
  static const std::regex riding(
      R"(The taxi is at row (\d+), column (\d+)\. The passenger is in the taxi, and the destination is (\w+)\.)");
  std::smatch m;
  if (std::regex_search(text, m, at_location))
    return {std::stoi(m[1]), std::stoi(m[2]), m[3], m[4]};
  if (std::regex_search(text, m, riding))
    return {std::stoi(m[1]), std::stoi(m[2]), "in the taxi", m[3]};
  throw std::runtime_error("unparseable taxi sentence: " + text);
}

std::vector<int> episode_headers(const std::string& prompt) {
  static const std::regex header(R"(Episode (\d+):)");
  std::vector<int> out;
  for (auto it = std::sregex_iterator(prompt.begin(), prompt.end(), header);
       it != std::sregex_iterator(); ++it) {
    out.push_back(std::stoi((*it)[1]));
  }
  return out;
}

}  // namespace parl::oracles
