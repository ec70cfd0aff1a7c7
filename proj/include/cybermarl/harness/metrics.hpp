// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_HARNESS_METRICS_HPP_
#define CYBERMARL_HARNESS_METRICS_HPP_

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace cybermarl::harness {

struct MetricsRow {
  std::string algorithm;
  int run = 0;
  int episode = 0;
  double shared_return = 0.0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

/// Per-episode shared returns of every (algorithm, run).
struct MetricsTable {
  std::vector<MetricsRow> rows;

  /// Algorithms in order of first appearance.
  std::vector<std::string> algorithms() const {
    std::vector<std::string> out;
    for (const auto& r : rows) {
      if (std::find(out.begin(), out.end(), r.algorithm) == out.end()) out.push_back(r.algorithm);
    }
    return out;
  }

  /// Arithmetic mean over runs of each episode's return, indexed by episode.
  std::vector<double> mean_by_episode(std::string_view algorithm) const {
    std::map<int, std::pair<double, int>> acc;
    for (const auto& r : rows) {
      if (r.algorithm != algorithm) continue;
      auto& [sum, n] = acc[r.episode];
      sum += r.shared_return;
      ++n;
    }
    std::vector<double> out;
    out.reserve(acc.size());
    for (const auto& [episode, sn] : acc) out.push_back(sn.first / sn.second);
    return out;
  }

  /// Mean of the last `tail` run-averaged episode returns.
  double tail_mean(std::string_view algorithm, std::size_t tail) const {
    const auto means = mean_by_episode(algorithm);
    if (means.empty()) throw std::invalid_argument("no rows for algorithm '" + std::string(algorithm) + "'");
    const std::size_t n = std::min(tail, means.size());
    double sum = 0.0;
    for (std::size_t i = means.size() - n; i < means.size(); ++i) sum += means[i];
    return sum / static_cast<double>(n);
  }

  friend bool operator==(const MetricsTable&, const MetricsTable&) = default;
};

inline constexpr std::string_view kCsvHeader = "algorithm,run,episode,return";

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf.data(), ptr);
}

inline void write_metrics_csv(std::ostream& out, const MetricsTable& table) {
  out << kCsvHeader << '\n';
  for (const auto& r : table.rows) {
    out << r.algorithm << ',' << r.run << ',' << r.episode << ',' << format_double(r.shared_return) << '\n';
  }
}

inline void write_metrics_csv(const MetricsTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_metrics_csv(out, table);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline MetricsTable parse_metrics_csv(std::string_view text) {
  MetricsTable table;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header '" + std::string(line) + "'");
      continue;
    }
    if (line.empty()) continue;
    std::array<std::string_view, 4> fields;
    std::size_t start = 0;
    for (std::size_t f = 0; f < 4; ++f) {
      const auto comma = f < 3 ? line.find(',', start) : std::string_view::npos;
      if (f < 3 && comma == std::string_view::npos) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": expected 4 fields");
      }
      fields[f] = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      start = comma + 1;
    }
    MetricsRow row;
    row.algorithm = std::string(fields[0]);
    auto num = [&](std::string_view s, auto& out) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
      }
    };
    num(fields[1], row.run);
    num(fields[2], row.episode);
    num(fields[3], row.shared_return);
    table.rows.push_back(std::move(row));
  }
  if (line_no == 0) throw std::runtime_error("empty CSV");
  return table;
}

inline MetricsTable read_metrics_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_metrics_csv(buffer.str());
}

}  // namespace cybermarl::harness

#endif  // CYBERMARL_HARNESS_METRICS_HPP_
