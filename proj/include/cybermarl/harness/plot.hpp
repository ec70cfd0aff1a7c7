// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_HARNESS_PLOT_HPP_
#define CYBERMARL_HARNESS_PLOT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cybermarl/harness/metrics.hpp"

namespace cybermarl::harness {

/// Trailing moving average: out[t] = mean(values[max(0, t - window + 1) .. t]).
inline std::vector<double> moving_average(const std::vector<double>& values, std::size_t window) {
  if (window < 1) throw std::invalid_argument("smoothing window must be >= 1");
  std::vector<double> out(values.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    sum += values[t];
    if (t >= window) sum -= values[t - window];
    out[t] = sum / static_cast<double>(std::min(window, t + 1));
  }
  return out;
}

struct Curve {
  std::string algorithm;
  std::vector<double> values;  // smoothed run-mean return per episode
};

inline std::vector<Curve> training_curves(const MetricsTable& table, std::size_t window) {
  std::vector<Curve> curves;
  for (const auto& algo : table.algorithms()) curves.push_back({algo, moving_average(table.mean_by_episode(algo), window)});
  return curves;
}

namespace detail {

inline std::string fmt(double v, int precision = 2) {
  std::array<char, 48> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", precision, v);
  return buf.data();
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
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

}  // namespace detail

/// Line chart of the smoothed per-episode mean return, one polyline per
/// algorithm.
inline std::string render_training_curve_svg(const MetricsTable& table, std::size_t window) {
  if (table.rows.empty()) throw std::invalid_argument("cannot plot an empty metrics table");
  const auto curves = training_curves(table, window);

  constexpr double width = 800, height = 500;
  constexpr double left = 80, right = 170, top = 50, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t n_episodes = 0;
  double lo = curves.front().values.front();
  double hi = lo;
  for (const auto& c : curves) {
    n_episodes = std::max(n_episodes, c.values.size());
    for (double v : c.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-9) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double x_span = std::max<double>(1.0, static_cast<double>(n_episodes) - 1.0);
  auto px = [&](double episode) { return left + plot_w * episode / x_span; };
  auto py = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

  static constexpr std::array<const char*, 6> colors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#7f7f7f",
                                                        "#9467bd"};
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
      << "<text x=\"" << left + plot_w / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"18\">Average shared return per episode (window " << window << ")</text>\n";

  // axes
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n"
      << "</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    svg << "<text x=\"" << left - 6 << "\" y=\"" << detail::fmt(py(v) + 4) << "\" text-anchor=\"end\">"
        << detail::fmt(v, 1) << "</text>\n";
    const double e = x_span * i / 4.0;
    svg << "<text x=\"" << detail::fmt(px(e)) << "\" y=\"" << top + plot_h + 16 << "\" text-anchor=\"middle\">"
        << detail::fmt(e + 1, 0) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\" "
      << "font-size=\"13\">Episode</text>\n"
      << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << top + plot_h / 2 << ")\">Shared return</text>\n"
      << "</g>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    const char* color = colors[k % colors.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" data-algorithm=\""
        << detail::xml_escape(c.algorithm) << "\" points=\"";
    for (std::size_t e = 0; e < c.values.size(); ++e) {
      svg << (e ? " " : "") << detail::fmt(px(static_cast<double>(e))) << ',' << detail::fmt(py(c.values[e]));
    }
    svg << "\"/>\n";
    const double ly = top + 20 + 22 * static_cast<double>(k);
    svg << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 40 << "\" y2=\""
        << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << left + plot_w + 46 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << detail::xml_escape(c.algorithm) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

inline void render_training_curve(const MetricsTable& table, std::size_t window, const std::string& path) {
  const auto svg = render_training_curve_svg(table, window);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << svg;
}

}  // namespace cybermarl::harness

#endif  // CYBERMARL_HARNESS_PLOT_HPP_
