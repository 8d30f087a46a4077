#include "mhe/signal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mhe/errors.hpp"

namespace mhe {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

int SignalConfig::resolve_history(int window_w) const {
  const int h = history_h > 0 ? history_h : history_multiplier * window_w;
  if (h < 2) {
    throw DataError("signal-line history must be >= 2, resolved to " +
                    std::to_string(h));
  }
  return h;
}

std::vector<double> ema(std::span<const double> x, double lambda) {
  if (x.empty()) throw DataError("ema: empty input");
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw DataError("ema: lambda must lie in (0, 1]");
  }
  std::vector<double> out(x.size());
  out[0] = x[0];
  for (std::size_t t = 1; t < x.size(); ++t) {
    out[t] = lambda * x[t] + (1.0 - lambda) * out[t - 1];
  }
  return out;
}

std::vector<double> signal_line(std::span<const double> g,
                                const SignalConfig& config, int window_w) {
  const int h = config.resolve_history(window_w);
  if (config.height_k < 0.0) throw DataError("signal-line height must be >= 0");
  if (g.size() < static_cast<std::size_t>(h)) {
    throw DataError("signal line needs " + std::to_string(h) +
                    " indicator points, got " + std::to_string(g.size()));
  }
  for (double v : g) {
    if (!std::isfinite(v)) throw DataError("signal line input must be finite");
  }

  std::vector<double> out(g.size(), kNaN);
  for (std::size_t t = static_cast<std::size_t>(h) - 1; t < g.size(); ++t) {
    double mean = 0.0;
    for (int i = 0; i < h; ++i) mean += g[t - static_cast<std::size_t>(i)];
    mean /= h;
    double ss = 0.0;
    for (int i = 0; i < h; ++i) {
      const double d = mean - g[t - static_cast<std::size_t>(i)];
      ss += d * d;
    }
    out[t] = mean + config.height_k * std::sqrt(ss / (h - 1));
  }
  return out;
}

namespace {

bool defined(double g, double line) {
  return std::isfinite(g) && std::isfinite(line);
}

}  // namespace

std::vector<SignalSpan> detect_crossing_spans(std::span<const double> g,
                                              std::span<const double> line,
                                              std::span<const Date> dates,
                                              SignalKind kind) {
  if (g.size() != line.size() || g.size() != dates.size()) {
    throw DataError("detect_crossings: g, line and dates must share one axis");
  }
  std::vector<SignalSpan> out;
  bool have_prev = false;
  bool prev_above = false;
  for (std::size_t t = 0; t < g.size(); ++t) {
    if (!defined(g[t], line[t])) continue;
    const bool above = g[t] > line[t];
    if (have_prev && !prev_above && above) {
      int duration = 0;
      for (std::size_t j = t; j < g.size(); ++j) {
        if (!defined(g[j], line[j]) || !(g[j] > line[j])) break;
        ++duration;
      }
      out.push_back({SignalEvent{dates[t], kind, g[t], line[t]}, duration});
    }
    have_prev = true;
    prev_above = above;
  }
  return out;
}

std::vector<SignalEvent> detect_crossings(std::span<const double> g,
                                          std::span<const double> line,
                                          std::span<const Date> dates,
                                          SignalKind kind) {
  std::vector<SignalEvent> out;
  for (const auto& span : detect_crossing_spans(g, line, dates, kind)) {
    out.push_back(span.event);
  }
  return out;
}

}  // namespace mhe
