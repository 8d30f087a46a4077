#include "mhe/jmphe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhe/errors.hpp"

namespace mhe {

JmpheThreshold JmpheThreshold::derived_from_height(double height_k) {
  if (!(height_k > 0.0)) {
    throw DataError("derived JMPHE threshold needs a positive height k");
  }
  return {1.0 / (2.0 * height_k), true};
}

JmpheThreshold JmpheThreshold::explicit_value(double value) {
  return {value, false};
}

IndicatorPanel align_indicator_panel(
    const std::vector<MpheSeries>& mphe,
    const std::vector<std::vector<double>>& signal_lines) {
  if (mphe.empty()) throw DataError("indicator panel needs at least one stock");
  if (signal_lines.size() != mphe.size()) {
    throw DataError("indicator panel: " + std::to_string(mphe.size()) +
                    " MPHE series vs " + std::to_string(signal_lines.size()) +
                    " signal lines");
  }

  // Defined dates per stock, then the intersection.
  std::vector<Date> axis;
  for (std::size_t s = 0; s < mphe.size(); ++s) {
    const auto& series = mphe[s];
    const auto& sl = signal_lines[s];
    if (sl.size() != series.g_values.size()) {
      throw DataError("stock " + std::to_string(s) +
                      ": signal line not aligned to its MPHE series");
    }
    std::vector<Date> defined;
    for (std::size_t i = 0; i < sl.size(); ++i) {
      if (std::isfinite(series.g_values[i]) && std::isfinite(sl[i])) {
        defined.push_back(series.dates[i]);
      }
    }
    if (s == 0) {
      axis = std::move(defined);
    } else {
      std::vector<Date> next;
      std::set_intersection(axis.begin(), axis.end(), defined.begin(),
                            defined.end(), std::back_inserter(next));
      axis.swap(next);
    }
  }
  if (axis.empty()) {
    throw DataError("indicator panel: no common defined dates across stocks");
  }

  IndicatorPanel panel;
  panel.dates = axis;
  for (std::size_t s = 0; s < mphe.size(); ++s) {
    const auto& series = mphe[s];
    const auto& sl = signal_lines[s];
    std::vector<double> g_row, sl_row;
    g_row.reserve(axis.size());
    sl_row.reserve(axis.size());
    std::size_t j = 0;
    for (const Date& d : axis) {
      while (series.dates[j] < d) ++j;
      g_row.push_back(series.g_values[j]);
      sl_row.push_back(sl[j]);
    }
    panel.g.push_back(std::move(g_row));
    panel.sl.push_back(std::move(sl_row));
  }
  return panel;
}

std::vector<double> sign_vote(const std::vector<std::vector<double>>& g_panel,
                              const std::vector<std::vector<double>>& sl_panel) {
  if (g_panel.empty() || g_panel.size() != sl_panel.size()) {
    throw DataError("sign_vote: panel shape mismatch");
  }
  const std::size_t n_dates = g_panel.front().size();
  for (std::size_t s = 0; s < g_panel.size(); ++s) {
    if (g_panel[s].size() != n_dates || sl_panel[s].size() != n_dates) {
      throw DataError("sign_vote: stock " + std::to_string(s) +
                      " is not on the common axis");
    }
  }
  std::vector<double> votes(n_dates, 0.0);
  for (std::size_t t = 0; t < n_dates; ++t) {
    double sum = 0.0;
    for (std::size_t s = 0; s < g_panel.size(); ++s) {
      const double d = g_panel[s][t] - sl_panel[s][t];
      sum += d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    }
    votes[t] = sum / static_cast<double>(g_panel.size());
  }
  return votes;
}

JmpheSeries jmphe(const IndicatorPanel& panel, double lambda) {
  if (panel.g.empty()) throw DataError("jmphe: empty panel");
  JmpheSeries out;
  out.dates = panel.dates;
  out.h_values = ema(sign_vote(panel.g, panel.sl), lambda);
  out.lambda = lambda;
  out.n_stocks = static_cast<int>(panel.n_stocks());
  return out;
}

namespace {

std::vector<double> constant_line(const JmpheSeries& h,
                                  const JmpheThreshold& threshold) {
  if (threshold.value < -1.0 || threshold.value > 1.0) {
    throw DataError("JMPHE threshold must lie in [-1, 1]");
  }
  return std::vector<double>(h.h_values.size(), threshold.value);
}

}  // namespace

std::vector<SignalEvent> jmphe_signals(const JmpheSeries& h,
                                       const JmpheThreshold& threshold) {
  const auto line = constant_line(h, threshold);
  return detect_crossings(h.h_values, line, h.dates, SignalKind::Jmphe);
}

std::vector<SignalSpan> jmphe_signal_spans(const JmpheSeries& h,
                                           const JmpheThreshold& threshold) {
  const auto line = constant_line(h, threshold);
  return detect_crossing_spans(h.h_values, line, h.dates, SignalKind::Jmphe);
}

}  // namespace mhe
