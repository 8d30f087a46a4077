#pragma once

#include <span>
#include <vector>

#include "mhe/date.hpp"
#include "mhe/mphe.hpp"
#include "mhe/signal.hpp"

namespace mhe {

// Joint indicator H(t): EMA of the per-date mean over stocks of
// sign(G_i(t) - sl_i(t)). A counter, in [-1, 1], of how much of the panel is
// currently signalling.
struct JmpheSeries {
  std::vector<Date> dates;
  std::vector<double> h_values;
  double lambda = 0.3;
  int n_stocks = 0;
};

// The constant signal line for H. Derived mode computes 1/(2k) from the
// per-stock signal-line height k; an explicit value overrides it.
struct JmpheThreshold {
  double value = 0.0;
  bool derived = false;

  static JmpheThreshold derived_from_height(double height_k);
  static JmpheThreshold explicit_value(double value);
};

// Per-stock indicator/line pairs restricted to the dates where every pair is
// defined (intersection, no imputation).
struct IndicatorPanel {
  std::vector<Date> dates;
  std::vector<std::vector<double>> g;   // [stock][date]
  std::vector<std::vector<double>> sl;  // [stock][date]

  std::size_t n_stocks() const { return g.size(); }
};

// Builds the common axis from per-stock MPHE series and their signal lines
// (aligned to each series' own dates; NaN entries count as undefined).
IndicatorPanel align_indicator_panel(
    const std::vector<MpheSeries>& mphe,
    const std::vector<std::vector<double>>& signal_lines);

// Mean over stocks of sign(G_i - sl_i) per date, sign(0) = 0.
// Throws DataError when panels are empty or rows have mismatched lengths.
std::vector<double> sign_vote(const std::vector<std::vector<double>>& g_panel,
                              const std::vector<std::vector<double>>& sl_panel);

// H = EMA(sign_vote, lambda), seeded at the first vote.
JmpheSeries jmphe(const IndicatorPanel& panel, double lambda = 0.3);

// Bottom-up crossings of H over the constant threshold line.
// Throws DataError when the threshold lies outside [-1, 1].
std::vector<SignalEvent> jmphe_signals(const JmpheSeries& h,
                                       const JmpheThreshold& threshold);
std::vector<SignalSpan> jmphe_signal_spans(const JmpheSeries& h,
                                           const JmpheThreshold& threshold);

}  // namespace mhe
