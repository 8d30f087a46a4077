#pragma once

#include <span>
#include <vector>

#include "mhe/date.hpp"

namespace mhe {

// Signal line sl(t) = trailing mean of the indicator plus height_k sample
// standard deviations over the last history points (the window includes t).
struct SignalConfig {
  double height_k = 1.5;
  int history_h = 0;           // explicit history; 0 derives it below
  int history_multiplier = 10;  // h = multiplier * w when history_h == 0

  // Throws DataError if the resolved history is < 2 (the sample standard
  // deviation needs two points).
  int resolve_history(int window_w) const;
};

enum class SignalKind { Mphe, Jmphe };

// A bottom-up crossing: the indicator is strictly above the line at `date`
// and was at or below it at the previous defined date.
struct SignalEvent {
  Date date;
  SignalKind kind;
  double indicator_value;
  double line_value;
};

// An event plus the length of the run of consecutive dates with indicator
// strictly above the line, starting at the crossing.
struct SignalSpan {
  SignalEvent event;
  int duration_days;
};

// EMA(1) = x(1); EMA(t) = lambda*x(t) + (1-lambda)*EMA(t-1).
// Throws DataError on an empty input or lambda outside (0, 1].
std::vector<double> ema(std::span<const double> x, double lambda);

// sl aligned with g; the first h-1 entries (insufficient history) are NaN.
// Throws DataError when g is shorter than the history or not fully finite.
std::vector<double> signal_line(std::span<const double> g,
                                const SignalConfig& config, int window_w);

// Bottom-up crossings of g over line, restricted to indices where both are
// defined (finite). Equality counts as "not above"; there is no event at the
// first defined index. Throws DataError if lengths differ from the date axis.
std::vector<SignalEvent> detect_crossings(std::span<const double> g,
                                          std::span<const double> line,
                                          std::span<const Date> dates,
                                          SignalKind kind);

std::vector<SignalSpan> detect_crossing_spans(std::span<const double> g,
                                              std::span<const double> line,
                                              std::span<const Date> dates,
                                              SignalKind kind);

}  // namespace mhe
