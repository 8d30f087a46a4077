#pragma once

#include <span>
#include <vector>

#include "mhe/date.hpp"
#include "mhe/signal.hpp"
#include "mhe/timeseries.hpp"

namespace mhe {

// Direction filter: a low VIX level argues for a rising market (long), an
// upward crossing of the high bound for a falling one (short).
struct VixConfig {
  double low_threshold = 20.0;
  double high_threshold = 30.0;

  void validate() const;
};

enum class Direction { Long, Short };

struct VixSignal {
  Date date;
  Direction direction;
};

// Long signal at every date with VIX < low_threshold (level condition);
// short signal where VIX crosses high_threshold bottom-up (VIX(t) > high and
// VIX(t-1) <= high). The ordered thresholds make the two exclusive per date.
std::vector<VixSignal> vix_signals(const TimeSeries& vix,
                                   const VixConfig& config = {});

// Position-opening window: a VIX signal may trigger during a JMPHE signal or
// within combine_window_days trading days after it ends.
struct TradeRule {
  int combine_window_days = 30;
};

enum class InstructionKind { OpenLong, OpenShort, Close };

struct TradeInstruction {
  Date date;
  InstructionKind kind;
};

// Turns JMPHE timing signals and VIX direction signals into an instruction
// stream over the trading axis:
//   - a VIX signal inside the active JMPHE window opens a position in the
//     VIX direction (only when flat);
//   - a new JMPHE signal closes any open position (and starts a new window);
//   - a VIX long signal closes an open short;
//   - an open long ignores VIX short signals.
// Closures are processed before openings on the same date, so a short may be
// closed and a long opened at one close. Event dates are located on the axis
// at the first date >= the event date; events beyond the axis are ignored.
// At most one position is ever open.
std::vector<TradeInstruction> combine_signals(
    const std::vector<SignalSpan>& jmphe_signals,
    const std::vector<VixSignal>& vix_events, std::span<const Date> axis,
    const TradeRule& rule = {});

struct Trade {
  Date open_date;
  Date close_date;
  Direction direction;
  double entry_price;
  double exit_price;
  double trade_return;  // long: exit/entry - 1; short: (entry - exit)/entry
};

struct BacktestResult {
  std::vector<Date> dates;
  std::vector<double> equity;  // starts at the initial capital
  std::vector<Trade> trades;
  double gross_profit = 0.0;   // final/initial - 1
  double max_drawdown = 0.0;
};

// Replays the instruction stream against daily closes with full reinvestment
// and no commission. Executes at the close of the instruction date; a
// position still open at the last date is marked to the final close.
// Throws DataError for an instruction on a date missing from the prices and
// InternalError if the stream violates position exclusivity.
BacktestResult backtest(const TimeSeries& prices,
                        const std::vector<TradeInstruction>& instructions,
                        double initial_capital = 1.0);

// max over t of 1 - equity(t)/running_max(t), in [0, 1].
// Throws DataError on empty or nonpositive equity.
double max_drawdown(std::span<const double> equity);

struct CrashEvent {
  Date start;   // first qualifying date of the run
  Date trough;  // lowest close within the run
  double decline;  // largest horizon-day decline within the run
  int horizon_days;
};

// A date qualifies when the close fell by at least `threshold` over
// `horizon_days` trading days; consecutive qualifying dates merge into one
// event. Throws DataError when the series is not longer than the horizon.
std::vector<CrashEvent> detect_crashes(const TimeSeries& index,
                                       double threshold = 0.09,
                                       int horizon_days = 3);

struct PredictionSummary {
  int n_signals = 0;
  int hits = 0;            // signals with a crash within the horizon
  int false_signals = 0;   // signals with none
  int n_crashes = 0;
  int predicted_crashes = 0;
  int missed_crashes = 0;
  // Per predicted crash: crash start minus its earliest hitting signal, in
  // trading days.
  std::vector<int> lead_times;
};

// Scores signals against crash events on a trading axis. A signal hits when
// the nearest crash starting at or after it begins within horizon_days
// trading days.
PredictionSummary evaluate_predictions(const std::vector<SignalEvent>& signals,
                                       const std::vector<CrashEvent>& crashes,
                                       std::span<const Date> axis,
                                       int horizon_days = 100);

}  // namespace mhe
