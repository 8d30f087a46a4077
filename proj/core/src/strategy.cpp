#include "mhe/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "mhe/errors.hpp"

namespace mhe {

void VixConfig::validate() const {
  if (!(low_threshold < high_threshold)) {
    throw DataError("VIX thresholds must satisfy low < high");
  }
}

std::vector<VixSignal> vix_signals(const TimeSeries& vix,
                                   const VixConfig& config) {
  config.validate();
  vix.validate();
  std::vector<VixSignal> out;
  for (std::size_t t = 0; t < vix.size(); ++t) {
    if (vix.values[t] < config.low_threshold) {
      out.push_back({vix.dates[t], Direction::Long});
    } else if (t > 0 && vix.values[t] > config.high_threshold &&
               vix.values[t - 1] <= config.high_threshold) {
      out.push_back({vix.dates[t], Direction::Short});
    }
  }
  return out;
}

namespace {

// First axis position with date >= d, or none.
std::optional<std::size_t> locate(std::span<const Date> axis, Date d) {
  auto it = std::lower_bound(axis.begin(), axis.end(), d);
  if (it == axis.end()) return std::nullopt;
  return static_cast<std::size_t>(it - axis.begin());
}

}  // namespace

std::vector<TradeInstruction> combine_signals(
    const std::vector<SignalSpan>& jmphe_signals,
    const std::vector<VixSignal>& vix_events, std::span<const Date> axis,
    const TradeRule& rule) {
  if (axis.empty()) throw DataError("combine_signals: empty trading axis");
  if (rule.combine_window_days < 0) {
    throw DataError("combine window must be >= 0 days");
  }

  // Per-axis-position JMPHE starts and VIX signals.
  std::vector<int> jmphe_start(axis.size(), 0);
  std::vector<long> window_until(axis.size(), -1);  // start pos -> last pos
  for (const auto& span : jmphe_signals) {
    auto pos = locate(axis, span.event.date);
    if (!pos) continue;
    jmphe_start[*pos] = 1;
    const long until = static_cast<long>(*pos) +
                       std::max(0, span.duration_days - 1) +
                       rule.combine_window_days;
    window_until[*pos] = std::max(window_until[*pos], until);
  }
  std::vector<std::optional<Direction>> vix_at(axis.size());
  for (const auto& v : vix_events) {
    auto pos = locate(axis, v.date);
    if (!pos) continue;
    // A date carries at most one VIX signal (the thresholds are ordered).
    vix_at[*pos] = v.direction;
  }

  std::vector<TradeInstruction> out;
  std::optional<Direction> position;
  long active_until = -1;  // last axis position of the current JMPHE window

  for (std::size_t t = 0; t < axis.size(); ++t) {
    if (jmphe_start[t]) {
      if (position) {
        out.push_back({axis[t], InstructionKind::Close});
        position.reset();
      }
      active_until = std::max(active_until, window_until[t]);
    }
    if (vix_at[t]) {
      const Direction dir = *vix_at[t];
      if (position == Direction::Short && dir == Direction::Long) {
        out.push_back({axis[t], InstructionKind::Close});
        position.reset();
      }
      if (!position && static_cast<long>(t) <= active_until) {
        out.push_back({axis[t], dir == Direction::Long
                                    ? InstructionKind::OpenLong
                                    : InstructionKind::OpenShort});
        position = dir;
      }
    }
  }
  return out;
}

namespace {

double mark_value(Direction dir, double capital_at_entry, double entry,
                  double price) {
  if (dir == Direction::Long) return capital_at_entry * price / entry;
  return capital_at_entry * (1.0 + (entry - price) / entry);
}

}  // namespace

BacktestResult backtest(const TimeSeries& prices,
                        const std::vector<TradeInstruction>& instructions,
                        double initial_capital) {
  prices.validate();
  if (!(initial_capital > 0.0)) {
    throw DataError("initial capital must be positive");
  }
  for (const auto& ins : instructions) {
    if (!std::binary_search(prices.dates.begin(), prices.dates.end(),
                            ins.date)) {
      throw DataError("instruction on " + ins.date.to_iso() +
                      ", which is not a trading date of '" + prices.label +
                      "'");
    }
  }

  BacktestResult result;
  result.dates = prices.dates;
  result.equity.reserve(prices.size());

  double capital = initial_capital;
  std::optional<Direction> position;
  double entry_price = 0.0;
  Date entry_date;

  std::size_t next_ins = 0;
  for (std::size_t t = 0; t < prices.size(); ++t) {
    const Date d = prices.dates[t];
    const double close = prices.values[t];
    while (next_ins < instructions.size() && instructions[next_ins].date == d) {
      const auto& ins = instructions[next_ins];
      switch (ins.kind) {
        case InstructionKind::Close: {
          if (!position) {
            throw InternalError("close instruction with no open position at " +
                                d.to_iso());
          }
          const double after = mark_value(*position, capital, entry_price, close);
          result.trades.push_back({entry_date, d, *position, entry_price, close,
                                   after / capital - 1.0});
          capital = after;
          position.reset();
          break;
        }
        case InstructionKind::OpenLong:
        case InstructionKind::OpenShort: {
          if (position) {
            throw InternalError("open instruction while a position is open at " +
                                d.to_iso());
          }
          position = ins.kind == InstructionKind::OpenLong ? Direction::Long
                                                           : Direction::Short;
          entry_price = close;
          entry_date = d;
          break;
        }
      }
      ++next_ins;
    }
    result.equity.push_back(
        position ? mark_value(*position, capital, entry_price, close) : capital);
  }
  if (next_ins < instructions.size()) {
    throw InternalError("instruction stream not sorted by date");
  }

  // An open position at the last date is marked to the final close.
  if (position) {
    const double close = prices.values.back();
    const double after = mark_value(*position, capital, entry_price, close);
    result.trades.push_back({entry_date, prices.dates.back(), *position,
                             entry_price, close, after / capital - 1.0});
    capital = after;
  }

  result.gross_profit = capital / initial_capital - 1.0;
  result.max_drawdown = max_drawdown(result.equity);
  return result;
}

double max_drawdown(std::span<const double> equity) {
  if (equity.empty()) throw DataError("max_drawdown: empty equity curve");
  double peak = -std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (double e : equity) {
    if (!(e > 0.0)) throw DataError("max_drawdown: equity must stay positive");
    peak = std::max(peak, e);
    worst = std::max(worst, 1.0 - e / peak);
  }
  return worst;
}

std::vector<CrashEvent> detect_crashes(const TimeSeries& index,
                                       double threshold, int horizon_days) {
  index.validate();
  if (horizon_days < 1) throw DataError("crash horizon must be >= 1 day");
  if (!(threshold > 0.0)) throw DataError("crash threshold must be positive");
  if (index.size() <= static_cast<std::size_t>(horizon_days)) {
    throw DataError("series shorter than the crash horizon");
  }

  std::vector<CrashEvent> out;
  bool in_run = false;
  double trough_value = 0.0;
  for (std::size_t t = static_cast<std::size_t>(horizon_days); t < index.size();
       ++t) {
    const double ref = index.values[t - static_cast<std::size_t>(horizon_days)];
    const double decline = (ref - index.values[t]) / ref;
    if (decline >= threshold) {
      if (!in_run) {
        out.push_back({index.dates[t], index.dates[t], decline, horizon_days});
        trough_value = index.values[t];
        in_run = true;
      } else {
        auto& ev = out.back();
        ev.decline = std::max(ev.decline, decline);
        if (index.values[t] < trough_value) {
          trough_value = index.values[t];
          ev.trough = index.dates[t];
        }
      }
    } else {
      in_run = false;
    }
  }
  return out;
}

PredictionSummary evaluate_predictions(const std::vector<SignalEvent>& signals,
                                       const std::vector<CrashEvent>& crashes,
                                       std::span<const Date> axis,
                                       int horizon_days) {
  if (horizon_days < 0) throw DataError("prediction horizon must be >= 0");
  auto position_of = [&](Date d, const char* what) {
    auto it = std::lower_bound(axis.begin(), axis.end(), d);
    if (it == axis.end() || *it != d) {
      throw DataError(std::string(what) + " date " + d.to_iso() +
                      " is not on the trading axis");
    }
    return static_cast<long>(it - axis.begin());
  };

  std::vector<long> crash_pos;
  for (const auto& c : crashes) crash_pos.push_back(position_of(c.start, "crash"));

  PredictionSummary summary;
  summary.n_signals = static_cast<int>(signals.size());
  summary.n_crashes = static_cast<int>(crashes.size());

  // Earliest hitting signal per crash.
  std::vector<long> earliest_hit(crashes.size(),
                                 std::numeric_limits<long>::max());
  for (const auto& s : signals) {
    const long sp = position_of(s.date, "signal");
    // Nearest crash starting at or after the signal.
    auto it = std::lower_bound(crash_pos.begin(), crash_pos.end(), sp);
    if (it != crash_pos.end() && *it - sp <= horizon_days) {
      ++summary.hits;
      const std::size_t ci = static_cast<std::size_t>(it - crash_pos.begin());
      earliest_hit[ci] = std::min(earliest_hit[ci], sp);
    } else {
      ++summary.false_signals;
    }
  }
  for (std::size_t ci = 0; ci < crashes.size(); ++ci) {
    if (earliest_hit[ci] != std::numeric_limits<long>::max()) {
      ++summary.predicted_crashes;
      summary.lead_times.push_back(
          static_cast<int>(crash_pos[ci] - earliest_hit[ci]));
    } else {
      ++summary.missed_crashes;
    }
  }
  return summary;
}

}  // namespace mhe
