#pragma once

#include <span>
#include <vector>

#include "mhe/date.hpp"
#include "mhe/seminorm.hpp"
#include "mhe/timeseries.hpp"

namespace mhe {

// Reference level layout: the block_size * n_blocks points immediately
// preceding the target window, split into n_blocks consecutive blocks whose
// semi-norms at alpha_ref are averaged.
struct ReferenceConfig {
  double alpha_ref = 0.5;
  int block_size = 7;
  int n_blocks = 5;

  int total_points() const { return block_size * n_blocks; }
  void validate() const;
};

enum class WindowMode {
  Trailing,  // target = the w points ending at t_k (predictor form)
  Centered,  // target = t_{k-3} .. t_{k+3}; requires window_w == 7
};

struct MpheConfig {
  int window_w = 30;
  BetaGrid grid{100};
  ReferenceConfig reference{};
  WindowMode window_mode = WindowMode::Trailing;
  // Returned when the target window never reaches the reference level;
  // marks maximal apparent smoothness.
  double cap_value = 1.0;

  void validate() const;
  // Shortest series that admits one evaluation point.
  int min_series_length() const;
};

// Pointwise modified Holder exponents aligned to a slice of the parent
// series: g[i] belongs to parent index first_index + i. n_zero_reference
// counts evaluation points whose reference level degenerated to 0 (fully
// constant history), where G falls back to the first grid exponent.
struct MpheProfile {
  std::size_t first_index = 0;
  std::vector<double> g;
  std::size_t n_zero_reference = 0;
};

struct MpheSeries {
  std::vector<Date> dates;
  std::vector<double> g_values;
  MpheConfig config;
  bool normalized = false;
  std::size_t first_index = 0;  // offset into the parent series
  std::size_t n_zero_reference = 0;
};

// Mean over the n_blocks reference blocks of the block semi-norm at
// alpha_ref. history holds at least block_size * n_blocks points; the most
// recent ones are used. Throws DataError on insufficient history.
double reference_level(std::span<const double> history_values,
                       std::span<const double> history_times,
                       const ReferenceConfig& ref);

// The modified Holder exponent of one window: the smallest grid exponent
// beta_k whose semi-norm reaches c_ref. c_ref = 0 degenerates to beta_1
// (C >= 0 always holds); a level that is never reached returns cap_value.
double mhe_value(const Window& target, double c_ref, const BetaGrid& grid,
                 double cap_value);

// G(t) over every admissible evaluation point of a uniformly sampled value
// sequence. time_step is the sampling interval of the stream (a loaded
// series uses 1/N); appending further observations never changes earlier
// values. Throws DataError when no point is admissible, reporting the
// minimum length.
MpheProfile mphe_profile(std::span<const double> values, double time_step,
                         const MpheConfig& config);

MpheSeries mphe_series(const TimeSeries& series, const MpheConfig& config);

// Divides g by its maximum (display/comparison form; signal logic consumes
// raw G). Idempotent. Throws DataError on an empty or all-zero series.
MpheSeries normalize_mphe(const MpheSeries& series);

}  // namespace mhe
