#include "mhe/mphe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhe/errors.hpp"

namespace mhe {

void ReferenceConfig::validate() const {
  if (!(alpha_ref > 0.0) || alpha_ref > 1.0) {
    throw DataError("alpha_ref must lie in (0, 1]");
  }
  if (block_size < 2) throw DataError("reference block_size must be >= 2");
  if (n_blocks < 1) throw DataError("reference n_blocks must be >= 1");
}

void MpheConfig::validate() const {
  reference.validate();
  if (window_w < 2) throw DataError("window size w must be >= 2");
  if (window_mode == WindowMode::Centered && window_w != 7) {
    throw DataError("centered window mode requires w = 7");
  }
  if (!(cap_value > 0.0) || cap_value > 1.0) {
    throw DataError("cap_value must lie in (0, 1]");
  }
}

int MpheConfig::min_series_length() const {
  return window_w + reference.total_points() +
         (window_mode == WindowMode::Centered ? 3 : 0);
}

double reference_level(std::span<const double> history_values,
                       std::span<const double> history_times,
                       const ReferenceConfig& ref) {
  ref.validate();
  const std::size_t need = static_cast<std::size_t>(ref.total_points());
  if (history_values.size() != history_times.size()) {
    throw DataError("reference history values/times length mismatch");
  }
  if (history_values.size() < need) {
    throw DataError("reference level needs " + std::to_string(need) +
                    " history points, got " +
                    std::to_string(history_values.size()));
  }
  const std::size_t start = history_values.size() - need;
  double sum = 0.0;
  for (int j = 0; j < ref.n_blocks; ++j) {
    const std::size_t off = start + static_cast<std::size_t>(j) * ref.block_size;
    GapProfile block(history_values.subspan(off, ref.block_size),
                     history_times.subspan(off, ref.block_size));
    sum += block.semi_norm(ref.alpha_ref);
  }
  return sum / ref.n_blocks;
}

namespace {

double mhe_from_profile(const GapProfile& profile, double c_ref,
                        const BetaGrid& grid, double cap_value) {
  for (int k = 1; k <= grid.resolution(); ++k) {
    if (profile.semi_norm(grid.beta(k)) >= c_ref) return grid.beta(k);
  }
  return cap_value;
}

}  // namespace

double mhe_value(const Window& target, double c_ref, const BetaGrid& grid,
                 double cap_value) {
  if (c_ref < 0.0 || !std::isfinite(c_ref)) {
    throw DataError("reference level must be finite and >= 0");
  }
  return mhe_from_profile(GapProfile(target), c_ref, grid, cap_value);
}

MpheProfile mphe_profile(std::span<const double> values, double time_step,
                         const MpheConfig& config) {
  config.validate();
  if (!(time_step > 0.0)) throw DataError("time_step must be positive");

  const int w = config.window_w;
  const int ref_n = config.reference.total_points();
  const bool centered = config.window_mode == WindowMode::Centered;
  // Target window [t_lo, t_hi] relative to the evaluation index k, reference
  // occupies the ref_n points before t_lo.
  const int back = centered ? 3 : w - 1;   // k - t_lo
  const int fwd = centered ? 3 : 0;        // t_hi - k
  const long n = static_cast<long>(values.size());
  const long first = back + ref_n;
  const long last = n - 1 - fwd;
  if (first > last) {
    throw DataError("series too short for MPHE: need at least " +
                    std::to_string(config.min_series_length()) +
                    " points, got " + std::to_string(n));
  }
  const int widest =
      std::max(config.window_w, config.reference.block_size) - 1;
  if (widest * time_step > 1.0) {
    throw DataError("window time span exceeds 1; reduce time_step or w");
  }

  std::vector<double> times(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    times[i] = static_cast<double>(i + 1) * time_step;
  }
  std::span<const double> tspan(times);

  MpheProfile out;
  out.first_index = static_cast<std::size_t>(first);
  out.g.reserve(static_cast<std::size_t>(last - first + 1));
  for (long k = first; k <= last; ++k) {
    const std::size_t t_lo = static_cast<std::size_t>(k - back);
    const std::size_t r_lo = t_lo - static_cast<std::size_t>(ref_n);
    const double c_ref =
        reference_level(values.subspan(r_lo, ref_n), tspan.subspan(r_lo, ref_n),
                        config.reference);
    if (c_ref == 0.0) ++out.n_zero_reference;
    GapProfile target(values.subspan(t_lo, w), tspan.subspan(t_lo, w));
    out.g.push_back(mhe_from_profile(target, c_ref, config.grid,
                                     config.cap_value));
  }
  return out;
}

MpheSeries mphe_series(const TimeSeries& series, const MpheConfig& config) {
  series.validate();
  MpheProfile profile = mphe_profile(series.values, series.time_step(), config);
  MpheSeries out;
  out.first_index = profile.first_index;
  out.n_zero_reference = profile.n_zero_reference;
  out.dates.assign(series.dates.begin() + static_cast<long>(profile.first_index),
                   series.dates.begin() +
                       static_cast<long>(profile.first_index + profile.g.size()));
  out.g_values = std::move(profile.g);
  out.config = config;
  return out;
}

MpheSeries normalize_mphe(const MpheSeries& series) {
  if (series.g_values.empty()) throw DataError("cannot normalize an empty series");
  double max_abs = 0.0;
  for (double g : series.g_values) max_abs = std::max(max_abs, std::abs(g));
  if (max_abs == 0.0) throw DataError("cannot normalize an all-zero series");
  MpheSeries out = series;
  for (double& g : out.g_values) g /= max_abs;
  out.normalized = true;
  return out;
}

}  // namespace mhe
