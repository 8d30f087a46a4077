#include "mhe/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "mhe/errors.hpp"

namespace mhe {

BetaGrid::BetaGrid(int resolution) : n_(resolution) {
  if (resolution < 1) {
    throw DataError("beta grid resolution must be >= 1, got " +
                    std::to_string(resolution));
  }
}

Window::Window(std::vector<double> values, std::vector<double> times)
    : values_(std::move(values)), times_(std::move(times)) {
  if (values_.size() < 2) {
    throw DataError("window needs at least 2 points, got " +
                    std::to_string(values_.size()));
  }
  if (times_.size() != values_.size()) {
    throw DataError("window has " + std::to_string(values_.size()) +
                    " values but " + std::to_string(times_.size()) + " times");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || !std::isfinite(times_[i])) {
      throw DataError("window contains a non-finite entry");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw DataError("window times must be strictly increasing");
    }
  }
  if (times_.back() - times_.front() > 1.0) {
    throw DataError("window time span exceeds 1");
  }
}

Window Window::uniform(std::span<const double> values, std::size_t first_index,
                       double dt) {
  std::vector<double> times(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    times[i] = static_cast<double>(first_index + i + 1) * dt;
  }
  return Window(std::vector<double>(values.begin(), values.end()),
                std::move(times));
}

GapProfile::GapProfile(const Window& window)
    : GapProfile(window.values(), window.times()) {}

GapProfile::GapProfile(std::span<const double> values,
                       std::span<const double> times) {
  if (values.size() < 2 || values.size() != times.size()) {
    throw DataError("gap profile needs matching values/times with >= 2 points");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !std::isfinite(times[i])) {
      throw DataError("gap profile input must be finite");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw DataError("gap profile times must be strictly increasing");
    }
  }
  std::map<double, double> by_gap;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(times[i] - times[j]);
      const double dx = std::abs(values[i] - values[j]);
      auto [it, inserted] = by_gap.emplace(gap, dx);
      if (!inserted && dx > it->second) it->second = dx;
    }
  }
  groups_.assign(by_gap.begin(), by_gap.end());
}

double GapProfile::semi_norm(double beta) const {
  double best = 0.0;
  for (const auto& [gap, dx] : groups_) {
    const double v = dx / std::pow(gap, beta);
    if (v > best) best = v;
  }
  return best;
}

bool GapProfile::all_zero() const {
  return std::all_of(groups_.begin(), groups_.end(),
                     [](const auto& g) { return g.second == 0.0; });
}

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0) || beta > 1.0) {
    throw DataError("beta must lie in (0, 1], got " + std::to_string(beta));
  }
}

}  // namespace

double semi_norm(const Window& window, double beta) {
  check_beta(beta);
  return GapProfile(window).semi_norm(beta);
}

SemiNormCurve semi_norm_curve(const Window& window, const BetaGrid& grid) {
  GapProfile profile(window);
  SemiNormCurve curve{grid, {}};
  curve.c_values.reserve(grid.size());
  for (int k = 1; k <= grid.resolution(); ++k) {
    curve.c_values.push_back(profile.semi_norm(grid.beta(k)));
  }
  return curve;
}

double estimate_holder_by_jump(const SemiNormCurve& curve, int span) {
  const int n = curve.grid.resolution();
  if (n < 3) throw DataError("jump estimate needs a grid with >= 3 points");
  if (curve.c_values.size() != curve.grid.size()) {
    throw DataError("semi-norm curve does not match its grid");
  }
  if (std::all_of(curve.c_values.begin(), curve.c_values.end(),
                  [](double c) { return c == 0.0; })) {
    throw DataError("all-zero semi-norm curve: no regularity information");
  }
  if (span <= 0) span = std::max(1, n / 20);

  constexpr double kFloor = 1e-300;
  std::vector<double> logs(curve.c_values.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    logs[i] = std::log(curve.c_values[i] + kFloor);
  }
  // d[i] = increment into grid point k = i + 2 (1-based).
  std::vector<double> d(logs.size() - 1);
  for (std::size_t i = 0; i + 1 < logs.size(); ++i) d[i] = logs[i + 1] - logs[i];

  auto mean = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += d[i];
    return s / static_cast<double>(hi - lo);
  };

  int best_k = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int k = 3; k <= n; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - 2);
    const std::size_t fwd_hi = std::min(d.size(), i + static_cast<std::size_t>(span));
    const std::size_t bwd_lo = i >= static_cast<std::size_t>(span)
                                   ? i - static_cast<std::size_t>(span)
                                   : 0;
    const double score = mean(i, fwd_hi) - mean(bwd_lo, i);
    if (score > best_score) {
      best_score = score;
      best_k = k;
    }
  }
  return curve.grid.beta(best_k);
}

}  // namespace mhe
