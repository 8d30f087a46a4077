#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace mhe_test {

// Independent oracle for the discrete Holder semi-norm: plain double loop
// over all pairs, one division per pair. Deliberately ignorant of the
// gap-grouping the library does.
inline double naive_semi_norm(const std::vector<double>& values,
                              const std::vector<double>& times, double beta) {
  double best = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (i == j) continue;
      const double v = std::abs(values[i] - values[j]) /
                       std::pow(std::abs(times[i] - times[j]), beta);
      if (v > best) best = v;
    }
  }
  return best;
}

inline std::vector<double> random_walk(std::mt19937& rng, std::size_t n,
                                       double start = 100.0,
                                       double step_sd = 1.0) {
  std::normal_distribution<double> step(0.0, step_sd);
  std::vector<double> out(n);
  double x = start;
  for (std::size_t i = 0; i < n; ++i) {
    x += step(rng);
    out[i] = x;
  }
  return out;
}

// Strictly increasing times in [0, 1].
inline std::vector<double> random_times(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> t(n);
  while (true) {
    for (auto& v : t) v = u(rng);
    std::sort(t.begin(), t.end());
    bool strict = true;
    for (std::size_t i = 1; i < n; ++i) {
      if (!(t[i] > t[i - 1])) strict = false;
    }
    if (strict) return t;
  }
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& a,
                       const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> r(x.size());
    std::size_t i = 0;
    while (i < x.size()) {
      std::size_t j = i;
      while (j + 1 < x.size() && x[order[j + 1]] == x[order[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t m = i; m <= j; ++m) r[order[m]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= static_cast<double>(ra.size());
  mb /= static_cast<double>(rb.size());
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

// Maximal runs of one repeated value whose neighbors are strictly lower
// (series boundaries count as lower). Flat-topped peaks come out as one run.
struct PeakRun {
  std::size_t first;
  std::size_t last;
  double value;
};

inline std::vector<PeakRun> plateau_maxima(const std::vector<double>& x) {
  std::vector<PeakRun> out;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j + 1 < x.size() && x[j + 1] == x[i]) ++j;
    const bool left_ok = i == 0 || x[i - 1] < x[i];
    const bool right_ok = j == x.size() - 1 || x[j + 1] < x[i];
    if (left_ok && right_ok) out.push_back({i, j, x[i]});
    i = j + 1;
  }
  return out;
}

// Distance between index intervals [a1, b1] and [a2, b2]; 0 when they overlap.
inline std::size_t interval_distance(std::size_t a1, std::size_t b1,
                                     std::size_t a2, std::size_t b2) {
  if (b1 < a2) return a2 - b1;
  if (b2 < a1) return a1 - b2;
  return 0;
}

}  // namespace mhe_test
