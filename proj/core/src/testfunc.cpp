#include "mhe/testfunc.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mhe/errors.hpp"

namespace mhe {

void WeierstrassConfig::validate() const {
  if (!(fractal_dim > 1.0) || !(fractal_dim < 2.0)) {
    throw DataError("Weierstrass fractal dimension must lie in (1, 2)");
  }
  if (!(base > 1.0)) throw DataError("Weierstrass base must be > 1");
  if (n_min > n_max) throw DataError("Weierstrass truncation bounds inverted");
}

double WeierstrassConfig::tail_bound(double t) const {
  validate();
  // Upper tail: |1 - cos| <= 2 and the denominator grows geometrically.
  const double r_hi = std::pow(2.0, -(2.0 - fractal_dim));
  const double upper = 2.0 * std::pow(r_hi, n_max + 1) / (1.0 - r_hi);
  // Lower tail: 1 - cos(x) <= x^2 / 2, so terms decay like
  // (b^2 / 2^(2-D))^n as n -> -infinity; requires that ratio > 1.
  const double q = base * base * r_hi;
  if (q <= 1.0) return std::numeric_limits<double>::infinity();
  const double lower = 0.5 * t * t * std::pow(q, n_min) / (q - 1.0);
  return upper + lower;
}

double weierstrass(double t, const WeierstrassConfig& config) {
  config.validate();
  double sum = 0.0;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    sum += (1.0 - std::cos(std::pow(config.base, n) * t)) /
           std::pow(2.0, (2.0 - config.fractal_dim) * n);
  }
  return sum;
}

std::vector<double> sample_weierstrass(int n_points,
                                       const WeierstrassConfig& config) {
  if (n_points < 1) throw DataError("sample_weierstrass: n_points must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(n_points));
  for (int i = 1; i <= n_points; ++i) {
    out[static_cast<std::size_t>(i - 1)] =
        weierstrass(static_cast<double>(i) / n_points, config);
  }
  return out;
}

std::function<double(double)> GenWeierstrassConfig::default_profile() {
  return [](double t) { return std::abs(std::sin(5.0 * std::numbers::pi * t)); };
}

void GenWeierstrassConfig::validate() const {
  if (!s_function) throw DataError("generalized Weierstrass: missing s(t)");
  if (k_max < 0) throw DataError("generalized Weierstrass: k_max must be >= 0");
  if (!(domain_lo < domain_hi)) {
    throw DataError("generalized Weierstrass: empty domain");
  }
}

namespace {

double profile_at(double t, const GenWeierstrassConfig& config) {
  config.validate();
  if (t < config.domain_lo || t > config.domain_hi) {
    throw DataError("t = " + std::to_string(t) + " outside domain [" +
                    std::to_string(config.domain_lo) + ", " +
                    std::to_string(config.domain_hi) + "]");
  }
  const double s = config.s_function(t);
  if (s < 0.0 || !std::isfinite(s)) {
    throw DataError("s(t) must be >= 0 and finite; s(" + std::to_string(t) +
                    ") = " + std::to_string(s));
  }
  return s;
}

}  // namespace

double generalized_weierstrass(double t, const GenWeierstrassConfig& config) {
  const double s = profile_at(t, config);
  double sum = 0.0;
  for (int k = 0; k <= config.k_max; ++k) {
    sum += std::pow(3.0, -static_cast<double>(k) * s) *
           std::sin(std::pow(3.0, k) * t);
  }
  return sum;
}

double gw_tail_bound(double t, const GenWeierstrassConfig& config) {
  const double s = profile_at(t, config);
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  const double r = std::pow(3.0, -s);
  return std::pow(r, config.k_max + 1) / (1.0 - r);
}

double theoretical_pointwise_exponent(double t,
                                      const GenWeierstrassConfig& config) {
  return profile_at(t, config);
}

}  // namespace mhe
