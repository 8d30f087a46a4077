#pragma once

#include <functional>
#include <vector>

namespace mhe {

// Weierstrass-Mandelbrot series with uniform Holder exponent 2 - D:
//   W(t) = sum_n (1 - cos(b^n t)) / 2^((2-D) n), n = n_min .. n_max.
// base = 2 makes the frequency base match the 2^((2-D)n) denominator, the
// standard form under which the 2 - D exponent holds. The default truncation
// keeps the omitted tail below ~1e-6 at D = 1.5 for |t| <= 1.
struct WeierstrassConfig {
  double fractal_dim = 1.5;  // D in (1, 2)
  double base = 2.0;         // b > 1
  int n_min = -20;
  int n_max = 40;

  double holder_exponent() const { return 2.0 - fractal_dim; }
  void validate() const;
  // Bound on |omitted tail| of the two-sided sum at argument t.
  double tail_bound(double t) const;
};

double weierstrass(double t, const WeierstrassConfig& config = {});

// X_i = W(i/n_points), i = 1 .. n_points.
std::vector<double> sample_weierstrass(int n_points,
                                       const WeierstrassConfig& config = {});

// Generalized Weierstrass series with prescribed pointwise regularity
// alpha(t) = s(t):
//   V(t) = sum_{k=0}^{k_max} 3^(-k s(t)) sin(3^k t),  s(t) in (0, 1).
// Points with s(t) = 0 (where the full sum fails to converge) still evaluate
// to a finite truncated value; their tail bound is infinite, which flags
// them.
struct GenWeierstrassConfig {
  std::function<double(double)> s_function = default_profile();
  int k_max = 40;
  double domain_lo = 1.0;
  double domain_hi = 2.0;

  // s(t) = |sin(5 pi t)| on [1, 2].
  static std::function<double(double)> default_profile();
  void validate() const;
};

// Throws DataError when t is outside the domain or s(t) < 0.
double generalized_weierstrass(double t, const GenWeierstrassConfig& config);

// Geometric bound on the omitted tail: sum_{k > k_max} 3^(-k s(t)).
// +infinity when s(t) = 0.
double gw_tail_bound(double t, const GenWeierstrassConfig& config);

// alpha(t) = s(t). Throws DataError outside the domain.
double theoretical_pointwise_exponent(double t,
                                      const GenWeierstrassConfig& config);

}  // namespace mhe
