#include "mhe/testfunc.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "mhe/errors.hpp"

using namespace mhe;

TEST_CASE("weierstrass basics") {
  WeierstrassConfig cfg;
  CHECK(weierstrass(0.0, cfg) == 0.0);
  CHECK(cfg.holder_exponent() == 0.5);

  for (double t : {0.123, 0.5, 0.987}) {
    CHECK(weierstrass(-t, cfg) == weierstrass(t, cfg));
  }

  auto series = sample_weierstrass(1000, cfg);
  REQUIRE(series.size() == 1000);
  CHECK(series[0] == weierstrass(0.001, cfg));
  CHECK(series[999] == weierstrass(1.0, cfg));

  CHECK_THROWS_AS(weierstrass(0.5, WeierstrassConfig{2.5, 2.0, -20, 40}),
                  DataError);
  CHECK_THROWS_AS(weierstrass(0.5, WeierstrassConfig{1.5, 0.5, -20, 40}),
                  DataError);
  CHECK_THROWS_AS(sample_weierstrass(0, cfg), DataError);
}

TEST_CASE("weierstrass truncation convergence") {
  WeierstrassConfig narrow{1.5, 2.0, -20, 40};
  WeierstrassConfig wide{1.5, 2.0, -40, 80};
  for (double t : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    const double bound = narrow.tail_bound(t);
    CHECK(std::abs(weierstrass(t, narrow) - weierstrass(t, wide)) <= bound);
  }
  CHECK(narrow.tail_bound(1.0) < 1e-5);
}

TEST_CASE("weierstrass determinism") {
  WeierstrassConfig cfg;
  CHECK(weierstrass(0.37, cfg) == weierstrass(0.37, cfg));
}

TEST_CASE("generalized weierstrass basics") {
  // Constant profile s = 1: every term carries sin(3^k * 0) = 0.
  GenWeierstrassConfig unit;
  unit.s_function = [](double) { return 1.0; };
  unit.domain_lo = -1.0;
  unit.domain_hi = 1.0;
  CHECK(generalized_weierstrass(0.0, unit) == 0.0);

  // Triangle-inequality bound from the geometric envelope. The domain is
  // widened so the reference points below t = 1 are legal samples.
  GenWeierstrassConfig cfg;
  cfg.domain_lo = 0.5;
  cfg.domain_hi = 2.1;
  for (int j = 63; j <= 203; j += 7) {
    const double t = j / 100.0;
    const double s = theoretical_pointwise_exponent(t, cfg);
    double envelope = 0.0;
    for (int k = 0; k <= cfg.k_max; ++k) envelope += std::pow(3.0, -k * s);
    CHECK(std::abs(generalized_weierstrass(t, cfg)) <= envelope);
  }

  CHECK_THROWS_AS(generalized_weierstrass(0.2, cfg), DataError);

  GenWeierstrassConfig negative;
  negative.s_function = [](double) { return -0.1; };
  CHECK_THROWS_AS(generalized_weierstrass(1.5, negative), DataError);
}

TEST_CASE("theoretical pointwise exponent is s(t)") {
  GenWeierstrassConfig cfg;
  CHECK(theoretical_pointwise_exponent(1.1, cfg) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(theoretical_pointwise_exponent(1.2, cfg) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(theoretical_pointwise_exponent(1.05, cfg) ==
        doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(theoretical_pointwise_exponent(2.5, cfg), DataError);
}

TEST_CASE("generalized weierstrass tail bound") {
  // An exact zero of the profile makes the tail non-summable.
  GenWeierstrassConfig zero;
  zero.s_function = [](double) { return 0.0; };
  CHECK(gw_tail_bound(1.5, zero) == std::numeric_limits<double>::infinity());

  // |sin(5*pi*t)| at t = 1.2 only reaches ~7e-16 in floating point; the
  // bound is finite but blows up, which flags the point just as well.
  GenWeierstrassConfig cfg;
  CHECK(gw_tail_bound(1.2, cfg) > 1e12);

  // Away from zeros, doubling the truncation moves the value by less than
  // the reported bound.
  GenWeierstrassConfig wide = cfg;
  wide.k_max = 80;
  for (double t : {1.05, 1.1, 1.33, 1.71}) {
    const double bound = gw_tail_bound(t, cfg);
    CHECK(bound < 1.0);
    CHECK(std::abs(generalized_weierstrass(t, cfg) -
                   generalized_weierstrass(t, wide)) <= bound);
  }
}
