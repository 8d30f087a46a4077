#include "mhe/mphe.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "mhe/errors.hpp"
#include "mhe/seminorm.hpp"

using namespace mhe;
using mhe_test::random_walk;

namespace {

MpheConfig small_config(int w = 10) {
  MpheConfig cfg;
  cfg.window_w = w;
  cfg.grid = BetaGrid(100);
  cfg.reference = {0.5, 7, 5};
  return cfg;
}

}  // namespace

TEST_CASE("reference_level examples") {
  ReferenceConfig single{0.5, 3, 1};
  std::vector<double> flat{2.0, 2.0, 2.0};
  std::vector<double> t3{0.0, 0.5, 1.0};
  CHECK(reference_level(flat, t3, single) == 0.0);

  std::vector<double> tent{0.0, 1.0, 0.0};
  CHECK(reference_level(tent, t3, single) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  ReferenceConfig two{0.5, 3, 2};
  std::vector<double> hist{5.0, 5.0, 5.0, 0.0, 1.0, 0.0};
  std::vector<double> t6{-2.0, -1.5, -1.0, 0.0, 0.5, 1.0};
  CHECK(reference_level(hist, t6, two) ==
        doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(reference_level(flat, t3, two), DataError);
}

TEST_CASE("mhe_value examples") {
  BetaGrid grid(100);
  Window constant({3.0, 3.0, 3.0}, {0.0, 0.5, 1.0});
  CHECK(mhe_value(constant, 0.5, grid, 1.0) == 1.0);

  // C(beta) = 2^beta; first grid beta with 2^beta >= 1.5 is 0.59.
  Window tent({0.0, 1.0, 0.0}, {0.0, 0.5, 1.0});
  CHECK(mhe_value(tent, 1.5, grid, 1.0) == 0.59);
  CHECK(mhe_value(tent, 0.0, grid, 1.0) == 0.01);

  CHECK_THROWS_AS(mhe_value(tent, -1.0, grid, 1.0), DataError);
}

TEST_CASE("mhe_value agrees with a scan of the full curve") {
  std::mt19937 rng(5);
  BetaGrid grid(100);
  for (int trial = 0; trial < 100; ++trial) {
    const auto values = random_walk(rng, 12);
    Window w = Window::uniform(values, 0, 0.001);
    auto curve = semi_norm_curve(w, grid);
    std::uniform_real_distribution<double> level(0.0, curve.c_values.back() * 1.2);
    const double c_ref = level(rng);
    double expected = 1.0;  // cap
    for (int k = 1; k <= grid.resolution(); ++k) {
      if (curve.c_values[static_cast<std::size_t>(k - 1)] >= c_ref) {
        expected = grid.beta(k);
        break;
      }
    }
    REQUIRE(mhe_value(w, c_ref, grid, 1.0) == expected);
  }
}

TEST_CASE("mhe_value is nondecreasing in the reference level") {
  std::mt19937 rng(17);
  const auto values = random_walk(rng, 15);
  Window w = Window::uniform(values, 0, 0.001);
  BetaGrid grid(100);
  double prev = 0.0;
  for (double c_ref : {0.0, 0.5, 1.0, 5.0, 25.0, 125.0, 1e6}) {
    const double g = mhe_value(w, c_ref, grid, 1.0);
    CHECK(g >= prev);
    prev = g;
  }
}

TEST_CASE("mphe_series on a constant series hits the c_ref = 0 rule") {
  TimeSeries ts;
  ts.label = "flat";
  Date d = Date::from_ymd(2001, 1, 1);
  for (int i = 0; i < 80; ++i) {
    ts.dates.push_back(d);
    ts.values.push_back(42.0);
    d = d.next_day();
  }
  auto cfg = small_config();
  auto g = mphe_series(ts, cfg);
  REQUIRE(!g.g_values.empty());
  CHECK(g.g_values.size() == 80 - 44);  // first index needs w + 35 points
  for (double v : g.g_values) CHECK(v == 0.01);
  CHECK(g.dates.front() == Date(Date::from_ymd(2001, 1, 1).days() + 44));
  // Every evaluation point saw a degenerate (zero) reference level.
  CHECK(g.n_zero_reference == g.g_values.size());
}

TEST_CASE("series too short reports the minimum length") {
  TimeSeries ts;
  ts.label = "short";
  Date d = Date::from_ymd(2001, 1, 1);
  for (int i = 0; i < 10; ++i) {
    ts.dates.push_back(d);
    ts.values.push_back(100.0 + i);
    d = d.next_day();
  }
  auto cfg = small_config(30);
  CHECK_THROWS_WITH_AS(mphe_series(ts, cfg),
                       doctest::Contains("need at least 65"), DataError);
}

TEST_CASE("prefix stability under extension") {
  std::mt19937 rng(23);
  auto cfg = small_config();
  const double dt = 1.0 / 1000.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto full = random_walk(rng, 260);
    std::span<const double> all(full);
    auto base = mphe_profile(all.first(200), dt, cfg);
    auto extended = mphe_profile(all, dt, cfg);
    REQUIRE(base.first_index == extended.first_index);
    for (std::size_t i = 0; i < base.g.size(); ++i) {
      REQUIRE(base.g[i] == extended.g[i]);
    }
  }
}

TEST_CASE("raw values live on the grid or at the cap") {
  std::mt19937 rng(29);
  auto cfg = small_config();
  const auto values = random_walk(rng, 150);
  auto profile = mphe_profile(values, 1.0 / 150.0, cfg);
  for (double g : profile.g) {
    const bool on_grid = g >= 0.01 && g <= 1.0 &&
                         g == cfg.grid.beta(static_cast<int>(
                                  std::lround(g * cfg.grid.resolution())));
    const bool at_cap = g == cfg.cap_value;
    CHECK((on_grid || at_cap));
  }
}

TEST_CASE("centered mode requires w = 7") {
  MpheConfig cfg = small_config(8);
  cfg.window_mode = WindowMode::Centered;
  CHECK_THROWS_AS(cfg.validate(), DataError);
}

TEST_CASE("normalize_mphe") {
  MpheSeries s;
  s.dates = {Date(1), Date(2), Date(3)};
  s.g_values = {0.5, 1.0, 2.0};
  auto n = normalize_mphe(s);
  CHECK(n.g_values == std::vector<double>{0.25, 0.5, 1.0});
  CHECK(n.normalized);

  auto twice = normalize_mphe(n);
  CHECK(twice.g_values == n.g_values);

  MpheSeries one;
  one.dates = {Date(1)};
  one.g_values = {1.0};
  CHECK(normalize_mphe(one).g_values == std::vector<double>{1.0});

  MpheSeries zeros;
  zeros.dates = {Date(1)};
  zeros.g_values = {0.0};
  CHECK_THROWS_AS(normalize_mphe(zeros), DataError);
}
