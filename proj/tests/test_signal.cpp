#include "mhe/signal.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "mhe/errors.hpp"

using namespace mhe;
using mhe_test::random_walk;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Date> axis(std::size_t n) {
  std::vector<Date> out;
  Date d = Date::from_ymd(2000, 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(d);
    d = d.next_day();
  }
  return out;
}

}  // namespace

TEST_CASE("ema") {
  std::vector<double> c{3.5, 3.5, 3.5, 3.5};
  CHECK(ema(c, 0.3) == c);

  std::vector<double> x{1.0, 5.0, -2.0};
  CHECK(ema(x, 1.0) == x);

  auto e = ema(std::vector<double>{1.0, 0.0}, 0.3);
  CHECK(e[0] == 1.0);
  CHECK(e[1] == doctest::Approx(0.7).epsilon(1e-15));

  CHECK_THROWS_AS(ema(std::vector<double>{}, 0.5), DataError);
  CHECK_THROWS_AS(ema(x, 0.0), DataError);
  CHECK_THROWS_AS(ema(x, 1.1), DataError);
}

TEST_CASE("ema stays within the running input range") {
  std::mt19937 rng(3);
  const auto x = random_walk(rng, 500);
  const auto e = ema(x, 0.3);
  double lo = x[0], hi = x[0];
  for (std::size_t t = 0; t < x.size(); ++t) {
    lo = std::min(lo, x[t]);
    hi = std::max(hi, x[t]);
    CHECK(e[t] >= lo);
    CHECK(e[t] <= hi);
  }
}

TEST_CASE("signal_line") {
  SignalConfig cfg{1.0, 2, 10};
  auto sl = signal_line(std::vector<double>{0.0, 2.0}, cfg, 30);
  REQUIRE(sl.size() == 2);
  CHECK(std::isnan(sl[0]));
  CHECK(sl[1] == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));

  // Constant indicator: zero deviation, sl equals the level.
  SignalConfig cfg3{2.5, 3, 10};
  auto flat = signal_line(std::vector<double>{0.5, 0.5, 0.5, 0.5}, cfg3, 30);
  CHECK(std::isnan(flat[0]));
  CHECK(std::isnan(flat[1]));
  CHECK(flat[2] == 0.5);
  CHECK(flat[3] == 0.5);
  auto flat4 = signal_line(std::vector<double>{0.4, 0.4, 0.4}, cfg3, 30);
  CHECK(flat4[2] == doctest::Approx(0.4).epsilon(1e-14));

  // k = 0 reduces to the trailing mean.
  SignalConfig mean_only{0.0, 2, 10};
  auto m = signal_line(std::vector<double>{1.0, 3.0, 5.0}, mean_only, 30);
  CHECK(m[1] == 2.0);
  CHECK(m[2] == 4.0);

  // Default history is multiplier * w.
  CHECK(SignalConfig{}.resolve_history(30) == 300);
  CHECK_THROWS_AS((SignalConfig{1.0, 1, 10}).resolve_history(30), DataError);
  CHECK_THROWS_AS(signal_line(std::vector<double>{1.0}, cfg, 30), DataError);
}

TEST_CASE("detect_crossings tie and direction rules") {
  auto d2 = axis(2);
  auto events = detect_crossings(std::vector<double>{0.0, 2.0},
                                 std::vector<double>{1.0, 1.0}, d2,
                                 SignalKind::Mphe);
  REQUIRE(events.size() == 1);
  CHECK(events[0].date == d2[1]);
  CHECK(events[0].indicator_value == 2.0);
  CHECK(events[0].line_value == 1.0);

  CHECK(detect_crossings(std::vector<double>{2.0, 3.0},
                         std::vector<double>{1.0, 1.0}, d2, SignalKind::Mphe)
            .empty());
  CHECK(detect_crossings(std::vector<double>{1.0, 1.0},
                         std::vector<double>{1.0, 1.0}, d2, SignalKind::Mphe)
            .empty());

  // Equality at the previous point still counts as "from below".
  auto from_tie = detect_crossings(std::vector<double>{1.0, 2.0},
                                   std::vector<double>{1.0, 1.0}, d2,
                                   SignalKind::Mphe);
  CHECK(from_tie.size() == 1);

  CHECK_THROWS_AS(detect_crossings(std::vector<double>{1.0},
                                   std::vector<double>{1.0, 1.0}, d2,
                                   SignalKind::Mphe),
                  DataError);
}

TEST_CASE("no event at the first defined date") {
  auto d3 = axis(3);
  auto events = detect_crossings(std::vector<double>{5.0, 0.0, 2.0},
                                 std::vector<double>{kNaN, 1.0, 1.0}, d3,
                                 SignalKind::Mphe);
  REQUIRE(events.size() == 1);
  CHECK(events[0].date == d3[2]);

  // Indicator already above at the first defined date: no event there.
  CHECK(detect_crossings(std::vector<double>{0.0, 2.0, 2.5},
                         std::vector<double>{kNaN, 1.0, 1.0}, d3,
                         SignalKind::Mphe)
            .empty());
}

TEST_CASE("durations are run lengths above the line") {
  auto d5 = axis(5);
  std::vector<double> g{0.0, 2.0, 2.0, 0.0, 2.0};
  std::vector<double> line(5, 1.0);
  auto spans = detect_crossing_spans(g, line, d5, SignalKind::Mphe);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].event.date == d5[1]);
  CHECK(spans[0].duration_days == 2);
  CHECK(spans[1].event.date == d5[4]);
  CHECK(spans[1].duration_days == 1);
}

TEST_CASE("aggregate crossing count is nonincreasing in the line height") {
  // A higher line can split one excursion of a single series into several
  // crossings, so monotonicity is a statistical property of the suite, not a
  // per-series theorem. Burst-shaped series mimic an indicator: a low base
  // with occasional spikes.
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SignalConfig cfg;
  cfg.history_h = 100;

  std::vector<std::vector<double>> suite;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> g(1000, 0.2);
    for (auto& v : g) {
      v += 0.05 * u(rng);
      if (u(rng) < 0.02) v = 0.6 + 0.4 * u(rng);  // spike
    }
    suite.push_back(std::move(g));
  }

  const auto dates = axis(1000);
  std::size_t prev = std::numeric_limits<std::size_t>::max();
  for (double k : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    cfg.height_k = k;
    std::size_t total = 0;
    for (const auto& g : suite) {
      const auto line = signal_line(g, cfg, 30);
      total += detect_crossings(g, line, dates, SignalKind::Mphe).size();
    }
    REQUIRE(total <= prev);
    prev = total;
  }
}

TEST_CASE("common positive rescaling keeps the crossing set") {
  std::mt19937 rng(43);
  const auto g = random_walk(rng, 600);
  SignalConfig cfg;
  cfg.height_k = 1.0;
  cfg.history_h = 50;
  const auto line = signal_line(g, cfg, 30);
  const auto dates = axis(g.size());
  const auto base = detect_crossings(g, line, dates, SignalKind::Mphe);
  REQUIRE(!base.empty());
  for (double c : {0.5, 2.0, 3.0, 10.0}) {
    std::vector<double> gs(g), ls(line);
    for (auto& v : gs) v *= c;
    for (auto& v : ls) v *= c;
    const auto scaled = detect_crossings(gs, ls, dates, SignalKind::Mphe);
    REQUIRE(scaled.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(scaled[i].date == base[i].date);
    }
  }
}
