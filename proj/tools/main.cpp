// mhe: modified Holder exponent toolkit.
//
// Subcommands cover the whole pipeline: synthetic series with known
// regularity (genfunc), the semi-norm curve of one window (seminorm), the
// MPHE indicator (mphe), signal-line crossings (signals), the joint panel
// indicator (jmphe), the JMPHE+VIX trading strategy (backtest) and crash
// prediction scoring (evaluate).
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mhe/errors.hpp"
#include "mhe/jmphe.hpp"
#include "mhe/mphe.hpp"
#include "mhe/seminorm.hpp"
#include "mhe/signal.hpp"
#include "mhe/strategy.hpp"
#include "mhe/testfunc.hpp"
#include "mhe/timeseries.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string now_iso() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Every run echoes its effective configuration next to the primary output.
// The timestamp lives only here; the data files stay byte-reproducible.
void write_run_meta(const fs::path& primary_output, const std::string& command,
                    const json& params) {
  json meta;
  meta["command"] = command;
  meta["parameters"] = params;
  meta["generated_at"] = now_iso();
  fs::path p = primary_output;
  p += ".meta.json";
  mhe::write_text_atomic(p, meta.dump(2) + "\n");
}

std::string kind_name(mhe::SignalKind k) {
  return k == mhe::SignalKind::Mphe ? "mphe" : "jmphe";
}

void write_events_csv(const std::vector<mhe::SignalSpan>& spans,
                      const fs::path& path) {
  std::string text = "Date,Kind,Indicator,Line,Duration\n";
  for (const auto& s : spans) {
    text += s.event.date.to_iso() + "," + kind_name(s.event.kind) + "," +
            fmt(s.event.indicator_value) + "," + fmt(s.event.line_value) + "," +
            std::to_string(s.duration_days) + "\n";
  }
  mhe::write_text_atomic(path, text);
}

std::vector<mhe::SignalSpan> read_events_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw mhe::DataError("cannot open " + path.string());
  std::vector<mhe::SignalSpan> out;
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string date_s, kind_s, ind_s, line_s, dur_s;
    std::getline(ss, date_s, ',');
    std::getline(ss, kind_s, ',');
    std::getline(ss, ind_s, ',');
    std::getline(ss, line_s, ',');
    std::getline(ss, dur_s, ',');
    if (!dur_s.empty() && dur_s.back() == '\r') dur_s.pop_back();
    mhe::SignalSpan span;
    try {
      span.event.date = mhe::Date::from_iso(date_s);
      span.event.kind = kind_s == "jmphe" ? mhe::SignalKind::Jmphe
                                          : mhe::SignalKind::Mphe;
      span.event.indicator_value = ind_s.empty() ? 0.0 : std::stod(ind_s);
      span.event.line_value = line_s.empty() ? 0.0 : std::stod(line_s);
      span.duration_days = dur_s.empty() ? 1 : std::stoi(dur_s);
    } catch (const std::exception&) {
      throw mhe::DataError(path.string() + ": row " + std::to_string(row) +
                           ": malformed event row");
    }
    out.push_back(span);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared option bundles
// ---------------------------------------------------------------------------

struct MpheFlags {
  int w = 30;
  int grid_n = 100;
  double alpha_ref = 0.5;
  int block_size = 7;
  int n_blocks = 5;
  std::string mode = "trailing";
  double cap_value = 1.0;
  double time_step = 0.0;  // 0: use 1/N of the loaded series

  void attach(CLI::App* cmd) {
    cmd->add_option("--w", w, "target window size")->capture_default_str();
    cmd->add_option("--grid-n", grid_n, "beta grid resolution")
        ->capture_default_str();
    cmd->add_option("--alpha-ref", alpha_ref, "reference exponent")
        ->capture_default_str();
    cmd->add_option("--block-size", block_size, "reference block size")
        ->capture_default_str();
    cmd->add_option("--n-blocks", n_blocks, "number of reference blocks")
        ->capture_default_str();
    cmd->add_option("--mode", mode, "window mode: trailing|centered")
        ->check(CLI::IsMember({"trailing", "centered"}))
        ->capture_default_str();
    cmd->add_option("--cap", cap_value,
                    "value reported when the reference level is never reached")
        ->capture_default_str();
    cmd->add_option("--time-step", time_step,
                    "sampling step of the time axis (0 = 1/N of the input)")
        ->capture_default_str();
  }

  mhe::MpheConfig config() const {
    mhe::MpheConfig cfg;
    cfg.window_w = w;
    cfg.grid = mhe::BetaGrid(grid_n);
    cfg.reference = {alpha_ref, block_size, n_blocks};
    cfg.window_mode = mode == "centered" ? mhe::WindowMode::Centered
                                         : mhe::WindowMode::Trailing;
    cfg.cap_value = cap_value;
    cfg.validate();
    return cfg;
  }

  json to_json() const {
    return {{"w", w},
            {"grid_n", grid_n},
            {"alpha_ref", alpha_ref},
            {"block_size", block_size},
            {"n_blocks", n_blocks},
            {"mode", mode},
            {"cap", cap_value},
            {"time_step", time_step}};
  }
};

struct SignalFlags {
  double height = 1.5;
  int history = 0;
  int history_multiplier = 10;

  void attach(CLI::App* cmd) {
    cmd->add_option("--height", height, "signal line height k")
        ->capture_default_str();
    cmd->add_option("--history", history,
                    "signal line history h (0 = multiplier * w)")
        ->capture_default_str();
    cmd->add_option("--history-multiplier", history_multiplier,
                    "h = multiplier * w when --history is 0")
        ->capture_default_str();
  }

  mhe::SignalConfig config() const {
    return {height, history, history_multiplier};
  }

  json to_json() const {
    return {{"height", height},
            {"history", history},
            {"history_multiplier", history_multiplier}};
  }
};

mhe::MpheSeries compute_mphe(const mhe::TimeSeries& ts, const MpheFlags& flags) {
  const auto cfg = flags.config();
  if (flags.time_step > 0.0) {
    auto profile = mhe::mphe_profile(ts.values, flags.time_step, cfg);
    mhe::MpheSeries out;
    out.first_index = profile.first_index;
    out.n_zero_reference = profile.n_zero_reference;
    out.dates.assign(
        ts.dates.begin() + static_cast<long>(profile.first_index),
        ts.dates.begin() +
            static_cast<long>(profile.first_index + profile.g.size()));
    out.g_values = std::move(profile.g);
    out.config = cfg;
    return out;
  }
  return mhe::mphe_series(ts, cfg);
}

std::vector<fs::path> panel_paths(const std::string& panel_dir,
                                  const std::string& manifest) {
  std::vector<fs::path> paths;
  if (!panel_dir.empty()) {
    if (!fs::is_directory(panel_dir)) {
      throw mhe::DataError("panel directory not found: " + panel_dir);
    }
    for (const auto& entry : fs::directory_iterator(panel_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") {
        paths.push_back(entry.path());
      }
    }
    std::sort(paths.begin(), paths.end());
  } else {
    std::ifstream in(manifest);
    if (!in) throw mhe::DataError("cannot open manifest " + manifest);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      paths.emplace_back(line);
    }
  }
  if (paths.empty()) throw mhe::DataError("no panel input files found");
  return paths;
}

struct PanelResult {
  mhe::JmpheSeries h;
  std::vector<mhe::SignalSpan> spans;
};

PanelResult run_jmphe_pipeline(const std::vector<fs::path>& paths,
                               const std::string& value_column,
                               const std::string& align, const MpheFlags& mflags,
                               const SignalFlags& sflags, double lambda,
                               const mhe::JmpheThreshold& threshold) {
  std::vector<mhe::TimeSeries> raw;
  raw.reserve(paths.size());
  for (const auto& p : paths) {
    raw.push_back(mhe::load_close_series(p, value_column));
  }

  const auto panel = mhe::align_panel(
      raw, align == "ffill" ? mhe::AlignPolicy::ForwardFillUnion
                            : mhe::AlignPolicy::IntersectDates);

  std::vector<mhe::MpheSeries> g_series;
  std::vector<std::vector<double>> lines;
  for (std::size_t s = 0; s < panel.labels.size(); ++s) {
    auto series = panel.series(s);
    auto g = compute_mphe(series, mflags);
    lines.push_back(mhe::signal_line(g.g_values, sflags.config(), mflags.w));
    g_series.push_back(std::move(g));
  }

  PanelResult out;
  const auto indicator_panel = mhe::align_indicator_panel(g_series, lines);
  out.h = mhe::jmphe(indicator_panel, lambda);
  out.spans = mhe::jmphe_signal_spans(out.h, threshold);
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_genfunc(const std::string& function, int n_points, double fractal_dim,
                double base, int n_min, int n_max, int k_max, int grid_m,
                int j_lo, int j_hi, const fs::path& output) {
  std::string text;
  json params;
  if (function == "weierstrass") {
    mhe::WeierstrassConfig cfg{fractal_dim, base, n_min, n_max};
    auto values = mhe::sample_weierstrass(n_points, cfg);
    text += "# function=weierstrass D=" + fmt(fractal_dim) + " b=" + fmt(base) +
            " n_min=" + std::to_string(n_min) + " n_max=" +
            std::to_string(n_max) + " N=" + std::to_string(n_points) + "\n";
    text += "Date,t,W\n";
    mhe::Date d = mhe::Date::from_ymd(2000, 1, 1);
    for (int i = 1; i <= n_points; ++i) {
      const double t = static_cast<double>(i) / n_points;
      text += d.to_iso() + "," + fmt(t) + "," +
              fmt(values[static_cast<std::size_t>(i - 1)]) + "\n";
      d = d.next_day();
    }
    params = {{"function", function}, {"n", n_points}, {"D", fractal_dim},
              {"b", base},            {"n_min", n_min}, {"n_max", n_max}};
  } else {
    mhe::GenWeierstrassConfig cfg;
    cfg.k_max = k_max;
    cfg.domain_lo = static_cast<double>(j_lo) / grid_m;
    cfg.domain_hi = static_cast<double>(j_hi) / grid_m;
    text += "# function=generalized s(t)=|sin(5*pi*t)| k_max=" +
            std::to_string(k_max) + " m=" + std::to_string(grid_m) + " j=" +
            std::to_string(j_lo) + ".." + std::to_string(j_hi) + "\n";
    text += "Date,t,V\n";
    mhe::Date d = mhe::Date::from_ymd(2000, 1, 1);
    for (int j = j_lo; j <= j_hi; ++j) {
      const double t = static_cast<double>(j) / grid_m;
      text += d.to_iso() + "," + fmt(t) + "," +
              fmt(mhe::generalized_weierstrass(t, cfg)) + "\n";
      d = d.next_day();
    }
    params = {{"function", function}, {"k_max", k_max}, {"m", grid_m},
              {"j_lo", j_lo},         {"j_hi", j_hi}};
  }
  mhe::write_text_atomic(output, text);
  write_run_meta(output, "genfunc", params);
  std::cout << "wrote " << output.string() << "\n";
  return 0;
}

int cmd_seminorm(const fs::path& input, const std::string& value_column,
                 std::size_t start, std::size_t count, int grid_n,
                 const fs::path& output) {
  const auto ts = mhe::load_close_series(input, value_column);
  if (count < 2 || start + count > ts.size()) {
    throw mhe::DataError("window [" + std::to_string(start) + ", " +
                         std::to_string(start + count) +
                         ") invalid for a series of " +
                         std::to_string(ts.size()) + " rows");
  }
  std::vector<double> values(
      ts.values.begin() + static_cast<long>(start),
      ts.values.begin() + static_cast<long>(start + count));
  const auto window = mhe::Window::uniform(values, start, ts.time_step());
  const auto curve = mhe::semi_norm_curve(window, mhe::BetaGrid(grid_n));

  std::string text = "beta,C\n";
  for (int k = 1; k <= grid_n; ++k) {
    text += fmt(curve.grid.beta(k)) + "," +
            fmt(curve.c_values[static_cast<std::size_t>(k - 1)]) + "\n";
  }
  mhe::write_text_atomic(output, text);
  write_run_meta(output, "seminorm",
                 {{"input", input.string()},
                  {"value_column", value_column},
                  {"start", start},
                  {"count", count},
                  {"grid_n", grid_n}});

  try {
    std::cout << "holder_estimate " << fmt(mhe::estimate_holder_by_jump(curve))
              << "\n";
  } catch (const mhe::DataError&) {
    std::cout << "holder_estimate undefined (constant window)\n";
  }
  return 0;
}

int cmd_mphe(const fs::path& input, const std::string& value_column,
             const MpheFlags& flags, bool normalize, const fs::path& output) {
  const auto ts = mhe::load_close_series(input, value_column);
  auto g = compute_mphe(ts, flags);
  if (normalize) g = mhe::normalize_mphe(g);

  mhe::SeriesBundle bundle;
  bundle.dates = g.dates;
  bundle.names = {"G"};
  bundle.columns = {g.g_values};
  mhe::write_series(bundle, output, mhe::SeriesFormat::Csv);

  json params = flags.to_json();
  params["input"] = input.string();
  params["value_column"] = value_column;
  params["normalize"] = normalize;
  params["n_zero_reference_points"] = g.n_zero_reference;
  write_run_meta(output, "mphe", params);
  std::cout << "wrote " << output.string() << " (" << g.g_values.size()
            << " points)\n";
  return 0;
}

int cmd_signals(const fs::path& input, const std::string& value_column,
                const MpheFlags& mflags, const SignalFlags& sflags,
                const fs::path& events_output, const fs::path& series_output) {
  const auto ts = mhe::load_close_series(input, value_column);
  const auto g = compute_mphe(ts, mflags);
  const auto line = mhe::signal_line(g.g_values, sflags.config(), mflags.w);
  const auto spans = mhe::detect_crossing_spans(g.g_values, line, g.dates,
                                                mhe::SignalKind::Mphe);

  write_events_csv(spans, events_output);
  if (!series_output.empty()) {
    mhe::SeriesBundle bundle;
    bundle.dates = g.dates;
    bundle.names = {"G", "sl"};
    bundle.columns = {g.g_values, line};
    mhe::write_series(bundle, series_output, mhe::SeriesFormat::Csv);
  }

  json params = mflags.to_json();
  params.update(sflags.to_json());
  params["input"] = input.string();
  params["value_column"] = value_column;
  write_run_meta(events_output, "signals", params);
  std::cout << spans.size() << " signal(s)\n";
  return 0;
}

int cmd_jmphe(const std::string& panel_dir, const std::string& manifest,
              const std::string& value_column, const std::string& align,
              const MpheFlags& mflags, const SignalFlags& sflags, double lambda,
              const std::string& threshold_mode, double threshold_value,
              const fs::path& h_output, const fs::path& events_output) {
  const auto threshold =
      threshold_mode == "explicit"
          ? mhe::JmpheThreshold::explicit_value(threshold_value)
          : mhe::JmpheThreshold::derived_from_height(sflags.height);
  const auto paths = panel_paths(panel_dir, manifest);
  const auto result = run_jmphe_pipeline(paths, value_column, align, mflags,
                                         sflags, lambda, threshold);

  mhe::SeriesBundle bundle;
  bundle.dates = result.h.dates;
  bundle.names = {"H"};
  bundle.columns = {result.h.h_values};
  mhe::write_series(bundle, h_output, mhe::SeriesFormat::Csv);
  write_events_csv(result.spans, events_output);

  json params = mflags.to_json();
  params.update(sflags.to_json());
  params["n_stocks"] = result.h.n_stocks;
  params["lambda"] = lambda;
  params["align"] = align;
  params["threshold_mode"] = threshold_mode;
  params["threshold"] = threshold.value;
  write_run_meta(h_output, "jmphe", params);
  std::cout << result.h.n_stocks << " stocks, " << result.spans.size()
            << " JMPHE signal(s), threshold " << fmt(threshold.value) << "\n";
  return 0;
}

int cmd_backtest(const fs::path& prices_path, const fs::path& vix_path,
                 const std::string& events_path, const std::string& panel_dir,
                 const std::string& manifest, const std::string& value_column,
                 const std::string& align, const MpheFlags& mflags,
                 const SignalFlags& sflags, double lambda, double vix_low,
                 double vix_high, int combine_window, double initial_capital,
                 const fs::path& equity_output, const fs::path& trades_output,
                 const fs::path& metrics_output) {
  const auto prices = mhe::load_close_series(prices_path, value_column);
  const auto vix = mhe::load_close_series(vix_path, value_column);

  std::vector<mhe::SignalSpan> spans;
  if (!events_path.empty()) {
    spans = read_events_csv(events_path);
  } else {
    const auto threshold =
        mhe::JmpheThreshold::derived_from_height(sflags.height);
    const auto paths = panel_paths(panel_dir, manifest);
    spans = run_jmphe_pipeline(paths, value_column, align, mflags, sflags,
                               lambda, threshold)
                .spans;
  }

  const auto vix_events = mhe::vix_signals(vix, {vix_low, vix_high});
  const auto instructions = mhe::combine_signals(
      spans, vix_events, prices.dates, mhe::TradeRule{combine_window});
  const auto result = mhe::backtest(prices, instructions, initial_capital);

  mhe::SeriesBundle bundle;
  bundle.dates = result.dates;
  bundle.names = {"Equity"};
  bundle.columns = {result.equity};
  mhe::write_series(bundle, equity_output, mhe::SeriesFormat::Csv);

  std::string trades_text =
      "OpenDate,CloseDate,Direction,EntryPrice,ExitPrice,Return\n";
  for (const auto& t : result.trades) {
    trades_text += t.open_date.to_iso() + "," + t.close_date.to_iso() + "," +
                   (t.direction == mhe::Direction::Long ? "long" : "short") +
                   "," + fmt(t.entry_price) + "," + fmt(t.exit_price) + "," +
                   fmt(t.trade_return) + "\n";
  }
  mhe::write_text_atomic(trades_output, trades_text);

  const double buy_hold = prices.values.back() / prices.values.front() - 1.0;
  json metrics = {{"gross_profit", result.gross_profit},
                  {"max_drawdown", result.max_drawdown},
                  {"n_trades", result.trades.size()},
                  {"buy_hold_return", buy_hold},
                  {"n_jmphe_signals", spans.size()},
                  {"n_vix_signals", vix_events.size()}};
  mhe::write_text_atomic(metrics_output, metrics.dump(2) + "\n");

  json params = {{"prices", prices_path.string()},
                 {"vix", vix_path.string()},
                 {"vix_low", vix_low},
                 {"vix_high", vix_high},
                 {"combine_window", combine_window},
                 {"initial_capital", initial_capital}};
  write_run_meta(metrics_output, "backtest", params);

  std::cout << "gross_profit " << fmt(result.gross_profit) << ", max_drawdown "
            << fmt(result.max_drawdown) << ", trades " << result.trades.size()
            << ", buy_hold " << fmt(buy_hold) << "\n";
  return 0;
}

int cmd_evaluate(const fs::path& signals_path, const fs::path& index_path,
                 const std::string& value_column, double crash_threshold,
                 int crash_horizon, int horizon, const fs::path& output) {
  const auto spans = read_events_csv(signals_path);
  std::vector<mhe::SignalEvent> events;
  events.reserve(spans.size());
  for (const auto& s : spans) events.push_back(s.event);
  const auto index = mhe::load_close_series(index_path, value_column);
  const auto crashes =
      mhe::detect_crashes(index, crash_threshold, crash_horizon);
  const auto summary =
      mhe::evaluate_predictions(events, crashes, index.dates, horizon);

  json j = {{"n_signals", summary.n_signals},
            {"hits", summary.hits},
            {"false_signals", summary.false_signals},
            {"n_crashes", summary.n_crashes},
            {"predicted_crashes", summary.predicted_crashes},
            {"missed_crashes", summary.missed_crashes},
            {"lead_times", summary.lead_times}};
  json crash_list = json::array();
  for (const auto& c : crashes) {
    crash_list.push_back({{"start", c.start.to_iso()},
                          {"trough", c.trough.to_iso()},
                          {"decline", c.decline}});
  }
  j["crashes"] = crash_list;
  mhe::write_text_atomic(output, j.dump(2) + "\n");
  write_run_meta(output, "evaluate",
                 {{"signals", signals_path.string()},
                  {"index", index_path.string()},
                  {"crash_threshold", crash_threshold},
                  {"crash_horizon", crash_horizon},
                  {"horizon", horizon}});
  std::cout << summary.predicted_crashes << "/" << summary.n_crashes
            << " crashes predicted, " << summary.false_signals
            << " false signal(s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modified Holder exponent toolkit"};
  app.require_subcommand(1);
  // key=value config file; subcommand options live in a [subcommand]
  // section. Command-line flags win over file values.
  app.set_config("--config");

  // genfunc --------------------------------------------------------------
  auto* genfunc = app.add_subcommand(
      "genfunc", "generate a series with analytically known regularity");
  genfunc->fallthrough();
  std::string gf_function = "weierstrass";
  int gf_n = 1000, gf_nmin = -20, gf_nmax = 40, gf_kmax = 40;
  int gf_m = 100, gf_jlo = 63, gf_jhi = 203;
  double gf_D = 1.5, gf_b = 2.0;
  fs::path gf_output = "genfunc.csv";
  genfunc->add_option("--function", gf_function, "weierstrass|generalized")
      ->check(CLI::IsMember({"weierstrass", "generalized"}))
      ->capture_default_str();
  genfunc->add_option("--n", gf_n, "samples X_i = W(i/n)")
      ->capture_default_str();
  genfunc->add_option("--D", gf_D, "fractal dimension")->capture_default_str();
  genfunc->add_option("--b", gf_b, "frequency base")->capture_default_str();
  genfunc->add_option("--n-min", gf_nmin, "lower truncation")
      ->capture_default_str();
  genfunc->add_option("--n-max", gf_nmax, "upper truncation")
      ->capture_default_str();
  genfunc->add_option("--k-max", gf_kmax, "generalized-sum truncation")
      ->capture_default_str();
  genfunc->add_option("--m", gf_m, "generalized grid density (t = j/m)")
      ->capture_default_str();
  genfunc->add_option("--j-lo", gf_jlo, "first sample index")
      ->capture_default_str();
  genfunc->add_option("--j-hi", gf_jhi, "last sample index")
      ->capture_default_str();
  genfunc->add_option("--output", gf_output, "output CSV")
      ->capture_default_str();

  // seminorm -------------------------------------------------------------
  auto* seminorm = app.add_subcommand(
      "seminorm", "semi-norm curve C(beta) of one window of a series");
  seminorm->fallthrough();
  fs::path sn_input;
  std::string sn_value_column = "Close";
  std::size_t sn_start = 0, sn_count = 30;
  int sn_grid = 100;
  fs::path sn_output = "seminorm.csv";
  seminorm->add_option("--input", sn_input, "input CSV")->required();
  seminorm->add_option("--value-column", sn_value_column, "value column name")
      ->capture_default_str();
  seminorm->add_option("--start", sn_start, "first row of the window (0-based)")
      ->capture_default_str();
  seminorm->add_option("--count", sn_count, "window length")
      ->capture_default_str();
  seminorm->add_option("--grid-n", sn_grid, "beta grid resolution")
      ->capture_default_str();
  seminorm->add_option("--output", sn_output, "output CSV (beta,C)")
      ->capture_default_str();

  // mphe -----------------------------------------------------------------
  auto* mphe_cmd = app.add_subcommand("mphe", "pointwise MPHE series G(t)");
  mphe_cmd->fallthrough();
  fs::path mp_input;
  std::string mp_value_column = "Close";
  bool mp_normalize = false;
  fs::path mp_output = "mphe.csv";
  MpheFlags mp_flags;
  mphe_cmd->add_option("--input", mp_input, "input CSV")->required();
  mphe_cmd->add_option("--value-column", mp_value_column, "value column name")
      ->capture_default_str();
  mp_flags.attach(mphe_cmd);
  mphe_cmd->add_flag("--normalize", mp_normalize, "divide G by its maximum");
  mphe_cmd->add_option("--output", mp_output, "output CSV (Date,G)")
      ->capture_default_str();

  // signals ----------------------------------------------------------------
  auto* signals =
      app.add_subcommand("signals", "MPHE signal line and bottom-up crossings");
  signals->fallthrough();
  fs::path sg_input;
  std::string sg_value_column = "Close";
  MpheFlags sg_mflags;
  SignalFlags sg_sflags;
  fs::path sg_events = "events.csv";
  fs::path sg_series = "";
  signals->add_option("--input", sg_input, "input CSV")->required();
  signals->add_option("--value-column", sg_value_column, "value column name")
      ->capture_default_str();
  sg_mflags.attach(signals);
  sg_sflags.attach(signals);
  signals->add_option("--events-output", sg_events, "events CSV")
      ->capture_default_str();
  signals->add_option("--series-output", sg_series,
                      "optional CSV with Date,G,sl columns");

  // jmphe -----------------------------------------------------------------
  auto* jm = app.add_subcommand("jmphe", "joint MPHE indicator over a panel");
  jm->fallthrough();
  std::string jm_panel, jm_manifest, jm_value_column = "Close",
                                     jm_align = "intersect";
  MpheFlags jm_mflags;
  SignalFlags jm_sflags;
  double jm_lambda = 0.3;
  std::string jm_threshold_mode = "derived";
  double jm_threshold = 0.0;
  fs::path jm_h_output = "jmphe.csv", jm_events_output = "jmphe_events.csv";
  auto* jm_panel_opt =
      jm->add_option("--panel", jm_panel, "directory of per-stock CSVs");
  jm->add_option("--manifest", jm_manifest,
                 "file listing per-stock CSV paths, one per line")
      ->excludes(jm_panel_opt);
  jm->add_option("--value-column", jm_value_column, "value column name")
      ->capture_default_str();
  jm->add_option("--align", jm_align, "raw price alignment: intersect|ffill")
      ->check(CLI::IsMember({"intersect", "ffill"}))
      ->capture_default_str();
  jm_mflags.attach(jm);
  jm_sflags.attach(jm);
  jm->add_option("--lambda", jm_lambda, "EMA parameter")->capture_default_str();
  jm->add_option("--threshold-mode", jm_threshold_mode, "derived|explicit")
      ->check(CLI::IsMember({"derived", "explicit"}))
      ->capture_default_str();
  jm->add_option("--threshold", jm_threshold,
                 "explicit constant signal line for H");
  jm->add_option("--h-output", jm_h_output, "output CSV (Date,H)")
      ->capture_default_str();
  jm->add_option("--events-output", jm_events_output, "events CSV")
      ->capture_default_str();

  // backtest ---------------------------------------------------------------
  auto* bt = app.add_subcommand("backtest", "JMPHE+VIX strategy simulation");
  bt->fallthrough();
  fs::path bt_prices, bt_vix;
  std::string bt_events, bt_panel, bt_manifest, bt_value_column = "Close",
                                                bt_align = "intersect";
  MpheFlags bt_mflags;
  SignalFlags bt_sflags;
  double bt_lambda = 0.3, bt_vix_low = 20.0, bt_vix_high = 30.0;
  int bt_combine = 30;
  double bt_capital = 1.0;
  fs::path bt_equity = "equity.csv", bt_trades = "trades.csv",
           bt_metrics = "metrics.json";
  bt->add_option("--prices", bt_prices, "traded index CSV")->required();
  bt->add_option("--vix", bt_vix, "VIX CSV")->required();
  bt->add_option("--jmphe-events", bt_events,
                 "precomputed JMPHE events CSV (else use --panel/--manifest)");
  bt->add_option("--panel", bt_panel, "directory of per-stock CSVs");
  bt->add_option("--manifest", bt_manifest, "file listing per-stock CSV paths");
  bt->add_option("--value-column", bt_value_column, "value column name")
      ->capture_default_str();
  bt->add_option("--align", bt_align, "panel alignment: intersect|ffill")
      ->check(CLI::IsMember({"intersect", "ffill"}))
      ->capture_default_str();
  bt_mflags.attach(bt);
  bt_sflags.attach(bt);
  bt->add_option("--lambda", bt_lambda, "EMA parameter")->capture_default_str();
  bt->add_option("--vix-low", bt_vix_low, "VIX long level")
      ->capture_default_str();
  bt->add_option("--vix-high", bt_vix_high, "VIX short crossing level")
      ->capture_default_str();
  bt->add_option("--combine-window", bt_combine,
                 "trading days a VIX signal may trail a JMPHE signal")
      ->capture_default_str();
  bt->add_option("--initial-capital", bt_capital, "starting capital")
      ->capture_default_str();
  bt->add_option("--equity-output", bt_equity, "equity CSV")
      ->capture_default_str();
  bt->add_option("--trades-output", bt_trades, "trades CSV")
      ->capture_default_str();
  bt->add_option("--metrics-output", bt_metrics, "metrics JSON")
      ->capture_default_str();

  // evaluate ---------------------------------------------------------------
  auto* ev = app.add_subcommand("evaluate", "score signals against crashes");
  ev->fallthrough();
  fs::path ev_signals, ev_index;
  std::string ev_value_column = "Close";
  double ev_crash_threshold = 0.09;
  int ev_crash_horizon = 3, ev_horizon = 100;
  fs::path ev_output = "evaluation.json";
  ev->add_option("--signals", ev_signals, "events CSV")->required();
  ev->add_option("--index", ev_index, "index CSV")->required();
  ev->add_option("--value-column", ev_value_column, "value column name")
      ->capture_default_str();
  ev->add_option("--crash-threshold", ev_crash_threshold,
                 "decline fraction defining a crash")
      ->capture_default_str();
  ev->add_option("--crash-horizon", ev_crash_horizon,
                 "trading days for the crash decline")
      ->capture_default_str();
  ev->add_option("--horizon", ev_horizon, "prediction horizon, trading days")
      ->capture_default_str();
  ev->add_option("--output", ev_output, "summary JSON")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (genfunc->parsed()) {
      return cmd_genfunc(gf_function, gf_n, gf_D, gf_b, gf_nmin, gf_nmax,
                         gf_kmax, gf_m, gf_jlo, gf_jhi, gf_output);
    }
    if (seminorm->parsed()) {
      return cmd_seminorm(sn_input, sn_value_column, sn_start, sn_count,
                          sn_grid, sn_output);
    }
    if (mphe_cmd->parsed()) {
      return cmd_mphe(mp_input, mp_value_column, mp_flags, mp_normalize,
                      mp_output);
    }
    if (signals->parsed()) {
      return cmd_signals(sg_input, sg_value_column, sg_mflags, sg_sflags,
                         sg_events, sg_series);
    }
    if (jm->parsed()) {
      if (jm_panel.empty() && jm_manifest.empty()) {
        throw mhe::DataError("jmphe needs --panel or --manifest");
      }
      return cmd_jmphe(jm_panel, jm_manifest, jm_value_column, jm_align,
                       jm_mflags, jm_sflags, jm_lambda, jm_threshold_mode,
                       jm_threshold, jm_h_output, jm_events_output);
    }
    if (bt->parsed()) {
      if (bt_events.empty() && bt_panel.empty() && bt_manifest.empty()) {
        throw mhe::DataError(
            "backtest needs --jmphe-events or --panel/--manifest");
      }
      return cmd_backtest(bt_prices, bt_vix, bt_events, bt_panel, bt_manifest,
                          bt_value_column, bt_align, bt_mflags, bt_sflags,
                          bt_lambda, bt_vix_low, bt_vix_high, bt_combine,
                          bt_capital, bt_equity, bt_trades, bt_metrics);
    }
    if (ev->parsed()) {
      return cmd_evaluate(ev_signals, ev_index, ev_value_column,
                          ev_crash_threshold, ev_crash_horizon, ev_horizon,
                          ev_output);
    }
  } catch (const mhe::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mhe::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
