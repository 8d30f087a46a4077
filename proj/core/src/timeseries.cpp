#include "mhe/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "mhe/errors.hpp"

namespace mhe {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_value(const std::string& cell, std::size_t row) {
  double v = 0.0;
  auto* first = cell.data();
  auto* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw DataError("row " + std::to_string(row) + ": cannot parse value '" +
                    cell + "'");
  }
  return v;
}

std::string format_value(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write to " + tmp.string());
    out << text;
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("cannot rename " + tmp.string() + " to " +
                          path.string() + ": " + ec.message());
}

TimeSeries TimeSeries::head(std::size_t n) const {
  if (n == 0 || n > size()) {
    throw DataError("head(" + std::to_string(n) + ") out of range for series '" +
                    label + "' of length " + std::to_string(size()));
  }
  TimeSeries out;
  out.label = label;
  out.dates.assign(dates.begin(), dates.begin() + static_cast<long>(n));
  out.values.assign(values.begin(), values.begin() + static_cast<long>(n));
  return out;
}

void TimeSeries::validate() const {
  if (values.empty()) throw DataError("series '" + label + "' is empty");
  if (dates.size() != values.size()) {
    throw DataError("series '" + label + "': " + std::to_string(dates.size()) +
                    " dates vs " + std::to_string(values.size()) + " values");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DataError("series '" + label + "': non-finite value at " +
                      dates[i].to_iso());
    }
    if (i > 0 && !(dates[i - 1] < dates[i])) {
      throw DataError("series '" + label + "': dates not strictly increasing at " +
                      dates[i].to_iso());
    }
  }
}

TimeSeries load_close_series(const std::filesystem::path& path,
                             std::string_view value_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  std::string line;
  std::size_t row = 0;
  // Header: locate Date and the requested value column.
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw DataError(path.string() + ": missing header row");

  auto find_col = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw DataError(path.string() + ": no '" + std::string(name) + "' column");
  };
  const std::size_t date_col = find_col("Date");
  const std::size_t value_col = find_col(value_column);

  std::vector<std::pair<Date, double>> rows;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (cells.size() <= std::max(date_col, value_col)) {
      throw DataError(path.string() + ": row " + std::to_string(row) +
                      ": expected at least " +
                      std::to_string(std::max(date_col, value_col) + 1) +
                      " columns");
    }
    Date d;
    try {
      d = Date::from_iso(cells[date_col]);
    } catch (const DataError& e) {
      throw DataError(path.string() + ": row " + std::to_string(row) + ": " +
                      e.what());
    }
    const double v = parse_value(cells[value_col], row);
    if (!std::isfinite(v)) {
      throw DataError(path.string() + ": row " + std::to_string(row) +
                      ": non-finite value");
    }
    rows.emplace_back(d, v);
  }
  if (rows.empty()) throw DataError(path.string() + ": no data rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first) {
      throw DataError(path.string() + ": duplicate date " +
                      rows[i].first.to_iso());
    }
  }

  TimeSeries out;
  out.label = path.stem().string();
  out.dates.reserve(rows.size());
  out.values.reserve(rows.size());
  for (auto& [d, v] : rows) {
    out.dates.push_back(d);
    out.values.push_back(v);
  }
  return out;
}

TimeSeries AlignedPanel::series(std::size_t s) const {
  TimeSeries out;
  out.label = labels.at(s);
  out.dates = dates;
  out.values = matrix.at(s);
  return out;
}

AlignedPanel align_panel(const std::vector<TimeSeries>& series,
                         AlignPolicy policy) {
  if (series.empty()) throw DataError("align_panel: no input series");
  for (const auto& s : series) s.validate();

  AlignedPanel panel;
  for (const auto& s : series) panel.labels.push_back(s.label);

  if (policy == AlignPolicy::IntersectDates) {
    std::vector<Date> axis = series.front().dates;
    for (std::size_t i = 1; i < series.size(); ++i) {
      std::vector<Date> next;
      std::set_intersection(axis.begin(), axis.end(), series[i].dates.begin(),
                            series[i].dates.end(), std::back_inserter(next));
      axis.swap(next);
    }
    if (axis.empty()) throw DataError("align_panel: empty date intersection");
    panel.dates = axis;
    for (const auto& s : series) {
      std::vector<double> col;
      col.reserve(axis.size());
      std::size_t j = 0;
      for (const Date& d : axis) {
        while (s.dates[j] < d) ++j;
        col.push_back(s.values[j]);
      }
      panel.matrix.push_back(std::move(col));
    }
  } else {
    std::vector<Date> axis;
    for (const auto& s : series) {
      std::vector<Date> next;
      std::set_union(axis.begin(), axis.end(), s.dates.begin(), s.dates.end(),
                     std::back_inserter(next));
      axis.swap(next);
    }
    panel.dates = axis;
    for (const auto& s : series) {
      if (s.dates.front() > axis.front()) {
        throw DataError("align_panel: series '" + s.label +
                        "' starts after the union axis (leading gap at " +
                        axis.front().to_iso() + ")");
      }
      std::vector<double> col;
      col.reserve(axis.size());
      std::size_t j = 0;
      for (const Date& d : axis) {
        while (j + 1 < s.dates.size() && s.dates[j + 1] <= d) ++j;
        col.push_back(s.values[j]);
      }
      panel.matrix.push_back(std::move(col));
    }
  }
  return panel;
}

SeriesBundle SeriesBundle::from(const TimeSeries& ts) {
  SeriesBundle b;
  b.dates = ts.dates;
  b.names = {ts.label.empty() ? std::string("Close") : ts.label};
  b.columns = {ts.values};
  return b;
}

void write_series(const SeriesBundle& bundle, const std::filesystem::path& path,
                  SeriesFormat format) {
  for (const auto& col : bundle.columns) {
    if (col.size() != bundle.dates.size()) {
      throw DataError("write_series: column length " +
                      std::to_string(col.size()) + " does not match axis of " +
                      std::to_string(bundle.dates.size()));
    }
  }
  if (bundle.names.size() != bundle.columns.size()) {
    throw DataError("write_series: " + std::to_string(bundle.names.size()) +
                    " names for " + std::to_string(bundle.columns.size()) +
                    " columns");
  }

  if (format == SeriesFormat::Csv) {
    std::string text = "Date";
    for (const auto& n : bundle.names) text += "," + n;
    text += "\n";
    for (std::size_t i = 0; i < bundle.dates.size(); ++i) {
      text += bundle.dates[i].to_iso();
      for (const auto& col : bundle.columns) {
        text += ",";
        if (std::isfinite(col[i])) text += format_value(col[i]);
      }
      text += "\n";
    }
    write_text_atomic(path, text);
  } else {
    nlohmann::json j;
    auto& dates = j["dates"];
    for (const auto& d : bundle.dates) dates.push_back(d.to_iso());
    for (std::size_t c = 0; c < bundle.columns.size(); ++c) {
      j[bundle.names[c]] = bundle.columns[c];
    }
    write_text_atomic(path, j.dump(2) + "\n");
  }
}

}  // namespace mhe
