#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mhe/date.hpp"

namespace mhe {

// Uniformly sampled daily series. The dimensionless time axis normalizes the
// loaded span to (0, 1]: t_i = i/N for the i-th observation (1-based) of an
// N-point series. Indicator code consumes the step 1/N; appending further
// observations sampled at the same step never changes earlier windows.
struct TimeSeries {
  std::string label;
  std::vector<Date> dates;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double time_step() const { return 1.0 / static_cast<double>(size()); }
  // 0-based index -> t = (i+1)/N.
  double time_at(std::size_t i) const {
    return static_cast<double>(i + 1) * time_step();
  }

  // First `n` observations with dates and values sliced; models a shorter
  // snapshot of the same stream.
  TimeSeries head(std::size_t n) const;

  // Throws DataError unless dates are strictly increasing, values finite and
  // lengths match (length >= 1).
  void validate() const;
};

enum class AlignPolicy { IntersectDates, ForwardFillUnion };

struct AlignedPanel {
  std::vector<std::string> labels;
  std::vector<Date> dates;
  // matrix[s][t]: series s at common date t; fully populated.
  std::vector<std::vector<double>> matrix;

  TimeSeries series(std::size_t s) const;
};

// Loads a delimited daily file: header row required, `Date` column ISO-8601,
// one value column selected by name. Rows may appear unsorted; the result is
// sorted ascending. Lines starting with '#' are skipped.
// Throws DataError on a missing file, an unparseable row (reported with its
// row number), a duplicated date or a non-finite value.
TimeSeries load_close_series(const std::filesystem::path& path,
                             std::string_view value_column = "Close");

// Common-axis resampling. intersect keeps only dates present in every series;
// forward-fill takes the union axis and carries each series' last value
// forward (a leading gap is an error).
AlignedPanel align_panel(const std::vector<TimeSeries>& series,
                         AlignPolicy policy);

// Named columns over one shared date axis, for writing indicator output.
struct SeriesBundle {
  std::vector<Date> dates;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  static SeriesBundle from(const TimeSeries& ts);
};

enum class SeriesFormat { Csv, Json };

// Writes text via a temp file + rename, so readers never observe a partial
// file. Throws DataError when the path is unwritable.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text);

// Writes the bundle atomically (temp file + rename). CSV cells use shortest
// round-trip formatting, so load(write(x)) == x bit-for-bit; non-finite cells
// are written empty (CSV) or null (JSON).
void write_series(const SeriesBundle& bundle, const std::filesystem::path& path,
                  SeriesFormat format);

}  // namespace mhe
