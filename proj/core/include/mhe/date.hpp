#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace mhe {

// Calendar date stored as days since 1970-01-01. Trading-day arithmetic in
// this library is positional (row counts on a date axis), so Date only needs
// ordering, ISO-8601 parsing and formatting.
class Date {
 public:
  Date() = default;
  explicit Date(int days_since_epoch) : days_(days_since_epoch) {}

  // Parses "YYYY-MM-DD". Throws DataError on malformed input or an invalid
  // calendar day.
  static Date from_iso(std::string_view text);
  static Date from_ymd(int year, int month, int day);

  std::string to_iso() const;
  int days() const { return days_; }

  Date next_day() const { return Date(days_ + 1); }

  auto operator<=>(const Date&) const = default;

 private:
  int days_ = 0;
};

}  // namespace mhe
