#include "mhe/date.hpp"

#include <charconv>
#include <cstdio>

#include "mhe/errors.hpp"

namespace mhe {

namespace {

// Civil <-> day-count conversions (proleptic Gregorian), era-based algorithm.
long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& y, int& m, int& d) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long yy = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DataError("invalid date field '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Date Date::from_iso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw DataError("expected ISO-8601 date (YYYY-MM-DD), got '" +
                    std::string(text) + "'");
  }
  return from_ymd(parse_int(text.substr(0, 4)), parse_int(text.substr(5, 2)),
                  parse_int(text.substr(8, 2)));
}

Date Date::from_ymd(int year, int month, int day) {
  if (month < 1 || month > 12 || day < 1 || day > 31) {
    throw DataError("invalid calendar date " + std::to_string(year) + "-" +
                    std::to_string(month) + "-" + std::to_string(day));
  }
  Date out(static_cast<int>(days_from_civil(year, month, day)));
  // Reject days that normalize to a different date (e.g. Feb 30).
  int y, m, d;
  civil_from_days(out.days_, y, m, d);
  if (y != year || m != month || d != day) {
    throw DataError("invalid calendar date " + std::to_string(year) + "-" +
                    std::to_string(month) + "-" + std::to_string(day));
  }
  return out;
}

std::string Date::to_iso() const {
  int y, m, d;
  civil_from_days(days_, y, m, d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
  return buf;
}

}  // namespace mhe
