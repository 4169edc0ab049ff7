#include "wikitrend/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>

#include "wikitrend/error.hpp"

namespace wikitrend {

namespace {

namespace chr = std::chrono;

PeriodIndex floor_div(PeriodIndex a, PeriodIndex b) {
  PeriodIndex q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

PeriodIndex ceil_div(PeriodIndex a, PeriodIndex b) { return -floor_div(-a, b); }

chr::year_month_day ymd_of_day(PeriodIndex day) {
  return chr::year_month_day{chr::sys_days{chr::days{day}}};
}

// First and last UTC hour (inclusive) whose start falls on local day `day`.
PeriodIndex first_hour_of_local_day(PeriodIndex day, int offset) {
  return ceil_div(day * 1440 - offset, 60);
}
PeriodIndex last_hour_of_local_day(PeriodIndex day, int offset) {
  return ceil_div((day + 1) * 1440 - offset, 60) - 1;
}

void check_offset(int tz_offset_minutes) {
  if (tz_offset_minutes < -kMaxTzOffsetMinutes || tz_offset_minutes > kMaxTzOffsetMinutes) {
    throw InputError("tz offset " + std::to_string(tz_offset_minutes) +
                     " minutes is outside +/-" + std::to_string(kMaxTzOffsetMinutes));
  }
}

bool parse_uint(std::string_view text, unsigned& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

void append_padded(std::string& out, long long value, int width) {
  std::string digits = std::to_string(value < 0 ? -value : value);
  if (value < 0) out.push_back('-');
  if (static_cast<int>(digits.size()) < width) out.append(width - digits.size(), '0');
  out += digits;
}

}  // namespace

std::string_view to_string(Resolution r) {
  switch (r) {
    case Resolution::hourly:
      return "hourly";
    case Resolution::daily:
      return "daily";
    case Resolution::monthly:
      return "monthly";
  }
  return "?";
}

std::string_view to_string(Units u) {
  return u == Units::raw_views ? "raw_views" : "trend_index";
}

Resolution parse_resolution(std::string_view text) {
  if (text == "hourly") return Resolution::hourly;
  if (text == "daily") return Resolution::daily;
  if (text == "monthly") return Resolution::monthly;
  throw InputError("unknown resolution '" + std::string(text) + "'");
}

TimeSpan make_span(Resolution r, PeriodIndex first, PeriodIndex last) {
  if (first > last) {
    throw InputError("span starts after it ends: " + format_period(r, first) + " > " +
                     format_period(r, last));
  }
  return {r, first, last};
}

PeriodIndex day_index(int year, unsigned month, unsigned day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok()) {
    throw InputError("invalid calendar date " + std::to_string(year) + "-" +
                     std::to_string(month) + "-" + std::to_string(day));
  }
  return chr::sys_days{ymd}.time_since_epoch().count();
}

PeriodIndex hour_index(int year, unsigned month, unsigned day, unsigned hour) {
  if (hour > 23) throw InputError("hour out of range: " + std::to_string(hour));
  return day_index(year, month, day) * 24 + hour;
}

PeriodIndex month_index(int year, unsigned month) {
  if (month < 1 || month > 12) throw InputError("month out of range: " + std::to_string(month));
  return static_cast<PeriodIndex>(year) * 12 + (month - 1);
}

PeriodIndex month_of_day(PeriodIndex day) {
  auto ymd = ymd_of_day(day);
  return month_index(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()));
}

PeriodIndex first_day_of_month(PeriodIndex month) {
  auto year = static_cast<int>(floor_div(month, 12));
  auto m = static_cast<unsigned>(month - static_cast<PeriodIndex>(year) * 12 + 1);
  return day_index(year, m, 1);
}

unsigned days_in_month(PeriodIndex month) {
  auto year = static_cast<int>(floor_div(month, 12));
  auto m = static_cast<unsigned>(month - static_cast<PeriodIndex>(year) * 12 + 1);
  chr::year_month_day_last last{chr::year{year}, chr::month_day_last{chr::month{m}}};
  return static_cast<unsigned>(last.day());
}

double days_in_period(Resolution r, PeriodIndex p) {
  switch (r) {
    case Resolution::hourly:
      return 1.0 / 24.0;
    case Resolution::daily:
      return 1.0;
    case Resolution::monthly:
      return days_in_month(p);
  }
  return 0.0;
}

std::string format_period(Resolution r, PeriodIndex p) {
  std::string out;
  out.reserve(13);
  PeriodIndex day = p;
  PeriodIndex hour = 0;
  if (r == Resolution::hourly) {
    day = floor_div(p, 24);
    hour = p - day * 24;
  }
  if (r == Resolution::monthly) {
    PeriodIndex year = floor_div(p, 12);
    append_padded(out, year, 4);
    out.push_back('-');
    append_padded(out, p - year * 12 + 1, 2);
    return out;
  }
  auto ymd = ymd_of_day(day);
  append_padded(out, static_cast<int>(ymd.year()), 4);
  out.push_back('-');
  append_padded(out, static_cast<unsigned>(ymd.month()), 2);
  out.push_back('-');
  append_padded(out, static_cast<unsigned>(ymd.day()), 2);
  if (r == Resolution::hourly) {
    out.push_back('T');
    append_padded(out, hour, 2);
  }
  return out;
}

ParsedPeriod parse_period(std::string_view text) {
  auto fail = [&]() -> FormatError {
    return FormatError("unrecognized period '" + std::string(text) +
                       "' (expected YYYY-MM-DDTHH, YYYY-MM-DD or YYYY-MM)");
  };
  if (text.size() < 7 || text[4] != '-') throw fail();
  unsigned year = 0, month = 0, day = 0, hour = 0;
  if (!parse_uint(text.substr(0, 4), year) || !parse_uint(text.substr(5, 2), month)) throw fail();
  if (month < 1 || month > 12) throw fail();
  if (text.size() == 7) {
    return {Resolution::monthly, month_index(static_cast<int>(year), month)};
  }
  if (text.size() < 10 || text[7] != '-' || !parse_uint(text.substr(8, 2), day)) throw fail();
  if (!chr::year_month_day{chr::year{static_cast<int>(year)}, chr::month{month}, chr::day{day}}.ok()) {
    throw fail();
  }
  if (text.size() == 10) {
    return {Resolution::daily, day_index(static_cast<int>(year), month, day)};
  }
  if (text.size() != 13 || text[10] != 'T' || !parse_uint(text.substr(11, 2), hour) || hour > 23) {
    throw fail();
  }
  return {Resolution::hourly, hour_index(static_cast<int>(year), month, day, hour)};
}

TimeSeries::TimeSeries(Resolution resolution, PeriodIndex start, std::vector<double> values,
                       Units units)
    : resolution_(resolution), start_(start), values_(std::move(values)), units_(units) {
  if (values_.empty()) throw InputError("a time series needs at least one value");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError("time series values must be finite and non-negative");
    }
    if (units_ == Units::trend_index && (v > 100.0 || v != std::floor(v))) {
      throw InputError("trend index values must be integers in 0..100");
    }
  }
}

double TimeSeries::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double TimeSeries::days_covered() const {
  if (resolution_ == Resolution::hourly) return static_cast<double>(values_.size()) / 24.0;
  if (resolution_ == Resolution::daily) return static_cast<double>(values_.size());
  double days = 0;
  for (PeriodIndex m = start(); m <= last(); ++m) days += days_in_month(m);
  return days;
}

TimeSeries TimeSeries::slice(const TimeSpan& sub) const {
  if (!span().contains(sub)) {
    throw InputError("slice " + format_period(sub.resolution, sub.first) + ".." +
                     format_period(sub.resolution, sub.last) + " is outside the series");
  }
  auto begin = values_.begin() + (sub.first - start_);
  return TimeSeries(resolution_, sub.first, std::vector<double>(begin, begin + sub.size()), units_);
}

PeriodIndex local_day_of_hour(PeriodIndex hour, int tz_offset_minutes) {
  return floor_div(hour * 60 + tz_offset_minutes, 1440);
}

TimeSeries hourly_to_daily(const TimeSeries& hourly, int tz_offset_minutes) {
  if (hourly.resolution() != Resolution::hourly) throw InputError("hourly_to_daily needs an hourly series");
  check_offset(tz_offset_minutes);

  PeriodIndex first_day = local_day_of_hour(hourly.start(), tz_offset_minutes);
  if (first_hour_of_local_day(first_day, tz_offset_minutes) < hourly.start()) ++first_day;
  PeriodIndex last_day = local_day_of_hour(hourly.last(), tz_offset_minutes);
  if (last_hour_of_local_day(last_day, tz_offset_minutes) > hourly.last()) --last_day;
  if (first_day > last_day) {
    throw EmptyResultError("no complete local day between " +
                           format_period(Resolution::hourly, hourly.start()) + " and " +
                           format_period(Resolution::hourly, hourly.last()));
  }

  std::vector<double> days;
  days.reserve(static_cast<std::size_t>(last_day - first_day + 1));
  for (PeriodIndex d = first_day; d <= last_day; ++d) {
    double sum = 0;
    for (PeriodIndex h = first_hour_of_local_day(d, tz_offset_minutes);
         h <= last_hour_of_local_day(d, tz_offset_minutes); ++h) {
      sum += hourly.at_period(h);
    }
    days.push_back(sum);
  }
  return TimeSeries(Resolution::daily, first_day, std::move(days), hourly.units());
}

TimeSeries daily_to_monthly(const TimeSeries& daily) {
  if (daily.resolution() != Resolution::daily) throw InputError("daily_to_monthly needs a daily series");

  PeriodIndex first_month = month_of_day(daily.start());
  if (first_day_of_month(first_month) < daily.start()) ++first_month;
  PeriodIndex last_month = month_of_day(daily.last());
  if (first_day_of_month(last_month) + days_in_month(last_month) - 1 > daily.last()) --last_month;
  if (first_month > last_month) {
    throw EmptyResultError("no complete calendar month between " +
                           format_period(Resolution::daily, daily.start()) + " and " +
                           format_period(Resolution::daily, daily.last()));
  }

  std::vector<double> months;
  for (PeriodIndex m = first_month; m <= last_month; ++m) {
    PeriodIndex d0 = first_day_of_month(m);
    double sum = 0;
    for (PeriodIndex d = d0; d < d0 + days_in_month(m); ++d) sum += daily.at_period(d);
    months.push_back(sum);
  }
  return TimeSeries(Resolution::monthly, first_month, std::move(months), daily.units());
}

TimeSeries resample(const TimeSeries& series, Resolution target, int tz_offset_minutes) {
  if (series.resolution() == target) return series;
  if (target == Resolution::hourly || (series.resolution() == Resolution::monthly)) {
    throw InputError("cannot resample " + std::string(to_string(series.resolution())) + " to " +
                     std::string(to_string(target)));
  }
  if (series.resolution() == Resolution::hourly) {
    auto daily = hourly_to_daily(series, tz_offset_minutes);
    return target == Resolution::daily ? daily : daily_to_monthly(daily);
  }
  return daily_to_monthly(series);
}

TimeSpan common_span(const TimeSeries& a, const TimeSeries& b) {
  if (a.resolution() != b.resolution()) {
    throw AlignmentError("cannot align " + std::string(to_string(a.resolution())) + " with " +
                         std::string(to_string(b.resolution())) + " series");
  }
  PeriodIndex first = std::max(a.start(), b.start());
  PeriodIndex last = std::min(a.last(), b.last());
  if (first > last) throw AlignmentError("series spans do not overlap");
  if (last - first + 1 < 2) throw AlignmentError("series overlap in a single period; need at least 2");
  return {a.resolution(), first, last};
}

AlignedPair align(const TimeSeries& a, const TimeSeries& b) {
  auto span = common_span(a, b);
  return {a.slice(span), b.slice(span)};
}

double trend_index_value(double value, double max) {
  // Exact integer arithmetic whenever the operands allow it, so halves are never misjudged.
  constexpr double kExactLimit = 9007199254740992.0 / 256.0;
  if (value == std::floor(value) && max == std::floor(max) && value <= max && max < kExactLimit) {
    auto v = static_cast<std::uint64_t>(value);
    auto m = static_cast<std::uint64_t>(max);
    return static_cast<double>((200 * v + m) / (2 * m));
  }
  return std::round(100.0 * value / max);
}

TrendScaling scale_to_trend_index(const TimeSeries& series) {
  auto values = series.values();
  double max = *std::max_element(values.begin(), values.end());
  std::vector<double> scaled(values.size(), 0.0);
  if (max == 0.0) {
    return {TimeSeries(series.resolution(), series.start(), std::move(scaled), Units::trend_index), true};
  }
  for (std::size_t i = 0; i < values.size(); ++i) scaled[i] = trend_index_value(values[i], max);
  return {TimeSeries(series.resolution(), series.start(), std::move(scaled), Units::trend_index), false};
}

}  // namespace wikitrend
