#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wikitrend {

enum class Resolution { hourly, daily, monthly };
enum class Units { raw_views, trend_index };

std::string_view to_string(Resolution r);
std::string_view to_string(Units u);
/// Parses "hourly", "daily" or "monthly"; throws InputError otherwise.
Resolution parse_resolution(std::string_view text);

/// Position of a period on its resolution's axis:
///   hourly  - hours since 1970-01-01T00 UTC
///   daily   - days since 1970-01-01
///   monthly - months since 0000-01 (year * 12 + month - 1)
using PeriodIndex = std::int64_t;

/// Inclusive range of periods at a common resolution.
struct TimeSpan {
  Resolution resolution = Resolution::hourly;
  PeriodIndex first = 0;
  PeriodIndex last = 0;

  std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
  bool contains(PeriodIndex p) const { return p >= first && p <= last; }
  bool contains(const TimeSpan& other) const {
    return other.resolution == resolution && other.first >= first && other.last <= last;
  }

  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

/// Builds a span after checking first <= last.
TimeSpan make_span(Resolution r, PeriodIndex first, PeriodIndex last);

// Calendar helpers shared by the resampler, the CSV codec and the ingest layer.
PeriodIndex hour_index(int year, unsigned month, unsigned day, unsigned hour);
PeriodIndex day_index(int year, unsigned month, unsigned day);
PeriodIndex month_index(int year, unsigned month);
PeriodIndex month_of_day(PeriodIndex day);
PeriodIndex first_day_of_month(PeriodIndex month);
unsigned days_in_month(PeriodIndex month);
/// Number of calendar days covered by one period (1/24 for hours).
double days_in_period(Resolution r, PeriodIndex p);

/// "YYYY-MM-DDTHH", "YYYY-MM-DD" or "YYYY-MM".
std::string format_period(Resolution r, PeriodIndex p);

struct ParsedPeriod {
  Resolution resolution;
  PeriodIndex index;
};
/// Inverse of format_period; the resolution is inferred from the shape. Throws FormatError.
ParsedPeriod parse_period(std::string_view text);

/// Dense series of non-negative values. Entry i belongs to period start() + i.
/// Immutable once constructed.
class TimeSeries {
 public:
  /// Throws InputError when values is empty, holds a negative or non-finite
  /// value, or (for trend_index) a value that is not an integer in 0..100.
  TimeSeries(Resolution resolution, PeriodIndex start, std::vector<double> values,
             Units units = Units::raw_views);

  Resolution resolution() const noexcept { return resolution_; }
  Units units() const noexcept { return units_; }
  PeriodIndex start() const noexcept { return start_; }
  PeriodIndex last() const noexcept { return start_ + static_cast<PeriodIndex>(values_.size()) - 1; }
  TimeSpan span() const noexcept { return {resolution_, start(), last()}; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double at_period(PeriodIndex p) const { return values_.at(static_cast<std::size_t>(p - start_)); }

  double total() const;
  /// Calendar days covered by the series.
  double days_covered() const;

  /// Sub-series over `span`, which must lie inside this series. Throws InputError.
  TimeSeries slice(const TimeSpan& span) const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  Resolution resolution_;
  PeriodIndex start_;
  std::vector<double> values_;
  Units units_;
};

/// Per-keyword series keyed by encoded title; ordered so iteration is deterministic.
using SeriesMap = std::map<std::string, TimeSeries, std::less<>>;

/// Largest allowed |tz_offset_minutes| (UTC+14 / UTC-14).
inline constexpr int kMaxTzOffsetMinutes = 14 * 60;

/// Local calendar day that contains the start of UTC hour `hour` under a fixed offset.
PeriodIndex local_day_of_hour(PeriodIndex hour, int tz_offset_minutes);

/// Sums hours into local calendar days (UTC shifted by tz_offset_minutes).
/// A UTC hour belongs to the local day containing its start. Days not fully
/// covered by the input are dropped; throws EmptyResultError if none remain.
TimeSeries hourly_to_daily(const TimeSeries& hourly, int tz_offset_minutes = 0);

/// Sums days into calendar months, dropping partial edge months.
/// Throws EmptyResultError if no month is complete.
TimeSeries daily_to_monthly(const TimeSeries& daily);

/// Brings a raw series to `target` resolution (identity when already there).
TimeSeries resample(const TimeSeries& series, Resolution target, int tz_offset_minutes = 0);

struct AlignedPair {
  TimeSeries a;
  TimeSeries b;
};

/// Intersection span of two series of the same resolution; throws AlignmentError
/// when the resolutions differ or the intersection holds fewer than two periods.
TimeSpan common_span(const TimeSeries& a, const TimeSeries& b);

/// Trims both series to common_span(a, b).
AlignedPair align(const TimeSeries& a, const TimeSeries& b);

struct TrendScaling {
  TimeSeries series;
  bool all_zero = false;
};

/// round-half-away-from-zero of 100 * v / max over the series.
TrendScaling scale_to_trend_index(const TimeSeries& series);

/// Rounding rule used for trend indices: round(100 * value / max), halves away from zero.
double trend_index_value(double value, double max);

}  // namespace wikitrend
