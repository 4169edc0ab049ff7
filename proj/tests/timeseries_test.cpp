#include "wikitrend/timeseries.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <map>
#include <random>

#include "test_support.hpp"
#include "wikitrend/error.hpp"

namespace wikitrend {
namespace {

namespace chr = std::chrono;

std::vector<double> vec(const TimeSeries& s) { return {s.values().begin(), s.values().end()}; }

TimeSeries hourly(PeriodIndex start, std::vector<double> v) { return TimeSeries(Resolution::hourly, start, std::move(v)); }
TimeSeries daily(PeriodIndex start, std::vector<double> v) { return TimeSeries(Resolution::daily, start, std::move(v)); }

// Oracle: assign each UTC hour to a local day through std::chrono and keep days with 24 hours.
std::map<PeriodIndex, double> complete_local_days(const TimeSeries& h, int offset) {
  std::map<PeriodIndex, std::pair<int, double>> days;
  for (std::size_t i = 0; i < h.size(); ++i) {
    chr::sys_time<chr::minutes> local{chr::hours{h.start() + static_cast<PeriodIndex>(i)} + chr::minutes{offset}};
    auto day = chr::floor<chr::days>(local).time_since_epoch().count();
    days[day].first += 1;
    days[day].second += h[i];
  }
  std::map<PeriodIndex, double> out;
  for (const auto& [d, cs] : days) {
    if (cs.first == 24) out[d] = cs.second;
  }
  return out;
}

TEST(Calendar, PeriodFormatting) {
  EXPECT_EQ(format_period(Resolution::hourly, hour_index(2014, 12, 12, 15)), "2014-12-12T15");
  EXPECT_EQ(format_period(Resolution::daily, day_index(2008, 2, 29)), "2008-02-29");
  EXPECT_EQ(format_period(Resolution::monthly, month_index(2014, 1)), "2014-01");
  EXPECT_EQ(format_period(Resolution::daily, -1), "1969-12-31");
  for (const char* text : {"2014-12-12T15", "2014-12-12", "2014-12", "1999-01-01T00", "2012-02-29"}) {
    auto p = parse_period(text);
    EXPECT_EQ(format_period(p.resolution, p.index), text);
  }
  for (const char* bad : {"2014-13", "2014-02-30", "2014-12-12T24", "2014/12/12", "20141212", "2014-12-12 15", ""}) {
    EXPECT_THROW(parse_period(bad), FormatError) << bad;
  }
}

TEST(Calendar, MonthLengths) {
  EXPECT_EQ(days_in_month(month_index(2012, 2)), 29u);
  EXPECT_EQ(days_in_month(month_index(2014, 2)), 28u);
  EXPECT_EQ(days_in_month(month_index(2000, 2)), 29u);
  EXPECT_EQ(days_in_month(month_index(1900, 2)), 28u);
  EXPECT_EQ(days_in_month(month_index(2014, 12)), 31u);
  EXPECT_EQ(month_of_day(day_index(2014, 12, 31)), month_index(2014, 12));
  EXPECT_EQ(first_day_of_month(month_index(2015, 1)), day_index(2015, 1, 1));
}

TEST(TimeSeriesType, ValidatesValues) {
  EXPECT_THROW(TimeSeries(Resolution::daily, 0, {}), InputError);
  EXPECT_THROW(TimeSeries(Resolution::daily, 0, {1, -1}), InputError);
  EXPECT_THROW(TimeSeries(Resolution::daily, 0, {std::nan("")}), InputError);
  EXPECT_THROW(TimeSeries(Resolution::daily, 0, {101}, Units::trend_index), InputError);
  EXPECT_THROW(TimeSeries(Resolution::daily, 0, {2.5}, Units::trend_index), InputError);
  EXPECT_NO_THROW(TimeSeries(Resolution::daily, 0, {0, 100}, Units::trend_index));
}

TEST(TimeSeriesType, SliceAndDays) {
  auto s = daily(10, {1, 2, 3, 4});
  EXPECT_EQ(vec(s.slice({Resolution::daily, 11, 12})), (std::vector<double>{2, 3}));
  EXPECT_THROW(s.slice({Resolution::daily, 9, 12}), InputError);
  EXPECT_EQ(TimeSeries(Resolution::monthly, month_index(2012, 1), {1, 1}).days_covered(), 60.0);
  EXPECT_EQ(hourly(0, std::vector<double>(48, 1)).days_covered(), 2.0);
}

TEST(HourlyToDaily, UtcDays) {
  const auto t0 = hour_index(2014, 12, 1, 0);
  auto d = hourly_to_daily(hourly(t0, std::vector<double>(48, 1)), 0);
  EXPECT_EQ(vec(d), (std::vector<double>{24, 24}));
  EXPECT_EQ(d.start(), day_index(2014, 12, 1));
  EXPECT_EQ(d.resolution(), Resolution::daily);
}

TEST(HourlyToDaily, NoCompleteDay) {
  EXPECT_THROW(hourly_to_daily(hourly(hour_index(2014, 12, 1, 12), std::vector<double>(24, 1)), 0), EmptyResultError);
}

TEST(HourlyToDaily, JstDropsBothEdges) {
  const auto t0 = hour_index(2014, 12, 1, 0);
  auto h = hourly(t0, std::vector<double>(48, 1));
  auto d = hourly_to_daily(h, 540);
  EXPECT_EQ(vec(d), (std::vector<double>{24}));
  // UTC 00..14 fall on local 2014-12-01 (09:00..23:00), UTC 15..38 make up local 2014-12-02
  EXPECT_EQ(d.start(), day_index(2014, 12, 2));
  auto oracle = complete_local_days(h, 540);
  ASSERT_EQ(oracle.size(), 1u);
  EXPECT_EQ(oracle.begin()->first, d.start());

  // put a marker in UTC hour 15 (local 00:00) and hour 38 (local 23:00): both land in the day
  std::vector<double> v(48, 0);
  v[14] = 1000;
  v[15] = 1;
  v[38] = 2;
  v[39] = 1000;
  EXPECT_EQ(vec(hourly_to_daily(hourly(t0, v), 540)), (std::vector<double>{3}));
}

TEST(HourlyToDaily, NegativeAndFractionalOffsets) {
  const auto t0 = hour_index(2014, 12, 1, 0);
  auto h = hourly(t0, std::vector<double>(72, 1));
  for (int offset : {-840, -300, -1, 0, 330, 345, 540, 840}) {
    auto d = hourly_to_daily(h, offset);
    auto oracle = complete_local_days(h, offset);
    ASSERT_EQ(d.size(), oracle.size()) << offset;
    EXPECT_EQ(d.start(), oracle.begin()->first) << offset;
    for (double v : d.values()) EXPECT_EQ(v, 24.0);
  }
  EXPECT_THROW(hourly_to_daily(h, 841), InputError);
  EXPECT_THROW(hourly_to_daily(h, -841), InputError);
}

TEST(HourlyToDailyProperty, ConservationAgainstChronoOracle) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto n = 24 + rng() % 200;
    const auto start = hour_index(2013, 1, 1, 0) + static_cast<PeriodIndex>(rng() % 20000);
    const int offset = static_cast<int>(rng() % 1681) - 840;
    auto h = hourly(start, testing::random_values(rng, n, 0, 5000, true));
    auto oracle = complete_local_days(h, offset);
    if (oracle.empty()) {
      EXPECT_THROW(hourly_to_daily(h, offset), EmptyResultError);
      continue;
    }
    auto d = hourly_to_daily(h, offset);
    ASSERT_EQ(d.size(), oracle.size());
    double oracle_sum = 0;
    std::size_t i_day = 0;
    for (const auto& [day, sum] : oracle) {
      EXPECT_EQ(day, d.start() + static_cast<PeriodIndex>(i_day));
      EXPECT_EQ(d[i_day], sum);
      oracle_sum += sum;
      ++i_day;
    }
    EXPECT_EQ(d.total(), oracle_sum);
  }
}

TEST(DailyToMonthly, Examples) {
  auto jan = daily(day_index(2014, 1, 1), std::vector<double>(31, 2));
  auto m = daily_to_monthly(jan);
  EXPECT_EQ(vec(m), (std::vector<double>{62}));
  EXPECT_EQ(m.start(), month_index(2014, 1));

  EXPECT_THROW(daily_to_monthly(daily(day_index(2014, 1, 15), std::vector<double>(40, 1))), EmptyResultError);

  EXPECT_EQ(vec(daily_to_monthly(daily(day_index(2014, 1, 1), std::vector<double>(90, 1)))),
            (std::vector<double>{31, 28, 31}));
  EXPECT_EQ(vec(daily_to_monthly(daily(day_index(2012, 1, 1), std::vector<double>(91, 1)))),
            (std::vector<double>{31, 29, 31}));
}

TEST(DailyToMonthly, PartialEdgesDropped) {
  // Jan 2 .. Apr 30: January incomplete, Feb..Apr complete
  const auto start = day_index(2014, 1, 2);
  const auto n = static_cast<std::size_t>(day_index(2014, 4, 30) - start + 1);
  auto m = daily_to_monthly(daily(start, std::vector<double>(n, 1)));
  EXPECT_EQ(m.start(), month_index(2014, 2));
  EXPECT_EQ(vec(m), (std::vector<double>{28, 31, 30}));
}

TEST(DailyToMonthlyProperty, Conservation) {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 200; ++i) {
    const auto start = day_index(2007, 1, 1) + static_cast<PeriodIndex>(rng() % 3000);
    const auto n = 1 + rng() % 400;
    auto d = daily(start, testing::random_values(rng, n, 0, 100000, true));
    // oracle: walk the days and group by (year, month) from chrono
    std::map<std::pair<int, unsigned>, std::pair<unsigned, double>> groups;
    for (std::size_t k = 0; k < n; ++k) {
      chr::year_month_day ymd{chr::sys_days{chr::days{start + static_cast<PeriodIndex>(k)}}};
      auto& g = groups[{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())}];
      g.first += 1;
      g.second += d[k];
    }
    std::vector<double> expected;
    for (const auto& [ym, g] : groups) {
      chr::year_month_day_last last{chr::year{ym.first}, chr::month_day_last{chr::month{ym.second}}};
      if (g.first == static_cast<unsigned>(last.day())) expected.push_back(g.second);
    }
    if (expected.empty()) {
      EXPECT_THROW(daily_to_monthly(d), EmptyResultError);
    } else {
      EXPECT_EQ(vec(daily_to_monthly(d)), expected);
    }
  }
}

TEST(Resample, Routes) {
  const auto t0 = hour_index(2014, 1, 1, 0);
  auto h = hourly(t0, std::vector<double>(24 * 31, 1));
  EXPECT_EQ(vec(resample(h, Resolution::monthly)), (std::vector<double>{744}));
  EXPECT_EQ(resample(h, Resolution::daily).size(), 31u);
  EXPECT_EQ(resample(h, Resolution::hourly), h);
  EXPECT_THROW(resample(resample(h, Resolution::daily), Resolution::hourly), InputError);
}

TEST(Align, Examples) {
  const auto jan = month_index(2014, 1);
  TimeSeries a(Resolution::monthly, jan, {1, 2, 3, 4, 5, 6});
  TimeSeries b(Resolution::monthly, jan + 2, {1, 2, 3, 4, 5, 6, 7});
  auto [a2, b2] = align(a, b);
  EXPECT_EQ(a2.span(), (TimeSpan{Resolution::monthly, jan + 2, jan + 5}));
  EXPECT_EQ(b2.span(), a2.span());
  EXPECT_EQ(vec(a2), (std::vector<double>{3, 4, 5, 6}));
  EXPECT_EQ(vec(b2), (std::vector<double>{1, 2, 3, 4}));

  auto same = align(a, a);
  EXPECT_EQ(same.a, a);
  EXPECT_EQ(same.b, a);

  EXPECT_THROW(align(a, TimeSeries(Resolution::monthly, jan + 10, {1, 2})), AlignmentError);
  EXPECT_THROW(align(a, TimeSeries(Resolution::monthly, jan + 5, {1, 2})), AlignmentError);  // overlap of 1
  EXPECT_THROW(align(a, TimeSeries(Resolution::daily, 0, {1, 2})), AlignmentError);
}

TEST(AlignProperty, CommutativeSpan) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    TimeSeries a(Resolution::daily, static_cast<PeriodIndex>(rng() % 50), std::vector<double>(1 + rng() % 30, 1));
    TimeSeries b(Resolution::daily, static_cast<PeriodIndex>(rng() % 50), std::vector<double>(1 + rng() % 30, 1));
    try {
      auto ab = common_span(a, b);
      EXPECT_EQ(ab, common_span(b, a));
      EXPECT_GE(ab.size(), 2u);
    } catch (const AlignmentError&) {
      EXPECT_THROW(common_span(b, a), AlignmentError);
    }
  }
}

TEST(TrendIndex, Examples) {
  auto s = scale_to_trend_index(daily(0, {5, 10, 20}));
  EXPECT_EQ(vec(s.series), (std::vector<double>{25, 50, 100}));
  EXPECT_EQ(s.series.units(), Units::trend_index);
  EXPECT_FALSE(s.all_zero);

  // exact rational oracle: 300/7 = 42 rem 6, and 2*6 >= 7 rounds up
  const long num = 100 * 3, den = 7;
  const double oracle = static_cast<double>(num / den + (2 * (num % den) >= den ? 1 : 0));
  EXPECT_EQ(oracle, 43.0);
  EXPECT_EQ(vec(scale_to_trend_index(daily(0, {3, 7})).series), (std::vector<double>{oracle, 100}));

  auto zero = scale_to_trend_index(daily(0, {0, 0}));
  EXPECT_TRUE(zero.all_zero);
  EXPECT_EQ(vec(zero.series), (std::vector<double>{0, 0}));
}

TEST(TrendIndex, HalvesRoundAwayFromZero) {
  EXPECT_EQ(trend_index_value(1, 8), 13.0);    // 12.5
  EXPECT_EQ(trend_index_value(1, 200), 1.0);   // 0.5
  EXPECT_EQ(trend_index_value(1, 201), 0.0);   // 0.497...
  EXPECT_EQ(trend_index_value(3, 8), 38.0);    // 37.5
  EXPECT_EQ(trend_index_value(0.125, 1), 13.0);
}

TEST(TrendIndexProperty, RangeAndArgmax) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    auto values = testing::random_values(rng, 1 + rng() % 60, 0, rng() % 2 ? 10 : 1e7, rng() % 2);
    auto s = daily(0, values);
    auto scaled = scale_to_trend_index(s).series;
    auto argmax = std::max_element(values.begin(), values.end()) - values.begin();
    double hi = 0;
    for (std::size_t k = 0; k < scaled.size(); ++k) {
      EXPECT_GE(scaled[k], 0);
      EXPECT_LE(scaled[k], 100);
      // integer oracle check against the definition
      if (values[argmax] > 0) {
        EXPECT_LE(std::abs(scaled[k] - 100.0 * values[k] / values[argmax]), 0.5 + 1e-9);
      }
      hi = std::max(hi, scaled[k]);
    }
    if (values[argmax] > 0) {
      EXPECT_EQ(hi, 100.0);
      EXPECT_EQ(scaled[static_cast<std::size_t>(argmax)], 100.0);
    }
  }
}

}  // namespace
}  // namespace wikitrend
