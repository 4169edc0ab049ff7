#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wikitrend/timeseries.hpp"

namespace wikitrend {

struct RankedKeyword {
  std::string keyword;  // encoded title
  std::size_t rank = 0; // 1-based, dense
  double total_views = 0;
  double mean_daily_views = 0;
};

/// Orders keywords by total views (descending), ties by title (ascending).
/// Throws EmptyResultError for an empty collection.
std::vector<RankedKeyword> rank_keywords(const SeriesMap& views);

struct KeywordReport {
  std::string keyword;
  std::size_t access_rank = 0;
  double total_views = 0;          // the ranking total
  double mean_daily_views = 0;     // over the analysis series
  std::size_t n = 0;
  std::optional<double> pearson;   // nullopt when either side is constant
  double udcr = 0;
  Resolution resolution = Resolution::daily;
};

struct SkipTally {
  std::size_t no_views = 0;      // keyword absent from the views collection
  std::size_t no_reference = 0;  // no reference series for the keyword
  std::size_t no_overlap = 0;    // views and reference share fewer than 2 periods

  std::size_t total() const { return no_views + no_reference + no_overlap; }
};

struct Correlation {
  std::vector<KeywordReport> reports;  // ordered by access rank
  SkipTally skips;
  std::size_t undefined_pearson = 0;   // reported rows whose pearson is undefined
};

/// Scores every keyword that has both a views series and a reference series.
/// `ranking` supplies rank and total for each keyword in `views`. Every entry
/// of views and trends must have `resolution` (InputError otherwise).
/// Throws EmptyResultError if no row results.
Correlation correlate_all(std::span<const std::string> keywords, const SeriesMap& views,
                          const SeriesMap& trends, std::span<const RankedKeyword> ranking,
                          Resolution resolution, unsigned jobs = 1);

struct BucketSummary {
  std::size_t rank_lo = 0;
  std::size_t rank_hi = 0;
  std::size_t keyword_count = 0;
  std::size_t trend_data_count = 0;
  std::optional<double> mean_pearson;  // over rows with a defined pearson
  std::optional<double> mean_udcr;     // over all rows
  std::size_t excluded_undefined_count = 0;
};

inline constexpr std::size_t kDefaultBucketSize = 1000;

/// Rank buckets [1..k], [k+1..2k], ... up to the largest rank in `reports`,
/// or `ranked_total` when that is larger. The last bucket may be partial.
/// trend_data_count is copied from `coverage` when given, else keyword_count.
/// Throws EmptyResultError for empty reports, InputError for bucket_size 0.
std::vector<BucketSummary> bucket_report(std::span<const KeywordReport> reports,
                                         std::size_t bucket_size = kDefaultBucketSize,
                                         std::size_t ranked_total = 0,
                                         std::span<const std::size_t> coverage = {});

/// Per-bucket count of ranked keywords that have a reference series.
std::vector<std::size_t> coverage_report(std::span<const RankedKeyword> ranking,
                                         const SeriesMap& trends,
                                         std::size_t bucket_size = kDefaultBucketSize);

struct ThresholdSummary {
  double threshold = 0;
  std::size_t count = 0;
  std::size_t boundary_rank = 0;  // worst rank in the subset, 0 when empty
  std::optional<double> mean_pearson;
  std::optional<double> mean_udcr;
  std::size_t excluded_undefined_count = 0;
  bool empty = true;
};

inline constexpr double kDefaultThreshold = 1000.0;

/// Restricts to keywords whose mean daily views are strictly above the threshold.
ThresholdSummary threshold_report(std::span<const KeywordReport> reports,
                                  double min_mean_daily_views = kDefaultThreshold);

}  // namespace wikitrend
