#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "wikitrend/analysis.hpp"
#include "wikitrend/pagecounts.hpp"
#include "wikitrend/timeseries.hpp"

namespace wikitrend {

/// Settings shared by the CLI subcommands. Hours are PeriodIndex values on the hourly axis.
struct RunConfig {
  ProjectFilter projects;
  std::filesystem::path keywords;
  std::filesystem::path dumps;
  std::filesystem::path out = ".";
  std::filesystem::path series_dir;  // defaults to <out>/series
  std::filesystem::path trends_dir;
  std::optional<PeriodIndex> from;
  std::optional<PeriodIndex> to;
  std::optional<PeriodIndex> rank_from;
  std::optional<PeriodIndex> rank_to;
  int tz_offset_minutes = 0;
  Resolution resolution = Resolution::daily;
  std::size_t bucket_size = kDefaultBucketSize;
  double threshold = kDefaultThreshold;
  unsigned jobs = 1;
  bool timestamp = true;
  bool capitalize_first = true;
  std::string keyword;      // pairplot
  std::size_t limit = 20;   // top
};

/// Checks the invariants every command relies on; throws InputError.
void validate(const RunConfig& config);

/// Accepts YYYY-MM-DDTHH, YYYYMMDD-HH or YYYY-MM-DD. A bare date means hour 00,
/// or hour 23 when `end_of_day` is set.
PeriodIndex parse_hour_argument(std::string_view text, bool end_of_day = false);

std::filesystem::path series_directory(const RunConfig& config);

// Each command throws wikitrend::Error (or a subclass) on failure; on return
// every output it promises has been written.

/// Ingests dumps for the keyword list: one hourly series CSV per matched
/// keyword in <out>/series and <out>/ingest_stats.json.
void cmd_ingest(const RunConfig& config, std::ostream& log);

/// Scores views against reference trends and writes report.csv, buckets.csv,
/// coverage.csv and threshold.csv to <out>.
void cmd_correlate(const RunConfig& config, std::ostream& log);

/// Writes <out>/pairplot-<title>.csv for config.keyword and returns its path.
std::filesystem::path cmd_pairplot(const RunConfig& config, std::ostream& log);

/// Prints the `limit` most viewed keywords as CSV.
void cmd_top(const RunConfig& config, std::ostream& out);

}  // namespace wikitrend
