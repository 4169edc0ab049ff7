#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wikitrend/analysis.hpp"
#include "wikitrend/series_csv.hpp"

namespace wikitrend {

// Column layouts of the analysis outputs. Undefined values are written as empty fields.
inline constexpr std::string_view kReportHeader = "keyword,rank,total_views,mean_daily_views,n,pearson,udcr";
inline constexpr std::string_view kBucketHeader =
    "rank_lo,rank_hi,keyword_count,trend_data_count,mean_pearson,mean_udcr,excluded_undefined";
inline constexpr std::string_view kCoverageHeader = "rank_lo,rank_hi,trend_data_count";
inline constexpr std::string_view kThresholdHeader =
    "threshold,count,boundary_rank,mean_pearson,mean_udcr,excluded_undefined";

/// RFC 4180 quoting when the field needs it.
std::string csv_field(std::string_view text);

/// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_record(std::string_view line);

void write_report_csv(std::ostream& out, std::span<const KeywordReport> reports, const Metadata& metadata = {});
void write_bucket_csv(std::ostream& out, std::span<const BucketSummary> buckets, const Metadata& metadata = {});
void write_coverage_csv(std::ostream& out, std::span<const std::size_t> coverage, std::size_t bucket_size,
                        std::size_t ranked_total, const Metadata& metadata = {});
void write_threshold_csv(std::ostream& out, const ThresholdSummary& summary, const Metadata& metadata = {});

/// Readers for the files above; they skip metadata lines and throw FormatError on bad rows.
std::vector<KeywordReport> read_report_csv(std::istream& in, Resolution resolution = Resolution::daily);
std::vector<BucketSummary> read_bucket_csv(std::istream& in);
ThresholdSummary read_threshold_csv(std::istream& in);

}  // namespace wikitrend
