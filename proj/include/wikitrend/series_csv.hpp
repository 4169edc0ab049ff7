#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wikitrend/timeseries.hpp"

namespace wikitrend {

/// `# key=value` lines written ahead of a CSV header. Readers skip lines starting with '#'.
using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_metadata(std::ostream& out, const Metadata& metadata);

/// Shortest decimal text that reads back to the same double ("12", "0.25").
std::string format_number(double value);

/// File name for a title's series: the encoded title with '/' escaped as %2F, plus ".csv".
std::string series_file_name(std::string_view encoded_title);

/// `period,value` CSV.
void write_series_csv(std::ostream& out, const TimeSeries& series, const Metadata& metadata = {});

/// Parses a series CSV: optional metadata and header, then one row per period with no gaps.
/// Resolution comes from the period format. Throws FormatError naming `source`.
TimeSeries read_series_csv(std::istream& in, Units units = Units::raw_views,
                           std::string_view source = "<stream>");

/// Writes atomically enough for our purposes: a temporary file renamed into place.
/// Throws Error when the file cannot be written.
void write_series_file(const std::filesystem::path& path, const TimeSeries& series,
                       const Metadata& metadata = {});

TimeSeries read_series_file(const std::filesystem::path& path, Units units = Units::raw_views);

/// Writes `content` to `path` via a temporary sibling; throws Error on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace wikitrend
