#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikitrend/timeseries.hpp"

namespace wikitrend {

/// One line of a pagecounts-raw dump: `project title count bytes`.
/// project and title point into the parsed line; the title stays percent-encoded.
struct PagecountRecord {
  std::string_view project;
  std::string_view title;
  std::uint64_t views = 0;
  std::uint64_t bytes = 0;
};

/// Parses one dump line (a trailing LF or CRLF is tolerated).
/// Returns nullopt for anything but four non-empty fields with numeric count and bytes.
std::optional<PagecountRecord> parse_line(std::string_view line);

/// UTC hour a dump file covers; the file name encodes the start of the hour.
struct HourStamp {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;
  unsigned hour = 0;

  PeriodIndex index() const { return hour_index(year, month, day, hour); }
  static HourStamp from_index(PeriodIndex hour);

  friend bool operator==(const HourStamp&, const HourStamp&) = default;
};

/// Accepts `pagecounts-YYYYMMDD-HHMMSS` with an optional `.gz` suffix. The
/// minutes and seconds are ignored (real dumps are sometimes stamped a few
/// seconds late). Returns nullopt for anything else, including impossible dates.
std::optional<HourStamp> hourstamp_from_filename(std::string_view name);

struct IngestStats {
  std::uint64_t files_read = 0;
  std::uint64_t lines_total = 0;
  std::uint64_t lines_matched = 0;
  std::uint64_t lines_malformed = 0;
  std::uint64_t lines_other_project = 0;

  /// Lines of a filtered project whose title is not in the filter.
  std::uint64_t lines_unmatched_title() const {
    return lines_total - lines_matched - lines_malformed - lines_other_project;
  }

  IngestStats& operator+=(const IngestStats& other);
  friend bool operator==(const IngestStats&, const IngestStats&) = default;
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

using TitleSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

/// Exact project codes to keep ("ja" does not match "ja.m").
using ProjectFilter = std::vector<std::string>;

/// Views of one hour, keyed by encoded title. Only titles with at least one matched line appear.
using HourCounts = std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>>;

struct FileIngest {
  HourCounts counts;
  IngestStats stats;
};

/// Streams one dump file (gzip or plain text). Repeated titles are summed.
/// Throws IngestError naming the file when it cannot be opened or decompressed.
FileIngest ingest_file(const std::filesystem::path& path, const ProjectFilter& projects,
                       const TitleSet& titles);

struct FileProblem {
  std::filesystem::path path;
  std::string message;
};

struct DirectoryIngest {
  /// One dense hourly series per filtered title over the requested span; hours
  /// without a readable file or without a line for the title hold zero.
  SeriesMap series;
  /// Titles seen on at least one matched line.
  std::set<std::string, std::less<>> matched_titles;
  IngestStats stats;
  /// Hours in the span with no readable dump file.
  std::vector<PeriodIndex> missing_hours;
  /// Files that matched the naming pattern but could not be read.
  std::vector<FileProblem> errors;
  /// Directory entries skipped because their name is not a dump file name.
  std::vector<std::string> skipped_names;
  /// Dump files outside the requested span.
  std::uint64_t files_outside_span = 0;
};

struct DirectoryScan {
  std::vector<std::filesystem::path> dumps;  // sorted
  std::vector<std::string> skipped_names;
};

/// Lists dump files in `dir`. Throws IngestError if the directory cannot be listed.
DirectoryScan scan_dump_directory(const std::filesystem::path& dir);

/// Span covering every dump file in the directory. Throws IngestError when there are none.
TimeSpan dump_directory_span(const std::filesystem::path& dir);

/// Ingests every dump file of `dir` that falls in the hourly `span`, using up
/// to `jobs` worker threads. The result does not depend on `jobs` or on file
/// order. Throws IngestError when no file in the span could be read.
DirectoryIngest ingest_directory(const std::filesystem::path& dir, const TimeSpan& span,
                                 const ProjectFilter& projects, const TitleSet& titles,
                                 unsigned jobs = 1);

}  // namespace wikitrend
