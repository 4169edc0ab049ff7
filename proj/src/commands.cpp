#include "wikitrend/commands.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <ostream>
#include <sstream>

#include "wikitrend/error.hpp"
#include "wikitrend/metrics.hpp"
#include "wikitrend/report_io.hpp"
#include "wikitrend/series_csv.hpp"
#include "wikitrend/title_mapping.hpp"

namespace wikitrend {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kGenerator = "wikitrend";
constexpr std::string_view kPearsonPolicy = "undefined pearson excluded from mean_pearson, included in mean_udcr";
constexpr std::string_view kTiePolicy = "flat-flat steps count as concordant";

std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

Metadata base_metadata(const RunConfig& config, std::string_view command) {
  Metadata m{{"generator", std::string(kGenerator)}, {"command", std::string(command)}};
  if (config.timestamp) m.emplace_back("created", utc_now());
  return m;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string span_text(const TimeSpan& span) {
  return format_period(span.resolution, span.first) + ".." + format_period(span.resolution, span.last);
}

KeywordIndex load_index(const RunConfig& config) {
  if (config.keywords.empty()) throw InputError("--keywords is required");
  return build_index_from_file(config.keywords, {config.capitalize_first});
}

template <typename Writer>
void write_output(const fs::path& path, Writer&& writer) {
  std::ostringstream text;
  writer(text);
  write_text_file(path, text.str());
}

// Restricts an hourly series to [from, to]; other resolutions must not be restricted.
std::optional<TimeSeries> restrict_hours(const TimeSeries& s, std::optional<PeriodIndex> from,
                                         std::optional<PeriodIndex> to, std::string_view what) {
  if (!from && !to) return s;
  if (s.resolution() != Resolution::hourly) {
    throw InputError(std::string(what) + " can only restrict hourly series; series are " +
                     std::string(to_string(s.resolution())));
  }
  PeriodIndex first = std::max(s.start(), from.value_or(s.start()));
  PeriodIndex last = std::min(s.last(), to.value_or(s.last()));
  if (first > last) return std::nullopt;
  return s.slice({Resolution::hourly, first, last});
}

struct LoadedViews {
  SeriesMap raw;        // restricted to the analysis span, source resolution
  SeriesMap ranking;    // restricted to the ranking span
};

LoadedViews load_views(const RunConfig& config, const KeywordIndex& index) {
  const auto dir = series_directory(config);
  if (!fs::is_directory(dir)) throw InputError("series directory " + dir.string() + " does not exist");
  LoadedViews out;
  for (const auto& k : index.entries()) {
    auto path = dir / series_file_name(k.normalized_title);
    if (!fs::exists(path)) continue;
    auto series = read_series_file(path, Units::raw_views);
    if (auto s = restrict_hours(series, config.from, config.to, "--from/--to")) {
      out.raw.emplace(k.normalized_title, std::move(*s));
    }
    const bool own_rank_span = config.rank_from || config.rank_to;
    if (auto s = own_rank_span ? restrict_hours(series, config.rank_from, config.rank_to, "--rank-from/--rank-to")
                               : restrict_hours(series, config.from, config.to, "--from/--to")) {
      out.ranking.emplace(k.normalized_title, std::move(*s));
    }
  }
  return out;
}

// Reference series for every keyword that has a file; resolution mismatches are fatal and listed.
SeriesMap load_trends(const RunConfig& config, const KeywordIndex& index) {
  if (config.trends_dir.empty()) throw InputError("--trends is required");
  if (!fs::is_directory(config.trends_dir)) {
    throw InputError("trends directory " + config.trends_dir.string() + " does not exist");
  }
  SeriesMap trends;
  std::vector<std::string> mismatched;
  for (const auto& k : index.entries()) {
    auto path = config.trends_dir / series_file_name(k.normalized_title);
    if (!fs::exists(path)) continue;
    auto series = read_series_file(path, Units::trend_index);
    if (series.resolution() != config.resolution) {
      mismatched.push_back(path.string() + " (" + std::string(to_string(series.resolution())) + ")");
      continue;
    }
    trends.emplace(k.normalized_title, std::move(series));
  }
  if (!mismatched.empty()) {
    throw InputError("reference series do not match --resolution " +
                     std::string(to_string(config.resolution)) + ": " + join(mismatched, ", "));
  }
  return trends;
}

SeriesMap resample_all(const SeriesMap& raw, const RunConfig& config) {
  SeriesMap out;
  for (const auto& [title, series] : raw) {
    if (series.resolution() == Resolution::monthly && config.resolution == Resolution::daily) {
      throw InputError("views for '" + title + "' are monthly; cannot analyse at daily resolution");
    }
    out.emplace(title, resample(series, config.resolution, config.tz_offset_minutes));
  }
  return out;
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.bucket_size < 1) throw InputError("--bucket-size must be at least 1");
  if (config.resolution == Resolution::hourly) throw InputError("--resolution must be daily or monthly");
  if (config.tz_offset_minutes < -kMaxTzOffsetMinutes || config.tz_offset_minutes > kMaxTzOffsetMinutes) {
    throw InputError("--tz-offset-minutes must be within +/-" + std::to_string(kMaxTzOffsetMinutes));
  }
  if (config.from && config.to && *config.from > *config.to) throw InputError("--from is after --to");
  if (config.rank_from && config.rank_to && *config.rank_from > *config.rank_to) {
    throw InputError("--rank-from is after --rank-to");
  }
  if (config.jobs < 1) throw InputError("--jobs must be at least 1");
  if (config.threshold < 0) throw InputError("--threshold must be non-negative");
}

PeriodIndex parse_hour_argument(std::string_view text, bool end_of_day) {
  std::string normalized(text);
  // YYYYMMDD-HH
  if (normalized.size() == 11 && normalized[8] == '-') {
    normalized = normalized.substr(0, 4) + "-" + normalized.substr(4, 2) + "-" + normalized.substr(6, 2) + "T" +
                 normalized.substr(9, 2);
  }
  ParsedPeriod p;
  try {
    p = parse_period(normalized);
  } catch (const FormatError&) {
    throw InputError("cannot parse hour '" + std::string(text) + "' (use YYYY-MM-DDTHH, YYYYMMDD-HH or YYYY-MM-DD)");
  }
  if (p.resolution == Resolution::hourly) return p.index;
  if (p.resolution == Resolution::daily) return p.index * 24 + (end_of_day ? 23 : 0);
  throw InputError("cannot parse hour '" + std::string(text) + "' (a month is not an hour)");
}

fs::path series_directory(const RunConfig& config) {
  return config.series_dir.empty() ? config.out / "series" : config.series_dir;
}

void cmd_ingest(const RunConfig& config, std::ostream& log) {
  validate(config);
  if (config.projects.empty()) throw InputError("--project is required");
  if (config.dumps.empty()) throw InputError("--dumps is required");
  auto index = load_index(config);

  TimeSpan span{Resolution::hourly, 0, 0};
  if (config.from && config.to) {
    span = make_span(Resolution::hourly, *config.from, *config.to);
  } else {
    auto found = dump_directory_span(config.dumps);
    span = make_span(Resolution::hourly, config.from.value_or(found.first), config.to.value_or(found.last));
  }

  TitleSet titles;
  for (const auto& k : index.entries()) titles.insert(k.normalized_title);
  auto result = ingest_directory(config.dumps, span, config.projects, titles, config.jobs);

  const auto series_dir = series_directory(config);
  fs::create_directories(series_dir);
  const auto projects = join(config.projects, ",");
  for (const auto& k : index.entries()) {
    if (!result.matched_titles.contains(k.normalized_title)) continue;
    auto metadata = base_metadata(config, "ingest");
    metadata.insert(metadata.end(), {{"keyword", k.raw},
                                     {"title", k.normalized_title},
                                     {"project", projects},
                                     {"span", span_text(span)},
                                     {"missing_hours", std::to_string(result.missing_hours.size())}});
    write_series_file(series_dir / series_file_name(k.normalized_title), result.series.at(k.normalized_title),
                      metadata);
  }

  nlohmann::ordered_json stats;
  stats["generator"] = kGenerator;
  if (config.timestamp) stats["created"] = utc_now();
  stats["config"] = {{"project", config.projects},
                     {"keywords", config.keywords.string()},
                     {"dumps", config.dumps.string()},
                     {"from", format_period(Resolution::hourly, span.first)},
                     {"to", format_period(Resolution::hourly, span.last)},
                     {"jobs", config.jobs},
                     {"capitalize_first", config.capitalize_first}};
  stats["totals"] = {{"files_read", result.stats.files_read},
                     {"files_failed", result.errors.size()},
                     {"files_outside_span", result.files_outside_span},
                     {"lines_total", result.stats.lines_total},
                     {"lines_matched", result.stats.lines_matched},
                     {"lines_malformed", result.stats.lines_malformed},
                     {"lines_other_project", result.stats.lines_other_project},
                     {"lines_unmatched_title", result.stats.lines_unmatched_title()}};
  auto& missing = stats["missing_hours"] = nlohmann::ordered_json::array();
  for (auto h : result.missing_hours) missing.push_back(format_period(Resolution::hourly, h));
  auto& errors = stats["file_errors"] = nlohmann::ordered_json::array();
  for (const auto& e : result.errors) errors.push_back({{"path", e.path.string()}, {"error", e.message}});
  stats["skipped_files"] = result.skipped_names;
  auto& matched = stats["matched"] = nlohmann::ordered_json::array();
  auto& unmatched = stats["unmatched"] = nlohmann::ordered_json::array();
  for (const auto& k : index.entries()) {
    nlohmann::ordered_json row = {{"keyword", k.raw}, {"title", k.normalized_title}};
    if (result.matched_titles.contains(k.normalized_title)) {
      row["total_views"] = result.series.at(k.normalized_title).total();
      matched.push_back(std::move(row));
    } else {
      unmatched.push_back(std::move(row));
    }
  }
  auto& duplicates = stats["duplicates"] = nlohmann::ordered_json::array();
  for (const auto& d : index.duplicates()) {
    duplicates.push_back({{"keyword", d.dropped.raw}, {"line", d.dropped.line}, {"kept", d.kept_raw}});
  }
  write_text_file(config.out / "ingest_stats.json", stats.dump(2) + "\n");

  log << "ingested " << result.stats.files_read << " files (" << result.errors.size() << " failed, "
      << result.missing_hours.size() << " missing hours), " << result.stats.lines_total << " lines; "
      << result.matched_titles.size() << " of " << index.size() << " keywords matched\n";
  for (const auto& e : result.errors) log << "warning: " << e.path.string() << ": " << e.message << '\n';
}

void cmd_correlate(const RunConfig& config, std::ostream& log) {
  validate(config);
  auto index = load_index(config);
  auto loaded = load_views(config, index);
  if (loaded.raw.empty()) {
    throw EmptyResultError("no views series for any keyword in " + series_directory(config).string());
  }
  auto ranking = rank_keywords(loaded.ranking);
  auto trends = load_trends(config, index);
  auto views = resample_all(loaded.raw, config);

  auto titles = index.titles();
  auto correlation = correlate_all(titles, views, trends, ranking, config.resolution, config.jobs);
  auto coverage = coverage_report(ranking, trends, config.bucket_size);
  auto buckets = bucket_report(correlation.reports, config.bucket_size, ranking.size(), coverage);
  auto threshold = threshold_report(correlation.reports, config.threshold);

  auto metadata = base_metadata(config, "correlate");
  const auto& any_views = views.begin()->second;
  metadata.insert(metadata.end(),
                  {{"resolution", std::string(to_string(config.resolution))},
                   {"tz_offset_minutes", std::to_string(config.tz_offset_minutes)},
                   {"analysis_span", span_text(any_views.span())},
                   {"ranking_span", span_text(loaded.ranking.begin()->second.span())},
                   {"bucket_size", std::to_string(config.bucket_size)},
                   {"threshold_mean_daily_views", format_number(config.threshold)},
                   {"pearson_undefined_policy", std::string(kPearsonPolicy)},
                   {"udcr_ties", std::string(kTiePolicy)},
                   {"keywords", std::to_string(index.size())},
                   {"ranked", std::to_string(ranking.size())},
                   {"reports", std::to_string(correlation.reports.size())},
                   {"undefined_pearson", std::to_string(correlation.undefined_pearson)},
                   {"skipped_no_views", std::to_string(correlation.skips.no_views)},
                   {"skipped_no_reference", std::to_string(correlation.skips.no_reference)},
                   {"skipped_no_overlap", std::to_string(correlation.skips.no_overlap)}});

  fs::create_directories(config.out);
  write_output(config.out / "report.csv", [&](std::ostream& o) { write_report_csv(o, correlation.reports, metadata); });
  write_output(config.out / "buckets.csv", [&](std::ostream& o) { write_bucket_csv(o, buckets, metadata); });
  write_output(config.out / "coverage.csv", [&](std::ostream& o) {
    write_coverage_csv(o, coverage, config.bucket_size, ranking.size(), metadata);
  });
  write_output(config.out / "threshold.csv", [&](std::ostream& o) { write_threshold_csv(o, threshold, metadata); });

  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("undefined"); };
  log << correlation.reports.size() << " keywords scored at " << to_string(config.resolution) << " resolution ("
      << correlation.skips.total() << " skipped, " << correlation.undefined_pearson << " with undefined pearson)\n"
      << "threshold > " << format_number(config.threshold) << " views/day: " << threshold.count
      << " keywords, boundary rank " << threshold.boundary_rank << ", mean pearson " << opt(threshold.mean_pearson)
      << ", mean udcr " << opt(threshold.mean_udcr) << '\n';
}

fs::path cmd_pairplot(const RunConfig& config, std::ostream& log) {
  validate(config);
  if (config.keyword.empty()) throw InputError("--keyword is required");
  const auto title = normalize_keyword(config.keyword, {config.capitalize_first});
  const auto file = series_file_name(title);

  const auto views_path = series_directory(config) / file;
  const auto trend_path = config.trends_dir / file;
  if (!fs::exists(views_path)) throw InputError("no views series for '" + config.keyword + "' (" + views_path.string() + ")");
  if (config.trends_dir.empty() || !fs::exists(trend_path)) {
    throw InputError("no reference series for '" + config.keyword + "' (" + trend_path.string() + ")");
  }
  auto raw = restrict_hours(read_series_file(views_path), config.from, config.to, "--from/--to");
  if (!raw) throw EmptyResultError("views series for '" + config.keyword + "' lies outside --from/--to");
  auto views = resample(*raw, config.resolution, config.tz_offset_minutes);
  auto trend = read_series_file(trend_path, Units::trend_index);
  if (trend.resolution() != config.resolution) {
    throw InputError("reference series " + trend_path.string() + " is " + std::string(to_string(trend.resolution())) +
                     ", expected " + std::string(to_string(config.resolution)));
  }

  auto [a, b] = align(views, trend);
  auto scaled = scale_to_trend_index(a);
  auto score = score_pair(views, trend);

  auto metadata = base_metadata(config, "pairplot");
  metadata.insert(metadata.end(), {{"keyword", config.keyword},
                                   {"title", title},
                                   {"resolution", std::string(to_string(config.resolution))},
                                   {"tz_offset_minutes", std::to_string(config.tz_offset_minutes)},
                                   {"views_all_zero", scaled.all_zero ? "true" : "false"}});
  fs::create_directories(config.out);
  const auto path = config.out / ("pairplot-" + file);
  write_output(path, [&](std::ostream& o) {
    write_metadata(o, metadata);
    o << "period,views_scaled,trend\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
      o << format_period(a.resolution(), a.start() + static_cast<PeriodIndex>(i)) << ','
        << format_number(scaled.series[i]) << ',' << format_number(b[i]) << '\n';
    }
    o << "# n=" << score.n << '\n'
      << "# pearson=" << (score.pearson ? format_number(*score.pearson) : std::string()) << '\n'
      << "# udcr=" << format_number(score.udcr) << '\n';
  });
  log << config.keyword << ": n=" << score.n
      << " pearson=" << (score.pearson ? format_number(*score.pearson) : std::string("undefined"))
      << " udcr=" << format_number(score.udcr) << '\n';
  return path;
}

void cmd_top(const RunConfig& config, std::ostream& out) {
  validate(config);
  auto index = load_index(config);
  auto loaded = load_views(config, index);
  auto ranking = rank_keywords(loaded.ranking);
  out << "rank,keyword,total_views,mean_daily_views\n";
  for (std::size_t i = 0; i < ranking.size() && i < config.limit; ++i) {
    const auto& r = ranking[i];
    out << r.rank << ',' << csv_field(r.keyword) << ',' << format_number(r.total_views) << ','
        << format_number(r.mean_daily_views) << '\n';
  }
}

}  // namespace wikitrend
