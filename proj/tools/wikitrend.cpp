// wikitrend: estimate search trends from Wikipedia pagecounts dumps.
//
//   wikitrend ingest    --project ja --keywords kw.txt --dumps DIR --out OUT
//   wikitrend correlate --keywords kw.txt --trends TRENDS --resolution daily --out OUT
//   wikitrend pairplot  --keyword "Anne Hathaway" --trends TRENDS --out OUT
//   wikitrend top       --keywords kw.txt --out OUT

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "wikitrend/commands.hpp"
#include "wikitrend/error.hpp"

namespace {

struct HourFlags {
  std::string from, to, rank_from, rank_to;
};

void add_span_flags(CLI::App* cmd, HourFlags& hours) {
  cmd->add_option("--from", hours.from, "First hour (YYYY-MM-DDTHH, YYYYMMDD-HH or YYYY-MM-DD)");
  cmd->add_option("--to", hours.to, "Last hour, inclusive");
}

void add_analysis_flags(CLI::App* cmd, wikitrend::RunConfig& config, std::string& resolution) {
  cmd->add_option("--series", config.series_dir, "Directory of views series (default: <out>/series)");
  cmd->add_option("--tz-offset-minutes", config.tz_offset_minutes, "Fixed UTC offset for day boundaries")
      ->capture_default_str();
  cmd->add_option("--resolution", resolution, "daily or monthly")
      ->check(CLI::IsMember({"daily", "monthly"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  wikitrend::RunConfig config;
  HourFlags hours;
  std::string resolution = "daily";
  std::string projects;
  bool no_timestamp = false;
  bool no_capitalize = false;

  CLI::App app{"Wikipedia pageviews as a proxy for search trends"};
  app.require_subcommand(1);
  app.add_option("--out", config.out, "Output directory")->capture_default_str();
  app.add_option("--keywords", config.keywords, "Keyword list, one per line");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the creation time from output metadata");
  app.add_flag("--no-capitalize", no_capitalize, "Do not uppercase the first letter of keywords");
  auto* jobs = app.add_option("--jobs", config.jobs, "Worker threads");

  auto* ingest = app.add_subcommand("ingest", "Build hourly views series from pagecounts dumps");
  ingest->add_option("--project", projects, "Project code(s), comma separated, matched exactly")->required();
  ingest->add_option("--dumps", config.dumps, "Directory of pagecounts-YYYYMMDD-HHMMSS[.gz] files")->required();
  add_span_flags(ingest, hours);

  auto* correlate = app.add_subcommand("correlate", "Score views against reference trend series");
  correlate->add_option("--trends", config.trends_dir, "Directory of <encoded-title>.csv reference series")
      ->required();
  correlate->add_option("--bucket-size", config.bucket_size, "Ranks per bucket")->capture_default_str();
  correlate->add_option("--threshold", config.threshold, "Mean daily views a keyword must exceed")
      ->capture_default_str();
  correlate->add_option("--rank-from", hours.rank_from, "First hour of the ranking span (default: --from)");
  correlate->add_option("--rank-to", hours.rank_to, "Last hour of the ranking span (default: --to)");
  add_span_flags(correlate, hours);
  add_analysis_flags(correlate, config, resolution);

  auto* pairplot = app.add_subcommand("pairplot", "Aligned views/trend plot data for one keyword");
  pairplot->add_option("--keyword", config.keyword, "Keyword as written in the keyword list")->required();
  pairplot->add_option("--trends", config.trends_dir, "Directory of reference series")->required();
  add_span_flags(pairplot, hours);
  add_analysis_flags(pairplot, config, resolution);

  auto* top = app.add_subcommand("top", "Print keywords ranked by total views");
  top->add_option("--series", config.series_dir, "Directory of views series (default: <out>/series)");
  top->add_option("--limit", config.limit, "Rows to print")->capture_default_str();
  add_span_flags(top, hours);

  for (auto* sub : {ingest, correlate, pairplot, top}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (jobs->count() == 0) config.jobs = std::max(1u, std::thread::hardware_concurrency());
    config.timestamp = !no_timestamp;
    config.capitalize_first = !no_capitalize;
    config.resolution = wikitrend::parse_resolution(resolution);
    for (std::size_t start = 0; start <= projects.size() && !projects.empty();) {
      auto comma = projects.find(',', start);
      auto code = projects.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!code.empty()) config.projects.push_back(code);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!hours.from.empty()) config.from = wikitrend::parse_hour_argument(hours.from, false);
    if (!hours.to.empty()) config.to = wikitrend::parse_hour_argument(hours.to, true);
    if (!hours.rank_from.empty()) config.rank_from = wikitrend::parse_hour_argument(hours.rank_from, false);
    if (!hours.rank_to.empty()) config.rank_to = wikitrend::parse_hour_argument(hours.rank_to, true);

    if (*ingest) {
      wikitrend::cmd_ingest(config, std::cerr);
    } else if (*correlate) {
      wikitrend::cmd_correlate(config, std::cerr);
    } else if (*pairplot) {
      auto path = wikitrend::cmd_pairplot(config, std::cerr);
      std::cout << path.string() << '\n';
    } else if (*top) {
      wikitrend::cmd_top(config, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "wikitrend: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
