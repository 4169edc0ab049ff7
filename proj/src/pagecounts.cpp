#include "wikitrend/pagecounts.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstring>
#include <limits>
#include <memory>
#include <thread>

#include "wikitrend/error.hpp"

namespace wikitrend {

namespace {

constexpr std::size_t kReadChunk = 1 << 20;

bool parse_u64(std::string_view field, std::uint64_t& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

struct GzCloser {
  void operator()(gzFile f) const noexcept { gzclose(f); }
};
using GzHandle = std::unique_ptr<std::remove_pointer_t<gzFile>, GzCloser>;

class LineSink {
 public:
  LineSink(const ProjectFilter& projects, const TitleSet& titles, FileIngest& out)
      : projects_(projects), titles_(titles), out_(out) {}

  void operator()(std::string_view line) {
    auto& stats = out_.stats;
    ++stats.lines_total;
    auto record = parse_line(line);
    if (!record) {
      ++stats.lines_malformed;
      return;
    }
    if (std::find(projects_.begin(), projects_.end(), record->project) == projects_.end()) {
      ++stats.lines_other_project;
      return;
    }
    auto it = titles_.find(record->title);
    if (it == titles_.end()) return;
    ++stats.lines_matched;
    out_.counts[*it] += record->views;
  }

 private:
  const ProjectFilter& projects_;
  const TitleSet& titles_;
  FileIngest& out_;
};

std::string gz_message(gzFile f) {
  int code = Z_OK;
  const char* msg = gzerror(f, &code);
  return msg && *msg ? msg : "read error";
}

}  // namespace

std::optional<PagecountRecord> parse_line(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

  std::string_view fields[4];
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    auto space = line.find(' ', start);
    if (space == std::string_view::npos) return std::nullopt;
    fields[i] = line.substr(start, space - start);
    start = space + 1;
  }
  fields[3] = line.substr(start);
  if (fields[3].find(' ') != std::string_view::npos) return std::nullopt;
  if (fields[0].empty() || fields[1].empty()) return std::nullopt;

  PagecountRecord record{fields[0], fields[1], 0, 0};
  if (!parse_u64(fields[2], record.views) || !parse_u64(fields[3], record.bytes)) return std::nullopt;
  return record;
}

HourStamp HourStamp::from_index(PeriodIndex hour) {
  PeriodIndex day = hour >= 0 ? hour / 24 : -((-hour + 23) / 24);
  std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day}}};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
          static_cast<unsigned>(ymd.day()), static_cast<unsigned>(hour - day * 24)};
}

std::optional<HourStamp> hourstamp_from_filename(std::string_view name) {
  constexpr std::string_view kPrefix = "pagecounts-";
  if (name.ends_with(".gz")) name.remove_suffix(3);
  if (!name.starts_with(kPrefix)) return std::nullopt;
  name.remove_prefix(kPrefix.size());
  // YYYYMMDD-HHMMSS
  if (name.size() != 15 || name[8] != '-') return std::nullopt;
  auto date = name.substr(0, 8);
  auto time = name.substr(9, 6);
  if (!all_digits(date) || !all_digits(time)) return std::nullopt;

  auto num = [](std::string_view s) {
    unsigned v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
  };
  HourStamp stamp{static_cast<int>(num(date.substr(0, 4))), num(date.substr(4, 2)),
                  num(date.substr(6, 2)), num(time.substr(0, 2))};
  if (stamp.hour > 23 || num(time.substr(2, 2)) > 59 || num(time.substr(4, 2)) > 59) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{stamp.year}, std::chrono::month{stamp.month},
                                  std::chrono::day{stamp.day}};
  if (!ymd.ok()) return std::nullopt;
  return stamp;
}

IngestStats& IngestStats::operator+=(const IngestStats& other) {
  files_read += other.files_read;
  lines_total += other.lines_total;
  lines_matched += other.lines_matched;
  lines_malformed += other.lines_malformed;
  lines_other_project += other.lines_other_project;
  return *this;
}

FileIngest ingest_file(const std::filesystem::path& path, const ProjectFilter& projects,
                       const TitleSet& titles) {
  GzHandle file(gzopen(path.c_str(), "rb"));
  if (!file) throw IngestError(path, std::string("cannot open: ") + std::strerror(errno));
  gzbuffer(file.get(), 1 << 17);

  FileIngest result;
  LineSink sink(projects, titles, result);

  std::vector<char> buffer(kReadChunk);
  std::size_t have = 0;
  for (;;) {
    if (have == buffer.size()) buffer.resize(buffer.size() * 2);
    int n = gzread(file.get(), buffer.data() + have, static_cast<unsigned>(buffer.size() - have));
    if (n < 0) throw IngestError(path, gz_message(file.get()));
    if (n == 0) break;
    have += static_cast<std::size_t>(n);

    std::size_t pos = 0;
    while (pos < have) {
      const void* nl = std::memchr(buffer.data() + pos, '\n', have - pos);
      if (!nl) break;
      auto end = static_cast<std::size_t>(static_cast<const char*>(nl) - buffer.data());
      sink(std::string_view(buffer.data() + pos, end - pos));
      pos = end + 1;
    }
    std::memmove(buffer.data(), buffer.data() + pos, have - pos);
    have -= pos;
  }
  int code = Z_OK;
  gzerror(file.get(), &code);
  if (code != Z_OK && code != Z_STREAM_END) throw IngestError(path, gz_message(file.get()));
  if (have > 0) sink(std::string_view(buffer.data(), have));

  result.stats.files_read = 1;
  return result;
}

DirectoryScan scan_dump_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw IngestError(dir, "cannot list dump directory: " + ec.message());

  DirectoryScan scan;
  for (const auto& entry : it) {
    if (!entry.is_regular_file(ec)) continue;
    auto name = entry.path().filename().string();
    if (hourstamp_from_filename(name)) {
      scan.dumps.push_back(entry.path());
    } else {
      scan.skipped_names.push_back(name);
    }
  }
  std::sort(scan.dumps.begin(), scan.dumps.end());
  std::sort(scan.skipped_names.begin(), scan.skipped_names.end());
  return scan;
}

TimeSpan dump_directory_span(const std::filesystem::path& dir) {
  auto scan = scan_dump_directory(dir);
  if (scan.dumps.empty()) throw IngestError(dir, "no pagecounts-YYYYMMDD-HHMMSS[.gz] files found");
  PeriodIndex first = std::numeric_limits<PeriodIndex>::max();
  PeriodIndex last = std::numeric_limits<PeriodIndex>::min();
  for (const auto& p : scan.dumps) {
    auto h = hourstamp_from_filename(p.filename().string())->index();
    first = std::min(first, h);
    last = std::max(last, h);
  }
  return {Resolution::hourly, first, last};
}

DirectoryIngest ingest_directory(const std::filesystem::path& dir, const TimeSpan& span,
                                 const ProjectFilter& projects, const TitleSet& titles,
                                 unsigned jobs) {
  if (span.resolution != Resolution::hourly || span.first > span.last) {
    throw InputError("ingest span must be a non-empty hourly span");
  }
  if (titles.empty()) throw InputError("title filter is empty");

  auto scan = scan_dump_directory(dir);
  DirectoryIngest out;
  out.skipped_names = std::move(scan.skipped_names);

  struct Task {
    std::filesystem::path path;
    PeriodIndex hour;
  };
  std::vector<Task> tasks;
  for (auto& p : scan.dumps) {
    auto hour = hourstamp_from_filename(p.filename().string())->index();
    if (span.contains(hour)) {
      tasks.push_back({std::move(p), hour});
    } else {
      ++out.files_outside_span;
    }
  }
  if (tasks.empty()) {
    throw IngestError(dir, "no dump files between " + format_period(Resolution::hourly, span.first) +
                               " and " + format_period(Resolution::hourly, span.last));
  }

  std::vector<std::optional<FileIngest>> results(tasks.size());
  std::vector<std::string> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = ingest_file(tasks[i].path, projects, titles);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  {
    const auto n = std::clamp<std::size_t>(jobs, 1, tasks.size());
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }

  std::vector<bool> covered(span.size(), false);
  std::unordered_map<std::string, std::vector<std::uint64_t>> sums;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!results[i]) {
      out.errors.push_back({tasks[i].path, failures[i]});
      continue;
    }
    const auto offset = static_cast<std::size_t>(tasks[i].hour - span.first);
    covered[offset] = true;
    out.stats += results[i]->stats;
    for (const auto& [title, views] : results[i]->counts) {
      auto& row = sums[title];
      if (row.empty()) row.assign(span.size(), 0);
      row[offset] += views;
      out.matched_titles.insert(title);
    }
  }
  if (out.stats.files_read == 0) {
    throw IngestError(dir, "none of the " + std::to_string(tasks.size()) +
                               " dump files could be read; first error: " + out.errors.front().message);
  }

  for (std::size_t h = 0; h < covered.size(); ++h) {
    if (!covered[h]) out.missing_hours.push_back(span.first + static_cast<PeriodIndex>(h));
  }
  for (const auto& title : titles) {
    std::vector<double> values(span.size(), 0.0);
    if (auto it = sums.find(title); it != sums.end()) {
      std::copy(it->second.begin(), it->second.end(), values.begin());
    }
    out.series.emplace(title, TimeSeries(Resolution::hourly, span.first, std::move(values)));
  }
  return out;
}

}  // namespace wikitrend
