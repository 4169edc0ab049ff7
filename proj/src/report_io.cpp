#include "wikitrend/report_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "wikitrend/error.hpp"

namespace wikitrend {

namespace {

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

double parse_double(const std::string& field) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw FormatError("'" + field + "' is not a number");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& field) {
  if (field.empty()) return std::nullopt;
  return parse_double(field);
}

std::size_t parse_count(const std::string& field) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw FormatError("'" + field + "' is not a count");
  }
  return v;
}

// Data rows of a file with the given header, metadata skipped.
std::vector<std::vector<std::string>> read_rows(std::istream& in, std::string_view header) {
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) throw FormatError("expected header '" + std::string(header) + "', found '" + line + "'");
      seen_header = true;
      continue;
    }
    auto fields = split_csv_record(line);
    auto expected = split_csv_record(header).size();
    if (fields.size() != expected) {
      throw FormatError("row has " + std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(expected) + ": " + line);
    }
    rows.push_back(std::move(fields));
  }
  if (!seen_header) throw FormatError("missing header '" + std::string(header) + "'");
  return rows;
}

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  return fields;
}

void write_report_csv(std::ostream& out, std::span<const KeywordReport> reports, const Metadata& metadata) {
  write_metadata(out, metadata);
  out << kReportHeader << '\n';
  for (const auto& r : reports) {
    out << csv_field(r.keyword) << ',' << r.access_rank << ',' << format_number(r.total_views) << ','
        << format_number(r.mean_daily_views) << ',' << r.n << ',' << optional_number(r.pearson) << ','
        << format_number(r.udcr) << '\n';
  }
}

void write_bucket_csv(std::ostream& out, std::span<const BucketSummary> buckets, const Metadata& metadata) {
  write_metadata(out, metadata);
  out << kBucketHeader << '\n';
  for (const auto& b : buckets) {
    out << b.rank_lo << ',' << b.rank_hi << ',' << b.keyword_count << ',' << b.trend_data_count << ','
        << optional_number(b.mean_pearson) << ',' << optional_number(b.mean_udcr) << ','
        << b.excluded_undefined_count << '\n';
  }
}

void write_coverage_csv(std::ostream& out, std::span<const std::size_t> coverage, std::size_t bucket_size,
                        std::size_t ranked_total, const Metadata& metadata) {
  write_metadata(out, metadata);
  out << kCoverageHeader << '\n';
  for (std::size_t b = 0; b < coverage.size(); ++b) {
    const std::size_t lo = b * bucket_size + 1;
    out << lo << ',' << std::min((b + 1) * bucket_size, std::max(ranked_total, lo)) << ',' << coverage[b]
        << '\n';
  }
}

void write_threshold_csv(std::ostream& out, const ThresholdSummary& s, const Metadata& metadata) {
  write_metadata(out, metadata);
  out << kThresholdHeader << '\n';
  out << format_number(s.threshold) << ',' << s.count << ',' << s.boundary_rank << ','
      << optional_number(s.mean_pearson) << ',' << optional_number(s.mean_udcr) << ','
      << s.excluded_undefined_count << '\n';
}

std::vector<KeywordReport> read_report_csv(std::istream& in, Resolution resolution) {
  std::vector<KeywordReport> out;
  for (const auto& f : read_rows(in, kReportHeader)) {
    out.push_back({f[0], parse_count(f[1]), parse_double(f[2]), parse_double(f[3]), parse_count(f[4]),
                   parse_optional(f[5]), parse_double(f[6]), resolution});
  }
  return out;
}

std::vector<BucketSummary> read_bucket_csv(std::istream& in) {
  std::vector<BucketSummary> out;
  for (const auto& f : read_rows(in, kBucketHeader)) {
    out.push_back({parse_count(f[0]), parse_count(f[1]), parse_count(f[2]), parse_count(f[3]),
                   parse_optional(f[4]), parse_optional(f[5]), parse_count(f[6])});
  }
  return out;
}

ThresholdSummary read_threshold_csv(std::istream& in) {
  auto rows = read_rows(in, kThresholdHeader);
  if (rows.size() != 1) throw FormatError("threshold summary must have exactly one row");
  const auto& f = rows.front();
  ThresholdSummary s;
  s.threshold = parse_double(f[0]);
  s.count = parse_count(f[1]);
  s.boundary_rank = parse_count(f[2]);
  s.mean_pearson = parse_optional(f[3]);
  s.mean_udcr = parse_optional(f[4]);
  s.excluded_undefined_count = parse_count(f[5]);
  s.empty = s.count == 0;
  return s;
}

}  // namespace wikitrend
