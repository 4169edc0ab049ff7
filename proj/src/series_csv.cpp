#include "wikitrend/series_csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "wikitrend/error.hpp"

namespace wikitrend {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace

void write_metadata(std::ostream& out, const Metadata& metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
}

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw InternalError("cannot format number");
  return std::string(buffer, ptr);
}

std::string series_file_name(std::string_view encoded_title) {
  std::string name;
  name.reserve(encoded_title.size() + 4);
  for (char c : encoded_title) {
    if (c == '/') {
      name += "%2F";
    } else {
      name.push_back(c);
    }
  }
  return name + ".csv";
}

void write_series_csv(std::ostream& out, const TimeSeries& series, const Metadata& metadata) {
  write_metadata(out, metadata);
  out << "period,value\n";
  auto values = series.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_period(series.resolution(), series.start() + static_cast<PeriodIndex>(i)) << ','
        << format_number(values[i]) << '\n';
  }
}

TimeSeries read_series_csv(std::istream& in, Units units, std::string_view source) {
  auto fail = [&](std::size_t line_no, const std::string& what) {
    return FormatError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };

  std::vector<double> values;
  std::optional<ParsedPeriod> first;
  PeriodIndex expected = 0;
  bool header_allowed = true;
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    auto line = strip(raw);
    if (line.empty() || line.front() == '#') continue;
    if (header_allowed && line.starts_with("period")) {
      header_allowed = false;
      continue;
    }
    header_allowed = false;

    auto comma = line.rfind(',');
    if (comma == std::string_view::npos) throw fail(line_no, "expected 'period,value'");
    auto period_text = strip(line.substr(0, comma));
    auto value_text = strip(line.substr(comma + 1));

    ParsedPeriod period;
    try {
      period = parse_period(period_text);
    } catch (const FormatError& e) {
      throw fail(line_no, e.what());
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc{} || ptr != value_text.data() + value_text.size()) {
      throw fail(line_no, "value '" + std::string(value_text) + "' is not a number");
    }

    if (!first) {
      first = period;
      expected = period.index;
    } else if (period.resolution != first->resolution) {
      throw fail(line_no, "period resolution changes mid-file");
    }
    if (period.index != expected) {
      throw fail(line_no, "expected period " + format_period(first->resolution, expected) + ", found " +
                              std::string(period_text));
    }
    values.push_back(value);
    ++expected;
  }
  if (in.bad()) throw FormatError(std::string(source) + ": read error");
  if (!first) throw FormatError(std::string(source) + ": no data rows");
  try {
    return TimeSeries(first->resolution, first->index, std::move(values), units);
  } catch (const InputError& e) {
    throw FormatError(std::string(source) + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
}

void write_series_file(const std::filesystem::path& path, const TimeSeries& series,
                       const Metadata& metadata) {
  std::ostringstream text;
  write_series_csv(text, series, metadata);
  write_text_file(path, text.str());
}

TimeSeries read_series_file(const std::filesystem::path& path, Units units) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_series_csv(in, units, path.string());
}

}  // namespace wikitrend
