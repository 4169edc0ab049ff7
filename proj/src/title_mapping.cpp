#include "wikitrend/title_mapping.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <array>
#include <fstream>

#include "wikitrend/error.hpp"

namespace wikitrend {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\v\f";

constexpr std::array<bool, 256> make_passthrough_table() {
  std::array<bool, 256> table{};
  for (int c = 'A'; c <= 'Z'; ++c) table[c] = true;
  for (int c = 'a'; c <= 'z'; ++c) table[c] = true;
  for (int c = '0'; c <= '9'; ++c) table[c] = true;
  for (char c : std::string_view("-_.~;:@$!*(),/")) table[static_cast<unsigned char>(c)] = true;
  return table;
}

constexpr auto kPassthrough = make_passthrough_table();

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

bool valid_utf8(std::string_view s) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

std::string uppercase_first(std::string_view text) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t end = 0;
  UChar32 c;
  U8_NEXT(bytes, end, length, c);
  if (c < 0) return std::string(text);

  UChar32 upper = u_toupper(c);
  if (upper == c) return std::string(text);

  std::array<uint8_t, U8_MAX_LENGTH> buffer{};
  int32_t written = 0;
  UBool error = false;
  U8_APPEND(buffer.data(), written, U8_MAX_LENGTH, upper, error);
  if (error) return std::string(text);

  std::string out(reinterpret_cast<const char*>(buffer.data()), static_cast<std::size_t>(written));
  out.append(text.substr(static_cast<std::size_t>(end)));
  return out;
}

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string percent_encode_title(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    auto byte = static_cast<unsigned char>(ch);
    if (kPassthrough[byte]) {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[byte >> 4]);
      out.push_back(kHex[byte & 0xF]);
    }
  }
  return out;
}

std::string normalize_keyword(std::string_view raw, NormalizeOptions options) {
  auto text = trim(raw);
  if (text.empty()) throw KeywordError("keyword is empty after trimming whitespace");

  std::string title(text);
  for (char& c : title) {
    if (c == ' ') c = '_';
  }
  if (options.capitalize_first) title = uppercase_first(title);
  return percent_encode_title(title);
}

DecodedTitle decode_title(std::string_view encoded) {
  std::string out;
  out.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (encoded[i] == '%' && i + 2 < encoded.size()) {
      int hi = hex_value(encoded[i + 1]);
      int lo = hex_value(encoded[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(encoded[i]);
  }
  if (!valid_utf8(out)) return {std::string(encoded), false};
  return {std::move(out), true};
}

const Keyword* KeywordIndex::find(std::string_view normalized_title) const {
  auto it = lookup_.find(std::string(normalized_title));
  return it == lookup_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::string> KeywordIndex::titles() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& k : entries_) out.push_back(k.normalized_title);
  return out;
}

KeywordIndex build_index(std::span<const std::string> lines, NormalizeOptions options) {
  KeywordIndex index;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    Keyword keyword{std::string(trim(line)), normalize_keyword(line, options), i + 1};
    auto [it, inserted] = index.lookup_.try_emplace(keyword.normalized_title, index.entries_.size());
    if (inserted) {
      index.entries_.push_back(std::move(keyword));
    } else {
      index.duplicates_.push_back({std::move(keyword), index.entries_[it->second].raw});
    }
  }
  if (index.entries_.empty()) throw KeywordError("keyword list contains no keywords");
  return index;
}

KeywordIndex build_index_from_file(const std::filesystem::path& path, NormalizeOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KeywordError("cannot read keyword list " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  if (in.bad()) throw KeywordError("error while reading keyword list " + path.string());
  return build_index(lines, options);
}

}  // namespace wikitrend
