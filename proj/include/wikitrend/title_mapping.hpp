#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wikitrend {

struct NormalizeOptions {
  /// Uppercase the first character, as MediaWiki does by default.
  bool capitalize_first = true;
};

/// Percent-encodes UTF-8 text the way article titles appear in pagecounts dumps.
/// Letters, digits and -_.~;:@$!*(),/ pass through; every other byte becomes %XX.
std::string percent_encode_title(std::string_view text);

/// Maps a user keyword to the encoded title it should match in the dumps:
/// trims surrounding whitespace, turns spaces into underscores, uppercases the
/// first character and percent-encodes. Throws KeywordError if nothing is left after trimming.
std::string normalize_keyword(std::string_view raw, NormalizeOptions options = {});

struct DecodedTitle {
  std::string text;
  /// False when the decoded bytes are not valid UTF-8; `text` then holds the input unchanged.
  bool decodable = true;
};

/// Decodes %XX escapes. Malformed escapes are copied literally.
DecodedTitle decode_title(std::string_view encoded);

struct Keyword {
  std::string raw;
  std::string normalized_title;
  std::size_t line = 0;  // 1-based line in the source list
};

struct DuplicateKeyword {
  Keyword dropped;
  std::string kept_raw;
};

/// Immutable keyword set indexed by normalized title.
class KeywordIndex {
 public:
  const std::vector<Keyword>& entries() const noexcept { return entries_; }
  const std::vector<DuplicateKeyword>& duplicates() const noexcept { return duplicates_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Retained keyword with this normalized title, or nullptr.
  const Keyword* find(std::string_view normalized_title) const;

  /// Normalized titles in list order.
  std::vector<std::string> titles() const;

 private:
  friend KeywordIndex build_index(std::span<const std::string>, NormalizeOptions);

  std::vector<Keyword> entries_;
  std::vector<DuplicateKeyword> duplicates_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

/// One keyword per element; blank lines are skipped, a trailing CR is ignored.
/// The first keyword for each normalized title wins; later ones are listed as duplicates.
/// Throws KeywordError when no keyword survives.
KeywordIndex build_index(std::span<const std::string> lines, NormalizeOptions options = {});

/// Reads a UTF-8 keyword list from disk. Throws KeywordError if it cannot be read.
KeywordIndex build_index_from_file(const std::filesystem::path& path, NormalizeOptions options = {});

}  // namespace wikitrend
