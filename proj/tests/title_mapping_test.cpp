#include "wikitrend/title_mapping.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "wikitrend/error.hpp"

namespace wikitrend {
namespace {

TEST(NormalizeKeyword, Examples) {
  EXPECT_EQ(normalize_keyword("Anne Hathaway"), "Anne_Hathaway");
  EXPECT_EQ(normalize_keyword("東京"), "%E6%9D%B1%E4%BA%AC");
  EXPECT_EQ(normalize_keyword("anne hathaway"), "Anne_hathaway");
}

TEST(NormalizeKeyword, TrimsAndRejectsEmpty) {
  EXPECT_EQ(normalize_keyword("  Anne Hathaway\t\r"), "Anne_Hathaway");
  EXPECT_THROW(normalize_keyword(""), KeywordError);
  EXPECT_THROW(normalize_keyword(" \t "), KeywordError);
}

TEST(NormalizeKeyword, FirstScalarUppercasing) {
  EXPECT_EQ(normalize_keyword("élan"), "%C3%89lan");  // é -> É
  EXPECT_EQ(normalize_keyword("ωmega"), "%CE%A9mega");  // ω -> Ω
  EXPECT_EQ(normalize_keyword("1984"), "1984");
  EXPECT_EQ(normalize_keyword("ωmega", {.capitalize_first = false}), "%CF%89mega");
  EXPECT_EQ(normalize_keyword("anne", {.capitalize_first = false}), "anne");
}

TEST(NormalizeKeyword, DumpEncodingAllowedSet) {
  EXPECT_EQ(normalize_keyword("AC/DC"), "AC/DC");
  EXPECT_EQ(normalize_keyword("C++"), "C%2B%2B");
  EXPECT_EQ(normalize_keyword("Rock & Roll"), "Rock_%26_Roll");
  EXPECT_EQ(normalize_keyword("Who? (film)"), "Who%3F_(film)");
  EXPECT_EQ(normalize_keyword("50% off"), "50%25_off");
  EXPECT_EQ(normalize_keyword("Ocean's Eleven"), "Ocean%27s_Eleven");
}

TEST(DecodeTitle, Examples) {
  EXPECT_EQ(decode_title("%E6%9D%B1%E4%BA%AC").text, "東京");
  EXPECT_EQ(decode_title("Anne_Hathaway").text, "Anne_Hathaway");
  auto pct = decode_title("50%_off");
  EXPECT_EQ(pct.text, "50%_off");
  EXPECT_TRUE(pct.decodable);
}

TEST(DecodeTitle, MalformedEscapesPassThrough) {
  EXPECT_EQ(decode_title("100%").text, "100%");
  EXPECT_EQ(decode_title("a%4").text, "a%4");
  EXPECT_EQ(decode_title("%zz%41").text, "%zzA");
  EXPECT_EQ(decode_title("%e6%9d%b1").text, "東");
}

TEST(DecodeTitle, InvalidUtf8IsFlagged) {
  auto r = decode_title("Bad_%FF%FE");
  EXPECT_FALSE(r.decodable);
  EXPECT_EQ(r.text, "Bad_%FF%FE");
  auto half = decode_title("%E6%9D");
  EXPECT_FALSE(half.decodable);
}

std::string random_keyword(std::mt19937_64& rng) {
  static const std::vector<std::string> alphabet{
      "a", "b", "Z", "q", "0", "7", " ", " ", "-", ".", "(", ")", "'", "&", "+", "?", "/", ",", ":", "é",
      "ß", "東", "京", "ア", "ω", "Д", "ж", "😀", "_", "!", "#", "=", "\"", "ǆ"};
  std::string k;
  const auto len = 1 + rng() % 12;
  for (std::size_t i = 0; i < len; ++i) k += alphabet[rng() % alphabet.size()];
  if (k.find_first_not_of(' ') == std::string::npos) k = "x" + k;
  return k;
}

std::string expected_round_trip(std::string_view k, bool capitalize) {
  // independent expectation: trim spaces, spaces -> '_', uppercase first char via a small table
  auto first = k.find_first_not_of(' ');
  auto last = k.find_last_not_of(' ');
  std::string s(k.substr(first, last - first + 1));
  for (auto& c : s) {
    if (c == ' ') c = '_';
  }
  if (!capitalize) return s;
  static const std::vector<std::pair<std::string, std::string>> upper{
      {"a", "A"}, {"b", "B"}, {"q", "Q"}, {"x", "X"}, {"é", "É"}, {"ω", "Ω"}, {"ж", "Ж"}, {"ǆ", "Ǆ"}};
  for (const auto& [lo, up] : upper) {
    if (s.starts_with(lo)) return up + s.substr(lo.size());
  }
  return s;
}

TEST(TitleMappingProperty, DecodeInvertsNormalize) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto k = random_keyword(rng);
    for (bool cap : {true, false}) {
      auto encoded = normalize_keyword(k, {cap});
      EXPECT_EQ(encoded.find(' '), std::string::npos);
      EXPECT_EQ(normalize_keyword(k, {cap}), encoded);  // determinism
      auto decoded = decode_title(encoded);
      EXPECT_TRUE(decoded.decodable);
      EXPECT_EQ(decoded.text, expected_round_trip(k, cap)) << k;
    }
  }
}

TEST(BuildIndex, Examples) {
  std::vector<std::string> one{"Anne Hathaway"};
  auto idx = build_index(one);
  ASSERT_EQ(idx.size(), 1u);
  ASSERT_NE(idx.find("Anne_Hathaway"), nullptr);
  EXPECT_EQ(idx.find("Anne_Hathaway")->raw, "Anne Hathaway");

  std::vector<std::string> dup{"A", "A"};
  auto d = build_index(dup);
  EXPECT_EQ(d.size(), 1u);
  ASSERT_EQ(d.duplicates().size(), 1u);
  EXPECT_EQ(d.duplicates()[0].dropped.line, 2u);

  std::vector<std::string> blank{"", "B"};
  EXPECT_EQ(build_index(blank).size(), 1u);
}

TEST(BuildIndex, CollisionsAfterNormalizationKeepTheFirst) {
  std::vector<std::string> lines{"anne Hathaway\r", "Anne_Hathaway", "  Anne Hathaway ", "anne hathaway", "東京"};
  auto idx = build_index(lines);
  EXPECT_EQ(idx.size(), 3u);
  ASSERT_EQ(idx.duplicates().size(), 2u);
  EXPECT_EQ(idx.duplicates()[0].kept_raw, "anne Hathaway");
  EXPECT_EQ(idx.duplicates()[1].dropped.raw, "Anne Hathaway");
  EXPECT_NE(idx.find("Anne_hathaway"), nullptr);  // case after the first letter matters
  EXPECT_EQ(idx.titles(), (std::vector<std::string>{"Anne_Hathaway", "Anne_hathaway", "%E6%9D%B1%E4%BA%AC"}));
}

TEST(BuildIndex, RetainedEqualsDistinctTitles) {
  std::mt19937_64 rng(99);
  std::vector<std::string> lines;
  for (int i = 0; i < 500; ++i) lines.push_back(rng() % 5 == 0 ? "" : random_keyword(rng).substr(0, 2));
  auto idx = build_index(lines);
  std::set<std::string> distinct;
  std::size_t nonblank = 0;
  for (const auto& l : lines) {
    if (l.find_first_not_of(" ") == std::string::npos) continue;
    ++nonblank;
    distinct.insert(normalize_keyword(l));
  }
  EXPECT_EQ(idx.size(), distinct.size());
  EXPECT_EQ(idx.size() + idx.duplicates().size(), nonblank);
}

TEST(BuildIndex, Errors) {
  std::vector<std::string> none{"", "  ", "\r"};
  EXPECT_THROW(build_index(none), KeywordError);
  EXPECT_THROW(build_index_from_file("/nonexistent/keywords.txt"), KeywordError);
}

TEST(BuildIndex, FromFileWithCrlf) {
  testing::TempDir dir("keywords");
  testing::write_plain(dir / "k.txt", "Anne Hathaway\r\n\r\n東京\r\n");
  auto idx = build_index_from_file(dir / "k.txt");
  EXPECT_EQ(idx.titles(), (std::vector<std::string>{"Anne_Hathaway", "%E6%9D%B1%E4%BA%AC"}));
}

}  // namespace
}  // namespace wikitrend
