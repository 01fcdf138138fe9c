#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "emostock/calendar.hpp"
#include "emostock/emotion.hpp"

namespace emostock {

enum class Gender : int { female = 0, male = 1, unknown = 2 };

constexpr std::string_view gender_code(Gender g) {
  switch (g) {
    case Gender::female: return "f";
    case Gender::male: return "m";
    case Gender::unknown: return "u";
  }
  return "u";
}

/// One microblog post. `date` is the UTC+8 civil date of the timestamp and is
/// the aggregation key; `ts_raw` keeps the original timestamp text so records
/// survive a parse/re-emit round trip unchanged.
struct TweetRecord {
  std::string id;
  std::string ts_raw;
  Date date;
  std::string text;
  std::int64_t followers = 0;
  Gender gender = Gender::unknown;
  std::optional<Emotion> label;  // present only for emoticon-labeled tweets

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

struct ParseStats {
  std::size_t total_lines = 0;
  std::size_t parsed = 0;
  std::size_t skipped = 0;
};

/// Reads line-delimited JSON tweet records. Invalid lines are counted and
/// skipped; the whole stream is rejected (FormatError) only when more than
/// half of the non-blank lines are malformed. Throws IoError on stream
/// failure.
std::vector<TweetRecord> parse_tweets(std::istream& in, ParseStats* stats = nullptr);

std::vector<TweetRecord> load_tweets_file(const std::filesystem::path& path,
                                          ParseStats* stats = nullptr);

/// Serializes records back to the JSONL schema (one object per line).
std::string tweets_to_jsonl(const std::vector<TweetRecord>& records);

/// The stock-relevance keyword list.
class KeywordSet {
 public:
  /// Throws ArgumentError when empty or containing duplicates.
  explicit KeywordSet(std::vector<std::string> keywords);

  /// The six stock-market keywords used for relevance filtering.
  static KeywordSet defaults();

  const std::vector<std::string>& keywords() const { return keywords_; }
  /// Plain substring match (no word boundaries; suits unsegmented text).
  bool matches(std::string_view text) const;

 private:
  std::vector<std::string> keywords_;
};

/// Keeps tweets whose text contains at least one keyword; order preserved.
std::vector<TweetRecord> filter_stock_relevant(const std::vector<TweetRecord>& tweets,
                                               const KeywordSet& keys);

}  // namespace emostock
