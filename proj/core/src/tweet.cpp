#include "emostock/tweet.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emostock/errors.hpp"

namespace emostock {

namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

bool text_all_whitespace(std::string_view text) {
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Returns nullopt when the line is not a valid record.
std::optional<TweetRecord> parse_line(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;

  TweetRecord rec;
  if (!j.contains("id") || !j["id"].is_string()) return std::nullopt;
  rec.id = j["id"].get<std::string>();

  if (!j.contains("ts") || !j["ts"].is_string()) return std::nullopt;
  rec.ts_raw = j["ts"].get<std::string>();
  try {
    rec.date = parse_timestamp_utc8(rec.ts_raw);
  } catch (const FormatError&) {
    return std::nullopt;
  }

  if (!j.contains("text") || !j["text"].is_string()) return std::nullopt;
  rec.text = j["text"].get<std::string>();
  if (rec.text.empty() || text_all_whitespace(rec.text)) return std::nullopt;

  if (!j.contains("followers") || !j["followers"].is_number_integer()) return std::nullopt;
  rec.followers = j["followers"].get<std::int64_t>();
  if (rec.followers < 0) return std::nullopt;

  if (!j.contains("gender") || !j["gender"].is_string()) return std::nullopt;
  const std::string g = j["gender"].get<std::string>();
  if (g == "f") {
    rec.gender = Gender::female;
  } else if (g == "m") {
    rec.gender = Gender::male;
  } else if (g == "u") {
    rec.gender = Gender::unknown;
  } else {
    return std::nullopt;
  }

  if (j.contains("label")) {
    if (!j["label"].is_string()) return std::nullopt;
    const auto e = emotion_from_string(j["label"].get<std::string>());
    if (!e) return std::nullopt;
    rec.label = *e;
  }
  return rec;
}

}  // namespace

std::vector<TweetRecord> parse_tweets(std::istream& in, ParseStats* stats) {
  if (in.fail()) throw IoError("parse_tweets: unreadable input stream");

  std::vector<TweetRecord> records;
  ParseStats local;
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    ++local.total_lines;
    if (auto rec = parse_line(line)) {
      records.push_back(std::move(*rec));
      ++local.parsed;
    } else {
      ++local.skipped;
    }
  }
  if (in.bad()) throw IoError("parse_tweets: stream read failure");

  if (stats) *stats = local;
  if (local.total_lines > 0 && local.skipped * 2 > local.total_lines) {
    std::ostringstream msg;
    msg << "corpus format error: " << local.skipped << " of " << local.total_lines
        << " lines are malformed";
    throw FormatError(msg.str());
  }
  return records;
}

std::vector<TweetRecord> load_tweets_file(const std::filesystem::path& path,
                                          ParseStats* stats) {
  if (!std::filesystem::exists(path)) {
    throw MissingArtifactError("tweet file not found: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_tweets(in, stats);
}

std::string tweets_to_jsonl(const std::vector<TweetRecord>& records) {
  std::string out;
  for (const TweetRecord& rec : records) {
    nlohmann::ordered_json j;
    j["id"] = rec.id;
    j["ts"] = rec.ts_raw;
    j["text"] = rec.text;
    j["followers"] = rec.followers;
    j["gender"] = std::string(gender_code(rec.gender));
    if (rec.label) j["label"] = std::string(to_string(*rec.label));
    out += j.dump();
    out += '\n';
  }
  return out;
}

KeywordSet::KeywordSet(std::vector<std::string> keywords) : keywords_(std::move(keywords)) {
  if (keywords_.empty()) throw ArgumentError("KeywordSet: keyword list must be non-empty");
  std::set<std::string> seen;
  for (const auto& k : keywords_) {
    if (k.empty()) throw ArgumentError("KeywordSet: empty keyword");
    if (!seen.insert(k).second) throw ArgumentError("KeywordSet: duplicate keyword '" + k + "'");
  }
}

KeywordSet KeywordSet::defaults() {
  return KeywordSet({"Stock", "Stock Market", "Security", "Shenzhen Composite Index",
                     "Shanghai Composite Index", "Component Index"});
}

bool KeywordSet::matches(std::string_view text) const {
  for (const auto& k : keywords_) {
    if (text.find(k) != std::string_view::npos) return true;
  }
  return false;
}

std::vector<TweetRecord> filter_stock_relevant(const std::vector<TweetRecord>& tweets,
                                               const KeywordSet& keys) {
  std::vector<TweetRecord> kept;
  kept.reserve(tweets.size());
  for (const TweetRecord& t : tweets) {
    if (keys.matches(t.text)) kept.push_back(t);
  }
  return kept;
}

}  // namespace emostock
