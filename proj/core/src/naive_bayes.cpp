#include "emostock/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include <nlohmann/json.hpp>

#include "emostock/errors.hpp"
#include "emostock/io.hpp"

namespace emostock {

namespace {

// Decodes the next UTF-8 code point starting at `i`; malformed bytes are
// consumed one at a time as U+FFFD-like singletons so tokenization never
// fails on dirty text.
std::uint32_t next_code_point(std::string_view s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  std::uint32_t cp = b0;
  if (b0 >= 0xF0) {
    len = 4;
    cp = b0 & 0x07u;
  } else if (b0 >= 0xE0) {
    len = 3;
    cp = b0 & 0x0Fu;
  } else if (b0 >= 0xC0) {
    len = 2;
    cp = b0 & 0x1Fu;
  }
  if (i + len > s.size()) len = 1;
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0u) != 0x80u) {
      len = 1;
      cp = b0;
      break;
    }
    cp = (cp << 6) | (b & 0x3Fu);
  }
  i += len;
  return len == 1 ? b0 : cp;
}

bool is_unicode_space(std::uint32_t cp) {
  switch (cp) {
    case ' ':
    case '\t':
    case '\n':
    case '\r':
    case '\v':
    case '\f':
    case 0x00A0:  // no-break space
    case 0x3000:  // ideographic space
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200B;
  }
}

void append_code_point(std::string& out, std::string_view src, std::size_t begin,
                       std::size_t end) {
  out.append(src.substr(begin, end - begin));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, Tokenizer tokenizer) {
  // Decode once into (code point, byte range) units.
  std::vector<std::pair<std::size_t, std::size_t>> units;  // byte spans
  std::vector<std::uint32_t> cps;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t begin = i;
    const std::uint32_t cp = next_code_point(text, i);
    units.emplace_back(begin, i);
    cps.push_back(cp);
  }

  std::vector<std::string> tokens;
  if (tokenizer == Tokenizer::whitespace) {
    std::string current;
    for (std::size_t k = 0; k < cps.size(); ++k) {
      if (is_unicode_space(cps[k])) {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
      } else {
        append_code_point(current, text, units[k].first, units[k].second);
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
  }

  // char_bigram: drop whitespace, then take overlapping code-point pairs.
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < cps.size(); ++k) {
    if (!is_unicode_space(cps[k])) kept.push_back(k);
  }
  if (kept.empty()) return tokens;
  if (kept.size() == 1) {
    std::string t;
    append_code_point(t, text, units[kept[0]].first, units[kept[0]].second);
    tokens.push_back(std::move(t));
    return tokens;
  }
  tokens.reserve(kept.size() - 1);
  for (std::size_t k = 0; k + 1 < kept.size(); ++k) {
    std::string t;
    append_code_point(t, text, units[kept[k]].first, units[kept[k]].second);
    append_code_point(t, text, units[kept[k + 1]].first, units[kept[k + 1]].second);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

EmotionModel EmotionModel::train(const std::vector<TweetRecord>& labeled, double alpha,
                                 Tokenizer tokenizer) {
  if (alpha <= 0.0) throw ArgumentError("train: smoothing alpha must be positive");
  if (labeled.empty()) throw ArgumentError("train: no training records");

  std::array<std::int64_t, kEmotionCount> doc_counts{};
  // std::map keeps the vocabulary sorted, which makes models reproducible
  // independent of input order.
  std::map<std::string, std::array<std::int64_t, kEmotionCount>> token_counts;
  for (const TweetRecord& rec : labeled) {
    if (!rec.label) throw ArgumentError("train: unlabeled record '" + rec.id + "'");
    const int c = static_cast<int>(*rec.label);
    ++doc_counts[c];
    for (auto& tok : tokenize(rec.text, tokenizer)) {
      auto [it, inserted] = token_counts.try_emplace(std::move(tok));
      ++it->second[c];
    }
  }
  for (const Emotion e : kAllEmotions) {
    if (doc_counts[static_cast<int>(e)] == 0) {
      throw ArgumentError("train: no training records for class '" +
                          std::string(to_string(e)) + "'");
    }
  }

  EmotionModel model;
  model.alpha_ = alpha;
  model.tokenizer_ = tokenizer;
  model.vocabulary_.reserve(token_counts.size());
  for (const auto& [token, counts] : token_counts) model.vocabulary_.push_back(token);

  const double total_docs = static_cast<double>(labeled.size());
  const double vocab_size = static_cast<double>(model.vocabulary_.size());
  for (int c = 0; c < kEmotionCount; ++c) {
    model.log_priors_[c] = std::log(static_cast<double>(doc_counts[c]) / total_docs);
    std::int64_t class_tokens = 0;
    for (const auto& [token, counts] : token_counts) class_tokens += counts[c];
    const double denom = static_cast<double>(class_tokens) + alpha * vocab_size;
    auto& lik = model.log_likelihoods_[c];
    lik.reserve(token_counts.size());
    for (const auto& [token, counts] : token_counts) {
      lik.push_back(std::log((static_cast<double>(counts[c]) + alpha) / denom));
    }
  }
  return model;
}

EmotionModel::Prediction EmotionModel::classify(std::string_view text) const {
  std::array<double, kEmotionCount> scores = log_priors_;
  for (const auto& tok : tokenize(text, tokenizer_)) {
    const auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), tok);
    if (it == vocabulary_.end() || *it != tok) continue;  // out-of-vocabulary: skip
    const std::size_t idx = static_cast<std::size_t>(it - vocabulary_.begin());
    for (int c = 0; c < kEmotionCount; ++c) scores[c] += log_likelihoods_[c][idx];
  }

  // Softmax with max subtraction; strict > keeps ties on the lower enum value.
  Prediction pred{Emotion::anger, {}};
  double max_score = scores[0];
  for (int c = 1; c < kEmotionCount; ++c) {
    if (scores[c] > max_score) {
      max_score = scores[c];
      pred.label = static_cast<Emotion>(c);
    }
  }
  double z = 0.0;
  for (int c = 0; c < kEmotionCount; ++c) {
    pred.posterior[c] = std::exp(scores[c] - max_score);
    z += pred.posterior[c];
  }
  for (double& p : pred.posterior) p /= z;
  return pred;
}

double EmotionModel::evaluate(const std::vector<TweetRecord>& heldout) const {
  if (heldout.empty()) throw ArgumentError("evaluate: heldout set is empty");
  std::size_t correct = 0;
  for (const TweetRecord& rec : heldout) {
    if (!rec.label) throw ArgumentError("evaluate: unlabeled record '" + rec.id + "'");
    if (classify(rec.text).label == *rec.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(heldout.size());
}

void EmotionModel::save(const std::filesystem::path& path) const {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["kind"] = "emotion_naive_bayes";
  j["alpha"] = alpha_;
  j["tokenizer"] = std::string(to_string(tokenizer_));
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const Emotion e : kAllEmotions) classes.push_back(std::string(to_string(e)));
  j["classes"] = classes;
  j["log_priors"] = log_priors_;
  j["vocabulary"] = vocabulary_;
  nlohmann::ordered_json lik = nlohmann::ordered_json::array();
  for (const auto& row : log_likelihoods_) lik.push_back(row);
  j["log_likelihoods"] = lik;
  atomic_write_file(path, j.dump() + "\n");
}

EmotionModel EmotionModel::load(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("emotion model " + path.string() + ": " + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw FormatError("emotion model " + path.string() + ": unsupported format_version");
    }
    EmotionModel model;
    model.alpha_ = j.at("alpha").get<double>();
    model.tokenizer_ = j.at("tokenizer").get<std::string>() == "whitespace"
                           ? Tokenizer::whitespace
                           : Tokenizer::char_bigram;
    model.vocabulary_ = j.at("vocabulary").get<std::vector<std::string>>();
    const auto priors = j.at("log_priors").get<std::vector<double>>();
    const auto lik = j.at("log_likelihoods");
    if (priors.size() != kEmotionCount || lik.size() != kEmotionCount) {
      throw FormatError("emotion model " + path.string() + ": wrong class count");
    }
    std::copy(priors.begin(), priors.end(), model.log_priors_.begin());
    for (int c = 0; c < kEmotionCount; ++c) {
      model.log_likelihoods_[c] = lik[c].get<std::vector<double>>();
      if (model.log_likelihoods_[c].size() != model.vocabulary_.size()) {
        throw FormatError("emotion model " + path.string() + ": likelihood/vocabulary mismatch");
      }
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("emotion model " + path.string() + ": " + e.what());
  }
}

}  // namespace emostock
