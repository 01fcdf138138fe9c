#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "emostock/emotion.hpp"
#include "emostock/tweet.hpp"

namespace emostock {

enum class Tokenizer : int { char_bigram = 0, whitespace = 1 };

constexpr std::string_view to_string(Tokenizer t) {
  return t == Tokenizer::char_bigram ? "char_bigram" : "whitespace";
}

/// char_bigram: overlapping code-point pairs of the whitespace-stripped text
/// (a single remaining code point yields one unigram); suits unsegmented
/// Chinese. whitespace: split on Unicode whitespace.
std::vector<std::string> tokenize(std::string_view text, Tokenizer tokenizer);

/// Multinomial Naive Bayes over the five emotions with Laplace smoothing.
///
/// Training is a pure function of the (order-insensitive) token counts, so
/// identical corpora always produce bit-identical models; a trained model is
/// immutable and safe to share across concurrent classify calls.
class EmotionModel {
 public:
  struct Prediction {
    Emotion label;
    std::array<double, kEmotionCount> posterior;  // sums to 1 within 1e-9
  };

  /// Every record must carry a label and every class must be represented;
  /// a class with zero records raises ArgumentError naming the class.
  static EmotionModel train(const std::vector<TweetRecord>& labeled, double alpha = 1.0,
                            Tokenizer tokenizer = Tokenizer::char_bigram);

  /// Argmax-posterior class; ties break toward the lower enum value. Text
  /// with no in-vocabulary tokens falls back to the priors.
  Prediction classify(std::string_view text) const;

  /// Fraction of correct argmax predictions; heldout must be non-empty and
  /// fully labeled (ArgumentError otherwise).
  double evaluate(const std::vector<TweetRecord>& heldout) const;

  void save(const std::filesystem::path& path) const;
  static EmotionModel load(const std::filesystem::path& path);

  double alpha() const { return alpha_; }
  Tokenizer tokenizer() const { return tokenizer_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::array<double, kEmotionCount>& log_priors() const { return log_priors_; }
  /// Log-likelihoods for one class, indexed like vocabulary().
  const std::vector<double>& token_log_likelihoods(Emotion e) const {
    return log_likelihoods_[static_cast<int>(e)];
  }

 private:
  EmotionModel() = default;

  double alpha_ = 1.0;
  Tokenizer tokenizer_ = Tokenizer::char_bigram;
  std::vector<std::string> vocabulary_;  // sorted; index = token id
  std::array<double, kEmotionCount> log_priors_{};
  std::array<std::vector<double>, kEmotionCount> log_likelihoods_;
};

}  // namespace emostock
