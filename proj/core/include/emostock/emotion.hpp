#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace emostock {

/// The five tweet emotions. The emoticon-labeled corpus covers five of the
/// six basic emotions; there is deliberately no surprise variant. Enum order
/// is the fixed tie-break order everywhere (anger < disgust < joy < sadness
/// < fear).
enum class Emotion : int {
  anger = 0,
  disgust = 1,
  joy = 2,
  sadness = 3,
  fear = 4,
};

inline constexpr int kEmotionCount = 5;

inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::anger, Emotion::disgust, Emotion::joy, Emotion::sadness, Emotion::fear};

constexpr std::string_view to_string(Emotion e) {
  switch (e) {
    case Emotion::anger: return "anger";
    case Emotion::disgust: return "disgust";
    case Emotion::joy: return "joy";
    case Emotion::sadness: return "sadness";
    case Emotion::fear: return "fear";
  }
  return "?";
}

constexpr std::optional<Emotion> emotion_from_string(std::string_view s) {
  for (const Emotion e : kAllEmotions) {
    if (to_string(e) == s) return e;
  }
  return std::nullopt;
}

}  // namespace emostock
