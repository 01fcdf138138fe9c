#pragma once

#include <optional>
#include <string_view>

namespace emostock {

/// Investor segment: follower-count tier (F-level), gender, or everyone.
enum class Segment : int {
  all = 0,
  flevel_1 = 1,  // followers <= 100; inexperienced bulk of investors
  flevel_2 = 2,  // 100 < followers < 10000
  flevel_3 = 3,  // followers >= 10000; experienced/institutional
  female = 4,
  male = 5,
};

inline constexpr int kSegmentCount = 6;

constexpr std::string_view to_string(Segment s) {
  switch (s) {
    case Segment::all: return "all";
    case Segment::flevel_1: return "flevel_1";
    case Segment::flevel_2: return "flevel_2";
    case Segment::flevel_3: return "flevel_3";
    case Segment::female: return "female";
    case Segment::male: return "male";
  }
  return "?";
}

constexpr std::optional<Segment> segment_from_string(std::string_view s) {
  for (int i = 0; i < kSegmentCount; ++i) {
    const auto seg = static_cast<Segment>(i);
    if (to_string(seg) == s) return seg;
  }
  return std::nullopt;
}

}  // namespace emostock
