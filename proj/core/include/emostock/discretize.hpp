#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emostock/calendar.hpp"

namespace emostock {

enum class DiscretizeMethod : int { equal_frequency = 0, kmeans = 1, sign = 2 };

constexpr std::string_view to_string(DiscretizeMethod m) {
  switch (m) {
    case DiscretizeMethod::equal_frequency: return "equal_frequency";
    case DiscretizeMethod::kmeans: return "kmeans";
    case DiscretizeMethod::sign: return "sign";
  }
  return "?";
}

std::optional<DiscretizeMethod> discretize_method_from_string(std::string_view s);

struct KmeansParams {
  int k = 3;
  int n_init = 10;
  int max_iter = 300;
  double tol = 1e-6;
};

/// A fitted mapping from a continuous target to class labels.
///
/// Classes are separated by strictly increasing `boundaries`, with values on
/// a boundary going to the lower class; for K-means the boundaries are the
/// midpoints between adjacent (sorted) centroids, which makes application
/// identical to nearest-centroid with ties to the lower centroid. Labels are
/// {-1, 0, 1} for three classes and {0, 1} for two. Always fitted on
/// training rows only.
struct Discretizer {
  DiscretizeMethod method = DiscretizeMethod::sign;
  std::vector<double> boundaries;  // arity - 1 cut points
  std::vector<double> centroids;   // kmeans only; sorted, size k
  std::uint64_t seed = 0;          // kmeans only
  std::optional<Date> fit_from;    // training window, when known
  std::optional<Date> fit_to;

  int arity() const { return static_cast<int>(boundaries.size()) + 1; }
  /// Class label of one value.
  int apply_one(double value) const;
  /// The ordered label alphabet ({-1,0,1} or {0,1}).
  std::vector<int> labels() const;

  std::string to_json() const;
  static Discretizer from_json(const std::string& content);
  void save(const std::filesystem::path& path) const;
  static Discretizer load(const std::filesystem::path& path);
};

/// Cut points at the 1/3 and 2/3 order statistics so that training class
/// sizes differ by at most one (exactly, for tie-free data). Requires at
/// least 3 distinct values (DegenerateError).
Discretizer equal_frequency_fit(std::span<const double> values);

/// 1-D K-means: Lloyd iterations, best of n_init seeded starts by
/// within-cluster sum of squares. Start 0 uses rank-quantile seeding and the
/// rest use farthest-point completion from a random data point, so the
/// 1-D global optimum is found in practice (verified against an exhaustive
/// dynamic-programming oracle in the tests). Deterministic for a fixed seed.
/// Requires at least k distinct values (DegenerateError).
Discretizer kmeans1d_fit(std::span<const double> values, std::uint64_t seed,
                         const KmeansParams& params = {});

/// Two-class sign target: value > 0 -> 1, value <= 0 -> 0 (a flat day does
/// not count as a gain).
Discretizer sign_discretizer();

/// Date-aligned class labels.
struct ClassSeries {
  std::vector<Date> dates;
  std::vector<int> labels;
  int arity = 0;
};

ClassSeries apply(const Discretizer& disc, std::span<const Date> dates,
                  std::span<const double> values);

ClassSeries sign_binarize(std::span<const Date> dates, std::span<const double> values);

}  // namespace emostock
