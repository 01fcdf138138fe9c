#pragma once

// Independent reference implementations used to check the library: these
// deliberately take different computational routes (long-double accumulation,
// quadrature, exhaustive dynamic programming, finite differences) so they
// share no code with the paths they verify.

#include <cstdint>
#include <span>
#include <vector>

namespace emostock::testing {

/// Pearson correlation straight from the textbook formula in long double.
double pearson_reference(std::span<const double> x, std::span<const double> y);

/// F-distribution CDF by adaptive Simpson quadrature of the density (with a
/// t = u^2 substitution so d1 = 1 stays integrable). Absolute error ~1e-10.
double f_cdf_quadrature(double x, int d1, int d2);

/// Exhaustive optimal 1-D 3-means over sorted values by dynamic programming.
/// Returns the class index (0,1,2) of every input value and the optimal
/// within-cluster sum of squares.
struct DpKmeansResult {
  std::vector<int> labels;  // aligned with the input order
  double wcss = 0.0;
};
DpKmeansResult dp_kmeans3(std::span<const double> values);

/// Sample standard deviation evaluated directly from the defining formula.
double stddev_reference(std::span<const double> values);

/// AR(1) series y_t = phi * y_{t-1} + eps_t with unit-variance innovations.
std::vector<double> ar1_series(std::size_t n, double phi, std::uint64_t seed);

}  // namespace emostock::testing
