#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "emostock/emotion.hpp"
#include "emostock/market.hpp"

namespace emostock {

/// Dense row-major matrix, just enough linear algebra for the regressions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Pearson product-moment correlation. Requires equal lengths >= 3; constant
/// input raises DegenerateError.
double pearson(std::span<const double> x, std::span<const double> y);

struct BootstrapResult {
  double mean = 0.0;
  double stddev = 0.0;  // sample std over the resample correlations
};

/// Correlation stability estimate: draws `sample_size` index pairs per
/// resample (without replacement by default, following the subsampling
/// reading of the procedure; set with_replacement for a classic bootstrap),
/// computes the correlation of each resample, and reports mean and sample
/// std over `n_resamples` draws. Deterministic for a fixed seed.
BootstrapResult bootstrap_correlation(std::span<const double> x, std::span<const double> y,
                                      int n_resamples, int sample_size, std::uint64_t seed,
                                      bool with_replacement = false);

/// Null reference: Fisher-Yates shuffles x n_shuffles times, correlating each
/// arrangement against the fixed y.
BootstrapResult shuffle_null(std::span<const double> x, std::span<const double> y,
                             int n_shuffles, std::uint64_t seed);

/// Ordinary least squares fit.
struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> residuals;
  double rss = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
};

/// Least squares via Householder QR (no normal equations). The design must
/// include its own intercept column if one is wanted. Throws
/// SingularDesignError when an R pivot falls below 1e-10 relative to the
/// largest column norm, ArgumentError when rows <= cols.
OlsFit ols_fit(const Matrix& design, std::span<const double> y);

/// Granger causality of x on y at lag order n.
///
/// Both series must be aligned on the same (trading-day) index. With
/// m = length - n usable observations, the restricted model regresses y_t on
/// an intercept and its own lags 1..n, the unrestricted model adds x lags
/// 1..n, and
///   F = ((RSS_r - RSS_u) / n) / (RSS_u / (m - 2n - 1)),
///   p = 1 - f_cdf(F; n, m - 2n - 1).
struct GrangerResult {
  int lag = 0;
  double f_stat = 0.0;
  double p_value = 1.0;
  double rss_restricted = 0.0;
  double rss_unrestricted = 0.0;
  bool significant = false;  // p < alpha
  // Filled by report builders; granger_test itself is emotion/target agnostic.
  Emotion emotion = Emotion::anger;
  MktTarget target = MktTarget::close;
};

/// Requires lag in [1,5] and enough data for m - 2n - 1 >= 10 residual
/// degrees of freedom.
GrangerResult granger_test(std::span<const double> y, std::span<const double> x, int lag,
                           double alpha = 0.05);

/// Regularized incomplete beta function I_x(a, b) by continued fraction
/// (Lentz), absolute error well under 1e-10 over the tested domain.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of the F distribution with (d1, d2) degrees of freedom:
/// I_{d1 x / (d1 x + d2)}(d1/2, d2/2); zero for x <= 0.
double f_cdf(double x, int d1, int d2);

/// Significance stars for a p-value: "***" < 0.001, "**" < 0.01, "*" < 0.05.
std::string_view significance_stars(double p_value);

}  // namespace emostock
