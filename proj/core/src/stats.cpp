#include "emostock/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "emostock/errors.hpp"
#include "emostock/rng.hpp"

namespace emostock {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("pearson: length mismatch");
  if (x.size() < 3) throw ArgumentError("pearson: need at least 3 samples");
}

double sample_std(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (const double a : v) ss += (a - mean) * (a - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DegenerateError("pearson: constant input series");
  }
  return sxy / std::sqrt(sxx * syy);
}

BootstrapResult bootstrap_correlation(std::span<const double> x, std::span<const double> y,
                                      int n_resamples, int sample_size, std::uint64_t seed,
                                      bool with_replacement) {
  check_pair(x, y);
  if (n_resamples < 1) throw ArgumentError("bootstrap_correlation: n_resamples must be >= 1");
  if (sample_size < 3) throw ArgumentError("bootstrap_correlation: sample_size must be >= 3");
  if (!with_replacement && static_cast<std::size_t>(sample_size) > x.size()) {
    throw ArgumentError("bootstrap_correlation: sample_size exceeds series length");
  }

  Rng rng(seed);
  std::vector<double> rhos;
  rhos.reserve(static_cast<std::size_t>(n_resamples));
  std::vector<double> xs(static_cast<std::size_t>(sample_size));
  std::vector<double> ys(static_cast<std::size_t>(sample_size));
  for (int r = 0; r < n_resamples; ++r) {
    if (with_replacement) {
      for (int i = 0; i < sample_size; ++i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(x.size()));
        xs[static_cast<std::size_t>(i)] = x[j];
        ys[static_cast<std::size_t>(i)] = y[j];
      }
    } else {
      const auto idx =
          rng.sample_without_replacement(x.size(), static_cast<std::size_t>(sample_size));
      for (int i = 0; i < sample_size; ++i) {
        xs[static_cast<std::size_t>(i)] = x[idx[static_cast<std::size_t>(i)]];
        ys[static_cast<std::size_t>(i)] = y[idx[static_cast<std::size_t>(i)]];
      }
    }
    rhos.push_back(pearson(xs, ys));
  }

  BootstrapResult res;
  for (const double r : rhos) res.mean += r;
  res.mean /= static_cast<double>(rhos.size());
  res.stddev = rhos.size() > 1 ? sample_std(rhos, res.mean) : 0.0;
  return res;
}

BootstrapResult shuffle_null(std::span<const double> x, std::span<const double> y,
                             int n_shuffles, std::uint64_t seed) {
  check_pair(x, y);
  if (n_shuffles < 1) throw ArgumentError("shuffle_null: n_shuffles must be >= 1");

  Rng rng(seed);
  std::vector<double> shuffled(x.begin(), x.end());
  std::vector<double> rhos;
  rhos.reserve(static_cast<std::size_t>(n_shuffles));
  for (int r = 0; r < n_shuffles; ++r) {
    rng.shuffle(shuffled);
    rhos.push_back(pearson(shuffled, y));
  }

  BootstrapResult res;
  for (const double r : rhos) res.mean += r;
  res.mean /= static_cast<double>(rhos.size());
  res.stddev = rhos.size() > 1 ? sample_std(rhos, res.mean) : 0.0;
  return res;
}

OlsFit ols_fit(const Matrix& design, std::span<const double> y) {
  const std::size_t m = design.rows();
  const std::size_t p = design.cols();
  if (m != y.size()) throw ArgumentError("ols_fit: row count does not match y");
  if (m <= p) throw ArgumentError("ols_fit: need more observations than parameters");

  // Householder QR of the design; R overwrites the upper triangle and the
  // reflectors are applied to a working copy of y as they are formed.
  Matrix a = design;
  std::vector<double> qty(y.begin(), y.end());

  double max_col_norm = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) ss += a.at(i, j) * a.at(i, j);
    max_col_norm = std::max(max_col_norm, std::sqrt(ss));
  }
  const double pivot_floor = 1e-10 * std::max(max_col_norm, 1e-300);

  std::vector<double> v(m);
  for (std::size_t k = 0; k < p; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += a.at(i, k) * a.at(i, k);
    norm = std::sqrt(norm);
    if (norm < pivot_floor) {
      throw SingularDesignError("ols_fit: rank-deficient design (pivot " +
                                std::to_string(norm) + " at column " + std::to_string(k) + ")");
    }
    const double alpha = a.at(k, k) >= 0.0 ? -norm : norm;
    double vnorm2 = 0.0;
    v[k] = a.at(k, k) - alpha;
    vnorm2 += v[k] * v[k];
    for (std::size_t i = k + 1; i < m; ++i) {
      v[i] = a.at(i, k);
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 > 0.0) {
      for (std::size_t j = k; j < p; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += v[i] * a.at(i, j);
        const double scale = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < m; ++i) a.at(i, j) -= scale * v[i];
      }
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i] * qty[i];
      const double scale = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < m; ++i) qty[i] -= scale * v[i];
    }
    if (std::abs(a.at(k, k)) < pivot_floor) {
      throw SingularDesignError("ols_fit: rank-deficient design at column " +
                                std::to_string(k));
    }
  }

  OlsFit fit;
  fit.n_obs = m;
  fit.n_params = p;
  fit.coefficients.assign(p, 0.0);
  for (std::size_t k = p; k-- > 0;) {
    double s = qty[k];
    for (std::size_t j = k + 1; j < p; ++j) s -= a.at(k, j) * fit.coefficients[j];
    fit.coefficients[k] = s / a.at(k, k);
  }

  fit.residuals.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < p; ++j) pred += design.at(i, j) * fit.coefficients[j];
    fit.residuals[i] = y[i] - pred;
    fit.rss += fit.residuals[i] * fit.residuals[i];
  }
  return fit;
}

GrangerResult granger_test(std::span<const double> y, std::span<const double> x, int lag,
                           double alpha) {
  if (lag < 1 || lag > 5) throw ArgumentError("granger_test: lag must be in 1..5");
  if (x.size() != y.size()) throw ArgumentError("granger_test: series length mismatch");
  const std::size_t n = static_cast<std::size_t>(lag);
  if (y.size() <= n) throw ArgumentError("granger_test: series shorter than lag");

  const std::size_t m = y.size() - n;           // usable observations
  const std::size_t p_u = 2 * n + 1;            // unrestricted parameter count
  if (m < p_u + 10) {
    throw ArgumentError("granger_test: need at least " + std::to_string(p_u + 10) +
                        " usable observations, have " + std::to_string(m));
  }

  Matrix restricted(m, n + 1);
  Matrix unrestricted(m, p_u);
  std::vector<double> target(m);
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t row = t + n;  // index into the original series
    target[t] = y[row];
    restricted.at(t, 0) = 1.0;
    unrestricted.at(t, 0) = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
      restricted.at(t, i) = y[row - i];
      unrestricted.at(t, i) = y[row - i];
      unrestricted.at(t, n + i) = x[row - i];
    }
  }

  const OlsFit fit_r = ols_fit(restricted, target);
  const OlsFit fit_u = ols_fit(unrestricted, target);

  GrangerResult res;
  res.lag = lag;
  res.rss_restricted = fit_r.rss;
  res.rss_unrestricted = fit_u.rss;

  const double df2 = static_cast<double>(m - p_u);
  double diff = fit_r.rss - fit_u.rss;
  if (diff < 0.0) diff = 0.0;  // nesting guarantees this up to roundoff
  if (fit_u.rss <= 0.0) {
    // Unrestricted model fits exactly; treat as maximal evidence.
    res.f_stat = std::numeric_limits<double>::infinity();
    res.p_value = 0.0;
  } else {
    res.f_stat = (diff / static_cast<double>(n)) / (fit_u.rss / df2);
    res.p_value = 1.0 - f_cdf(res.f_stat, lag, static_cast<int>(df2));
    res.p_value = std::clamp(res.p_value, 0.0, 1.0);
  }
  res.significant = res.p_value < alpha;
  return res;
}

namespace {

// Continued fraction for I_x(a,b) (Lentz's method, Numerical Recipes form).
double beta_cont_frac(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ArgumentError("regularized_incomplete_beta: a and b must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;

  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  // The continued fraction converges fast for x below the distribution bulk;
  // otherwise use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cont_frac(a, b, x) / a;
  }
  return 1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b;
}

double f_cdf(double x, int d1, int d2) {
  if (d1 < 1 || d2 < 1) throw ArgumentError("f_cdf: degrees of freedom must be positive");
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double a = 0.5 * d1;
  const double b = 0.5 * d2;
  const double arg = d1 * x / (d1 * x + d2);
  return regularized_incomplete_beta(a, b, arg);
}

std::string_view significance_stars(double p_value) {
  if (p_value < 0.001) return "***";
  if (p_value < 0.01) return "**";
  if (p_value < 0.05) return "*";
  return "";
}

}  // namespace emostock
