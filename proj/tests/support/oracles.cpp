#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "emostock/rng.hpp"

namespace emostock::testing {

double pearson_reference(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / static_cast<long double>(n);
  const long double my = sy / static_cast<long double>(n);
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

namespace {

// F(d1, d2) density after substituting t = u^2 (the integrand in u), which
// removes the t^{-1/2} singularity at the origin for d1 = 1.
double f_density_u(double u, double a, double b, double d1, double d2, double log_norm) {
  if (u <= 0.0) return 0.0;
  const double t = u * u;
  const double log_pdf = log_norm + (a - 1.0) * std::log(t) -
                         (a + b) * std::log1p(d1 * t / d2);
  return 2.0 * u * std::exp(log_pdf);
}

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

struct FIntegrand {
  double a, b, d1, d2, log_norm;
  double operator()(double u) const { return f_density_u(u, a, b, d1, d2, log_norm); }
};

double adaptive(const FIntegrand& f, double lo, double hi, double flo, double fmid,
                double fhi, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid);
  const double rm = 0.5 * (mid + hi);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(flo, flm, fmid, mid - lo);
  const double right = simpson(fmid, frm, fhi, hi - mid);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive(f, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1) +
         adaptive(f, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1);
}

}  // namespace

double f_cdf_quadrature(double x, int d1, int d2) {
  if (x <= 0.0) return 0.0;
  const double a = 0.5 * d1;
  const double b = 0.5 * d2;
  const double log_norm = a * std::log(static_cast<double>(d1) / d2) -
                          (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  const FIntegrand f{a, b, static_cast<double>(d1), static_cast<double>(d2), log_norm};
  const double hi = std::sqrt(x);
  const double flo = f(0.0);
  const double fhi = f(hi);
  const double fmid = f(0.5 * hi);
  const double whole = simpson(flo, fmid, fhi, hi);
  return adaptive(f, 0.0, hi, flo, fmid, fhi, whole, 1e-12, 48);
}

DpKmeansResult dp_kmeans3(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) throw std::invalid_argument("dp_kmeans3: need at least 3 values");

  // Sort with original index tracking.
  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = {values[i], i};
  std::sort(order.begin(), order.end());

  std::vector<double> prefix(n + 1, 0.0), prefix_sq(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + order[i].first;
    prefix_sq[i + 1] = prefix_sq[i] + order[i].first * order[i].first;
  }
  auto cost = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
    const double cnt = static_cast<double>(hi - lo);
    const double s = prefix[hi] - prefix[lo];
    const double ss = prefix_sq[hi] - prefix_sq[lo];
    return ss - s * s / cnt;
  };

  // Exhaustive scan over the two cut ranks (clusters of an optimal 1-D
  // k-means are contiguous in sorted order).
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_c1 = 1, best_c2 = 2;
  for (std::size_t c1 = 1; c1 + 1 < n; ++c1) {
    const double left = cost(0, c1);
    for (std::size_t c2 = c1 + 1; c2 < n; ++c2) {
      const double total = left + cost(c1, c2) + cost(c2, n);
      if (total < best) {
        best = total;
        best_c1 = c1;
        best_c2 = c2;
      }
    }
  }

  DpKmeansResult res;
  res.wcss = best;
  res.labels.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const int cls = r < best_c1 ? 0 : (r < best_c2 ? 1 : 2);
    res.labels[order[r].second] = cls;
  }
  return res;
}

double stddev_reference(std::span<const double> values) {
  const std::size_t n = values.size();
  long double mean = 0;
  for (const double v : values) mean += v;
  mean /= static_cast<long double>(n);
  long double ss = 0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return static_cast<double>(std::sqrt(ss / static_cast<long double>(n - 1)));
}

std::vector<double> ar1_series(std::size_t n, double phi, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> y(n);
  double prev = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    prev = phi * prev + rng.next_normal();
    y[t] = prev;
  }
  return y;
}

}  // namespace emostock::testing
