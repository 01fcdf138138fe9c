#pragma once

#include <span>
#include <vector>

#include "emostock/stats.hpp"

namespace emostock {

struct LogregParams {
  double l2_penalty = 0.1;  // on non-intercept weights
  int max_iter = 20000;
  double tol = 1e-6;  // gradient max-norm at convergence
  // Weight each sample by n / (k * n_class) in the loss, which counteracts
  // class imbalance after discretization.
  bool balanced_class_weights = false;
};

/// Multinomial logistic regression fitted by monotone gradient descent with
/// Armijo backtracking from a zero initialization (deterministic). The loss
/// is the mean cross-entropy plus (l2/2) * ||W||^2 over non-intercept
/// weights, so with l2 > 0 it is strictly convex and the gradient max-norm
/// reaches tol.
struct LogRegModel {
  std::vector<int> classes;  // sorted ascending
  Matrix weights;            // classes x (1 + n_features); column 0 is the intercept
  double l2_penalty = 0.0;
  bool converged = false;
  double final_loss = 0.0;
  double grad_max_norm = 0.0;

  std::vector<double> predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
};

LogRegModel logreg_train(const Matrix& features, std::span<const int> labels,
                         const LogregParams& params = {});

/// Loss and gradient at explicit weights (exposed for the finite-difference
/// oracle in the tests). `weights` and `grad_out` are classes x (1 + d);
/// `sample_weights` may be empty for the unweighted mean.
double logreg_loss(const Matrix& features, std::span<const int> labels,
                   std::span<const int> classes, const Matrix& weights, double l2_penalty,
                   std::span<const double> sample_weights = {});
void logreg_gradient(const Matrix& features, std::span<const int> labels,
                     std::span<const int> classes, const Matrix& weights, double l2_penalty,
                     Matrix& grad_out, std::span<const double> sample_weights = {});

}  // namespace emostock
