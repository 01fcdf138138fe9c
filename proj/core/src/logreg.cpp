#include "emostock/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "emostock/errors.hpp"

namespace emostock {

namespace {

// Row scores -> probabilities in place (softmax with max subtraction).
void softmax(std::vector<double>& scores) {
  const double mx = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (double& s : scores) {
    s = std::exp(s - mx);
    z += s;
  }
  for (double& s : scores) s /= z;
}

void scores_at(const Matrix& weights, std::span<const double> x, std::vector<double>& out) {
  const std::size_t k = weights.rows();
  out.assign(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    double s = weights.at(c, 0);
    for (std::size_t f = 0; f < x.size(); ++f) s += weights.at(c, f + 1) * x[f];
    out[c] = s;
  }
}

std::size_t class_index(std::span<const int> classes, int label) {
  const auto it = std::lower_bound(classes.begin(), classes.end(), label);
  if (it == classes.end() || *it != label) {
    throw ArgumentError("logreg: label not in class alphabet");
  }
  return static_cast<std::size_t>(it - classes.begin());
}

}  // namespace

double logreg_loss(const Matrix& features, std::span<const int> labels,
                   std::span<const int> classes, const Matrix& weights, double l2_penalty,
                   std::span<const double> sample_weights) {
  const std::size_t n = features.rows();
  std::vector<double> scores;
  double nll = 0.0;
  double weight_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = sample_weights.empty() ? 1.0 : sample_weights[i];
    weight_total += w;
    scores_at(weights, features.row(i), scores);
    const double mx = *std::max_element(scores.begin(), scores.end());
    double z = 0.0;
    for (const double s : scores) z += std::exp(s - mx);
    const std::size_t yi = class_index(classes, labels[i]);
    nll -= w * (scores[yi] - mx - std::log(z));
  }
  nll /= weight_total;
  double reg = 0.0;
  for (std::size_t c = 0; c < weights.rows(); ++c) {
    for (std::size_t f = 1; f < weights.cols(); ++f) {
      reg += weights.at(c, f) * weights.at(c, f);
    }
  }
  return nll + 0.5 * l2_penalty * reg;
}

void logreg_gradient(const Matrix& features, std::span<const int> labels,
                     std::span<const int> classes, const Matrix& weights, double l2_penalty,
                     Matrix& grad_out, std::span<const double> sample_weights) {
  const std::size_t n = features.rows();
  const std::size_t k = weights.rows();
  grad_out = Matrix(k, weights.cols(), 0.0);
  std::vector<double> prob;
  double weight_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = sample_weights.empty() ? 1.0 : sample_weights[i];
    weight_total += w;
    const auto x = features.row(i);
    scores_at(weights, x, prob);
    softmax(prob);
    const std::size_t yi = class_index(classes, labels[i]);
    for (std::size_t c = 0; c < k; ++c) {
      const double err = w * (prob[c] - (c == yi ? 1.0 : 0.0));
      grad_out.at(c, 0) += err;
      for (std::size_t f = 0; f < x.size(); ++f) grad_out.at(c, f + 1) += err * x[f];
    }
  }
  const double inv_n = 1.0 / weight_total;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t f = 0; f < weights.cols(); ++f) {
      grad_out.at(c, f) *= inv_n;
      if (f >= 1) grad_out.at(c, f) += l2_penalty * weights.at(c, f);
    }
  }
}

std::vector<double> LogRegModel::predict_proba(std::span<const double> x) const {
  if (x.size() + 1 != weights.cols()) throw ArgumentError("logreg: feature arity mismatch");
  std::vector<double> scores;
  scores_at(weights, x, scores);
  softmax(scores);
  return scores;
}

int LogRegModel::predict(std::span<const double> x) const {
  const auto p = predict_proba(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < p.size(); ++c) {
    if (p[c] > p[best]) best = c;  // ties keep the lower class
  }
  return classes[best];
}

LogRegModel logreg_train(const Matrix& features, std::span<const int> labels,
                         const LogregParams& params) {
  if (features.rows() != labels.size()) throw ArgumentError("logreg_train: label count mismatch");
  if (features.rows() == 0) throw ArgumentError("logreg_train: empty dataset");
  if (params.l2_penalty < 0.0) throw ArgumentError("logreg_train: negative l2 penalty");
  for (const double v : features.data()) {
    if (!std::isfinite(v)) throw ArgumentError("logreg_train: non-finite feature value");
  }

  LogRegModel model;
  const std::set<int> class_set(labels.begin(), labels.end());
  model.classes.assign(class_set.begin(), class_set.end());
  if (model.classes.size() < 2) {
    throw ArgumentError("logreg_train: need at least two classes in the training data");
  }
  model.l2_penalty = params.l2_penalty;

  const std::size_t k = model.classes.size();
  const std::size_t cols = features.cols() + 1;
  model.weights = Matrix(k, cols, 0.0);

  std::vector<double> sample_weights;
  if (params.balanced_class_weights) {
    std::map<int, std::size_t> counts;
    for (const int y : labels) ++counts[y];
    sample_weights.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      sample_weights[i] = static_cast<double>(labels.size()) /
                          (static_cast<double>(k) * counts.at(labels[i]));
    }
  }

  double loss = logreg_loss(features, labels, model.classes, model.weights,
                            params.l2_penalty, sample_weights);
  Matrix grad;
  double step = 1.0;
  model.converged = false;
  for (int iter = 0; iter < params.max_iter; ++iter) {
    logreg_gradient(features, labels, model.classes, model.weights, params.l2_penalty, grad,
                    sample_weights);
    double gmax = 0.0, gnorm2 = 0.0;
    for (const double g : grad.data()) {
      gmax = std::max(gmax, std::abs(g));
      gnorm2 += g * g;
    }
    model.grad_max_norm = gmax;
    if (gmax <= params.tol) {
      model.converged = true;
      break;
    }

    // Armijo backtracking; accepted steps never increase the loss.
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      Matrix trial = model.weights;
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t f = 0; f < cols; ++f) {
          trial.at(c, f) -= step * grad.at(c, f);
        }
      }
      const double trial_loss =
          logreg_loss(features, labels, model.classes, trial, params.l2_penalty,
                      sample_weights);
      if (trial_loss <= loss - 1e-4 * step * gnorm2) {
        model.weights = std::move(trial);
        loss = trial_loss;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // step underflow; gradient is numerically flat
    step *= 1.3;           // regrow for the next iteration
    step = std::min(step, 1e6);
  }
  model.final_loss = loss;
  return model;
}

}  // namespace emostock
