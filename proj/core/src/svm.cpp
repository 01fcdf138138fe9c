#include "emostock/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "emostock/errors.hpp"

namespace emostock {

namespace {

constexpr double kTau = 1e-12;

double kernel_value(Kernel kernel, double gamma, std::span<const double> a,
                    std::span<const double> b) {
  if (kernel == Kernel::linear) {
    double dot = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
    return dot;
  }
  double dist2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    dist2 += d * d;
  }
  return std::exp(-gamma * dist2);
}

}  // namespace

BinarySvm smo_solve_binary(const Matrix& features, std::span<const int> labels_pm,
                           const SvmParams& params, double gamma, SmoTrace* trace,
                           std::span<const double> box) {
  const std::size_t n = features.rows();
  if (n != labels_pm.size()) throw ArgumentError("smo_solve_binary: label count mismatch");
  if (n < 2) throw ArgumentError("smo_solve_binary: need at least 2 samples");
  for (const int y : labels_pm) {
    if (y != 1 && y != -1) throw ArgumentError("smo_solve_binary: labels must be +1/-1");
  }
  if (!(params.C > 0.0)) throw ArgumentError("smo_solve_binary: C must be positive");
  if (!box.empty() && box.size() != n) {
    throw ArgumentError("smo_solve_binary: box size mismatch");
  }
  std::vector<double> cap(n, params.C);
  if (!box.empty()) cap.assign(box.begin(), box.end());

  // Full kernel matrix; problem sizes here are a few hundred rows at most.
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double k = kernel_value(params.kernel, gamma, features.row(i), features.row(j));
      const double v = labels_pm[i] * labels_pm[j] * k;
      q.at(i, j) = v;
      q.at(j, i) = v;
    }
  }

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a at a = 0

  auto record_objective = [&]() {
    if (!trace) return;
    double obj = 0.0;
    for (std::size_t t = 0; t < n; ++t) obj += 0.5 * alpha[t] * (1.0 - grad[t]);
    trace->dual_objective.push_back(obj);
  };

  const double inf = std::numeric_limits<double>::infinity();
  long iter = 0;
  double gap = inf;
  for (; iter < params.max_iter; ++iter) {
    // Maximal violating pair.
    double m_up = -inf, m_low = inf;
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -labels_pm[t] * grad[t];
      const bool in_up = (labels_pm[t] == 1 && alpha[t] < cap[t]) ||
                         (labels_pm[t] == -1 && alpha[t] > 0.0);
      const bool in_low = (labels_pm[t] == 1 && alpha[t] > 0.0) ||
                          (labels_pm[t] == -1 && alpha[t] < cap[t]);
      if (in_up && v > m_up) {
        m_up = v;
        i = t;
      }
      if (in_low && v < m_low) {
        m_low = v;
        j = t;
      }
    }
    gap = m_up - m_low;
    if (!(gap > params.tol) || i == n || j == n) break;

    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (labels_pm[i] != labels_pm[j]) {
      double quad = q.at(i, i) + q.at(j, j) + 2.0 * q.at(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else {
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = -diff;
        }
      }
      if (diff > cap[i] - cap[j]) {
        if (alpha[i] > cap[i]) {
          alpha[i] = cap[i];
          alpha[j] = cap[i] - diff;
        }
      } else {
        if (alpha[j] > cap[j]) {
          alpha[j] = cap[j];
          alpha[i] = cap[j] + diff;
        }
      }
    } else {
      double quad = q.at(i, i) + q.at(j, j) - 2.0 * q.at(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > cap[i]) {
        if (alpha[i] > cap[i]) {
          alpha[i] = cap[i];
          alpha[j] = sum - cap[i];
        }
      } else {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = sum;
        }
      }
      if (sum > cap[j]) {
        if (alpha[j] > cap[j]) {
          alpha[j] = cap[j];
          alpha[i] = sum - cap[j];
        }
      } else {
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = sum;
        }
      }
    }

    const double d_i = alpha[i] - old_ai;
    const double d_j = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += q.at(t, i) * d_i + q.at(t, j) * d_j;
    }
    record_objective();
  }

  // Bias from the free support vectors, midpoint of the KKT bounds otherwise.
  double ub = inf, lb = -inf, sum_free = 0.0;
  std::size_t nr_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = labels_pm[t] * grad[t];
    if (alpha[t] >= cap[t]) {
      if (labels_pm[t] == -1) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else if (alpha[t] <= 0.0) {
      if (labels_pm[t] == 1) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else {
      ++nr_free;
      sum_free += yg;
    }
  }
  const double rho = nr_free > 0 ? sum_free / static_cast<double>(nr_free)
                                 : 0.5 * (ub + lb);

  BinarySvm machine;
  machine.bias = -rho;
  machine.kkt_residual = std::max(gap, 0.0);
  machine.converged = !(gap > params.tol);
  machine.iterations = iter;

  std::vector<std::size_t> sv;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) sv.push_back(t);
  }
  machine.support_vectors = Matrix(sv.size(), features.cols());
  machine.alpha.reserve(sv.size());
  machine.sv_labels.reserve(sv.size());
  for (std::size_t s = 0; s < sv.size(); ++s) {
    const auto src = features.row(sv[s]);
    std::copy(src.begin(), src.end(), machine.support_vectors.row(s).begin());
    machine.alpha.push_back(alpha[sv[s]]);
    machine.sv_labels.push_back(labels_pm[sv[s]]);
  }
  return machine;
}

double SvmModel::decision(const BinarySvm& machine, std::span<const double> x) const {
  if (x.size() != n_features) throw ArgumentError("svm decision: feature arity mismatch");
  double f = machine.bias;
  for (std::size_t s = 0; s < machine.alpha.size(); ++s) {
    f += machine.alpha[s] * machine.sv_labels[s] *
         kernel_value(params.kernel, gamma_effective, machine.support_vectors.row(s), x);
  }
  return f;
}

int SvmModel::predict(std::span<const double> x) const {
  if (x.size() != n_features) throw ArgumentError("svm predict: feature arity mismatch");
  std::vector<int> votes(classes.size(), 0);
  std::vector<double> magnitude(classes.size(), 0.0);
  for (const BinarySvm& machine : machines) {
    const double f = decision(machine, x);
    const int winner = f > 0.0 ? machine.class_pos : machine.class_neg;
    const auto it = std::lower_bound(classes.begin(), classes.end(), winner);
    const std::size_t idx = static_cast<std::size_t>(it - classes.begin());
    ++votes[idx];
    magnitude[idx] += std::abs(f);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes.size(); ++c) {
    if (votes[c] > votes[best] ||
        (votes[c] == votes[best] && magnitude[c] > magnitude[best])) {
      best = c;
    }
  }
  return classes[best];
}

SvmModel svm_train(const Matrix& features, std::span<const int> labels,
                   const SvmParams& params) {
  if (features.rows() != labels.size()) throw ArgumentError("svm_train: label count mismatch");
  if (features.rows() == 0) throw ArgumentError("svm_train: empty dataset");
  for (const double v : features.data()) {
    if (!std::isfinite(v)) throw ArgumentError("svm_train: non-finite feature value");
  }

  SvmModel model;
  model.params = params;
  model.n_features = features.cols();
  model.gamma_effective =
      params.gamma > 0.0 ? params.gamma
                         : 1.0 / static_cast<double>(std::max<std::size_t>(features.cols(), 1));

  const std::set<int> class_set(labels.begin(), labels.end());
  model.classes.assign(class_set.begin(), class_set.end());
  if (model.classes.size() < 2) {
    throw ArgumentError("svm_train: need at least two classes in the training data");
  }

  // Balanced weights: n / (k * n_c), computed on the full training labels.
  std::map<int, double> class_weight;
  if (params.balanced_class_weights) {
    std::map<int, std::size_t> counts;
    for (const int y : labels) ++counts[y];
    for (const auto& [cls, count] : counts) {
      class_weight[cls] = static_cast<double>(labels.size()) /
                          (static_cast<double>(model.classes.size()) * count);
    }
  }

  model.converged = true;
  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      const int cls_pos = model.classes[b];  // higher class value maps to +1
      const int cls_neg = model.classes[a];
      std::vector<std::size_t> rows;
      for (std::size_t t = 0; t < labels.size(); ++t) {
        if (labels[t] == cls_pos || labels[t] == cls_neg) rows.push_back(t);
      }
      Matrix sub(rows.size(), features.cols());
      std::vector<int> sub_labels(rows.size());
      std::vector<double> box;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto src = features.row(rows[r]);
        std::copy(src.begin(), src.end(), sub.row(r).begin());
        sub_labels[r] = labels[rows[r]] == cls_pos ? 1 : -1;
      }
      if (params.balanced_class_weights) {
        box.resize(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          box[r] = params.C * class_weight.at(labels[rows[r]]);
        }
      }
      BinarySvm machine =
          smo_solve_binary(sub, sub_labels, params, model.gamma_effective, nullptr, box);
      machine.class_pos = cls_pos;
      machine.class_neg = cls_neg;
      model.converged = model.converged && machine.converged;
      model.machines.push_back(std::move(machine));
    }
  }
  return model;
}

}  // namespace emostock
