#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "emostock/stats.hpp"

namespace emostock {

enum class Kernel : int { rbf = 0, linear = 1 };

constexpr std::string_view to_string(Kernel k) {
  return k == Kernel::rbf ? "rbf" : "linear";
}

struct SvmParams {
  Kernel kernel = Kernel::rbf;
  double C = 1.0;
  double gamma = 0.0;  // <= 0 means auto: 1 / n_features
  double tol = 1e-3;   // maximal KKT violation at convergence
  long max_iter = 100000;  // per binary sub-problem
  // Scale each sample's box constraint by n / (k * n_class), which
  // counteracts class imbalance after discretization.
  bool balanced_class_weights = false;
};

/// One soft-margin binary machine of the one-vs-one decomposition, trained by
/// sequential minimal optimization on the dual. Dual feasibility holds at
/// convergence: every alpha in [0, C], sum(alpha_i y_i) = 0 within 1e-6, and
/// the maximal KKT violation is at most params.tol.
struct BinarySvm {
  int class_pos = 0;  // label mapped to +1 (the higher class value)
  int class_neg = 0;  // label mapped to -1
  Matrix support_vectors;          // rows = support vectors
  std::vector<double> alpha;       // dual coefficient per support vector
  std::vector<int> sv_labels;      // +1 / -1 per support vector
  double bias = 0.0;
  double kkt_residual = 0.0;
  bool converged = false;
  long iterations = 0;
};

/// Multiclass soft-margin SVM with a one-vs-one majority vote.
struct SvmModel {
  SvmParams params;
  double gamma_effective = 0.0;
  std::vector<int> classes;  // sorted ascending
  std::vector<BinarySvm> machines;
  std::size_t n_features = 0;
  bool converged = false;  // all binary machines converged

  /// Decision value of one binary machine at x.
  double decision(const BinarySvm& machine, std::span<const double> x) const;
  /// One-vs-one vote; ties break toward the class with the larger aggregate
  /// decision magnitude, then the lower class value.
  int predict(std::span<const double> x) const;
};

/// Trains on a feature matrix and integer class labels. Requires at least
/// two classes (ArgumentError) and finite features. Deterministic; the SMO
/// working-set rule (maximal violating pair) involves no randomness.
SvmModel svm_train(const Matrix& features, std::span<const int> labels,
                   const SvmParams& params = {});

/// Optional per-iteration dual objective trace for instrumented small runs.
struct SmoTrace {
  std::vector<double> dual_objective;  // value after each update
};

/// As svm_train for a single +1/-1 problem, exposing the trace hook.
/// `box` optionally gives a per-sample upper bound C_i (empty = params.C).
BinarySvm smo_solve_binary(const Matrix& features, std::span<const int> labels_pm,
                           const SvmParams& params, double gamma, SmoTrace* trace = nullptr,
                           std::span<const double> box = {});

}  // namespace emostock
