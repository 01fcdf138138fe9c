#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "emostock/discretize.hpp"
#include "emostock/logreg.hpp"
#include "emostock/market.hpp"
#include "emostock/series.hpp"
#include "emostock/stats.hpp"
#include "emostock/svm.hpp"

namespace emostock {

/// One model input column: an emotion proportion, or the market close
/// return, shifted earlier by `lag` trading days.
struct FeatureKey {
  std::optional<Emotion> emotion;  // nullopt = market close return (Close_{i-lag})
  int lag = 1;

  bool is_market_return() const { return !emotion.has_value(); }
  std::string name() const;

  friend bool operator==(const FeatureKey&, const FeatureKey&) = default;
};

/// The feature table of one predictor. Entries must be unique with lags in
/// 1..5 (enforced at construction).
struct FeatureSpec {
  std::vector<FeatureKey> entries;
  MktTarget target = MktTarget::close;
  int arity = 3;  // 3-class discretized or 2-class sign

  static FeatureSpec make(std::vector<FeatureKey> entries, MktTarget target, int arity);

  /// Emotion-selected features per target (the SVM-ES feature table):
  /// CLOSE: disgust 1,2; OPEN: fear 1-5, joy 1-5, disgust 3,4;
  /// HIGH: joy 1-4, sadness 1-3, disgust 5; LOW: sadness 1, joy 1-3,
  /// disgust 5; VOLUME: sadness 1-5, fear 1-5.
  static FeatureSpec svm_es(MktTarget target, int arity = 3);

  /// Market-return baseline: close return lags 1..5 for every target.
  static FeatureSpec svm_mr(MktTarget target, int arity = 3);

  /// All five emotions at lags 1..5 (25 features).
  static FeatureSpec all_emotions(MktTarget target, int arity = 3);
};

/// A supervised dataset joined on trading dates. `features` carries the
/// min-max-normalized matrix used for fitting; `raw` and `target_raw` stay
/// available so cross-validation can refit normalization and discretization
/// inside each fold.
struct Dataset {
  FeatureSpec spec;
  std::vector<Date> dates;
  Matrix raw;
  Matrix features;                  // normalized with `bounds`
  std::vector<double> target_raw;
  ClassSeries labels;
  std::vector<MinMaxBounds> bounds; // per feature column (training-window fit)
  Discretizer discretizer;
  KmeansParams disc_kmeans_params;  // for per-fold kmeans refits

  std::size_t size() const { return dates.size(); }
};

struct DatasetWindow {
  Date from;
  Date to;
};

/// Joins features and target over the window (inner join on trading dates;
/// a row exists only when every lagged source is present). Labels come from
/// `disc`; features are normalized with `train_bounds` when given (test
/// mode) or with bounds fitted on this window (train mode). Throws
/// DegenerateError when the join is empty.
Dataset build_dataset(const FeatureSpec& spec, const EmotionSeries& emotions,
                      const TargetSeries& targets, const TradingCalendar& cal,
                      const Discretizer& disc, const DatasetWindow& window,
                      const std::vector<MinMaxBounds>* train_bounds = nullptr,
                      const KmeansParams& kmeans_params = {});

enum class ModelKind : int { logreg = 0, svm = 1 };

constexpr std::string_view to_string(ModelKind k) {
  return k == ModelKind::logreg ? "logreg" : "svm";
}

/// Accuracy report for cross-validation or holdout evaluation.
/// accuracy == trace(confusion) / sum(confusion) always.
struct EvalReport {
  MktTarget target = MktTarget::close;
  std::string model_name;
  std::string discretizer_name;
  int arity = 3;
  double accuracy = 0.0;
  std::vector<std::vector<std::int64_t>> confusion;  // [actual][predicted]
  std::vector<double> fold_accuracies;               // CV only
  std::vector<int> skipped_folds;                    // CV only
  std::string period;
};

struct CvParams {
  int k = 5;
  bool chronological = false;  // default: seeded random fold assignment
};

/// 5-fold cross-validation with per-fold preprocessing: normalization bounds
/// and the discretizer are refitted on the k-1 training folds before each
/// fold is scored. Folds that lose a class (or degenerate during refit) are
/// skipped with a record in skipped_folds.
EvalReport cross_validate(const Dataset& data, ModelKind kind, const CvParams& cv,
                          std::uint64_t seed, const SvmParams& svm_params = {},
                          const LogregParams& logreg_params = {});

/// A fitted classifier plus everything needed to reproduce its inputs.
struct TrainedPredictor {
  ModelKind kind = ModelKind::svm;
  std::string name;  // display name: LR / SVM / SVM-ES / SVM-MR
  FeatureSpec spec;
  Discretizer discretizer;
  std::vector<MinMaxBounds> bounds;
  std::optional<SvmModel> svm;
  std::optional<LogRegModel> logreg;

  int predict_row(std::span<const double> normalized_features) const;

  void save(const std::filesystem::path& path) const;
  static TrainedPredictor load(const std::filesystem::path& path);
};

TrainedPredictor train_predictor(ModelKind kind, const std::string& name,
                                 const Dataset& train_data, const SvmParams& svm_params = {},
                                 const LogregParams& logreg_params = {});

/// Accuracy and confusion matrix over a (chronological) test dataset that
/// was built with the predictor's training bounds and discretizer. Throws
/// ArgumentError on an empty test set or feature arity mismatch.
EvalReport evaluate_holdout(const TrainedPredictor& predictor, const Dataset& test_data);

/// Seeded grid search over C x gamma by cross-validation mean accuracy
/// (ties keep the earlier grid point). Returns the winning parameters.
SvmParams svm_grid_search(const Dataset& data, const CvParams& cv, std::uint64_t seed,
                          const std::vector<double>& c_grid = {0.1, 1.0, 10.0, 100.0},
                          const std::vector<double>& gamma_grid = {0.01, 0.1, 1.0});

}  // namespace emostock
