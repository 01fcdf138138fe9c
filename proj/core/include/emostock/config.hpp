#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emostock/calendar.hpp"
#include "emostock/discretize.hpp"
#include "emostock/logreg.hpp"
#include "emostock/naive_bayes.hpp"
#include "emostock/segment.hpp"
#include "emostock/svm.hpp"
#include "emostock/synth.hpp"

namespace emostock {

/// Named model recipes: classifier algorithm plus feature table.
enum class PredictorRecipe : int { lr = 0, svm_all = 1, svm_es = 2, svm_mr = 3 };

constexpr std::string_view to_string(PredictorRecipe r) {
  switch (r) {
    case PredictorRecipe::lr: return "lr";
    case PredictorRecipe::svm_all: return "svm";
    case PredictorRecipe::svm_es: return "svm_es";
    case PredictorRecipe::svm_mr: return "svm_mr";
  }
  return "?";
}

std::optional<PredictorRecipe> recipe_from_string(std::string_view s);

/// Display name used in reports and tables (LR / SVM / SVM-ES / SVM-MR).
std::string_view recipe_display_name(PredictorRecipe r);

/// Everything a pipeline run needs; the study-period constants default to
/// the 2014-12-01..2015-12-07 window with the 2015-09-16 train/test
/// boundary. All randomness flows from base_seed through per-stage derived
/// seeds; there is no wall-clock seeding anywhere.
struct PipelineConfig {
  // paths
  std::filesystem::path tweets_path = "tweets.jsonl";
  std::filesystem::path market_path = "market.csv";
  std::filesystem::path out_dir = "out";

  std::vector<std::string> keywords;  // empty = the six defaults

  Date period_start{2014, 12, 1};
  Date period_end{2015, 12, 7};
  Date split_boundary{2015, 9, 16};

  int max_lag = 5;
  int ma_window = 20;

  // correlation analysis
  int bootstrap_resamples = 100;
  int bootstrap_sample_size = 150;
  bool bootstrap_with_replacement = false;
  bool correlation_on_normalized = true;

  // granger analysis
  double significance_alpha = 0.05;
  bool granger_on_normalized = false;
  bool granger_first_difference = false;

  // classifier
  double classifier_alpha = 1.0;
  Tokenizer classifier_tokenizer = Tokenizer::char_bigram;
  double classifier_heldout_fraction = 0.2;

  // discretization
  DiscretizeMethod discretize_method = DiscretizeMethod::kmeans;
  KmeansParams kmeans;

  // models
  std::vector<PredictorRecipe> model_recipes = {PredictorRecipe::lr, PredictorRecipe::svm_all,
                                                PredictorRecipe::svm_es,
                                                PredictorRecipe::svm_mr};
  SvmParams svm;
  LogregParams logreg;
  int cv_folds = 5;
  bool chronological_folds = false;
  bool grid_search = false;
  std::vector<MktTarget> two_class_targets = {MktTarget::close, MktTarget::open};
  Segment model_segment = Segment::all;
  PredictorRecipe predict_recipe = PredictorRecipe::svm_es;

  std::vector<Segment> segments = {Segment::all,    Segment::flevel_1, Segment::flevel_2,
                                   Segment::flevel_3, Segment::female,  Segment::male};

  std::uint64_t base_seed = 42;

  SynthParams synth;

  std::string to_json() const;
  /// Throws ConfigError with the offending field path on schema violations.
  static PipelineConfig from_json(const std::string& content);
  static PipelineConfig load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

}  // namespace emostock
