#include "emostock/config.hpp"

#include <nlohmann/json.hpp>

#include "emostock/errors.hpp"
#include "emostock/io.hpp"
#include "emostock/market.hpp"

namespace emostock {

std::optional<PredictorRecipe> recipe_from_string(std::string_view s) {
  for (const auto r : {PredictorRecipe::lr, PredictorRecipe::svm_all, PredictorRecipe::svm_es,
                       PredictorRecipe::svm_mr}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::string_view recipe_display_name(PredictorRecipe r) {
  switch (r) {
    case PredictorRecipe::lr: return "LR";
    case PredictorRecipe::svm_all: return "SVM";
    case PredictorRecipe::svm_es: return "SVM-ES";
    case PredictorRecipe::svm_mr: return "SVM-MR";
  }
  return "?";
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
  throw ConfigError("config: " + path + ": " + why);
}

template <typename T>
T get_field(const json& j, const std::string& path, const std::string& key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad_field(path.empty() ? key : path + "." + key, "wrong type");
  }
}

Date get_date(const json& j, const std::string& path, const std::string& key,
              const Date& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return parse_date(j.at(key).get<std::string>());
  } catch (const std::exception&) {
    bad_field(path.empty() ? key : path + "." + key, "expected YYYY-MM-DD");
  }
}

}  // namespace

std::string PipelineConfig::to_json() const {
  ordered_json j;
  j["format_version"] = 1;
  j["paths"] = {{"tweets", tweets_path.string()},
                {"market", market_path.string()},
                {"out", out_dir.string()}};
  j["keywords"] = keywords;
  j["period"] = {{"start", to_string(period_start)}, {"end", to_string(period_end)}};
  j["split_boundary"] = to_string(split_boundary);
  j["max_lag"] = max_lag;
  j["ma_window"] = ma_window;
  j["bootstrap"] = {{"n_resamples", bootstrap_resamples},
                    {"sample_size", bootstrap_sample_size},
                    {"with_replacement", bootstrap_with_replacement}};
  j["significance_alpha"] = significance_alpha;
  j["correlation_on_normalized"] = correlation_on_normalized;
  j["granger_on_normalized"] = granger_on_normalized;
  j["granger_first_difference"] = granger_first_difference;
  j["classifier"] = {{"alpha", classifier_alpha},
                     {"tokenizer", std::string(to_string(classifier_tokenizer))},
                     {"heldout_fraction", classifier_heldout_fraction}};
  j["discretize"] = {{"method", std::string(to_string(discretize_method))},
                     {"n_init", kmeans.n_init},
                     {"max_iter", kmeans.max_iter},
                     {"tol", kmeans.tol}};
  std::vector<std::string> recipe_names;
  for (const auto r : model_recipes) recipe_names.emplace_back(to_string(r));
  std::vector<std::string> two_class;
  for (const auto t : two_class_targets) two_class.emplace_back(to_string(t));
  j["models"] = {{"recipes", recipe_names},
                 {"kernel", std::string(to_string(svm.kernel))},
                 {"C", svm.C},
                 {"gamma", svm.gamma},
                 {"svm_tol", svm.tol},
                 {"l2_penalty", logreg.l2_penalty},
                 {"cv_folds", cv_folds},
                 {"chronological_folds", chronological_folds},
                 {"grid_search", grid_search},
                 {"class_weight", svm.balanced_class_weights},
                 {"two_class_targets", two_class},
                 {"segment", std::string(to_string(model_segment))},
                 {"predict_recipe", std::string(to_string(predict_recipe))}};
  std::vector<std::string> segment_names;
  for (const auto s : segments) segment_names.emplace_back(to_string(s));
  j["segments"] = segment_names;
  j["base_seed"] = base_seed;
  j["synth"] = {{"start", to_string(synth.start)},
                {"end", to_string(synth.end)},
                {"tweets_per_day", synth.tweets_per_day},
                {"relevant_fraction", synth.relevant_fraction},
                {"labeled_fraction", synth.labeled_fraction},
                {"planted_emotion", std::string(to_string(synth.planted_emotion))},
                {"planted_lag", synth.planted_lag},
                {"coupling", synth.coupling},
                {"noise", synth.noise}};
  return j.dump(2) + "\n";
}

PipelineConfig PipelineConfig::from_json(const std::string& content) {
  json j = json::parse(content, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("config: not a JSON object");

  PipelineConfig cfg;
  if (j.contains("format_version") && j["format_version"].get<int>() != 1) {
    bad_field("format_version", "unsupported version");
  }
  if (j.contains("paths")) {
    const auto& p = j["paths"];
    if (!p.is_object()) bad_field("paths", "expected object");
    cfg.tweets_path = get_field<std::string>(p, "paths", "tweets", cfg.tweets_path.string());
    cfg.market_path = get_field<std::string>(p, "paths", "market", cfg.market_path.string());
    cfg.out_dir = get_field<std::string>(p, "paths", "out", cfg.out_dir.string());
  }
  cfg.keywords = get_field<std::vector<std::string>>(j, "", "keywords", cfg.keywords);
  if (j.contains("period")) {
    const auto& p = j["period"];
    cfg.period_start = get_date(p, "period", "start", cfg.period_start);
    cfg.period_end = get_date(p, "period", "end", cfg.period_end);
    if (cfg.period_end < cfg.period_start) bad_field("period", "end before start");
  }
  cfg.split_boundary = get_date(j, "", "split_boundary", cfg.split_boundary);
  cfg.max_lag = get_field<int>(j, "", "max_lag", cfg.max_lag);
  if (cfg.max_lag < 1 || cfg.max_lag > 5) bad_field("max_lag", "must be in 1..5");
  cfg.ma_window = get_field<int>(j, "", "ma_window", cfg.ma_window);
  if (cfg.ma_window < 2) bad_field("ma_window", "must be >= 2");

  if (j.contains("bootstrap")) {
    const auto& b = j["bootstrap"];
    cfg.bootstrap_resamples = get_field<int>(b, "bootstrap", "n_resamples", cfg.bootstrap_resamples);
    cfg.bootstrap_sample_size =
        get_field<int>(b, "bootstrap", "sample_size", cfg.bootstrap_sample_size);
    cfg.bootstrap_with_replacement =
        get_field<bool>(b, "bootstrap", "with_replacement", cfg.bootstrap_with_replacement);
    if (cfg.bootstrap_resamples < 1) bad_field("bootstrap.n_resamples", "must be >= 1");
    if (cfg.bootstrap_sample_size < 3) bad_field("bootstrap.sample_size", "must be >= 3");
  }
  cfg.significance_alpha =
      get_field<double>(j, "", "significance_alpha", cfg.significance_alpha);
  if (!(cfg.significance_alpha > 0.0 && cfg.significance_alpha < 1.0)) {
    bad_field("significance_alpha", "must be in (0, 1)");
  }
  cfg.correlation_on_normalized =
      get_field<bool>(j, "", "correlation_on_normalized", cfg.correlation_on_normalized);
  cfg.granger_on_normalized =
      get_field<bool>(j, "", "granger_on_normalized", cfg.granger_on_normalized);
  cfg.granger_first_difference =
      get_field<bool>(j, "", "granger_first_difference", cfg.granger_first_difference);

  if (j.contains("classifier")) {
    const auto& c = j["classifier"];
    cfg.classifier_alpha = get_field<double>(c, "classifier", "alpha", cfg.classifier_alpha);
    if (!(cfg.classifier_alpha > 0.0)) bad_field("classifier.alpha", "must be positive");
    const std::string tok = get_field<std::string>(c, "classifier", "tokenizer",
                                                   std::string(to_string(cfg.classifier_tokenizer)));
    if (tok == "char_bigram") {
      cfg.classifier_tokenizer = Tokenizer::char_bigram;
    } else if (tok == "whitespace") {
      cfg.classifier_tokenizer = Tokenizer::whitespace;
    } else {
      bad_field("classifier.tokenizer", "must be char_bigram or whitespace");
    }
    cfg.classifier_heldout_fraction =
        get_field<double>(c, "classifier", "heldout_fraction", cfg.classifier_heldout_fraction);
    if (!(cfg.classifier_heldout_fraction > 0.0 && cfg.classifier_heldout_fraction < 1.0)) {
      bad_field("classifier.heldout_fraction", "must be in (0, 1)");
    }
  }

  if (j.contains("discretize")) {
    const auto& d = j["discretize"];
    const std::string method = get_field<std::string>(d, "discretize", "method",
                                                      std::string(to_string(cfg.discretize_method)));
    const auto parsed = discretize_method_from_string(method);
    if (!parsed || *parsed == DiscretizeMethod::sign) {
      bad_field("discretize.method", "must be equal_frequency or kmeans");
    }
    cfg.discretize_method = *parsed;
    cfg.kmeans.n_init = get_field<int>(d, "discretize", "n_init", cfg.kmeans.n_init);
    cfg.kmeans.max_iter = get_field<int>(d, "discretize", "max_iter", cfg.kmeans.max_iter);
    cfg.kmeans.tol = get_field<double>(d, "discretize", "tol", cfg.kmeans.tol);
    if (cfg.kmeans.n_init < 1) bad_field("discretize.n_init", "must be >= 1");
    if (cfg.kmeans.max_iter < 1) bad_field("discretize.max_iter", "must be >= 1");
    if (!(cfg.kmeans.tol > 0.0)) bad_field("discretize.tol", "must be positive");
  }

  if (j.contains("models")) {
    const auto& m = j["models"];
    if (m.contains("recipes")) {
      cfg.model_recipes.clear();
      for (const auto& name : m["recipes"]) {
        const auto r = recipe_from_string(name.get<std::string>());
        if (!r) bad_field("models.recipes", "unknown recipe '" + name.get<std::string>() + "'");
        cfg.model_recipes.push_back(*r);
      }
      if (cfg.model_recipes.empty()) bad_field("models.recipes", "must not be empty");
    }
    const std::string kernel =
        get_field<std::string>(m, "models", "kernel", std::string(to_string(cfg.svm.kernel)));
    if (kernel == "rbf") {
      cfg.svm.kernel = Kernel::rbf;
    } else if (kernel == "linear") {
      cfg.svm.kernel = Kernel::linear;
    } else {
      bad_field("models.kernel", "must be rbf or linear");
    }
    cfg.svm.C = get_field<double>(m, "models", "C", cfg.svm.C);
    if (!(cfg.svm.C > 0.0)) bad_field("models.C", "must be positive");
    cfg.svm.gamma = get_field<double>(m, "models", "gamma", cfg.svm.gamma);
    cfg.svm.tol = get_field<double>(m, "models", "svm_tol", cfg.svm.tol);
    cfg.logreg.l2_penalty = get_field<double>(m, "models", "l2_penalty", cfg.logreg.l2_penalty);
    if (cfg.logreg.l2_penalty < 0.0) bad_field("models.l2_penalty", "must be >= 0");
    cfg.cv_folds = get_field<int>(m, "models", "cv_folds", cfg.cv_folds);
    if (cfg.cv_folds < 2) bad_field("models.cv_folds", "must be >= 2");
    cfg.chronological_folds =
        get_field<bool>(m, "models", "chronological_folds", cfg.chronological_folds);
    cfg.grid_search = get_field<bool>(m, "models", "grid_search", cfg.grid_search);
    const bool class_weight =
        get_field<bool>(m, "models", "class_weight", cfg.svm.balanced_class_weights);
    cfg.svm.balanced_class_weights = class_weight;
    cfg.logreg.balanced_class_weights = class_weight;
    if (m.contains("two_class_targets")) {
      cfg.two_class_targets.clear();
      for (const auto& name : m["two_class_targets"]) {
        const auto t = target_from_string(name.get<std::string>());
        if (!t || *t == MktTarget::volume) {
          bad_field("models.two_class_targets", "must name price targets");
        }
        cfg.two_class_targets.push_back(*t);
      }
    }
    const std::string segment =
        get_field<std::string>(m, "models", "segment", std::string(to_string(cfg.model_segment)));
    const auto seg = segment_from_string(segment);
    if (!seg) bad_field("models.segment", "unknown segment '" + segment + "'");
    cfg.model_segment = *seg;
    const std::string predict = get_field<std::string>(m, "models", "predict_recipe",
                                                       std::string(to_string(cfg.predict_recipe)));
    const auto pr = recipe_from_string(predict);
    if (!pr) bad_field("models.predict_recipe", "unknown recipe '" + predict + "'");
    cfg.predict_recipe = *pr;
  }

  if (j.contains("segments")) {
    cfg.segments.clear();
    for (const auto& name : j["segments"]) {
      const auto seg = segment_from_string(name.get<std::string>());
      if (!seg) bad_field("segments", "unknown segment '" + name.get<std::string>() + "'");
      cfg.segments.push_back(*seg);
    }
    if (cfg.segments.empty()) bad_field("segments", "must not be empty");
  }
  cfg.base_seed = get_field<std::uint64_t>(j, "", "base_seed", cfg.base_seed);

  if (j.contains("synth")) {
    const auto& s = j["synth"];
    cfg.synth.start = get_date(s, "synth", "start", cfg.synth.start);
    cfg.synth.end = get_date(s, "synth", "end", cfg.synth.end);
    cfg.synth.tweets_per_day = get_field<int>(s, "synth", "tweets_per_day", cfg.synth.tweets_per_day);
    if (cfg.synth.tweets_per_day < 1) bad_field("synth.tweets_per_day", "must be >= 1");
    cfg.synth.relevant_fraction =
        get_field<double>(s, "synth", "relevant_fraction", cfg.synth.relevant_fraction);
    cfg.synth.labeled_fraction =
        get_field<double>(s, "synth", "labeled_fraction", cfg.synth.labeled_fraction);
    if (!(cfg.synth.relevant_fraction > 0.0 && cfg.synth.relevant_fraction <= 1.0)) {
      bad_field("synth.relevant_fraction", "must be in (0, 1]");
    }
    if (!(cfg.synth.labeled_fraction > 0.0 && cfg.synth.labeled_fraction <= 1.0)) {
      bad_field("synth.labeled_fraction", "must be in (0, 1]");
    }
    if (s.contains("planted_emotion")) {
      const auto e = emotion_from_string(s["planted_emotion"].get<std::string>());
      if (!e) bad_field("synth.planted_emotion", "unknown emotion");
      cfg.synth.planted_emotion = *e;
    }
    cfg.synth.planted_lag = get_field<int>(s, "synth", "planted_lag", cfg.synth.planted_lag);
    if (cfg.synth.planted_lag < 1 || cfg.synth.planted_lag > 5) {
      bad_field("synth.planted_lag", "must be in 1..5");
    }
    cfg.synth.coupling = get_field<double>(s, "synth", "coupling", cfg.synth.coupling);
    if (cfg.synth.coupling < 0.0) bad_field("synth.coupling", "must be >= 0");
    cfg.synth.noise = get_field<double>(s, "synth", "noise", cfg.synth.noise);
    if (!(cfg.synth.noise > 0.0)) bad_field("synth.noise", "must be positive");
  }
  cfg.synth.seed = cfg.base_seed;
  return cfg;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError("config file not found: " + path.string());
  }
  PipelineConfig cfg = from_json(read_file(path));
  // Relative paths resolve against the config file's directory, so a config
  // emitted next to its fixture stays portable.
  const auto base = std::filesystem::absolute(path).parent_path();
  auto anchor = [&](std::filesystem::path& p) {
    if (p.is_relative()) p = (base / p).lexically_normal();
  };
  anchor(cfg.tweets_path);
  anchor(cfg.market_path);
  anchor(cfg.out_dir);
  return cfg;
}

void PipelineConfig::save(const std::filesystem::path& path) const {
  atomic_write_file(path, to_json());
}

}  // namespace emostock
