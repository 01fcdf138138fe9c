#include "emostock/pipeline.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emostock/errors.hpp"
#include "emostock/investors.hpp"
#include "emostock/io.hpp"
#include "emostock/models.hpp"
#include "emostock/naive_bayes.hpp"
#include "emostock/reports.hpp"
#include "emostock/rng.hpp"
#include "emostock/synth.hpp"

namespace fs = std::filesystem;

namespace emostock {

namespace {

fs::path out_path(const PipelineConfig& cfg, const std::string& name) {
  return cfg.out_dir / name;
}

std::string segment_series_name(Segment s) {
  return "emotions_" + std::string(to_string(s)) + ".csv";
}

KeywordSet config_keywords(const PipelineConfig& cfg) {
  return cfg.keywords.empty() ? KeywordSet::defaults() : KeywordSet(cfg.keywords);
}

Date day_after(const Date& d) { return date_from_serial(d.serial() + 1); }

// classified.jsonl rows are the tweet schema plus an "emotion" field.
std::vector<ClassifiedTweet> load_classified(const fs::path& path) {
  require_artifact(path, "classified tweets");
  std::istringstream in(read_file(path));
  std::vector<ClassifiedTweet> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw FormatError("classified tweets: bad line");
    ClassifiedTweet ct;
    ct.tweet.id = j.at("id").get<std::string>();
    ct.tweet.ts_raw = j.at("ts").get<std::string>();
    ct.tweet.date = parse_timestamp_utc8(ct.tweet.ts_raw);
    ct.tweet.text = j.at("text").get<std::string>();
    ct.tweet.followers = j.at("followers").get<std::int64_t>();
    const std::string g = j.at("gender").get<std::string>();
    ct.tweet.gender = g == "f" ? Gender::female : (g == "m" ? Gender::male : Gender::unknown);
    if (j.contains("label")) {
      ct.tweet.label = emotion_from_string(j.at("label").get<std::string>());
    }
    const auto emotion = emotion_from_string(j.at("emotion").get<std::string>());
    if (!emotion) throw FormatError("classified tweets: bad emotion on id " + ct.tweet.id);
    ct.emotion = *emotion;
    out.push_back(std::move(ct));
  }
  return out;
}

struct RecipeSpec {
  ModelKind kind;
  FeatureSpec spec;
};

RecipeSpec recipe_spec(PredictorRecipe recipe, MktTarget target, int arity) {
  switch (recipe) {
    case PredictorRecipe::lr:
      return {ModelKind::logreg, FeatureSpec::all_emotions(target, arity)};
    case PredictorRecipe::svm_all:
      return {ModelKind::svm, FeatureSpec::all_emotions(target, arity)};
    case PredictorRecipe::svm_es:
      return {ModelKind::svm, FeatureSpec::svm_es(target, arity)};
    case PredictorRecipe::svm_mr:
      return {ModelKind::svm, FeatureSpec::svm_mr(target, arity)};
  }
  throw ArgumentError("recipe_spec: bad recipe");
}

std::string model_file_name(MktTarget target, PredictorRecipe recipe, int arity) {
  return "model_" + std::string(to_string(target)) + "_" + std::string(to_string(recipe)) +
         "_" + std::to_string(arity) + ".json";
}

Discretizer fit_target_discretizer(const PipelineConfig& cfg, MktTarget target, int arity,
                                   std::span<const double> train_values) {
  Discretizer disc;
  if (arity == 2) {
    disc = sign_discretizer();
  } else if (cfg.discretize_method == DiscretizeMethod::equal_frequency) {
    disc = equal_frequency_fit(train_values);
  } else {
    const std::uint64_t seed =
        derive_seed(cfg.base_seed, "discretize/" + std::string(to_string(target)));
    disc = kmeans1d_fit(train_values, seed, cfg.kmeans);
  }
  disc.fit_from = cfg.period_start;
  disc.fit_to = cfg.split_boundary;
  return disc;
}

struct LoadedAnalysisInputs {
  EmotionSeries emotions;
  MarketData market;
  TargetSeries targets;
};

LoadedAnalysisInputs load_analysis_inputs(const PipelineConfig& cfg, Segment segment) {
  LoadedAnalysisInputs in;
  const fs::path series_path = out_path(cfg, segment_series_name(segment));
  require_artifact(series_path, "emotion series (run build-series first)");
  in.emotions = load_emotion_csv(series_path, segment);
  require_artifact(cfg.market_path, "market CSV");
  in.market = load_market_csv(cfg.market_path);
  in.targets = rate_of_change_targets(in.market.days);
  return in;
}

}  // namespace

void cmd_synth(const PipelineConfig& cfg) {
  SynthParams params = cfg.synth;
  params.seed = cfg.base_seed;
  const SynthResult result = generate_fixture(params, cfg.out_dir);

  // A config pointing at the freshly generated fixture, so the whole
  // pipeline can run against it directly. Paths are relative to the config
  // file itself, which keeps reruns in different directories byte-identical.
  PipelineConfig fixture_cfg = cfg;
  fixture_cfg.tweets_path = "tweets.jsonl";
  fixture_cfg.market_path = "market.csv";
  fixture_cfg.out_dir = ".";
  fixture_cfg.period_start = params.start;
  fixture_cfg.period_end = params.end;
  fixture_cfg.save(result.config_path);

  RunManifest manifest;
  manifest.stage = "synth";
  manifest.seed = cfg.base_seed;
  manifest.add_output(result.tweets_path);
  manifest.add_output(result.market_path);
  manifest.add_output(result.truth_path);
  manifest.add_output(result.config_path);
  manifest.write(cfg.out_dir);
  std::cerr << "synth: " << result.n_tweets << " tweets over " << result.n_trading_days
            << " trading days -> " << cfg.out_dir.string() << "\n";
}

void cmd_ingest(const PipelineConfig& cfg) {
  require_artifact(cfg.tweets_path, "tweets JSONL");
  ParseStats stats;
  const auto tweets = load_tweets_file(cfg.tweets_path, &stats);
  const auto kept = filter_stock_relevant(tweets, config_keywords(cfg));

  const fs::path out = out_path(cfg, "tweets_relevant.jsonl");
  atomic_write_file(out, tweets_to_jsonl(kept));

  nlohmann::ordered_json stats_json;
  stats_json["lines"] = stats.total_lines;
  stats_json["parsed"] = stats.parsed;
  stats_json["skipped"] = stats.skipped;
  stats_json["stock_relevant"] = kept.size();
  const fs::path stats_path = out_path(cfg, "ingest_stats.json");
  atomic_write_file(stats_path, stats_json.dump(2) + "\n");

  RunManifest manifest;
  manifest.stage = "ingest";
  manifest.seed = cfg.base_seed;
  manifest.add_input(cfg.tweets_path);
  manifest.add_output(out);
  manifest.add_output(stats_path);
  manifest.write(cfg.out_dir);
  std::cerr << "ingest: " << stats.parsed << " parsed, " << stats.skipped << " skipped, "
            << kept.size() << " stock-relevant\n";
}

void cmd_classify(const PipelineConfig& cfg) {
  const fs::path relevant_path = out_path(cfg, "tweets_relevant.jsonl");
  require_artifact(relevant_path, "relevant tweets (run ingest first)");
  const auto tweets = load_tweets_file(relevant_path);

  std::vector<TweetRecord> labeled;
  for (const auto& t : tweets) {
    if (t.label) labeled.push_back(t);
  }
  if (labeled.size() < 10) {
    throw ValidationError("classify: need at least 10 labeled tweets, have " +
                          std::to_string(labeled.size()));
  }

  // Seeded split of the labeled corpus into train and heldout.
  std::vector<std::size_t> order(labeled.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(cfg.base_seed, "classify/split"));
  rng.shuffle(order);
  const std::size_t n_heldout = std::max<std::size_t>(
      1, static_cast<std::size_t>(static_cast<double>(labeled.size()) *
                                  cfg.classifier_heldout_fraction));
  std::vector<TweetRecord> train, heldout;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_heldout ? heldout : train).push_back(labeled[order[i]]);
  }

  const EmotionModel model =
      EmotionModel::train(train, cfg.classifier_alpha, cfg.classifier_tokenizer);
  const double accuracy = model.evaluate(heldout);

  // Label every relevant tweet with the trained classifier.
  std::string classified_jsonl;
  for (const auto& t : tweets) {
    nlohmann::ordered_json j;
    j["id"] = t.id;
    j["ts"] = t.ts_raw;
    j["text"] = t.text;
    j["followers"] = t.followers;
    j["gender"] = std::string(gender_code(t.gender));
    if (t.label) j["label"] = std::string(to_string(*t.label));
    j["emotion"] = std::string(to_string(model.classify(t.text).label));
    classified_jsonl += j.dump();
    classified_jsonl += '\n';
  }

  const fs::path model_path = out_path(cfg, "emotion_model.json");
  const fs::path classified_path = out_path(cfg, "classified.jsonl");
  const fs::path metrics_path = out_path(cfg, "classifier_metrics.json");
  model.save(model_path);
  atomic_write_file(classified_path, classified_jsonl);
  nlohmann::ordered_json metrics;
  metrics["labeled"] = labeled.size();
  metrics["train"] = train.size();
  metrics["heldout"] = heldout.size();
  metrics["heldout_accuracy"] = accuracy;
  metrics["vocabulary_size"] = model.vocabulary().size();
  atomic_write_file(metrics_path, metrics.dump(2) + "\n");

  RunManifest manifest;
  manifest.stage = "classify";
  manifest.seed = cfg.base_seed;
  manifest.add_input(relevant_path);
  manifest.add_output(model_path);
  manifest.add_output(classified_path);
  manifest.add_output(metrics_path);
  manifest.write(cfg.out_dir);
  std::cerr << "classify: heldout accuracy " << accuracy << " over " << heldout.size()
            << " tweets\n";
}

void cmd_build_series(const PipelineConfig& cfg, bool plot) {
  const fs::path classified_path = out_path(cfg, "classified.jsonl");
  const auto classified = load_classified(classified_path);
  require_artifact(cfg.market_path, "market CSV");
  const MarketData market = load_market_csv(cfg.market_path);

  RunManifest manifest;
  manifest.stage = "build_series";
  manifest.seed = cfg.base_seed;
  manifest.add_input(classified_path);
  manifest.add_input(cfg.market_path);

  for (const Segment segment : cfg.segments) {
    std::vector<ClassifiedTweet> subset;
    for (const auto& ct : classified) {
      if (in_segment(ct.tweet, segment)) subset.push_back(ct);
    }
    EmotionSeries series = aggregate_daily(subset);
    series.segment = segment;
    const EmotionSeries restricted = restrict_to_calendar(series, market.calendar);
    if (restricted.rows.empty() && !series.rows.empty()) {
      std::cerr << "build-series: warning: segment " << to_string(segment)
                << " has no rows on trading days\n";
    }
    const fs::path path = out_path(cfg, segment_series_name(segment));
    atomic_write_file(path, emotion_series_to_csv(restricted));
    manifest.add_output(path);

    if (plot && segment == Segment::all && !restricted.rows.empty()) {
      std::vector<std::pair<std::string, std::vector<double>>> lines;
      for (const Emotion e : kAllEmotions) {
        lines.emplace_back(std::string(to_string(e)), restricted.proportions(e));
      }
      const fs::path svg = out_path(cfg, "emotions_all.svg");
      write_svg_line_chart(svg, "daily emotion proportions", lines);
      manifest.add_output(svg);
    }
  }
  manifest.write(cfg.out_dir);
}

void cmd_market(const PipelineConfig& cfg, bool plot) {
  require_artifact(cfg.market_path, "market CSV");
  const MarketData market = load_market_csv(cfg.market_path);
  const TargetSeries targets = rate_of_change_targets(market.days);

  const fs::path targets_path = out_path(cfg, "targets.csv");
  atomic_write_file(targets_path, targets_to_csv(targets));

  RunManifest manifest;
  manifest.stage = "market";
  manifest.seed = cfg.base_seed;
  manifest.add_input(cfg.market_path);
  manifest.add_output(targets_path);
  if (plot) {
    const fs::path svg = out_path(cfg, "targets_close.svg");
    write_svg_line_chart(svg, "daily close rate of change (%)",
                         {{"close_r", targets.close_r}});
    manifest.add_output(svg);
  }
  manifest.write(cfg.out_dir);
  std::cerr << "market: " << market.days.size() << " days -> " << targets.size()
            << " target rows\n";
}

void cmd_analyze(const PipelineConfig& cfg, AnalyzeKind kind, bool plot) {
  RunManifest manifest;
  manifest.seed = cfg.base_seed;

  if (kind == AnalyzeKind::volatility) {
    manifest.stage = "analyze_volatility";
    require_artifact(cfg.market_path, "market CSV");
    std::vector<SegmentVolatility> rows;
    std::vector<std::pair<Segment, std::vector<std::pair<Date, double>>>> rolling;
    for (const Segment segment : cfg.segments) {
      const fs::path path = out_path(cfg, segment_series_name(segment));
      require_artifact(path, "emotion series (run build-series first)");
      manifest.add_input(path);
      const EmotionSeries series = load_emotion_csv(path, segment);
      rows.push_back(segment_volatility(segment, series));
      const RjfSeries rjf = compute_rjf(series);
      if (rjf.rjf.size() >= static_cast<std::size_t>(cfg.ma_window)) {
        rolling.emplace_back(segment, rolling_volatility(rjf, cfg.ma_window));
      }
    }
    const fs::path csv_path = out_path(cfg, "volatility_report.csv");
    const fs::path json_path = out_path(cfg, "volatility_report.json");
    const fs::path rolling_path = out_path(cfg, "rolling_volatility.csv");
    atomic_write_file(csv_path, volatility_csv(rows));
    atomic_write_file(json_path, volatility_json(rows));
    atomic_write_file(rolling_path, rolling_volatility_csv(rolling));
    manifest.add_output(csv_path);
    manifest.add_output(json_path);
    manifest.add_output(rolling_path);
    if (plot && !rolling.empty()) {
      std::vector<std::pair<std::string, std::vector<double>>> lines;
      for (const auto& [segment, series] : rolling) {
        std::vector<double> sigmas;
        sigmas.reserve(series.size());
        for (const auto& [date, sigma] : series) sigmas.push_back(sigma);
        lines.emplace_back(std::string(to_string(segment)), std::move(sigmas));
      }
      const fs::path svg = out_path(cfg, "rolling_volatility.svg");
      write_svg_line_chart(svg, "rolling RJF volatility", lines);
      manifest.add_output(svg);
    }
    manifest.write(cfg.out_dir);
    return;
  }

  const LoadedAnalysisInputs in = load_analysis_inputs(cfg, cfg.model_segment);
  manifest.add_input(out_path(cfg, segment_series_name(cfg.model_segment)));
  manifest.add_input(cfg.market_path);

  if (kind == AnalyzeKind::corr) {
    manifest.stage = "analyze_corr";
    CorrelationSpec spec;
    spec.max_lag = cfg.max_lag;
    spec.n_resamples = cfg.bootstrap_resamples;
    spec.sample_size = cfg.bootstrap_sample_size;
    spec.with_replacement = cfg.bootstrap_with_replacement;
    spec.normalized = cfg.correlation_on_normalized;
    const auto cells =
        correlation_grid(in.emotions, in.targets, in.market.calendar, cfg.period_start,
                         cfg.split_boundary, spec, derive_seed(cfg.base_seed, "analyze/corr"));
    const fs::path csv_path = out_path(cfg, "correlation_report.csv");
    const fs::path json_path = out_path(cfg, "correlation_report.json");
    atomic_write_file(csv_path, correlation_csv(cells));
    atomic_write_file(json_path, correlation_json(cells));
    manifest.add_output(csv_path);
    manifest.add_output(json_path);
  } else {
    manifest.stage = "analyze_granger";
    GrangerSpec spec;
    spec.max_lag = cfg.max_lag;
    spec.alpha = cfg.significance_alpha;
    spec.first_difference = cfg.granger_first_difference;
    spec.normalized = cfg.granger_on_normalized;
    const auto cells = granger_grid(in.emotions, in.targets, in.market.calendar,
                                    cfg.period_start, cfg.split_boundary, spec);
    const fs::path csv_path = out_path(cfg, "granger_report.csv");
    const fs::path json_path = out_path(cfg, "granger_report.json");
    atomic_write_file(csv_path, granger_csv(cells));
    atomic_write_file(json_path, granger_json(cells));
    manifest.add_output(csv_path);
    manifest.add_output(json_path);
  }
  manifest.write(cfg.out_dir);
}

void cmd_train(const PipelineConfig& cfg) {
  const LoadedAnalysisInputs in = load_analysis_inputs(cfg, cfg.model_segment);

  RunManifest manifest;
  manifest.stage = "train";
  manifest.seed = cfg.base_seed;
  manifest.add_input(out_path(cfg, segment_series_name(cfg.model_segment)));
  manifest.add_input(cfg.market_path);

  const DatasetWindow train_window{cfg.period_start, cfg.split_boundary};
  const auto [train_targets, test_targets] = split_by_date(in.targets, cfg.split_boundary);

  std::vector<EvalReport> cv_reports;
  CvParams cv{cfg.cv_folds, cfg.chronological_folds};

  auto run_one = [&](PredictorRecipe recipe, MktTarget target, int arity) {
    const RecipeSpec rs = recipe_spec(recipe, target, arity);
    const Discretizer disc =
        fit_target_discretizer(cfg, target, arity, train_targets.column(target));
    const Dataset data = build_dataset(rs.spec, in.emotions, in.targets, in.market.calendar,
                                       disc, train_window, nullptr, cfg.kmeans);

    SvmParams svm_params = cfg.svm;
    if (cfg.grid_search && rs.kind == ModelKind::svm) {
      svm_params = svm_grid_search(
          data, cv, derive_seed(cfg.base_seed, "grid/" + std::string(to_string(recipe))));
    }
    const std::string tag = std::string(to_string(recipe)) + "/" +
                            std::string(to_string(target)) + "/" + std::to_string(arity);
    EvalReport report = cross_validate(data, rs.kind, cv,
                                       derive_seed(cfg.base_seed, "cv/" + tag), svm_params,
                                       cfg.logreg);
    report.model_name = std::string(recipe_display_name(recipe));
    cv_reports.push_back(report);

    const TrainedPredictor predictor =
        train_predictor(rs.kind, std::string(recipe_display_name(recipe)), data, svm_params,
                        cfg.logreg);
    const fs::path model_path = out_path(cfg, model_file_name(target, recipe, arity));
    predictor.save(model_path);
    manifest.add_output(model_path);
  };

  for (const PredictorRecipe recipe : cfg.model_recipes) {
    for (const MktTarget target : kAllTargets) {
      run_one(recipe, target, 3);
    }
    for (const MktTarget target : cfg.two_class_targets) {
      run_one(recipe, target, 2);
    }
  }

  const fs::path cv_json = out_path(cfg, "cv_report.json");
  const fs::path cv_csv = out_path(cfg, "cv_report.csv");
  const fs::path cv_table = out_path(cfg, "cv_table.txt");
  atomic_write_file(cv_json, eval_reports_json(cv_reports));
  atomic_write_file(cv_csv, eval_reports_csv(cv_reports));
  atomic_write_file(cv_table, eval_table(cv_reports));
  manifest.add_output(cv_json);
  manifest.add_output(cv_csv);
  manifest.add_output(cv_table);
  manifest.write(cfg.out_dir);
  std::cerr << "train: " << cv_reports.size() << " models fitted\n";
}

void cmd_evaluate(const PipelineConfig& cfg) {
  const LoadedAnalysisInputs in = load_analysis_inputs(cfg, cfg.model_segment);

  RunManifest manifest;
  manifest.stage = "evaluate";
  manifest.seed = cfg.base_seed;
  manifest.add_input(out_path(cfg, segment_series_name(cfg.model_segment)));
  manifest.add_input(cfg.market_path);

  const DatasetWindow test_window{day_after(cfg.split_boundary), cfg.period_end};

  std::vector<EvalReport> reports;
  for (const PredictorRecipe recipe : cfg.model_recipes) {
    std::vector<std::pair<MktTarget, int>> jobs;
    for (const MktTarget target : kAllTargets) jobs.emplace_back(target, 3);
    for (const MktTarget target : cfg.two_class_targets) jobs.emplace_back(target, 2);
    for (const auto& [target, arity] : jobs) {
      const fs::path model_path = out_path(cfg, model_file_name(target, recipe, arity));
      require_artifact(model_path, "trained model (run train first)");
      manifest.add_input(model_path);
      const TrainedPredictor predictor = TrainedPredictor::load(model_path);
      const Dataset test_data =
          build_dataset(predictor.spec, in.emotions, in.targets, in.market.calendar,
                        predictor.discretizer, test_window, &predictor.bounds, cfg.kmeans);
      reports.push_back(evaluate_holdout(predictor, test_data));
    }
  }

  const fs::path json_path = out_path(cfg, "holdout_report.json");
  const fs::path csv_path = out_path(cfg, "holdout_report.csv");
  const fs::path table_path = out_path(cfg, "holdout_table.txt");
  atomic_write_file(json_path, eval_reports_json(reports));
  atomic_write_file(csv_path, eval_reports_csv(reports));
  atomic_write_file(table_path, eval_table(reports));
  manifest.add_output(json_path);
  manifest.add_output(csv_path);
  manifest.add_output(table_path);
  manifest.write(cfg.out_dir);
  std::cout << eval_table(reports);
}

void cmd_predict(const PipelineConfig& cfg) {
  const LoadedAnalysisInputs in = load_analysis_inputs(cfg, cfg.model_segment);

  RunManifest manifest;
  manifest.stage = "predict";
  manifest.seed = cfg.base_seed;
  manifest.add_input(out_path(cfg, segment_series_name(cfg.model_segment)));
  manifest.add_input(cfg.market_path);

  // Next session: the first weekday after the last market row (future
  // exchange closures are unknowable here).
  Date next = day_after(in.market.calendar.days().back());
  while (next.is_weekend()) next = day_after(next);

  // Emotion rows by calendar position, for lag lookups.
  std::map<std::int64_t, std::size_t> emotion_at;
  for (std::size_t r = 0; r < in.emotions.rows.size(); ++r) {
    const std::int64_t pos = in.market.calendar.index_of(in.emotions.rows[r].date);
    if (pos >= 0) emotion_at[pos] = r;
  }
  std::map<std::int64_t, std::size_t> target_at;
  for (std::size_t r = 0; r < in.targets.size(); ++r) {
    const std::int64_t pos = in.market.calendar.index_of(in.targets.dates[r]);
    if (pos >= 0) target_at[pos] = r;
  }
  const std::int64_t next_pos = static_cast<std::int64_t>(in.market.calendar.size());

  nlohmann::ordered_json predictions = nlohmann::ordered_json::array();
  for (const MktTarget target : kAllTargets) {
    const fs::path model_path =
        out_path(cfg, model_file_name(target, cfg.predict_recipe, 3));
    require_artifact(model_path, "trained model (run train first)");
    manifest.add_input(model_path);
    const TrainedPredictor predictor = TrainedPredictor::load(model_path);

    std::vector<double> x(predictor.spec.entries.size());
    for (std::size_t f = 0; f < predictor.spec.entries.size(); ++f) {
      const FeatureKey& key = predictor.spec.entries[f];
      const std::int64_t src = next_pos - key.lag;
      double raw = 0.0;
      if (key.is_market_return()) {
        const auto it = target_at.find(src);
        if (it == target_at.end()) {
          throw ValidationError("predict: market return missing at lag " +
                                std::to_string(key.lag));
        }
        raw = in.targets.close_r[it->second];
      } else {
        const auto it = emotion_at.find(src);
        if (it == emotion_at.end()) {
          throw ValidationError("predict: emotion series missing " + key.name());
        }
        raw = in.emotions.rows[it->second].proportions[static_cast<int>(*key.emotion)];
      }
      const MinMaxBounds& b = predictor.bounds[f];
      x[f] = (raw - b.min) / (b.max - b.min);
    }
    const int label = predictor.predict_row(x);
    predictions.push_back({{"target", std::string(to_string(target))},
                           {"label", label},
                           {"model", predictor.name},
                           {"arity", predictor.spec.arity}});
  }

  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["next_trading_day"] = to_string(next);
  j["predictions"] = predictions;
  const fs::path pred_path = out_path(cfg, "prediction.json");
  atomic_write_file(pred_path, j.dump(2) + "\n");
  manifest.add_output(pred_path);
  manifest.write(cfg.out_dir);
  std::cout << j.dump(2) << "\n";
}

}  // namespace emostock
