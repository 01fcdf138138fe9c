// Command-line front end for the emotion/stock analysis pipeline.
//
// Subcommands mirror the pipeline stages:
//   synth, ingest, classify, build-series, market,
//   analyze {corr|granger|volatility}, train, evaluate, predict
//
// Exit codes: 0 success, 2 config error, 3 missing artifact,
// 4 data validation error, 1 anything else.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "emostock/config.hpp"
#include "emostock/errors.hpp"
#include "emostock/pipeline.hpp"

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool plot = false;
};

emostock::PipelineConfig resolve_config(const GlobalOptions& opts, bool config_required) {
  emostock::PipelineConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = emostock::PipelineConfig::load(opts.config_path);
  } else if (config_required) {
    throw emostock::ConfigError("missing --config PATH");
  }
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.seed_set) {
    cfg.base_seed = opts.seed;
    cfg.synth.seed = opts.seed;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emostock: emotion-driven stock market analysis pipeline"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--config", opts.config_path, "Pipeline config JSON")->expected(1);
  app.add_option("--out", opts.out_dir, "Output directory override")->expected(1);
  auto* seed_opt = app.add_option("--seed", opts.seed, "Base seed override");
  app.add_flag("--plot", opts.plot, "Also emit SVG line charts where supported");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic fixture");
  auto* ingest = app.add_subcommand("ingest", "Parse tweets and filter stock-relevant ones");
  auto* classify = app.add_subcommand("classify", "Train the emotion classifier and label tweets");
  auto* build_series = app.add_subcommand("build-series", "Build per-segment daily emotion series");
  auto* market = app.add_subcommand("market", "Derive the five market target series");
  auto* analyze = app.add_subcommand("analyze", "Correlation / Granger / volatility analysis");
  std::string analyze_kind;
  analyze->add_option("kind", analyze_kind, "One of: corr, granger, volatility")->required();
  auto* train = app.add_subcommand("train", "Fit predictors with cross-validation");
  auto* evaluate = app.add_subcommand("evaluate", "Score models on the holdout window");
  auto* predict = app.add_subcommand("predict", "Emit next-trading-day class labels");
  for (auto* sub : {synth, ingest, classify, build_series, market, analyze, train, evaluate,
                    predict}) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);
  opts.seed_set = seed_opt->count() > 0;

  try {
    if (synth->parsed()) {
      // synth can run from defaults alone: --out (or cwd out/) is enough.
      emostock::cmd_synth(resolve_config(opts, /*config_required=*/false));
    } else if (ingest->parsed()) {
      emostock::cmd_ingest(resolve_config(opts, true));
    } else if (classify->parsed()) {
      emostock::cmd_classify(resolve_config(opts, true));
    } else if (build_series->parsed()) {
      emostock::cmd_build_series(resolve_config(opts, true), opts.plot);
    } else if (market->parsed()) {
      emostock::cmd_market(resolve_config(opts, true), opts.plot);
    } else if (analyze->parsed()) {
      emostock::AnalyzeKind kind;
      if (analyze_kind == "corr") {
        kind = emostock::AnalyzeKind::corr;
      } else if (analyze_kind == "granger") {
        kind = emostock::AnalyzeKind::granger;
      } else if (analyze_kind == "volatility") {
        kind = emostock::AnalyzeKind::volatility;
      } else {
        throw emostock::ConfigError("analyze: kind must be corr, granger or volatility");
      }
      emostock::cmd_analyze(resolve_config(opts, true), kind, opts.plot);
    } else if (train->parsed()) {
      emostock::cmd_train(resolve_config(opts, true));
    } else if (evaluate->parsed()) {
      emostock::cmd_evaluate(resolve_config(opts, true));
    } else if (predict->parsed()) {
      emostock::cmd_predict(resolve_config(opts, true));
    }
  } catch (const emostock::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const emostock::MissingArtifactError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const emostock::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
