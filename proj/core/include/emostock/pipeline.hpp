#pragma once

#include "emostock/config.hpp"

namespace emostock {

enum class AnalyzeKind : int { corr = 0, granger = 1, volatility = 2 };

/// Pipeline stages behind the CLI subcommands. Each stage reads its declared
/// inputs, writes its outputs atomically under cfg.out_dir, and records a
/// run manifest (inputs, outputs, content hashes, seed). Stages never mutate
/// their inputs; reruns with identical inputs and seed are byte-identical.

/// Generates the synthetic fixture (tweets.jsonl, market.csv, truth.json)
/// plus a ready-to-run config.json pointing at it.
void cmd_synth(const PipelineConfig& cfg);

/// Parses raw tweets and keeps the stock-relevant ones.
void cmd_ingest(const PipelineConfig& cfg);

/// Trains the emotion classifier on the emoticon-labeled subset, reports
/// heldout accuracy, and labels every relevant tweet.
void cmd_classify(const PipelineConfig& cfg);

/// Builds per-segment daily emotion series restricted to trading days.
void cmd_build_series(const PipelineConfig& cfg, bool plot = false);

/// Derives the five target series from the market file.
void cmd_market(const PipelineConfig& cfg, bool plot = false);

/// Correlation grid, Granger grid, or per-segment volatility report.
void cmd_analyze(const PipelineConfig& cfg, AnalyzeKind kind, bool plot = false);

/// Fits discretizers and predictors on the training window with
/// cross-validation reports; persists the models.
void cmd_train(const PipelineConfig& cfg);

/// Scores every persisted model on the chronological test window.
void cmd_evaluate(const PipelineConfig& cfg);

/// Emits next-trading-day class labels for all five targets using only data
/// available before the market opens.
void cmd_predict(const PipelineConfig& cfg);

}  // namespace emostock
