#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emostock/investors.hpp"
#include "emostock/market.hpp"
#include "emostock/models.hpp"
#include "emostock/series.hpp"
#include "emostock/stats.hpp"

namespace emostock {

/// One cell of the correlation analysis grid.
struct CorrelationCell {
  Emotion emotion = Emotion::anger;
  int lag = 1;
  MktTarget target = MktTarget::close;
  double rho = 0.0;
  double boot_mean = 0.0;
  double boot_std = 0.0;
  double shuffle_mean = 0.0;
  double shuffle_std = 0.0;
  std::size_t n_pairs = 0;
  int sample_size = 0;  // effective bootstrap subsample size
};

struct CorrelationSpec {
  int max_lag = 5;
  int n_resamples = 100;
  int sample_size = 150;  // clamped to the available pairs
  bool with_replacement = false;
  bool normalized = true;  // min-max normalize both series first
};

/// Correlation grid over (emotion x lag x target) for rows inside the date
/// window. Per-cell RNG streams derive from base_seed and the cell
/// coordinates, so the grid is reproducible and order-independent.
std::vector<CorrelationCell> correlation_grid(const EmotionSeries& emotions,
                                              const TargetSeries& targets,
                                              const TradingCalendar& cal, const Date& from,
                                              const Date& to, const CorrelationSpec& spec,
                                              std::uint64_t base_seed);

struct GrangerSpec {
  int max_lag = 5;
  double alpha = 0.05;
  bool first_difference = false;
  bool normalized = false;  // Granger runs on raw series by default
};

/// Granger grid over (emotion x lag x target); 125 cells with the defaults.
std::vector<GrangerResult> granger_grid(const EmotionSeries& emotions,
                                        const TargetSeries& targets, const TradingCalendar& cal,
                                        const Date& from, const Date& to,
                                        const GrangerSpec& spec);

std::string correlation_csv(const std::vector<CorrelationCell>& cells);
std::string correlation_json(const std::vector<CorrelationCell>& cells);
std::string granger_csv(const std::vector<GrangerResult>& cells);
std::string granger_json(const std::vector<GrangerResult>& cells);

/// Per-segment emotional-volatility summary.
struct SegmentVolatility {
  Segment segment = Segment::all;
  double mu = 0.0;
  double sigma = 0.0;
  std::size_t n = 0;
  std::size_t excluded_zero_fear = 0;
};

SegmentVolatility segment_volatility(Segment segment, const EmotionSeries& series);

std::string volatility_csv(const std::vector<SegmentVolatility>& rows);
std::string volatility_json(const std::vector<SegmentVolatility>& rows);

/// CSV `date,segment,sigma` of trailing-window volatilities.
std::string rolling_volatility_csv(
    const std::vector<std::pair<Segment, std::vector<std::pair<Date, double>>>>& rows);

std::string eval_reports_json(const std::vector<EvalReport>& reports);
std::string eval_reports_csv(const std::vector<EvalReport>& reports);

/// Human-readable accuracy table: one row per (target, arity), one column
/// per model name, accuracies to 0.1%.
std::string eval_table(const std::vector<EvalReport>& reports);

}  // namespace emostock
