#include "emostock/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emostock/errors.hpp"
#include "emostock/rng.hpp"

namespace emostock {

namespace {

/// Emotion proportions and target values joined on trading dates in
/// [from, to]; lags downstream are row shifts on this joined index.
struct JoinedSeries {
  std::vector<Date> dates;
  std::array<std::vector<double>, kEmotionCount> emotion;
  std::array<std::vector<double>, 5> target;
};

JoinedSeries join_on_dates(const EmotionSeries& emotions, const TargetSeries& targets,
                           const TradingCalendar& cal, const Date& from, const Date& to) {
  std::map<std::int64_t, std::size_t> emotion_at;
  for (std::size_t r = 0; r < emotions.rows.size(); ++r) {
    emotion_at[emotions.rows[r].date.serial()] = r;
  }
  JoinedSeries joined;
  for (std::size_t r = 0; r < targets.size(); ++r) {
    const Date d = targets.dates[r];
    if (d < from || to < d) continue;
    if (!cal.contains(d)) continue;
    const auto it = emotion_at.find(d.serial());
    if (it == emotion_at.end()) continue;
    joined.dates.push_back(d);
    for (int e = 0; e < kEmotionCount; ++e) {
      joined.emotion[e].push_back(emotions.rows[it->second].proportions[e]);
    }
    for (const MktTarget t : kAllTargets) {
      joined.target[static_cast<int>(t)].push_back(targets.column(t)[r]);
    }
  }
  return joined;
}

std::vector<double> maybe_normalize(const std::vector<double>& values, bool normalized) {
  if (!normalized) return values;
  return minmax_fit_transform(values).first;
}

std::vector<double> first_difference(const std::vector<double>& values) {
  std::vector<double> out;
  if (values.size() < 2) return out;
  out.reserve(values.size() - 1);
  for (std::size_t i = 1; i < values.size(); ++i) out.push_back(values[i] - values[i - 1]);
  return out;
}

std::string cell_tag(std::string_view stage, Emotion e, int lag, MktTarget t) {
  std::string tag(stage);
  tag += '/';
  tag += to_string(e);
  tag += '/';
  tag += std::to_string(lag);
  tag += '/';
  tag += to_string(t);
  return tag;
}

char* fmt_double(char* buf, std::size_t n, double v) {
  std::snprintf(buf, n, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<CorrelationCell> correlation_grid(const EmotionSeries& emotions,
                                              const TargetSeries& targets,
                                              const TradingCalendar& cal, const Date& from,
                                              const Date& to, const CorrelationSpec& spec,
                                              std::uint64_t base_seed) {
  const JoinedSeries joined = join_on_dates(emotions, targets, cal, from, to);
  std::vector<CorrelationCell> cells;
  for (const Emotion e : kAllEmotions) {
    for (int lag = 1; lag <= spec.max_lag; ++lag) {
      const auto lagged =
          lag_series(joined.dates, joined.emotion[static_cast<int>(e)], lag);
      for (const MktTarget t : kAllTargets) {
        const auto& y_full = joined.target[static_cast<int>(t)];
        std::vector<double> y(y_full.begin() + lag, y_full.end());
        const std::vector<double> x_n = maybe_normalize(lagged.values, spec.normalized);
        const std::vector<double> y_n = maybe_normalize(y, spec.normalized);

        CorrelationCell cell;
        cell.emotion = e;
        cell.lag = lag;
        cell.target = t;
        cell.n_pairs = x_n.size();
        cell.rho = pearson(x_n, y_n);
        cell.sample_size = std::min<int>(spec.sample_size, static_cast<int>(x_n.size()));
        const auto boot = bootstrap_correlation(
            x_n, y_n, spec.n_resamples, cell.sample_size,
            derive_seed(base_seed, cell_tag("bootstrap", e, lag, t)), spec.with_replacement);
        cell.boot_mean = boot.mean;
        cell.boot_std = boot.stddev;
        const auto null = shuffle_null(x_n, y_n, spec.n_resamples,
                                       derive_seed(base_seed, cell_tag("shuffle", e, lag, t)));
        cell.shuffle_mean = null.mean;
        cell.shuffle_std = null.stddev;
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

std::vector<GrangerResult> granger_grid(const EmotionSeries& emotions,
                                        const TargetSeries& targets, const TradingCalendar& cal,
                                        const Date& from, const Date& to,
                                        const GrangerSpec& spec) {
  const JoinedSeries joined = join_on_dates(emotions, targets, cal, from, to);
  std::vector<GrangerResult> cells;
  for (const Emotion e : kAllEmotions) {
    std::vector<double> x = joined.emotion[static_cast<int>(e)];
    if (spec.first_difference) x = first_difference(x);
    if (spec.normalized) x = maybe_normalize(x, true);
    for (int lag = 1; lag <= spec.max_lag; ++lag) {
      for (const MktTarget t : kAllTargets) {
        std::vector<double> y = joined.target[static_cast<int>(t)];
        if (spec.first_difference) y = first_difference(y);
        if (spec.normalized) y = maybe_normalize(y, true);
        GrangerResult res = granger_test(y, x, lag, spec.alpha);
        res.emotion = e;
        res.target = t;
        cells.push_back(res);
      }
    }
  }
  return cells;
}

std::string correlation_csv(const std::vector<CorrelationCell>& cells) {
  std::string out =
      "emotion,lag,target,rho,boot_mean,boot_std,shuffle_mean,shuffle_std,n_pairs,sample_size\n";
  char buf[64];
  for (const auto& c : cells) {
    out += to_string(c.emotion);
    out += ',' + std::to_string(c.lag) + ',';
    out += to_string(c.target);
    for (const double v : {c.rho, c.boot_mean, c.boot_std, c.shuffle_mean, c.shuffle_std}) {
      out += ',';
      out += fmt_double(buf, sizeof(buf), v);
    }
    out += ',' + std::to_string(c.n_pairs) + ',' + std::to_string(c.sample_size) + '\n';
  }
  return out;
}

std::string correlation_json(const std::vector<CorrelationCell>& cells) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    arr.push_back({{"emotion", std::string(to_string(c.emotion))},
                   {"lag", c.lag},
                   {"target", std::string(to_string(c.target))},
                   {"rho", c.rho},
                   {"boot_mean", c.boot_mean},
                   {"boot_std", c.boot_std},
                   {"shuffle_mean", c.shuffle_mean},
                   {"shuffle_std", c.shuffle_std},
                   {"n_pairs", c.n_pairs},
                   {"sample_size", c.sample_size}});
  }
  return arr.dump(2) + "\n";
}

std::string granger_csv(const std::vector<GrangerResult>& cells) {
  std::string out =
      "emotion,lag,target,f_stat,p_value,rss_restricted,rss_unrestricted,significant,stars\n";
  char buf[64];
  for (const auto& c : cells) {
    out += to_string(c.emotion);
    out += ',' + std::to_string(c.lag) + ',';
    out += to_string(c.target);
    for (const double v : {c.f_stat, c.p_value, c.rss_restricted, c.rss_unrestricted}) {
      out += ',';
      out += fmt_double(buf, sizeof(buf), v);
    }
    out += ',';
    out += c.significant ? "1" : "0";
    out += ',';
    out += significance_stars(c.p_value);
    out += '\n';
  }
  return out;
}

std::string granger_json(const std::vector<GrangerResult>& cells) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    arr.push_back({{"emotion", std::string(to_string(c.emotion))},
                   {"lag", c.lag},
                   {"target", std::string(to_string(c.target))},
                   {"f_stat", c.f_stat},
                   {"p_value", c.p_value},
                   {"rss_restricted", c.rss_restricted},
                   {"rss_unrestricted", c.rss_unrestricted},
                   {"significant", c.significant},
                   {"stars", std::string(significance_stars(c.p_value))}});
  }
  return arr.dump(2) + "\n";
}

SegmentVolatility segment_volatility(Segment segment, const EmotionSeries& series) {
  const RjfSeries rjf = compute_rjf(series);
  SegmentVolatility row;
  row.segment = segment;
  row.excluded_zero_fear = rjf.excluded_zero_fear;
  const VolatilityReport rep = volatility(rjf.rjf);
  row.mu = rep.mu;
  row.sigma = rep.sigma;
  row.n = rep.n;
  return row;
}

std::string volatility_csv(const std::vector<SegmentVolatility>& rows) {
  std::string out = "segment,mu,sigma,n,excluded_days\n";
  char buf[64];
  for (const auto& r : rows) {
    out += to_string(r.segment);
    out += ',';
    out += fmt_double(buf, sizeof(buf), r.mu);
    out += ',';
    out += fmt_double(buf, sizeof(buf), r.sigma);
    out += ',' + std::to_string(r.n) + ',' + std::to_string(r.excluded_zero_fear) + '\n';
  }
  return out;
}

std::string volatility_json(const std::vector<SegmentVolatility>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"segment", std::string(to_string(r.segment))},
                   {"mu", r.mu},
                   {"sigma", r.sigma},
                   {"n", r.n},
                   {"excluded_days", r.excluded_zero_fear}});
  }
  return arr.dump(2) + "\n";
}

std::string rolling_volatility_csv(
    const std::vector<std::pair<Segment, std::vector<std::pair<Date, double>>>>& rows) {
  std::string out = "date,segment,sigma\n";
  char buf[64];
  for (const auto& [segment, series] : rows) {
    for (const auto& [date, sigma] : series) {
      out += to_string(date);
      out += ',';
      out += to_string(segment);
      out += ',';
      out += fmt_double(buf, sizeof(buf), sigma);
      out += '\n';
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json eval_report_to_json(const EvalReport& r) {
  return {{"target", std::string(to_string(r.target))},
          {"model", r.model_name},
          {"discretizer", r.discretizer_name},
          {"arity", r.arity},
          {"accuracy", r.accuracy},
          {"confusion", r.confusion},
          {"fold_accuracies", r.fold_accuracies},
          {"skipped_folds", r.skipped_folds},
          {"period", r.period}};
}

}  // namespace

std::string eval_reports_json(const std::vector<EvalReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(eval_report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string eval_reports_csv(const std::vector<EvalReport>& reports) {
  std::string out = "target,arity,model,discretizer,accuracy,period\n";
  char buf[64];
  for (const auto& r : reports) {
    out += to_string(r.target);
    out += ',' + std::to_string(r.arity) + ',' + r.model_name + ',' + r.discretizer_name + ',';
    out += fmt_double(buf, sizeof(buf), r.accuracy);
    out += ',' + r.period + '\n';
  }
  return out;
}

std::string eval_table(const std::vector<EvalReport>& reports) {
  // Column per model name (insertion order), row per (target, arity).
  std::vector<std::string> models;
  for (const auto& r : reports) {
    if (std::find(models.begin(), models.end(), r.model_name) == models.end()) {
      models.push_back(r.model_name);
    }
  }
  std::vector<std::pair<MktTarget, int>> rows;
  for (const auto& r : reports) {
    const std::pair<MktTarget, int> key{r.target, r.arity};
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
  }
  std::ostringstream out;
  out << "Target      ";
  for (const auto& m : models) {
    out << ' ';
    out.width(9);
    out << m;
  }
  out << '\n';
  char buf[32];
  for (const auto& [target, arity] : rows) {
    std::string label = std::string(to_string(target));
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    label += "(" + std::to_string(arity) + ")";
    out << label << std::string(label.size() < 12 ? 12 - label.size() : 1, ' ');
    for (const auto& m : models) {
      const auto it = std::find_if(reports.begin(), reports.end(), [&](const EvalReport& r) {
        return r.target == target && r.arity == arity && r.model_name == m;
      });
      if (it == reports.end()) {
        out << ' ';
        out.width(9);
        out << "-";
      } else {
        std::snprintf(buf, sizeof(buf), "%.1f%%", it->accuracy * 100.0);
        out << ' ';
        out.width(9);
        out << buf;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace emostock
