#include <algorithm>
#include <map>

#include "emostock/errors.hpp"
#include "emostock/models.hpp"

namespace emostock {

std::string FeatureKey::name() const {
  const std::string src = emotion ? std::string(to_string(*emotion)) : "market_return";
  return src + "_lag" + std::to_string(lag);
}

FeatureSpec FeatureSpec::make(std::vector<FeatureKey> entries, MktTarget target, int arity) {
  if (entries.empty()) throw ArgumentError("FeatureSpec: no entries");
  if (arity != 2 && arity != 3) throw ArgumentError("FeatureSpec: arity must be 2 or 3");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].lag < 1 || entries[i].lag > 5) {
      throw ArgumentError("FeatureSpec: lag out of 1..5 in entry " + entries[i].name());
    }
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[i] == entries[j]) {
        throw ArgumentError("FeatureSpec: duplicate entry " + entries[i].name());
      }
    }
  }
  FeatureSpec spec;
  spec.entries = std::move(entries);
  spec.target = target;
  spec.arity = arity;
  return spec;
}

namespace {

void push_emotion_lags(std::vector<FeatureKey>& keys, Emotion e,
                       std::initializer_list<int> lags) {
  for (const int lag : lags) keys.push_back({e, lag});
}

}  // namespace

FeatureSpec FeatureSpec::svm_es(MktTarget target, int arity) {
  std::vector<FeatureKey> keys;
  switch (target) {
    case MktTarget::close:
      push_emotion_lags(keys, Emotion::disgust, {1, 2});
      break;
    case MktTarget::open:
      push_emotion_lags(keys, Emotion::fear, {1, 2, 3, 4, 5});
      push_emotion_lags(keys, Emotion::joy, {1, 2, 3, 4, 5});
      push_emotion_lags(keys, Emotion::disgust, {3, 4});
      break;
    case MktTarget::high:
      push_emotion_lags(keys, Emotion::joy, {1, 2, 3, 4});
      push_emotion_lags(keys, Emotion::sadness, {1, 2, 3});
      push_emotion_lags(keys, Emotion::disgust, {5});
      break;
    case MktTarget::low:
      push_emotion_lags(keys, Emotion::sadness, {1});
      push_emotion_lags(keys, Emotion::joy, {1, 2, 3});
      push_emotion_lags(keys, Emotion::disgust, {5});
      break;
    case MktTarget::volume:
      push_emotion_lags(keys, Emotion::sadness, {1, 2, 3, 4, 5});
      push_emotion_lags(keys, Emotion::fear, {1, 2, 3, 4, 5});
      break;
  }
  return make(std::move(keys), target, arity);
}

FeatureSpec FeatureSpec::svm_mr(MktTarget target, int arity) {
  std::vector<FeatureKey> keys;
  for (int lag = 1; lag <= 5; ++lag) keys.push_back({std::nullopt, lag});
  return make(std::move(keys), target, arity);
}

FeatureSpec FeatureSpec::all_emotions(MktTarget target, int arity) {
  std::vector<FeatureKey> keys;
  for (const Emotion e : kAllEmotions) {
    for (int lag = 1; lag <= 5; ++lag) keys.push_back({e, lag});
  }
  return make(std::move(keys), target, arity);
}

Dataset build_dataset(const FeatureSpec& spec, const EmotionSeries& emotions,
                      const TargetSeries& targets, const TradingCalendar& cal,
                      const Discretizer& disc, const DatasetWindow& window,
                      const std::vector<MinMaxBounds>* train_bounds,
                      const KmeansParams& kmeans_params) {
  if (disc.arity() != spec.arity) {
    throw ArgumentError("build_dataset: discretizer arity does not match the feature spec");
  }
  if (train_bounds && train_bounds->size() != spec.entries.size()) {
    throw ArgumentError("build_dataset: bounds count does not match the feature spec");
  }

  // Emotion rows and target rows by calendar position (inner joins on date).
  std::map<std::int64_t, std::size_t> emotion_at;  // calendar pos -> emotion row
  for (std::size_t r = 0; r < emotions.rows.size(); ++r) {
    const std::int64_t pos = cal.index_of(emotions.rows[r].date);
    if (pos >= 0) emotion_at[pos] = r;
  }
  std::map<std::int64_t, std::size_t> target_at;  // calendar pos -> target row
  for (std::size_t r = 0; r < targets.size(); ++r) {
    const std::int64_t pos = cal.index_of(targets.dates[r]);
    if (pos >= 0) target_at[pos] = r;
  }

  const std::vector<double>& y = targets.column(spec.target);

  Dataset data;
  data.spec = spec;
  data.discretizer = disc;
  data.disc_kmeans_params = kmeans_params;

  std::vector<double> row_buf(spec.entries.size());
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < targets.size(); ++r) {
    const Date d = targets.dates[r];
    if (d < window.from || window.to < d) continue;
    const std::int64_t pos = cal.index_of(d);
    if (pos < 0) continue;

    bool complete = true;
    for (std::size_t f = 0; f < spec.entries.size() && complete; ++f) {
      const FeatureKey& key = spec.entries[f];
      const std::int64_t src_pos = pos - key.lag;
      if (src_pos < 0) {
        complete = false;
        break;
      }
      if (key.is_market_return()) {
        const auto it = target_at.find(src_pos);
        if (it == target_at.end()) {
          complete = false;
        } else {
          row_buf[f] = targets.close_r[it->second];
        }
      } else {
        const auto it = emotion_at.find(src_pos);
        if (it == emotion_at.end()) {
          complete = false;
        } else {
          row_buf[f] =
              emotions.rows[it->second].proportions[static_cast<int>(*key.emotion)];
        }
      }
    }
    if (!complete) continue;

    data.dates.push_back(d);
    data.target_raw.push_back(y[r]);
    rows.push_back(row_buf);
  }

  if (rows.empty()) {
    throw DegenerateError("build_dataset: empty join between features and target window");
  }

  const std::size_t n = rows.size();
  const std::size_t d = spec.entries.size();
  data.raw = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), data.raw.row(i).begin());
  }

  // Normalization: fit per column in train mode, apply the given training
  // bounds in test mode (values may then leave [0, 1]).
  data.features = Matrix(n, d);
  data.bounds.resize(d);
  std::vector<double> column(n);
  for (std::size_t f = 0; f < d; ++f) {
    for (std::size_t i = 0; i < n; ++i) column[i] = data.raw.at(i, f);
    std::vector<double> scaled;
    if (train_bounds) {
      data.bounds[f] = (*train_bounds)[f];
      scaled = minmax_apply(column, data.bounds[f]);
    } else {
      auto [values, bounds] = minmax_fit_transform(column);
      scaled = std::move(values);
      data.bounds[f] = bounds;
    }
    for (std::size_t i = 0; i < n; ++i) data.features.at(i, f) = scaled[i];
  }

  data.labels = apply(disc, data.dates, data.target_raw);
  return data;
}

}  // namespace emostock
