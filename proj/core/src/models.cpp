#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "emostock/errors.hpp"
#include "emostock/io.hpp"
#include "emostock/models.hpp"
#include "emostock/rng.hpp"

namespace emostock {

namespace {

int label_to_index(int label, int arity) { return arity == 3 ? label + 1 : label; }

std::vector<std::vector<std::int64_t>> empty_confusion(int arity) {
  return std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(arity),
                                                std::vector<std::int64_t>(arity, 0));
}

double pooled_accuracy(const std::vector<std::vector<std::int64_t>>& confusion) {
  std::int64_t trace = 0, total = 0;
  for (std::size_t r = 0; r < confusion.size(); ++r) {
    for (std::size_t c = 0; c < confusion[r].size(); ++c) {
      total += confusion[r][c];
      if (r == c) trace += confusion[r][c];
    }
  }
  return total > 0 ? static_cast<double>(trace) / static_cast<double>(total) : 0.0;
}

// Refits the dataset's discretization method on a subset of target values.
Discretizer refit_discretizer(const Dataset& data, std::span<const double> target_values,
                              std::uint64_t seed) {
  switch (data.discretizer.method) {
    case DiscretizeMethod::sign:
      return sign_discretizer();
    case DiscretizeMethod::equal_frequency:
      return equal_frequency_fit(target_values);
    case DiscretizeMethod::kmeans:
      return kmeans1d_fit(target_values, seed, data.disc_kmeans_params);
  }
  throw ArgumentError("refit_discretizer: bad method");
}

struct FittedFold {
  std::vector<MinMaxBounds> bounds;
  Discretizer disc;
};

int predict_with(ModelKind kind, const std::optional<SvmModel>& svm,
                 const std::optional<LogRegModel>& logreg, std::span<const double> x) {
  if (kind == ModelKind::svm) return svm->predict(x);
  return logreg->predict(x);
}

// --- base64 for the binary coefficient block -------------------------------

constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<double>& values) {
  std::string bytes(values.size() * sizeof(double), '\0');
  std::memcpy(bytes.data(), values.data(), bytes.size());
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    std::uint32_t chunk = static_cast<unsigned char>(bytes[i]) << 16;
    if (i + 1 < bytes.size()) chunk |= static_cast<unsigned char>(bytes[i + 1]) << 8;
    if (i + 2 < bytes.size()) chunk |= static_cast<unsigned char>(bytes[i + 2]);
    out += kB64Alphabet[(chunk >> 18) & 0x3F];
    out += kB64Alphabet[(chunk >> 12) & 0x3F];
    out += i + 1 < bytes.size() ? kB64Alphabet[(chunk >> 6) & 0x3F] : '=';
    out += i + 2 < bytes.size() ? kB64Alphabet[chunk & 0x3F] : '=';
  }
  return out;
}

std::vector<double> base64_decode(const std::string& text) {
  auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::string bytes;
  bytes.reserve(text.size() / 4 * 3);
  std::uint32_t chunk = 0;
  int bits = 0;
  for (const char c : text) {
    if (c == '=') break;
    const int v = value_of(c);
    if (v < 0) throw FormatError("model file: invalid base64 coefficient block");
    chunk = (chunk << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      bytes += static_cast<char>((chunk >> bits) & 0xFF);
    }
  }
  if (bytes.size() % sizeof(double) != 0) {
    throw FormatError("model file: coefficient block is not a whole number of doubles");
  }
  std::vector<double> values(bytes.size() / sizeof(double));
  std::memcpy(values.data(), bytes.data(), bytes.size());
  return values;
}

nlohmann::ordered_json spec_to_json(const FeatureSpec& spec) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const FeatureKey& key : spec.entries) {
    entries.push_back(
        {{"source", key.emotion ? std::string(to_string(*key.emotion)) : "market_return"},
         {"lag", key.lag}});
  }
  return {{"target", std::string(to_string(spec.target))},
          {"arity", spec.arity},
          {"entries", entries}};
}

FeatureSpec spec_from_json(const nlohmann::json& j) {
  std::vector<FeatureKey> keys;
  for (const auto& e : j.at("entries")) {
    FeatureKey key;
    const std::string source = e.at("source").get<std::string>();
    if (source != "market_return") {
      const auto emotion = emotion_from_string(source);
      if (!emotion) throw FormatError("model file: unknown feature source '" + source + "'");
      key.emotion = *emotion;
    }
    key.lag = e.at("lag").get<int>();
    keys.push_back(key);
  }
  const auto target = target_from_string(j.at("target").get<std::string>());
  if (!target) throw FormatError("model file: unknown target");
  return FeatureSpec::make(std::move(keys), *target, j.at("arity").get<int>());
}

}  // namespace

EvalReport cross_validate(const Dataset& data, ModelKind kind, const CvParams& cv,
                          std::uint64_t seed, const SvmParams& svm_params,
                          const LogregParams& logreg_params) {
  const std::size_t n = data.size();
  if (cv.k < 2) throw ArgumentError("cross_validate: k must be >= 2");
  if (n < static_cast<std::size_t>(cv.k)) {
    throw ArgumentError("cross_validate: fewer rows than folds");
  }

  // Fold assignment: seeded shuffle with round-robin fold ids (default), or
  // contiguous chronological blocks.
  std::vector<int> fold_of(n);
  if (cv.chronological) {
    for (std::size_t i = 0; i < n; ++i) {
      fold_of[i] = static_cast<int>(i * static_cast<std::size_t>(cv.k) / n);
    }
  } else {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, "cv-folds"));
    rng.shuffle(order);
    for (std::size_t r = 0; r < n; ++r) {
      fold_of[order[r]] = static_cast<int>(r % static_cast<std::size_t>(cv.k));
    }
  }

  EvalReport report;
  report.target = data.spec.target;
  report.model_name = std::string(to_string(kind));
  report.discretizer_name = std::string(to_string(data.discretizer.method));
  report.arity = data.spec.arity;
  report.confusion = empty_confusion(data.spec.arity);
  report.period = "cross-validation";

  const std::size_t d = data.spec.entries.size();
  for (int fold = 0; fold < cv.k; ++fold) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < n; ++i) {
      (fold_of[i] == fold ? test_idx : train_idx).push_back(i);
    }
    if (test_idx.empty() || train_idx.size() < d + 2) {
      report.skipped_folds.push_back(fold);
      continue;
    }

    bool skipped = false;
    FittedFold fitted;
    std::vector<double> train_targets;
    train_targets.reserve(train_idx.size());
    for (const std::size_t i : train_idx) train_targets.push_back(data.target_raw[i]);
    try {
      fitted.disc = refit_discretizer(data, train_targets,
                                      derive_seed(seed, "cv-disc-" + std::to_string(fold)));
      fitted.bounds.resize(d);
      std::vector<double> column(train_idx.size());
      for (std::size_t f = 0; f < d; ++f) {
        for (std::size_t r = 0; r < train_idx.size(); ++r) {
          column[r] = data.raw.at(train_idx[r], f);
        }
        fitted.bounds[f] = minmax_fit_transform(column).second;
      }
    } catch (const DegenerateError&) {
      report.skipped_folds.push_back(fold);
      continue;
    }

    Matrix train_x(train_idx.size(), d);
    std::vector<int> train_y(train_idx.size());
    for (std::size_t r = 0; r < train_idx.size(); ++r) {
      for (std::size_t f = 0; f < d; ++f) {
        train_x.at(r, f) = (data.raw.at(train_idx[r], f) - fitted.bounds[f].min) /
                           (fitted.bounds[f].max - fitted.bounds[f].min);
      }
      train_y[r] = fitted.disc.apply_one(data.target_raw[train_idx[r]]);
    }
    const std::set<int> classes(train_y.begin(), train_y.end());
    if (classes.size() < 2) {
      report.skipped_folds.push_back(fold);
      continue;
    }

    std::optional<SvmModel> svm;
    std::optional<LogRegModel> logreg;
    try {
      if (kind == ModelKind::svm) {
        svm = svm_train(train_x, train_y, svm_params);
      } else {
        logreg = logreg_train(train_x, train_y, logreg_params);
      }
    } catch (const Error&) {
      skipped = true;
    }
    if (skipped) {
      report.skipped_folds.push_back(fold);
      continue;
    }

    std::int64_t correct = 0;
    std::vector<double> x(d);
    for (const std::size_t i : test_idx) {
      for (std::size_t f = 0; f < d; ++f) {
        x[f] = (data.raw.at(i, f) - fitted.bounds[f].min) /
               (fitted.bounds[f].max - fitted.bounds[f].min);
      }
      const int actual = fitted.disc.apply_one(data.target_raw[i]);
      const int predicted = predict_with(kind, svm, logreg, x);
      ++report.confusion[label_to_index(actual, data.spec.arity)]
                        [label_to_index(predicted, data.spec.arity)];
      if (predicted == actual) ++correct;
    }
    report.fold_accuracies.push_back(static_cast<double>(correct) /
                                     static_cast<double>(test_idx.size()));
  }

  report.accuracy = pooled_accuracy(report.confusion);
  return report;
}

int TrainedPredictor::predict_row(std::span<const double> normalized_features) const {
  if (kind == ModelKind::svm) return svm->predict(normalized_features);
  return logreg->predict(normalized_features);
}

TrainedPredictor train_predictor(ModelKind kind, const std::string& name,
                                 const Dataset& train_data, const SvmParams& svm_params,
                                 const LogregParams& logreg_params) {
  TrainedPredictor p;
  p.kind = kind;
  p.name = name;
  p.spec = train_data.spec;
  p.discretizer = train_data.discretizer;
  p.bounds = train_data.bounds;
  if (kind == ModelKind::svm) {
    p.svm = svm_train(train_data.features, train_data.labels.labels, svm_params);
  } else {
    p.logreg = logreg_train(train_data.features, train_data.labels.labels, logreg_params);
  }
  return p;
}

EvalReport evaluate_holdout(const TrainedPredictor& predictor, const Dataset& test_data) {
  if (test_data.size() == 0) throw ArgumentError("evaluate_holdout: empty test dataset");
  if (test_data.spec.entries.size() != predictor.spec.entries.size()) {
    throw ArgumentError("evaluate_holdout: feature arity mismatch");
  }

  EvalReport report;
  report.target = predictor.spec.target;
  report.model_name = predictor.name;
  report.discretizer_name = std::string(to_string(predictor.discretizer.method));
  report.arity = predictor.spec.arity;
  report.confusion = empty_confusion(report.arity);
  report.period = to_string(test_data.dates.front()) + ".." + to_string(test_data.dates.back());

  for (std::size_t i = 0; i < test_data.size(); ++i) {
    const int actual = test_data.labels.labels[i];
    const int predicted = predictor.predict_row(test_data.features.row(i));
    ++report.confusion[label_to_index(actual, report.arity)]
                      [label_to_index(predicted, report.arity)];
  }
  report.accuracy = pooled_accuracy(report.confusion);
  return report;
}

void TrainedPredictor::save(const std::filesystem::path& path) const {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["kind"] = std::string(to_string(kind));
  j["name"] = name;
  j["feature_spec"] = spec_to_json(spec);
  j["discretizer"] = nlohmann::ordered_json::parse(discretizer.to_json());
  nlohmann::ordered_json bounds_json = nlohmann::ordered_json::array();
  for (const auto& b : bounds) bounds_json.push_back({{"min", b.min}, {"max", b.max}});
  j["bounds"] = bounds_json;

  // Coefficients go into one packed little-endian double block; the JSON
  // metadata records how to slice it.
  std::vector<double> block;
  if (kind == ModelKind::svm) {
    const SvmModel& m = *svm;
    nlohmann::ordered_json sj;
    sj["kernel"] = std::string(to_string(m.params.kernel));
    sj["C"] = m.params.C;
    sj["gamma"] = m.gamma_effective;
    sj["tol"] = m.params.tol;
    sj["classes"] = m.classes;
    sj["n_features"] = m.n_features;
    sj["converged"] = m.converged;
    nlohmann::ordered_json machines = nlohmann::ordered_json::array();
    for (const BinarySvm& machine : m.machines) {
      machines.push_back({{"class_pos", machine.class_pos},
                          {"class_neg", machine.class_neg},
                          {"bias", machine.bias},
                          {"kkt_residual", machine.kkt_residual},
                          {"converged", machine.converged},
                          {"iterations", machine.iterations},
                          {"n_sv", machine.alpha.size()},
                          {"sv_labels", machine.sv_labels}});
      for (const double a : machine.alpha) block.push_back(a);
      for (const double v : machine.support_vectors.data()) block.push_back(v);
    }
    sj["machines"] = machines;
    j["svm"] = sj;
  } else {
    const LogRegModel& m = *logreg;
    nlohmann::ordered_json lj;
    lj["classes"] = m.classes;
    lj["l2_penalty"] = m.l2_penalty;
    lj["converged"] = m.converged;
    lj["final_loss"] = m.final_loss;
    lj["grad_max_norm"] = m.grad_max_norm;
    lj["rows"] = m.weights.rows();
    lj["cols"] = m.weights.cols();
    j["logreg"] = lj;
    for (const double w : m.weights.data()) block.push_back(w);
  }
  j["coefficients_b64"] = base64_encode(block);
  atomic_write_file(path, j.dump() + "\n");
}

TrainedPredictor TrainedPredictor::load(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("model file " + path.string() + ": " + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw FormatError("model file " + path.string() + ": unsupported format_version");
    }
    TrainedPredictor p;
    p.kind = j.at("kind").get<std::string>() == "svm" ? ModelKind::svm : ModelKind::logreg;
    p.name = j.at("name").get<std::string>();
    p.spec = spec_from_json(j.at("feature_spec"));
    p.discretizer = Discretizer::from_json(j.at("discretizer").dump());
    for (const auto& b : j.at("bounds")) {
      p.bounds.push_back({b.at("min").get<double>(), b.at("max").get<double>()});
    }
    const std::vector<double> block = base64_decode(j.at("coefficients_b64").get<std::string>());
    std::size_t cursor = 0;
    auto take = [&](std::size_t count) {
      if (cursor + count > block.size()) {
        throw FormatError("model file " + path.string() + ": coefficient block too short");
      }
      const std::size_t begin = cursor;
      cursor += count;
      return std::span<const double>(block.data() + begin, count);
    };

    if (p.kind == ModelKind::svm) {
      const auto& sj = j.at("svm");
      SvmModel m;
      m.params.kernel =
          sj.at("kernel").get<std::string>() == "linear" ? Kernel::linear : Kernel::rbf;
      m.params.C = sj.at("C").get<double>();
      m.params.gamma = sj.at("gamma").get<double>();
      m.params.tol = sj.at("tol").get<double>();
      m.gamma_effective = m.params.gamma;
      m.classes = sj.at("classes").get<std::vector<int>>();
      m.n_features = sj.at("n_features").get<std::size_t>();
      m.converged = sj.at("converged").get<bool>();
      for (const auto& mj : sj.at("machines")) {
        BinarySvm machine;
        machine.class_pos = mj.at("class_pos").get<int>();
        machine.class_neg = mj.at("class_neg").get<int>();
        machine.bias = mj.at("bias").get<double>();
        machine.kkt_residual = mj.at("kkt_residual").get<double>();
        machine.converged = mj.at("converged").get<bool>();
        machine.iterations = mj.at("iterations").get<long>();
        machine.sv_labels = mj.at("sv_labels").get<std::vector<int>>();
        const std::size_t n_sv = mj.at("n_sv").get<std::size_t>();
        const auto alpha = take(n_sv);
        machine.alpha.assign(alpha.begin(), alpha.end());
        const auto svs = take(n_sv * m.n_features);
        machine.support_vectors = Matrix(n_sv, m.n_features);
        std::copy(svs.begin(), svs.end(), machine.support_vectors.data().begin());
        m.machines.push_back(std::move(machine));
      }
      p.svm = std::move(m);
    } else {
      const auto& lj = j.at("logreg");
      LogRegModel m;
      m.classes = lj.at("classes").get<std::vector<int>>();
      m.l2_penalty = lj.at("l2_penalty").get<double>();
      m.converged = lj.at("converged").get<bool>();
      m.final_loss = lj.at("final_loss").get<double>();
      m.grad_max_norm = lj.at("grad_max_norm").get<double>();
      const std::size_t rows = lj.at("rows").get<std::size_t>();
      const std::size_t cols = lj.at("cols").get<std::size_t>();
      m.weights = Matrix(rows, cols);
      const auto w = take(rows * cols);
      std::copy(w.begin(), w.end(), m.weights.data().begin());
      p.logreg = std::move(m);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("model file " + path.string() + ": " + e.what());
  }
}

SvmParams svm_grid_search(const Dataset& data, const CvParams& cv, std::uint64_t seed,
                          const std::vector<double>& c_grid,
                          const std::vector<double>& gamma_grid) {
  SvmParams best;
  double best_acc = -1.0;
  for (const double c : c_grid) {
    for (const double gamma : gamma_grid) {
      SvmParams candidate;
      candidate.C = c;
      candidate.gamma = gamma;
      const EvalReport report =
          cross_validate(data, ModelKind::svm, cv, derive_seed(seed, "grid-search"), candidate);
      if (report.accuracy > best_acc) {
        best_acc = report.accuracy;
        best = candidate;
      }
    }
  }
  return best;
}

}  // namespace emostock
