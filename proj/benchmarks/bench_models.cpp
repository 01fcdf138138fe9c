#include <benchmark/benchmark.h>

#include <vector>

#include "emostock/discretize.hpp"
#include "emostock/logreg.hpp"
#include "emostock/naive_bayes.hpp"
#include "emostock/rng.hpp"
#include "emostock/svm.hpp"

using namespace emostock;

namespace {

struct Blobs {
  Matrix x;
  std::vector<int> y;
};

Blobs make_blobs(std::size_t n, std::size_t d, int classes, std::uint64_t seed) {
  Rng rng(seed);
  Blobs data{Matrix(n, d), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % classes);
    for (std::size_t f = 0; f < d; ++f) {
      data.x.at(i, f) = 2.5 * c + rng.next_normal();
    }
    data.y[i] = c - 1;
  }
  return data;
}

void BM_SvmTrain(benchmark::State& state) {
  const auto data = make_blobs(static_cast<std::size_t>(state.range(0)), 8, 3, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(svm_train(data.x, data.y, {}));
  }
}
BENCHMARK(BM_SvmTrain)->Arg(100)->Arg(190)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_LogregTrain(benchmark::State& state) {
  const auto data = make_blobs(static_cast<std::size_t>(state.range(0)), 8, 3, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(logreg_train(data.x, data.y, {}));
  }
}
BENCHMARK(BM_LogregTrain)->Arg(190)->Unit(benchmark::kMillisecond);

void BM_Kmeans1dFit(benchmark::State& state) {
  Rng rng(13);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (double& x : v) x = rng.next_normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans1d_fit(v, 5));
  }
}
BENCHMARK(BM_Kmeans1dFit)->Arg(50)->Arg(196)->Arg(1000);

void BM_ClassifyTweet(benchmark::State& state) {
  // A small five-class corpus with class-specific vocabulary.
  std::vector<TweetRecord> corpus;
  Rng rng(14);
  int id = 0;
  for (const Emotion e : kAllEmotions) {
    for (int doc = 0; doc < 200; ++doc) {
      TweetRecord t;
      t.id = std::to_string(++id);
      t.gender = Gender::unknown;
      t.label = e;
      for (int w = 0; w < 8; ++w) {
        if (!t.text.empty()) t.text += ' ';
        t.text += std::string(to_string(e)) + "w" + std::to_string(rng.next_below(40));
      }
      corpus.push_back(std::move(t));
    }
  }
  const auto model = EmotionModel::train(corpus);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.classify(corpus[i % corpus.size()].text));
    ++i;
  }
}
BENCHMARK(BM_ClassifyTweet);

}  // namespace

BENCHMARK_MAIN();
