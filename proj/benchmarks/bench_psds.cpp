#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "psds/matching.hpp"
#include "psds/psdroc.hpp"

namespace {

const std::vector<std::string> kLabels{"alarm", "cat", "dishes", "dog", "speech"};

struct Corpus {
  psds::FileDurations durations;
  std::vector<psds::EventRow> gt;
};

// `files` clips of 10 s, about four labels per clip.
Corpus make_corpus(int files, std::mt19937_64& rng) {
  Corpus c;
  std::uniform_int_distribution<std::size_t> label(0, kLabels.size() - 1);
  std::uniform_real_distribution<double> start(0.0, 8.0), len(0.2, 2.0);
  for (int f = 0; f < files; ++f) {
    const auto id = "clip" + std::to_string(f);
    c.durations[id] = 10.0;
    for (int k = 0; k < 4; ++k) {
      const double on = start(rng);
      c.gt.push_back({id, on, on + len(rng), kLabels[label(rng)], 0});
    }
  }
  return c;
}

std::vector<psds::EventRow> jitter(const Corpus& c, double fp_share, std::mt19937_64& rng) {
  std::normal_distribution<double> shift(0.0, 0.3);
  std::bernoulli_distribution spurious(fp_share);
  std::uniform_int_distribution<std::size_t> label(0, kLabels.size() - 1);
  std::vector<psds::EventRow> out;
  for (const auto& e : c.gt) {
    const double on = std::clamp(e.onset + shift(rng), 0.0, 9.5);
    const double off = std::clamp(e.offset + shift(rng), on + 0.1, 10.0);
    out.push_back({e.file_id, on, off, e.label, 0});
    if (spurious(rng)) out.push_back({e.file_id, on, off, kLabels[label(rng)], 0});
  }
  return out;
}

void BM_CountMatrix(benchmark::State& state) {
  std::mt19937_64 rng(42);
  const auto corpus = make_corpus(static_cast<int>(state.range(0)), rng);
  const psds::Dataset ds(corpus.gt, corpus.durations);
  const auto dets = ds.validate_detections(jitter(corpus, 0.3, rng));
  const psds::EvalParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psds::count_matrix(dets, ds, params));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(dets.events().size()));
}
BENCHMARK(BM_CountMatrix)->RangeMultiplier(4)->Range(64, 4096);

void BM_EvaluateSweep(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto corpus = make_corpus(1000, rng);
  const psds::Dataset ds(corpus.gt, corpus.durations);
  psds::EvalParams params;
  params.alpha_ct = 0.5;
  params.alpha_st = 0.5;
  psds::Sweep sweep;
  for (int op = 0; op < state.range(0); ++op) {
    const double share = static_cast<double>(op) / static_cast<double>(state.range(0));
    const auto dets = ds.validate_detections(jitter(corpus, share, rng));
    sweep.emplace("op" + std::to_string(op), psds::count_matrix(dets, ds, params));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(psds::evaluate_sweep(sweep, ds, params));
  }
}
BENCHMARK(BM_EvaluateSweep)->Arg(10)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
