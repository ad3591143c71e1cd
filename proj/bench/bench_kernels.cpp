#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "epistemo/conceptnet.hpp"
#include "epistemo/kernels.hpp"
#include "epistemo/metrics.hpp"

namespace {

using namespace epistemo::kernels;

struct Fixture {
  std::vector<double> matrix;
  std::vector<double> query;
  std::vector<std::string> ids;
  std::size_t dim = 256;

  explicit Fixture(std::size_t rows) {
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> g;
    matrix.resize(rows * dim);
    for (auto& x : matrix) x = g(rng);
    query.resize(dim);
    for (auto& x : query) x = g(rng);
    for (std::size_t i = 0; i < rows; ++i) ids.push_back("c" + std::to_string(i));
  }
};

template <bool Parallel>
void BM_InnerProducts(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(f.ids.size());
  for (auto _ : state) {
    if constexpr (Parallel) omp::inner_products({f.matrix, f.dim}, f.query, out);
    else serial::inner_products({f.matrix, f.dim}, f.query, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_ArgMax(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    ArgMax m = Parallel ? omp::argmax_inner_product({f.matrix, f.dim}, f.query, f.ids)
                        : serial::argmax_inner_product({f.matrix, f.dim}, f.query, f.ids);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_SharedKeywordPairs(benchmark::State& state) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> word(0, 400);
  std::vector<std::vector<std::string>> sets(static_cast<std::size_t>(state.range(0)));
  for (auto& s : sets) {
    while (s.size() < 5) {
      auto w = "w" + std::to_string(word(rng));
      if (std::find(s.begin(), s.end(), w) == s.end()) s.push_back(w);
    }
    std::sort(s.begin(), s.end());
  }
  for (auto _ : state) {
    auto pairs = Parallel ? omp::shared_keyword_pairs(sets) : serial::shared_keyword_pairs(sets);
    benchmark::DoNotOptimize(pairs.data());
  }
}

epistemo::ConceptNetwork synthetic_network(std::size_t answers) {
  using namespace epistemo;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> word(0, 150);
  Transcript t;
  t.agents = {{"a", "AI-clone of A", "blue", "a"}, {"b", "AI-clone of B", "red", "b"}};
  t.turns.push_back({.index = 0, .speaker = "human", .kind = TurnKind::SeedQuestion, .text = "q"});
  for (std::size_t i = 0; i < answers; ++i) {
    if (i > 0 && i % 3 == 0) {
      t.turns.push_back({.index = t.turns.size(), .speaker = i % 2 ? "a" : "b", .kind = TurnKind::MachineQuestion,
                         .text = "q?", .addressed_to = i % 2 ? "b" : "a", .triggered_by = t.turns.size() - 1});
    }
    std::set<std::string> kw;
    while (kw.size() < kKeywordsPerChunk) kw.insert("w" + std::to_string(word(rng)));
    Turn a{.index = t.turns.size(), .speaker = i % 2 ? "b" : "a", .kind = TurnKind::Answer, .text = "x"};
    a.triggered_by = a.index - 1;
    a.keywords.assign(kw.begin(), kw.end());
    t.turns.push_back(std::move(a));
  }
  return build_network(t);
}

template <bool Parallel>
void BM_CentralityCurve(benchmark::State& state) {
  const auto net = synthetic_network(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto c = Parallel ? epistemo::omp::centrality_curve(net, epistemo::Level::Keyword, true)
                      : epistemo::serial::centrality_curve(net, epistemo::Level::Keyword, true);
    benchmark::DoNotOptimize(c.points.data());
  }
}

}  // namespace

BENCHMARK(BM_InnerProducts<false>)->Arg(1000)->Arg(100000);
BENCHMARK(BM_InnerProducts<true>)->Arg(1000)->Arg(100000);
BENCHMARK(BM_ArgMax<false>)->Arg(1000)->Arg(100000);
BENCHMARK(BM_ArgMax<true>)->Arg(1000)->Arg(100000);
BENCHMARK(BM_SharedKeywordPairs<false>)->Arg(60)->Arg(2000);
BENCHMARK(BM_SharedKeywordPairs<true>)->Arg(60)->Arg(2000);

BENCHMARK(BM_CentralityCurve<false>)->Arg(60)->Arg(300);
BENCHMARK(BM_CentralityCurve<true>)->Arg(60)->Arg(300);

BENCHMARK_MAIN();
