#include <benchmark/benchmark.h>

#include "afdforge/stemmer.hpp"

namespace {

const char* kWords[] = {"sources",    "vanity",     "keep",       "deletion",   "notability",
                        "discussions", "harassment", "disruptive", "generalization",
                        "lighthouse", "archive",    "nominated",  "relational", "happily"};

void BM_StemEnglish(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    auto stem = afdforge::features::stem_english(kWords[i % std::size(kWords)]);
    benchmark::DoNotOptimize(stem);
    ++i;
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_StemEnglish);

}  // namespace
