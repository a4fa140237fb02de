#include <benchmark/benchmark.h>

#include "afdforge/text_clean.hpp"

namespace {

const std::string kPost =
    "* '''Keep''' per [[WP:Notability|the notability rules]], i checked "
    "[http://example.org/archive the archive] and found three solid mentions. "
    "<small>also see the talk page</small> {{Like}} "
    "[[User:Carver|Carver]] ([[User talk:Carver|talk]]) 12:01, 3 May 2007 (UTC)";

void BM_CleanText(benchmark::State& state) {
  afdforge::textclean::TextCleaner cleaner;
  for (auto _ : state) {
    auto tokens = cleaner.clean_text(kPost);
    benchmark::DoNotOptimize(tokens);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(kPost.size()));
}
BENCHMARK(BM_CleanText);

void BM_StripMarkup(benchmark::State& state) {
  for (auto _ : state) {
    auto text = afdforge::textclean::strip_markup(kPost);
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(BM_StripMarkup);

void BM_RemoveSignatures(benchmark::State& state) {
  for (auto _ : state) {
    auto text = afdforge::textclean::remove_signatures(kPost);
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(BM_RemoveSignatures);

}  // namespace

BENCHMARK_MAIN();
