#include <benchmark/benchmark.h>

#include "afdforge/lm.hpp"
#include "afdforge/rng.hpp"

namespace {

using namespace afdforge;

std::vector<std::vector<std::string>> synthetic_corpus(std::size_t posts) {
  const char* words[] = {"keep", "delete", "per", "nom", "you", "i", "article",
                         "sources", "notability", "merge", "the", "and"};
  util::Rng rng(7);
  std::vector<std::vector<std::string>> out;
  for (std::size_t p = 0; p < posts; ++p) {
    std::vector<std::string> post;
    std::size_t len = 5 + rng.below(30);
    for (std::size_t w = 0; w < len; ++w) post.push_back(words[rng.below(std::size(words))]);
    out.push_back(std::move(post));
  }
  return out;
}

void BM_LmTrain(benchmark::State& state) {
  auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)));
  model::LmVocab vocab = model::LmVocab::build({&corpus});
  for (auto _ : state) {
    auto lm = model::LmModel::train(corpus, vocab, {4, true});
    benchmark::DoNotOptimize(lm);
  }
}
BENCHMARK(BM_LmTrain)->Arg(50)->Arg(200);

void BM_LmEntropy(benchmark::State& state) {
  auto corpus = synthetic_corpus(200);
  model::LmVocab vocab = model::LmVocab::build({&corpus});
  model::LmModel lm = model::LmModel::train(corpus, vocab, {4, true});
  std::vector<std::string> post = corpus[0];
  for (auto _ : state) {
    double h = lm.entropy(post);
    benchmark::DoNotOptimize(h);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(post.size()));
}
BENCHMARK(BM_LmEntropy);

}  // namespace
