#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace afdforge::model {

// Joint vocabulary of both class corpora plus UNK, so the paired models
// score identical token streams.
class LmVocab {
 public:
  static constexpr std::uint32_t kUnk = 0;

  LmVocab() { words_.push_back("<unk>"); }

  static LmVocab build(std::initializer_list<const std::vector<std::vector<std::string>>*> corpora);

  void add(const std::string& word);
  std::uint32_t id_or_unk(std::string_view word) const;
  const std::string& word(std::uint32_t id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> words_;
};

struct LmOptions {
  int order = 4;
  bool skip_interpolation = true;
};

// Count-based n-gram model with modified Kneser-Ney smoothing. Histories
// back off by replacing one concrete position with a wildcard at a time;
// with skip interpolation every concrete position is a candidate (uniform
// weights), without it only the oldest one is, which reproduces plain
// modified Kneser-Ney. Wildcard patterns are counted Kneser-Ney style (the
// number of distinct fillings with a positive full count); the all-wildcard
// pattern is the continuation unigram over bigram occupancy, interpolated
// with the uniform distribution over the vocabulary (including UNK).
// Discounts D1/D2/D3+ per pattern table follow the count-of-count estimator
// with a 0.5 absolute-discount fallback whenever a needed count-of-counts is
// zero. Posts are independent sequences; histories truncate at post start.
class LmModel {
 public:
  static LmModel train(const std::vector<std::vector<std::string>>& posts, const LmVocab& vocab,
                       const LmOptions& options);

  // P(word | history); unseen tokens map to UNK, histories truncate to the
  // last order-1 words.
  double probability(std::string_view word, std::span<const std::string> history) const;

  // Distribution of one concrete pattern: history.size() == k, mask bit p
  // set means history position p (0 = oldest) is concrete. Exposed so the
  // normalization of every skip pattern can be checked directly.
  double pattern_probability(std::uint32_t word_id, std::span<const std::uint32_t> history,
                             std::uint32_t mask) const;

  // Average negative log-probability per word; e^H is the perplexity.
  // Throws on an empty post.
  double entropy(const std::vector<std::string>& post) const;

  void dump(std::ostream& out) const;
  static LmModel load(std::istream& in);

  const LmVocab& vocab() const { return vocab_; }
  int order() const { return options_.order; }
  bool skip_interpolation() const { return options_.skip_interpolation; }

 private:
  struct HistAgg {
    double total = 0.0;
    std::uint64_t n1 = 0, n2 = 0, n3p = 0;
  };
  struct Discounts {
    double d1 = 0.5, d2 = 0.5, d3 = 0.5;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const;
  };
  struct Table {
    std::unordered_map<std::vector<std::uint32_t>, std::uint64_t, KeyHash> counts;
    std::unordered_map<std::vector<std::uint32_t>, HistAgg, KeyHash> hist;
    Discounts disc;
    void finalize();
  };

  double unigram_probability(std::uint32_t word_id) const;
  double pattern_recursive(std::uint32_t word_id, std::span<const std::uint32_t> history,
                           std::uint32_t mask, std::vector<double>& memo) const;
  void build_derived();

  LmOptions options_;
  LmVocab vocab_;
  // raw_[k]: full-pattern counts over windows of k+1 tokens, k = 1..order-1
  // (k = 1 always present; it feeds the continuation unigram)
  std::vector<Table> raw_;
  // cont_[k][mask]: wildcard patterns, counted by distinct fillings
  std::vector<std::vector<Table>> cont_;
  Table unigram_;
};

struct LmPrediction {
  int label = 0;
  double entropy_pos = 0.0;
  double entropy_neg = 0.0;
  // higher = more disruptive
  double score() const { return entropy_neg - entropy_pos; }
};

// Lower perplexity wins; an exact tie goes to class 0.
LmPrediction predict_lm(const LmModel& positive, const LmModel& negative,
                        const std::vector<std::string>& post);

}  // namespace afdforge::model
