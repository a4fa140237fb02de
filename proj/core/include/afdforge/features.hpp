#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "afdforge/stemmer.hpp"

namespace afdforge::features {

// Snowball stem; canonical internal-link tokens pass through unstemmed.
std::string stem(std::string_view token);

std::vector<std::string> stem_all(const std::vector<std::string>& tokens);

struct Vocabulary {
  std::unordered_map<std::string, std::uint32_t> index;  // term -> dense id
  std::vector<std::string> terms;                        // id -> term
  std::vector<std::uint32_t> df;                         // documents containing term
  std::array<std::vector<std::uint64_t>, 2> class_tf;    // summed term frequency per class
  std::uint64_t doc_count = 0;                           // N
  std::array<std::uint64_t, 2> class_doc_count{};
  std::array<std::uint64_t, 2> class_token_count{};

  std::size_t size() const { return terms.size(); }
  std::int64_t id_of(std::string_view term) const;
};

// Labels are 0/1 per document; an empty label vector counts everything as
// class 0. One-letter words and stop words are retained.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            const std::vector<int>& labels = {});

struct SparseVector {
  // (index, weight), indices strictly increasing, no stored zeros
  std::vector<std::pair<std::uint32_t, double>> entries;

  double dot(const std::vector<double>& dense) const {
    double sum = 0.0;
    for (const auto& [i, v] : entries) sum += dense[i] * v;
    return sum;
  }
};

// weight(t) = tf(t, doc) * ln(N / df(t)); out-of-vocabulary terms are
// dropped and df == N terms weigh zero and are omitted. Throws when the
// vocabulary is empty (N == 0).
SparseVector tfidf_vector(const std::vector<std::string>& stemmed_tokens, const Vocabulary& vocab);

void write_vocabulary_tsv(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocabulary_tsv(std::istream& in);

class FunctionWordList {
 public:
  static FunctionWordList load(std::istream& in);
  static FunctionWordList load_file(const std::string& path);

  bool contains(std::string_view word) const {
    return words_.count(std::string(word)) > 0;
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Subsequence of the tokens whose unstemmed lowercase form is in the list.
// The list must be non-empty. Applied before stemming.
std::vector<std::string> filter_function_words(const std::vector<std::string>& tokens,
                                               const FunctionWordList& list);

}  // namespace afdforge::features
