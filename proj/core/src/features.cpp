#include "afdforge/features.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "afdforge/text_clean.hpp"
#include "afdforge/text_util.hpp"

namespace afdforge::features {

std::string stem(std::string_view token) {
  if (textclean::is_link_token(token)) return std::string(token);
  return stem_english(token);
}

std::vector<std::string> stem_all(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(stem(t));
  return out;
}

std::int64_t Vocabulary::id_of(std::string_view term) const {
  auto it = index.find(std::string(term));
  return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            const std::vector<int>& labels) {
  Vocabulary vocab;
  std::unordered_map<std::uint32_t, std::uint64_t> doc_tf;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    int cls = labels.empty() ? 0 : (labels[d] ? 1 : 0);
    ++vocab.doc_count;
    ++vocab.class_doc_count[cls];
    doc_tf.clear();
    for (const std::string& term : docs[d]) {
      auto [it, inserted] = vocab.index.try_emplace(term, static_cast<std::uint32_t>(vocab.terms.size()));
      if (inserted) {
        vocab.terms.push_back(term);
        vocab.df.push_back(0);
        vocab.class_tf[0].push_back(0);
        vocab.class_tf[1].push_back(0);
      }
      ++doc_tf[it->second];
      ++vocab.class_tf[cls][it->second];
      ++vocab.class_token_count[cls];
    }
    for (const auto& [id, tf] : doc_tf) {
      (void)tf;
      ++vocab.df[id];
    }
  }
  return vocab;
}

SparseVector tfidf_vector(const std::vector<std::string>& stemmed_tokens,
                          const Vocabulary& vocab) {
  if (vocab.doc_count == 0) throw std::runtime_error("tfidf_vector: empty vocabulary (N = 0)");
  std::unordered_map<std::uint32_t, std::uint64_t> tf;
  for (const std::string& t : stemmed_tokens) {
    std::int64_t id = vocab.id_of(t);
    if (id >= 0) ++tf[static_cast<std::uint32_t>(id)];
  }
  SparseVector vec;
  vec.entries.reserve(tf.size());
  for (const auto& [id, count] : tf) {
    double idf = std::log(static_cast<double>(vocab.doc_count) / static_cast<double>(vocab.df[id]));
    double weight = static_cast<double>(count) * idf;
    if (weight > 0.0) vec.entries.emplace_back(id, weight);
  }
  std::sort(vec.entries.begin(), vec.entries.end());
  return vec;
}

void write_vocabulary_tsv(std::ostream& out, const Vocabulary& vocab) {
  for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
    out << vocab.terms[i] << '\t' << i << '\t' << vocab.df[i] << '\t' << vocab.class_tf[1][i]
        << '\t' << vocab.class_tf[0][i] << '\n';
  }
}

Vocabulary read_vocabulary_tsv(std::istream& in) {
  Vocabulary vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string term, idx, df, tf_pos, tf_neg;
    if (!std::getline(row, term, '\t') || !std::getline(row, idx, '\t') ||
        !std::getline(row, df, '\t') || !std::getline(row, tf_pos, '\t') ||
        !std::getline(row, tf_neg, '\t'))
      throw std::runtime_error("vocabulary: malformed row: " + line);
    std::uint32_t id = static_cast<std::uint32_t>(std::stoul(idx));
    if (id != vocab.terms.size()) throw std::runtime_error("vocabulary: indices not dense");
    vocab.index.emplace(term, id);
    vocab.terms.push_back(term);
    vocab.df.push_back(static_cast<std::uint32_t>(std::stoul(df)));
    vocab.class_tf[1].push_back(std::stoull(tf_pos));
    vocab.class_tf[0].push_back(std::stoull(tf_neg));
  }
  return vocab;
}

FunctionWordList FunctionWordList::load(std::istream& in) {
  FunctionWordList list;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = util::trim(line);
    if (t.empty() || t[0] == '#') continue;
    list.words_.insert(util::to_lower(t));
  }
  if (list.words_.empty())
    throw std::runtime_error("function word list is empty");
  return list;
}

FunctionWordList FunctionWordList::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open function word list: " + path);
  return load(in);
}

std::vector<std::string> filter_function_words(const std::vector<std::string>& tokens,
                                               const FunctionWordList& list) {
  if (list.size() == 0) throw std::runtime_error("filter_function_words: empty word list");
  std::vector<std::string> out;
  for (const auto& t : tokens)
    if (list.contains(util::to_lower(t))) out.push_back(t);
  return out;
}

}  // namespace afdforge::features
