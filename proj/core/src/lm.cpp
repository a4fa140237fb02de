#include "afdforge/lm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace afdforge::model {

LmVocab LmVocab::build(
    std::initializer_list<const std::vector<std::vector<std::string>>*> corpora) {
  LmVocab vocab;
  for (const auto* corpus : corpora)
    for (const auto& post : *corpus)
      for (const auto& word : post) vocab.add(word);
  return vocab;
}

void LmVocab::add(const std::string& word) {
  if (ids_.try_emplace(word, static_cast<std::uint32_t>(words_.size())).second)
    words_.push_back(word);
}

std::uint32_t LmVocab::id_or_unk(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  return it == ids_.end() ? kUnk : it->second;
}

std::size_t LmModel::KeyHash::operator()(const std::vector<std::uint32_t>& key) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint32_t v : key) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (v >> shift) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

void LmModel::Table::finalize() {
  hist.clear();
  std::uint64_t n1 = 0, n2 = 0, n3 = 0, n4 = 0;
  std::vector<std::uint32_t> hkey;
  for (const auto& [key, count] : counts) {
    hkey.assign(key.begin(), key.end() - 1);
    HistAgg& agg = hist[hkey];
    agg.total += static_cast<double>(count);
    if (count == 1) ++agg.n1;
    else if (count == 2) ++agg.n2;
    else ++agg.n3p;
    if (count == 1) ++n1;
    else if (count == 2) ++n2;
    else if (count == 3) ++n3;
    else if (count == 4) ++n4;
  }
  // Chen-Goodman estimator; any zero count-of-counts in a formula degrades
  // that discount to an absolute 0.5.
  disc = Discounts{};
  if (n1 > 0) {
    double y = static_cast<double>(n1) / (static_cast<double>(n1) + 2.0 * static_cast<double>(n2));
    if (n2 > 0) disc.d1 = std::clamp(1.0 - 2.0 * y * static_cast<double>(n2) / static_cast<double>(n1), 0.0, 1.0);
    if (n2 > 0 && n3 > 0)
      disc.d2 = std::clamp(2.0 - 3.0 * y * static_cast<double>(n3) / static_cast<double>(n2), 0.0, 2.0);
    if (n3 > 0 && n4 > 0)
      disc.d3 = std::clamp(3.0 - 4.0 * y * static_cast<double>(n4) / static_cast<double>(n3), 0.0, 3.0);
  }
}

namespace {

double discount_for(std::uint64_t count, double d1, double d2, double d3) {
  if (count == 0) return 0.0;
  if (count == 1) return d1;
  if (count == 2) return d2;
  return d3;
}

}  // namespace

LmModel LmModel::train(const std::vector<std::vector<std::string>>& posts, const LmVocab& vocab,
                       const LmOptions& options) {
  if (options.order < 1) throw std::runtime_error("train_lm: order must be >= 1");
  LmModel model;
  model.options_ = options;
  model.vocab_ = vocab;

  std::size_t total_tokens = 0;
  std::vector<std::vector<std::uint32_t>> streams;
  streams.reserve(posts.size());
  for (const auto& post : posts) {
    std::vector<std::uint32_t> ids;
    ids.reserve(post.size());
    for (const auto& word : post) ids.push_back(vocab.id_or_unk(word));
    total_tokens += ids.size();
    streams.push_back(std::move(ids));
  }
  if (total_tokens == 0) throw std::runtime_error("train_lm: empty training corpus");

  const int max_k = std::max(1, options.order - 1);
  model.raw_.resize(static_cast<std::size_t>(max_k) + 1);
  for (int k = 1; k <= max_k; ++k) {
    Table& table = model.raw_[static_cast<std::size_t>(k)];
    std::vector<std::uint32_t> window(static_cast<std::size_t>(k) + 1);
    for (const auto& ids : streams) {
      if (ids.size() <= static_cast<std::size_t>(k)) continue;
      for (std::size_t i = 0; i + k < ids.size(); ++i) {
        for (int p = 0; p <= k; ++p) window[static_cast<std::size_t>(p)] = ids[i + static_cast<std::size_t>(p)];
        ++table.counts[window];
      }
    }
  }
  model.build_derived();
  return model;
}

void LmModel::build_derived() {
  const int max_k = static_cast<int>(raw_.size()) - 1;

  // continuation unigram over bigram occupancy: N1+(. w)
  unigram_ = Table{};
  for (const auto& [key, count] : raw_[1].counts) {
    (void)count;
    ++unigram_.counts[{key.back()}];
  }
  unigram_.finalize();

  cont_.assign(static_cast<std::size_t>(max_k) + 1, {});
  for (int k = 1; k <= max_k; ++k) {
    const std::uint32_t full = (1u << k) - 1u;
    cont_[static_cast<std::size_t>(k)].assign(full + 1, Table{});
    std::vector<std::uint32_t> projected;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      Table& table = cont_[static_cast<std::size_t>(k)][mask];
      for (const auto& [key, count] : raw_[static_cast<std::size_t>(k)].counts) {
        (void)count;
        projected.clear();
        for (int p = 0; p < k; ++p)
          if (mask & (1u << p)) projected.push_back(key[static_cast<std::size_t>(p)]);
        projected.push_back(key.back());
        ++table.counts[projected];  // distinct fillings of the wildcards
      }
      table.finalize();
    }
    raw_[static_cast<std::size_t>(k)].finalize();
  }
}

double LmModel::unigram_probability(std::uint32_t word_id) const {
  const double uniform = 1.0 / static_cast<double>(vocab_.size());
  auto agg = unigram_.hist.find({});
  if (agg == unigram_.hist.end() || agg->second.total <= 0.0) return uniform;
  const HistAgg& h = agg->second;
  auto it = unigram_.counts.find({word_id});
  std::uint64_t c = it == unigram_.counts.end() ? 0 : it->second;
  const Discounts& d = unigram_.disc;
  double first = (static_cast<double>(c) - discount_for(c, d.d1, d.d2, d.d3)) / h.total;
  double gamma = (d.d1 * static_cast<double>(h.n1) + d.d2 * static_cast<double>(h.n2) +
                  d.d3 * static_cast<double>(h.n3p)) /
                 h.total;
  return first + gamma * uniform;
}

double LmModel::pattern_recursive(std::uint32_t word_id, std::span<const std::uint32_t> history,
                                  std::uint32_t mask, std::vector<double>& memo) const {
  if (!std::isnan(memo[mask])) return memo[mask];
  double result;
  if (mask == 0) {
    result = unigram_probability(word_id);
  } else {
    const int k = static_cast<int>(history.size());
    const std::uint32_t full = (1u << k) - 1u;
    const Table& table = (mask == full) ? raw_[static_cast<std::size_t>(k)]
                                        : cont_[static_cast<std::size_t>(k)][mask];

    std::vector<std::uint32_t> hkey;
    for (int p = 0; p < k; ++p)
      if (mask & (1u << p)) hkey.push_back(history[static_cast<std::size_t>(p)]);

    double first = 0.0, gamma = 1.0;
    auto agg = table.hist.find(hkey);
    if (agg != table.hist.end() && agg->second.total > 0.0) {
      hkey.push_back(word_id);
      auto it = table.counts.find(hkey);
      std::uint64_t c = it == table.counts.end() ? 0 : it->second;
      hkey.pop_back();
      const Discounts& d = table.disc;
      const HistAgg& h = agg->second;
      first = (static_cast<double>(c) - discount_for(c, d.d1, d.d2, d.d3)) / h.total;
      gamma = (d.d1 * static_cast<double>(h.n1) + d.d2 * static_cast<double>(h.n2) +
               d.d3 * static_cast<double>(h.n3p)) /
              h.total;
    }

    double lower = 0.0;
    if (options_.skip_interpolation) {
      int children = 0;
      for (int p = 0; p < k; ++p) {
        std::uint32_t bit = 1u << p;
        if (!(mask & bit)) continue;
        lower += pattern_recursive(word_id, history, mask & ~bit, memo);
        ++children;
      }
      lower /= static_cast<double>(children);
    } else {
      std::uint32_t lowest = mask & (~mask + 1u);  // oldest concrete position
      lower = pattern_recursive(word_id, history, mask & ~lowest, memo);
    }
    result = first + gamma * lower;
  }
  memo[mask] = result;
  return result;
}

double LmModel::pattern_probability(std::uint32_t word_id, std::span<const std::uint32_t> history,
                                    std::uint32_t mask) const {
  std::vector<double> memo(1u << history.size(), std::nan(""));
  return pattern_recursive(word_id, history, mask, memo);
}

double LmModel::probability(std::string_view word, std::span<const std::string> history) const {
  const std::size_t max_history = static_cast<std::size_t>(options_.order) - 1;
  std::size_t use = std::min(history.size(), max_history);
  std::vector<std::uint32_t> ids;
  ids.reserve(use);
  for (std::size_t i = history.size() - use; i < history.size(); ++i)
    ids.push_back(vocab_.id_or_unk(history[i]));
  std::uint32_t word_id = vocab_.id_or_unk(word);
  if (ids.empty()) return unigram_probability(word_id);
  return pattern_probability(word_id, ids, (1u << ids.size()) - 1u);
}

double LmModel::entropy(const std::vector<std::string>& post) const {
  if (post.empty()) throw std::runtime_error("entropy: empty post (perplexity undefined)");
  double log_sum = 0.0;
  for (std::size_t i = 0; i < post.size(); ++i) {
    std::span<const std::string> history(post.data(), i);
    log_sum += std::log(probability(post[i], history));
  }
  return -log_sum / static_cast<double>(post.size());
}

void LmModel::dump(std::ostream& out) const {
  out << "# afdforge-lm 1\n";
  out << "order\t" << options_.order << '\n';
  out << "skips\t" << (options_.skip_interpolation ? 1 : 0) << '\n';
  for (std::uint32_t id = 1; id < vocab_.size(); ++id) out << "v\t" << vocab_.word(id) << '\n';

  for (std::size_t k = 1; k < raw_.size(); ++k) {
    std::vector<const std::vector<std::uint32_t>*> keys;
    keys.reserve(raw_[k].counts.size());
    for (const auto& [key, count] : raw_[k].counts) {
      (void)count;
      keys.push_back(&key);
    }
    std::sort(keys.begin(), keys.end(),
              [](const auto* a, const auto* b) { return *a < *b; });
    const std::string pattern(k, '1');  // history positions, all concrete
    for (const auto* key : keys) {
      out << pattern << '\t';
      for (std::size_t i = 0; i < key->size(); ++i) {
        if (i) out << ' ';
        out << vocab_.word((*key)[i]);
      }
      out << '\t' << raw_[k].counts.at(*key) << '\n';
    }
  }
}

LmModel LmModel::load(std::istream& in) {
  LmModel model;
  model.options_ = LmOptions{};
  std::string line;
  int max_k = 1;
  std::vector<std::pair<std::pair<int, std::vector<std::string>>, std::uint64_t>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string tag;
    std::getline(row, tag, '\t');
    if (tag == "order") {
      row >> model.options_.order;
      max_k = std::max(1, model.options_.order - 1);
    } else if (tag == "skips") {
      int v = 1;
      row >> v;
      model.options_.skip_interpolation = v != 0;
    } else if (tag == "v") {
      std::string word;
      std::getline(row, word, '\t');
      model.vocab_.add(word);
    } else if (!tag.empty() && tag.find_first_not_of('1') == std::string::npos) {
      std::string ngram, count;
      if (!std::getline(row, ngram, '\t') || !std::getline(row, count, '\t'))
        throw std::runtime_error("lm model: malformed row: " + line);
      std::vector<std::string> words;
      std::istringstream ws(ngram);
      std::string w;
      while (ws >> w) words.push_back(w);
      rows.push_back({{static_cast<int>(tag.size()), std::move(words)}, std::stoull(count)});
    } else {
      throw std::runtime_error("lm model: unknown row tag: " + tag);
    }
  }
  model.raw_.resize(static_cast<std::size_t>(max_k) + 1);
  for (const auto& [head, count] : rows) {
    const auto& [k, words] = head;
    if (k < 1 || k > max_k) throw std::runtime_error("lm model: bad pattern length");
    std::vector<std::uint32_t> key;
    key.reserve(words.size());
    for (const auto& w : words) key.push_back(model.vocab_.id_or_unk(w));
    model.raw_[static_cast<std::size_t>(k)].counts[key] = count;
  }
  model.build_derived();
  return model;
}

LmPrediction predict_lm(const LmModel& positive, const LmModel& negative,
                        const std::vector<std::string>& post) {
  LmPrediction pred;
  pred.entropy_pos = positive.entropy(post);
  pred.entropy_neg = negative.entropy(post);
  pred.label = pred.entropy_pos < pred.entropy_neg ? 1 : 0;
  return pred;
}

}  // namespace afdforge::model
