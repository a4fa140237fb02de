#include "afdforge/nb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace afdforge::model {

namespace {

void print_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

}  // namespace

NbModel train_nb(const features::Vocabulary& vocab, double delta) {
  if (delta <= 0.0) throw std::runtime_error("train_nb: delta must be positive");
  if (vocab.class_doc_count[0] == 0 || vocab.class_doc_count[1] == 0)
    throw std::runtime_error("train_nb: a class has no training documents");

  NbModel model;
  model.delta = delta;
  model.terms = vocab.terms;
  const double total_docs = static_cast<double>(vocab.doc_count);
  for (int k = 0; k < 2; ++k) {
    model.log_prior[k] = std::log(static_cast<double>(vocab.class_doc_count[k]) / total_docs);
    const double denom = static_cast<double>(vocab.class_token_count[k]) +
                         delta * static_cast<double>(vocab.size());
    model.log_prob[k].resize(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i)
      model.log_prob[k][i] =
          std::log((static_cast<double>(vocab.class_tf[k][i]) + delta) / denom);
  }
  return model;
}

NbPrediction predict_nb(const NbModel& model, const features::SparseVector& vec) {
  NbPrediction pred;
  for (int k = 0; k < 2; ++k) {
    double score = model.log_prior[k];
    for (const auto& [id, weight] : vec.entries) score += weight * model.log_prob[k][id];
    pred.log_score[k] = score;
  }
  pred.label = pred.log_score[1] > pred.log_score[0] ? 1 : 0;
  return pred;
}

std::vector<std::pair<std::string, double>> nb_top_terms(const NbModel& model, std::size_t k,
                                                         int cls) {
  std::vector<std::pair<std::string, double>> ranked;
  ranked.reserve(model.terms.size());
  for (std::size_t i = 0; i < model.terms.size(); ++i) {
    double log_ratio = model.log_prob[1][i] - model.log_prob[0][i];
    ranked.emplace_back(model.terms[i], std::exp(log_ratio));
  }
  std::stable_sort(ranked.begin(), ranked.end(), [cls](const auto& a, const auto& b) {
    return cls == 1 ? a.second > b.second : a.second < b.second;
  });
  if (k < ranked.size()) ranked.resize(k);
  return ranked;
}

void write_nb_tsv(std::ostream& out, const NbModel& model) {
  out << "# afdforge-nb 1\n";
  out << "# delta\t";
  print_double(out, model.delta);
  out << "\n# prior\t";
  print_double(out, model.log_prior[1]);
  out << '\t';
  print_double(out, model.log_prior[0]);
  out << '\n';
  for (std::size_t i = 0; i < model.terms.size(); ++i) {
    out << model.terms[i] << '\t';
    print_double(out, model.log_prob[1][i]);
    out << '\t';
    print_double(out, model.log_prob[0][i]);
    out << '\n';
  }
}

NbModel read_nb_tsv(std::istream& in) {
  NbModel model;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream row(line.substr(1));
      std::string key;
      row >> key;
      if (key == "delta") row >> model.delta;
      else if (key == "prior") row >> model.log_prior[1] >> model.log_prior[0];
      continue;
    }
    std::istringstream row(line);
    std::string term, pos, neg;
    if (!std::getline(row, term, '\t') || !std::getline(row, pos, '\t') ||
        !std::getline(row, neg, '\t'))
      throw std::runtime_error("nb model: malformed row: " + line);
    model.terms.push_back(term);
    model.log_prob[1].push_back(std::stod(pos));
    model.log_prob[0].push_back(std::stod(neg));
  }
  return model;
}

}  // namespace afdforge::model
