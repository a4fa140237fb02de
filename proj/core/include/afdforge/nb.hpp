#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "afdforge/features.hpp"

namespace afdforge::model {

// Multinomial naive Bayes, class 1 = disruptive. Term probabilities follow
// additive smoothing over the training vocabulary:
//   P(w|C_k) = (tf(w, class k) + delta) / sum_v (tf(v, class k) + delta)
// delta = 1 is Laplace smoothing; other deltas are the Lidstone
// generalisation. Prediction raises each P(w|C_k) to the tf-idf weight of w.
struct NbModel {
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> log_prob;  // per class, indexed by term id
  double delta = 1.0;
  std::vector<std::string> terms;
};

// Counts come from the vocabulary aggregates (per-class term frequencies and
// document counts). Throws if either class has no documents or delta <= 0.
NbModel train_nb(const features::Vocabulary& vocab, double delta);

struct NbPrediction {
  int label = 0;
  std::array<double, 2> log_score{};
  // higher = more disruptive
  double score() const { return log_score[1] - log_score[0]; }
};

// argmax_k log P(C_k) + sum_w tfidf(w) * log P(w|C_k); ties go to class 0.
NbPrediction predict_nb(const NbModel& model, const features::SparseVector& vec);

// Terms ranked by P(w|C_1)/P(w|C_0) for the disruptive class and by the
// inverse for the constructive class. k beyond the vocabulary returns all.
std::vector<std::pair<std::string, double>> nb_top_terms(const NbModel& model, std::size_t k,
                                                         int cls);

void write_nb_tsv(std::ostream& out, const NbModel& model);
NbModel read_nb_tsv(std::istream& in);

}  // namespace afdforge::model
