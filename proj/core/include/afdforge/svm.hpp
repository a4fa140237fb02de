#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "afdforge/features.hpp"

namespace afdforge::model {

// Soft-margin linear SVM (dot kernel), class 1 = disruptive mapped to +1.
struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  double c = 1.0;
  std::vector<std::string> terms;  // optional names per dimension
};

struct SvmOptions {
  double c = 1.0;
  double tolerance = 1e-3;     // maximal KKT violating pair gap at exit
  std::size_t max_passes = 0;  // 0 = derived from training size
  std::uint64_t seed = 0;      // training is deterministic regardless
};

struct SvmTrainStats {
  std::size_t iterations = 0;
  double kkt_gap = 0.0;
  bool converged = false;
  // dual objective 0.5 a'Qa - e'a after every update; non-increasing
  std::vector<double> objective_trace;
};

// Sequential minimal optimization on the dual with the exact equality
// constraint (true, unregularized bias); maximal violating pair selection.
SvmModel train_svm(const std::vector<features::SparseVector>& vectors,
                   const std::vector<int>& labels, std::size_t dim, const SvmOptions& options,
                   SvmTrainStats* stats = nullptr);

double svm_score(const SvmModel& model, const features::SparseVector& vec);

// score > 0 maps to class 1; zero is conservatively class 0.
int svm_predict(const SvmModel& model, const features::SparseVector& vec);

std::vector<std::pair<std::string, double>> svm_top_terms(const SvmModel& model, std::size_t k,
                                                          int cls);

void write_svm_tsv(std::ostream& out, const SvmModel& model);
SvmModel read_svm_tsv(std::istream& in);

}  // namespace afdforge::model
