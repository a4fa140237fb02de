#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afdforge/corpus.hpp"
#include "afdforge/features.hpp"

namespace afdforge::eval {

struct Confusion {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::uint64_t total() const { return tp + fp + fn + tn; }
  Confusion& operator+=(const Confusion& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
};

// Undefined ratios (zero denominators) stay empty and render as a dash.
struct Metrics {
  std::optional<double> recall_pos, recall_neg, precision_pos, precision_neg;
  std::optional<double> f1_pos, f1_neg, accuracy;
};

Metrics compute_metrics(const Confusion& c);

struct ScoredPrediction {
  double score = 0.0;  // higher = more disruptive
  int label = 0;
};

// Trapezoidal area under the ROC curve; tied scores contribute diagonal
// segments. Empty or single-class input is undefined.
std::optional<double> roc_auc(std::vector<ScoredPrediction> predictions);

// A document as the classifiers see it: clean unstemmed tokens plus label.
struct Document {
  std::vector<std::string> tokens;
  int label = 0;
};

enum class Sampling { stratified, linear_per_class, linear_global };

const char* sampling_name(Sampling s);
std::optional<Sampling> sampling_from_name(std::string_view name);

// folds[f] lists the test indices of fold f: disjoint, covering, each index
// tested exactly once. Throws when a fold would be empty.
std::vector<std::vector<std::size_t>> make_folds(const std::vector<int>& labels, int folds,
                                                 Sampling sampling, std::uint64_t seed);

struct ClassifierSpec {
  enum class Kind { nb, lm, svm };
  Kind kind = Kind::nb;
  bool function_words_only = false;
  double nb_delta = 1.0;
  double svm_c = 1.0;
  int lm_order = 4;
  bool lm_skips = true;

  std::string name() const;
};

std::optional<ClassifierSpec::Kind> classifier_from_name(std::string_view name);

struct FoldResult {
  Confusion confusion;
  std::vector<ScoredPrediction> scored;
};

struct EvalReport {
  std::vector<FoldResult> folds;
  Confusion pooled;  // micro-averaged across folds
  Metrics metrics;
  std::optional<double> auc;  // over the pooled scored predictions
  std::map<std::string, std::string> metadata;
};

EvalReport cross_validate(const std::vector<Document>& corpus, const ClassifierSpec& spec,
                          int folds, Sampling sampling, std::uint64_t seed,
                          const features::FunctionWordList* function_words = nullptr);

// Appendix-style row: classifier, recall+, recall-, precision+, precision-,
// F1+, F1-, accuracy, AUC. Rates as percentages (2 decimals), AUC on [0,1]
// (3 decimals), dashes for undefined values.
void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const std::string& classifier, const Metrics& m,
                      const std::optional<double>& auc);

struct SweepOptions {
  int folds = 10;
  std::uint64_t seed = 0;
  Sampling nb_svm_sampling = Sampling::stratified;
  Sampling lm_sampling = Sampling::linear_per_class;
};

struct SweepCell {
  std::string classifier;
  Metrics metrics;
  std::optional<double> auc;
};

struct SweepRow {
  std::int64_t timeframe_seconds = 0;
  bool empty = false;  // no disruptive posts at this timeframe
  std::size_t per_class = 0;
  std::vector<SweepCell> cells;  // one per classifier, then the mean
};

// Relabels per timeframe, samples a fixed per-class size (the disruptive
// count of the smallest timeframe), and cross-validates every classifier.
// Row seeds derive from the timeframe value, so row order does not matter.
std::vector<SweepRow> timeframe_sweep(const std::vector<textclean::CleanPost>& posts,
                                      const std::vector<ingest::BlockEvent>& blocks,
                                      std::vector<std::int64_t> timeframes,
                                      const std::vector<ClassifierSpec>& classifiers,
                                      const SweepOptions& options,
                                      const features::FunctionWordList* function_words = nullptr);

void write_sweep_tsv(std::ostream& out, const std::vector<SweepRow>& rows);

struct ClassLengthStats {
  std::size_t posts = 0;
  double mean = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0;
  std::size_t min = 0, max = 0;
};

struct TermShare {
  std::string term;
  // per class: occurrences per thousand tokens, and share of posts containing
  // the term
  double permille[2] = {0.0, 0.0};
  double post_share[2] = {0.0, 0.0};
};

struct CorpusStatsReport {
  std::optional<ClassLengthStats> length[2];
  std::vector<TermShare> terms;
  double any_i_you[2] = {0.0, 0.0};        // posts containing "i" or "you"
  double any_probe[2] = {0.0, 0.0};        // posts containing any probe pronoun
  double two_probe[2] = {0.0, 0.0};        // posts containing >= 2 of them
  std::optional<double> i_you_ratio[2];    // total "i" / total "you"
};

extern const std::vector<std::string> kDefaultProbeTerms;

CorpusStatsReport corpus_stats(const std::vector<Document>& corpus,
                               const std::vector<std::string>& probe_terms = kDefaultProbeTerms);

void write_stats_tsv(std::ostream& out, const CorpusStatsReport& report);

std::string format_metric_percent(const std::optional<double>& v);
std::string format_auc(const std::optional<double>& v);

}  // namespace afdforge::eval
