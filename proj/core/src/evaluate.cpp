#include "afdforge/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "afdforge/lm.hpp"
#include "afdforge/nb.hpp"
#include "afdforge/rng.hpp"
#include "afdforge/svm.hpp"
#include "afdforge/text_util.hpp"
#include "afdforge/time.hpp"

namespace afdforge::eval {

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> f1(const std::optional<double>& precision,
                         const std::optional<double>& recall) {
  if (!precision || !recall) return std::nullopt;
  double sum = *precision + *recall;
  if (sum == 0.0) return std::nullopt;
  return 2.0 * *precision * *recall / sum;
}

}  // namespace

Metrics compute_metrics(const Confusion& c) {
  Metrics m;
  m.precision_pos = ratio(c.tp, c.tp + c.fp);
  m.recall_pos = ratio(c.tp, c.tp + c.fn);
  m.precision_neg = ratio(c.tn, c.tn + c.fn);
  m.recall_neg = ratio(c.tn, c.tn + c.fp);
  m.f1_pos = f1(m.precision_pos, m.recall_pos);
  m.f1_neg = f1(m.precision_neg, m.recall_neg);
  m.accuracy = ratio(c.tp + c.tn, c.total());
  return m;
}

std::optional<double> roc_auc(std::vector<ScoredPrediction> predictions) {
  std::uint64_t positives = 0, negatives = 0;
  for (const auto& p : predictions) (p.label ? positives : negatives)++;
  if (positives == 0 || negatives == 0) return std::nullopt;

  std::sort(predictions.begin(), predictions.end(), [](const auto& a, const auto& b) {
    return a.score > b.score;
  });

  // Walk score groups; ties advance TP and FP together, which traces the
  // diagonal segment the midpoint rule prescribes.
  double area = 0.0;
  std::uint64_t tp = 0;
  std::size_t i = 0;
  while (i < predictions.size()) {
    std::size_t j = i;
    std::uint64_t dtp = 0, dfp = 0;
    while (j < predictions.size() && predictions[j].score == predictions[i].score) {
      (predictions[j].label ? dtp : dfp)++;
      ++j;
    }
    double tpr0 = static_cast<double>(tp) / static_cast<double>(positives);
    double tpr1 = static_cast<double>(tp + dtp) / static_cast<double>(positives);
    double dfpr = static_cast<double>(dfp) / static_cast<double>(negatives);
    area += 0.5 * (tpr0 + tpr1) * dfpr;
    tp += dtp;
    i = j;
  }
  return area;
}

const char* sampling_name(Sampling s) {
  switch (s) {
    case Sampling::stratified: return "stratified";
    case Sampling::linear_per_class: return "linear_per_class";
    case Sampling::linear_global: return "linear_global";
  }
  return "?";
}

std::optional<Sampling> sampling_from_name(std::string_view name) {
  if (name == "stratified") return Sampling::stratified;
  if (name == "linear_per_class" || name == "linear-per-class") return Sampling::linear_per_class;
  if (name == "linear_global" || name == "linear-global" || name == "linear")
    return Sampling::linear_global;
  return std::nullopt;
}

std::string ClassifierSpec::name() const {
  std::string base;
  switch (kind) {
    case Kind::nb: base = "nb"; break;
    case Kind::lm: base = "lm"; break;
    case Kind::svm: base = "svm"; break;
  }
  if (function_words_only) base += "-fw";
  return base;
}

std::optional<ClassifierSpec::Kind> classifier_from_name(std::string_view name) {
  if (name == "nb") return ClassifierSpec::Kind::nb;
  if (name == "lm") return ClassifierSpec::Kind::lm;
  if (name == "svm") return ClassifierSpec::Kind::svm;
  return std::nullopt;
}

namespace {

std::vector<std::vector<std::size_t>> chunk_contiguous(const std::vector<std::size_t>& indices,
                                                       int folds) {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  std::size_t n = indices.size();
  std::size_t base = n / static_cast<std::size_t>(folds);
  std::size_t extra = n % static_cast<std::size_t>(folds);
  std::size_t at = 0;
  for (int f = 0; f < folds; ++f) {
    std::size_t len = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
    for (std::size_t i = 0; i < len; ++i) out[static_cast<std::size_t>(f)].push_back(indices[at++]);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> make_folds(const std::vector<int>& labels, int folds,
                                                 Sampling sampling, std::uint64_t seed) {
  if (folds < 2) throw std::runtime_error("cross_validate: folds must be >= 2");
  const std::size_t n = labels.size();

  std::vector<std::size_t> per_class[2];
  for (std::size_t i = 0; i < n; ++i) per_class[labels[i] ? 1 : 0].push_back(i);

  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  switch (sampling) {
    case Sampling::stratified: {
      for (int cls = 0; cls < 2; ++cls) {
        if (!per_class[cls].empty() && per_class[cls].size() < static_cast<std::size_t>(folds))
          throw std::runtime_error("cross_validate: fold count exceeds class size");
        util::Rng rng(util::derive_seed(seed, cls == 0 ? "fold-neg" : "fold-pos"));
        util::shuffle(per_class[cls], rng);
        for (std::size_t i = 0; i < per_class[cls].size(); ++i)
          out[i % static_cast<std::size_t>(folds)].push_back(per_class[cls][i]);
      }
      break;
    }
    case Sampling::linear_per_class: {
      for (int cls = 0; cls < 2; ++cls) {
        if (!per_class[cls].empty() && per_class[cls].size() < static_cast<std::size_t>(folds))
          throw std::runtime_error("cross_validate: fold count exceeds class size");
        auto chunks = chunk_contiguous(per_class[cls], folds);
        for (int f = 0; f < folds; ++f)
          out[static_cast<std::size_t>(f)].insert(out[static_cast<std::size_t>(f)].end(),
                                                  chunks[static_cast<std::size_t>(f)].begin(),
                                                  chunks[static_cast<std::size_t>(f)].end());
      }
      break;
    }
    case Sampling::linear_global: {
      if (n < static_cast<std::size_t>(folds))
        throw std::runtime_error("cross_validate: fold count exceeds corpus size");
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      out = chunk_contiguous(all, folds);
      break;
    }
  }
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

namespace {

struct FoldIO {
  std::vector<std::size_t> train;
  const std::vector<std::size_t>* test;
};

FoldIO fold_io(std::size_t n, const std::vector<std::vector<std::size_t>>& folds, std::size_t f) {
  FoldIO io;
  io.test = &folds[f];
  std::vector<bool> in_test(n, false);
  for (std::size_t i : folds[f]) in_test[i] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_test[i]) io.train.push_back(i);
  return io;
}

void tally(Confusion& c, int truth, int predicted) {
  if (truth == 1 && predicted == 1) ++c.tp;
  else if (truth == 1 && predicted == 0) ++c.fn;
  else if (truth == 0 && predicted == 1) ++c.fp;
  else ++c.tn;
}

}  // namespace

EvalReport cross_validate(const std::vector<Document>& corpus, const ClassifierSpec& spec,
                          int folds, Sampling sampling, std::uint64_t seed,
                          const features::FunctionWordList* function_words) {
  if (spec.function_words_only && !function_words)
    throw std::runtime_error("cross_validate: function word list required but not loaded");

  const std::size_t n = corpus.size();
  std::vector<std::vector<std::string>> stemmed(n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = corpus[i].label ? 1 : 0;
    if (spec.function_words_only) {
      stemmed[i] =
          features::stem_all(features::filter_function_words(corpus[i].tokens, *function_words));
    } else {
      stemmed[i] = features::stem_all(corpus[i].tokens);
    }
  }

  auto fold_sets = make_folds(labels, folds, sampling, seed);

  EvalReport report;
  for (std::size_t f = 0; f < fold_sets.size(); ++f) {
    FoldIO io = fold_io(n, fold_sets, f);
    FoldResult result;

    if (spec.kind == ClassifierSpec::Kind::lm) {
      std::vector<std::vector<std::string>> class_posts[2];
      for (std::size_t i : io.train) class_posts[labels[i]].push_back(stemmed[i]);
      model::LmVocab vocab = model::LmVocab::build({&class_posts[0], &class_posts[1]});
      model::LmOptions options;
      options.order = spec.lm_order;
      options.skip_interpolation = spec.lm_skips;
      model::LmModel negative = model::LmModel::train(class_posts[0], vocab, options);
      model::LmModel positive = model::LmModel::train(class_posts[1], vocab, options);
      for (std::size_t i : *io.test) {
        int predicted = 0;
        double score = 0.0;
        if (!stemmed[i].empty()) {
          // an empty post has undefined perplexity; the harness scores it as
          // an exact tie, which the tie rule sends to class 0
          model::LmPrediction p = predict_lm(positive, negative, stemmed[i]);
          predicted = p.label;
          score = p.score();
        }
        tally(result.confusion, labels[i], predicted);
        result.scored.push_back({score, labels[i]});
      }
    } else {
      std::vector<std::vector<std::string>> train_docs;
      std::vector<int> train_labels;
      for (std::size_t i : io.train) {
        train_docs.push_back(stemmed[i]);
        train_labels.push_back(labels[i]);
      }
      features::Vocabulary vocab = features::build_vocabulary(train_docs, train_labels);

      if (spec.kind == ClassifierSpec::Kind::nb) {
        model::NbModel nb = model::train_nb(vocab, spec.nb_delta);
        for (std::size_t i : *io.test) {
          model::NbPrediction p = model::predict_nb(nb, features::tfidf_vector(stemmed[i], vocab));
          tally(result.confusion, labels[i], p.label);
          result.scored.push_back({p.score(), labels[i]});
        }
      } else {
        std::vector<features::SparseVector> train_vectors;
        train_vectors.reserve(train_docs.size());
        for (const auto& doc : train_docs)
          train_vectors.push_back(features::tfidf_vector(doc, vocab));
        model::SvmOptions options;
        options.c = spec.svm_c;
        options.seed = util::derive_seed(seed, "svm");
        model::SvmModel svm = model::train_svm(train_vectors, train_labels, vocab.size(), options);
        for (std::size_t i : *io.test) {
          features::SparseVector vec = features::tfidf_vector(stemmed[i], vocab);
          double score = model::svm_score(svm, vec);
          tally(result.confusion, labels[i], score > 0.0 ? 1 : 0);
          result.scored.push_back({score, labels[i]});
        }
      }
    }

    report.pooled += result.confusion;
    report.folds.push_back(std::move(result));
  }

  report.metrics = compute_metrics(report.pooled);
  std::vector<ScoredPrediction> pooled_scores;
  for (const auto& fold : report.folds)
    pooled_scores.insert(pooled_scores.end(), fold.scored.begin(), fold.scored.end());
  report.auc = roc_auc(std::move(pooled_scores));

  report.metadata["classifier"] = spec.name();
  report.metadata["features"] = spec.function_words_only ? "function-words" : "full-text";
  report.metadata["folds"] = std::to_string(folds);
  report.metadata["sampling"] = sampling_name(sampling);
  report.metadata["seed"] = std::to_string(seed);
  report.metadata["aggregation"] = "pooled-confusions-micro";
  return report;
}

std::string format_metric_percent(const std::optional<double>& v) {
  if (!v) return "—";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v * 100.0);
  return buf;
}

std::string format_auc(const std::optional<double>& v) {
  if (!v) return "—";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

void write_report_header(std::ostream& out) {
  out << "classifier\trecall+\trecall-\tprecision+\tprecision-\tF1+\tF1-\taccuracy\tAUC\n";
}

void write_report_row(std::ostream& out, const std::string& classifier, const Metrics& m,
                      const std::optional<double>& auc) {
  out << classifier << '\t' << format_metric_percent(m.recall_pos) << '\t'
      << format_metric_percent(m.recall_neg) << '\t' << format_metric_percent(m.precision_pos)
      << '\t' << format_metric_percent(m.precision_neg) << '\t' << format_metric_percent(m.f1_pos)
      << '\t' << format_metric_percent(m.f1_neg) << '\t' << format_metric_percent(m.accuracy)
      << '\t' << format_auc(auc) << '\n';
}

namespace {

std::optional<double> mean_of(std::vector<std::optional<double>> values) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& v : values)
    if (v) {
      sum += *v;
      ++count;
    }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

SweepCell mean_cell(const std::vector<SweepCell>& cells) {
  SweepCell mean;
  mean.classifier = "mean";
  auto collect = [&](auto member) {
    std::vector<std::optional<double>> values;
    for (const auto& c : cells) values.push_back(c.metrics.*member);
    return mean_of(std::move(values));
  };
  mean.metrics.recall_pos = collect(&Metrics::recall_pos);
  mean.metrics.recall_neg = collect(&Metrics::recall_neg);
  mean.metrics.precision_pos = collect(&Metrics::precision_pos);
  mean.metrics.precision_neg = collect(&Metrics::precision_neg);
  mean.metrics.f1_pos = collect(&Metrics::f1_pos);
  mean.metrics.f1_neg = collect(&Metrics::f1_neg);
  mean.metrics.accuracy = collect(&Metrics::accuracy);
  std::vector<std::optional<double>> aucs;
  for (const auto& c : cells) aucs.push_back(c.auc);
  mean.auc = mean_of(std::move(aucs));
  return mean;
}

}  // namespace

std::vector<SweepRow> timeframe_sweep(const std::vector<textclean::CleanPost>& posts,
                                      const std::vector<ingest::BlockEvent>& blocks,
                                      std::vector<std::int64_t> timeframes,
                                      const std::vector<ClassifierSpec>& classifiers,
                                      const SweepOptions& options,
                                      const features::FunctionWordList* function_words) {
  std::vector<std::int64_t> sorted = timeframes;
  std::sort(sorted.begin(), sorted.end());

  // the smallest timeframe with any disruptive posts fixes the sample size
  std::size_t per_class = 0;
  for (std::int64_t tf : sorted) {
    auto labeled = corpus::label_posts(posts, blocks, tf);
    std::size_t disruptive = 0;
    for (const auto& p : labeled)
      if (p.label == corpus::Label::disruptive) ++disruptive;
    if (disruptive > 0) {
      per_class = disruptive;
      break;
    }
  }

  std::vector<SweepRow> rows;
  for (std::int64_t tf : timeframes) {
    SweepRow row;
    row.timeframe_seconds = tf;
    row.per_class = per_class;

    auto labeled = corpus::label_posts(posts, blocks, tf);
    std::size_t disruptive = 0;
    for (const auto& p : labeled)
      if (p.label == corpus::Label::disruptive) ++disruptive;
    if (per_class == 0 || disruptive == 0 ||
        std::min(per_class, disruptive) < static_cast<std::size_t>(options.folds)) {
      row.empty = true;
      rows.push_back(std::move(row));
      continue;
    }

    std::uint64_t row_seed = util::derive_seed(options.seed, static_cast<std::uint64_t>(tf));
    auto sample = corpus::sample_per_class(labeled, per_class, row_seed);
    std::vector<Document> docs;
    docs.reserve(sample.size());
    for (const auto& p : sample)
      docs.push_back({p.post.tokens, p.label == corpus::Label::disruptive ? 1 : 0});

    for (const ClassifierSpec& spec : classifiers) {
      Sampling sampling = spec.kind == ClassifierSpec::Kind::lm ? options.lm_sampling
                                                                : options.nb_svm_sampling;
      EvalReport report = cross_validate(docs, spec, options.folds, sampling,
                                         util::derive_seed(row_seed, spec.name()), function_words);
      row.cells.push_back({spec.name(), report.metrics, report.auc});
    }
    row.cells.push_back(mean_cell(row.cells));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_tsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "timeframe\tclassifier\trecall+\trecall-\tprecision+\tprecision-\tF1+\tF1-\taccuracy"
         "\tAUC\n";
  for (const SweepRow& row : rows) {
    std::string tf = util::format_duration(row.timeframe_seconds);
    if (row.empty) {
      out << tf << "\t(empty)\t—\t—\t—\t—\t—\t—\t—\t—\n";
      continue;
    }
    for (const SweepCell& cell : row.cells) {
      out << tf << '\t';
      write_report_row(out, cell.classifier, cell.metrics, cell.auc);
    }
  }
}

const std::vector<std::string> kDefaultProbeTerms = {
    "fucking", "fuck", "shit", "i", "you", "me", "my", "your", "myself", "yourself"};

namespace {

double quantile(const std::vector<std::size_t>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  double pos = p * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return static_cast<double>(sorted[lo]);
  return static_cast<double>(sorted[lo]) * (1.0 - frac) +
         static_cast<double>(sorted[lo + 1]) * frac;
}

}  // namespace

CorpusStatsReport corpus_stats(const std::vector<Document>& corpus,
                               const std::vector<std::string>& probe_terms) {
  CorpusStatsReport report;
  static const std::vector<std::string> kPronouns = {"i", "you", "me", "my",
                                                     "your", "myself", "yourself"};

  std::vector<std::size_t> lengths[2];
  std::uint64_t tokens_total[2] = {0, 0};
  std::uint64_t posts_total[2] = {0, 0};
  std::map<std::string, std::uint64_t> term_tokens[2];
  std::map<std::string, std::uint64_t> term_posts[2];
  std::uint64_t any_i_you[2] = {0, 0}, any_probe[2] = {0, 0}, two_probe[2] = {0, 0};
  std::uint64_t count_i[2] = {0, 0}, count_you[2] = {0, 0};

  for (const Document& doc : corpus) {
    int cls = doc.label ? 1 : 0;
    ++posts_total[cls];
    lengths[cls].push_back(doc.tokens.size());
    tokens_total[cls] += doc.tokens.size();
    std::set<std::string> present;
    for (const std::string& t : doc.tokens) {
      if (t == "i") ++count_i[cls];
      if (t == "you") ++count_you[cls];
      for (const std::string& probe : probe_terms)
        if (t == probe) ++term_tokens[cls][probe];
      present.insert(t);
    }
    for (const std::string& probe : probe_terms)
      if (present.count(probe)) ++term_posts[cls][probe];
    if (present.count("i") || present.count("you")) ++any_i_you[cls];
    std::size_t pronouns_present = 0;
    for (const std::string& p : kPronouns) pronouns_present += present.count(p);
    if (pronouns_present >= 1) ++any_probe[cls];
    if (pronouns_present >= 2) ++two_probe[cls];
  }

  for (int cls = 0; cls < 2; ++cls) {
    if (!lengths[cls].empty()) {
      std::sort(lengths[cls].begin(), lengths[cls].end());
      ClassLengthStats s;
      s.posts = lengths[cls].size();
      s.min = lengths[cls].front();
      s.max = lengths[cls].back();
      double sum = 0.0;
      for (std::size_t v : lengths[cls]) sum += static_cast<double>(v);
      s.mean = sum / static_cast<double>(s.posts);
      s.q1 = quantile(lengths[cls], 0.25);
      s.median = quantile(lengths[cls], 0.5);
      s.q3 = quantile(lengths[cls], 0.75);
      report.length[cls] = s;
    }
    if (posts_total[cls] > 0) {
      report.any_i_you[cls] = static_cast<double>(any_i_you[cls]) / static_cast<double>(posts_total[cls]);
      report.any_probe[cls] = static_cast<double>(any_probe[cls]) / static_cast<double>(posts_total[cls]);
      report.two_probe[cls] = static_cast<double>(two_probe[cls]) / static_cast<double>(posts_total[cls]);
    }
    if (count_you[cls] > 0)
      report.i_you_ratio[cls] = static_cast<double>(count_i[cls]) / static_cast<double>(count_you[cls]);
  }

  for (const std::string& probe : probe_terms) {
    TermShare share;
    share.term = probe;
    for (int cls = 0; cls < 2; ++cls) {
      if (tokens_total[cls] > 0)
        share.permille[cls] = 1000.0 * static_cast<double>(term_tokens[cls][probe]) /
                              static_cast<double>(tokens_total[cls]);
      if (posts_total[cls] > 0)
        share.post_share[cls] = static_cast<double>(term_posts[cls][probe]) /
                                static_cast<double>(posts_total[cls]);
    }
    report.terms.push_back(std::move(share));
  }
  return report;
}

namespace {

void stats_row(std::ostream& out, const char* stat, const char* cls, const std::string& term,
               const std::optional<double>& value) {
  out << stat << '\t' << cls << '\t' << term << '\t';
  if (!value) {
    out << "—";
  } else {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", *value);
    out << buf;
  }
  out << '\n';
}

}  // namespace

void write_stats_tsv(std::ostream& out, const CorpusStatsReport& report) {
  out << "stat\tclass\tterm\tvalue\n";
  const char* names[2] = {"constructive", "disruptive"};
  for (int cls = 1; cls >= 0; --cls) {
    const auto& len = report.length[cls];
    stats_row(out, "posts", names[cls], "",
              len ? std::optional<double>(static_cast<double>(len->posts)) : std::nullopt);
    stats_row(out, "length_mean", names[cls], "", len ? std::optional<double>(len->mean) : std::nullopt);
    stats_row(out, "length_q1", names[cls], "", len ? std::optional<double>(len->q1) : std::nullopt);
    stats_row(out, "length_median", names[cls], "",
              len ? std::optional<double>(len->median) : std::nullopt);
    stats_row(out, "length_q3", names[cls], "", len ? std::optional<double>(len->q3) : std::nullopt);
  }
  for (const TermShare& share : report.terms) {
    for (int cls = 1; cls >= 0; --cls) {
      stats_row(out, "share_permille", names[cls], share.term, share.permille[cls]);
      stats_row(out, "post_share", names[cls], share.term, share.post_share[cls]);
    }
  }
  for (int cls = 1; cls >= 0; --cls) {
    stats_row(out, "posts_with_i_or_you", names[cls], "", report.any_i_you[cls]);
    stats_row(out, "posts_with_any_pronoun", names[cls], "", report.any_probe[cls]);
    stats_row(out, "posts_with_two_pronouns", names[cls], "", report.two_probe[cls]);
    stats_row(out, "i_you_ratio", names[cls], "", report.i_you_ratio[cls]);
  }
}

}  // namespace afdforge::eval
