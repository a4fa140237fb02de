// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <sys/wait.h>

#include "afdforge/block_filter.hpp"
#include "afdforge/corpus.hpp"
#include "afdforge/evaluate.hpp"
#include "afdforge/features.hpp"
#include "afdforge/io.hpp"
#include "afdforge/lm.hpp"
#include "afdforge/nb.hpp"
#include "afdforge/rng.hpp"
#include "afdforge/svm.hpp"
#include "afdforge/text_clean.hpp"
#include "afdforge/text_util.hpp"

namespace fs = std::filesystem;
using namespace afdforge;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++g_failures;
}

bool expect(bool condition, const char* what, std::string& notes) {
  if (!condition) {
    notes += std::string(notes.empty() ? "" : "; ") + "failed: " + what;
    return false;
  }
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  // golden.conf names its fixtures relative to the repository root
  std::string root = fs::path(AFDFORGE_DATA_DIR).parent_path().string();
  std::string cmd = "cd " + root + " && " + std::string(AFDFORGE_BIN) + " " + args +
                    " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------
// 1. End-to-end golden run: byte-identical labeled corpus and report across
//    two same-seed runs of the bundled mini dump; runtime < 10 s.
void criterion_1() {
  std::string notes;
  bool ok = true;
  auto start = std::chrono::steady_clock::now();

  fs::path base = fs::temp_directory_path() / "afdforge_acceptance_golden";
  fs::remove_all(base);
  fs::create_directories(base);
  std::string flags = std::string("--data-dir ") + AFDFORGE_DATA_DIR + " --config " +
                      AFDFORGE_DATA_DIR + "/golden/golden.conf pipeline --outdir ";
  ok &= expect(run_cli(flags + (base / "r1").string()) == 0, "first pipeline run", notes);
  ok &= expect(run_cli(flags + (base / "r2").string()) == 0, "second pipeline run", notes);

  for (const char* artifact : {"labeled.jsonl", "report.tsv"}) {
    std::string a = slurp((base / "r1" / artifact).string());
    std::string b = slurp((base / "r2" / artifact).string());
    ok &= expect(!a.empty() && a == b, artifact, notes);
  }
  // the labeled corpus must actually contain both classes
  std::string labeled = slurp((base / "r1" / "labeled.jsonl").string());
  ok &= expect(labeled.find("\"disruptive\"") != std::string::npos, "has disruptive posts", notes);
  ok &= expect(labeled.find("\"constructive\"") != std::string::npos, "has constructive posts",
               notes);

  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok &= expect(seconds < 10.0, "runtime under 10 s", notes);
  fs::remove_all(base);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "golden run byte-identical across two seeded runs (%.2f s)%s%s", seconds,
                notes.empty() ? "" : " — ", notes.c_str());
  report(1, ok, buf);
}

// ---------------------------------------------------------------------------
// 2. Sliding-window figure: A-F fixture yields [ABC, BC, CD, DE, E, F] with
//    CD/DE/E disruptive and C appearing three times.
void criterion_2() {
  std::string notes;
  bool ok = true;
  constexpr std::int64_t kDay = 86400;
  auto day = [](double d) { return static_cast<std::int64_t>(d * 86400); };

  std::vector<textclean::CleanPost> raw;
  const char* names[] = {"a", "b", "c", "d", "e", "f"};
  double times[] = {0.0, 0.5, 0.9, 1.8, 2.4, 3.3};
  for (int i = 0; i < 6; ++i) {
    textclean::CleanPost p;
    p.page_title = "T";
    p.author = "W";
    p.revision_id = i + 1;
    p.timestamp = day(times[i]);
    p.tokens = {names[i]};
    p.token_count = 1;
    raw.push_back(p);
  }
  ingest::BlockEvent block;
  block.timestamp = day(2.8);
  block.blocked_user = "W";
  auto labeled = corpus::label_posts(raw, {block}, kDay);
  auto merged = corpus::sliding_window_merge(labeled, kDay);

  std::vector<std::string> joined;
  for (const auto& m : merged) joined.push_back(util::join(m.tokens, ""));
  ok &= expect(joined == std::vector<std::string>{"abc", "bc", "cd", "de", "e", "f"},
               "window contents [ABC, BC, CD, DE, E, F]", notes);
  if (merged.size() == 6) {
    bool labels_ok = merged[0].label == corpus::Label::constructive &&
                     merged[1].label == corpus::Label::constructive &&
                     merged[2].label == corpus::Label::disruptive &&
                     merged[3].label == corpus::Label::disruptive &&
                     merged[4].label == corpus::Label::disruptive &&
                     merged[5].label == corpus::Label::constructive;
    ok &= expect(labels_ok, "CD, DE, E disruptive and the rest constructive", notes);
  }
  std::size_t c_count = 0;
  for (const auto& m : merged)
    for (const auto& t : m.tokens)
      if (t == "c") ++c_count;
  ok &= expect(c_count == 3, "post C appears in three merged posts", notes);

  report(2, ok, "sliding-window walkthrough reproduced exactly" +
                    (notes.empty() ? "" : " — " + notes));
}

// ---------------------------------------------------------------------------
// 3. Smoothing normalization: NB class distributions and every KN pattern
//    distribution sum to 1 within 1e-9 on a small fixture.
void criterion_3() {
  std::string notes;
  bool ok = true;
  double worst = 0.0;

  features::Vocabulary vocab = features::build_vocabulary(
      {{"you", "fool", "you"}, {"keep", "it", "civil"}, {"keep", "calm"}}, {1, 0, 0});
  for (double delta : {1.0, 0.5}) {
    model::NbModel nb = model::train_nb(vocab, delta);
    for (int k = 0; k < 2; ++k) {
      double sum = 0.0;
      for (double lp : nb.log_prob[k]) sum += std::exp(lp);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  ok &= expect(worst <= 1e-9, "NB class distributions sum to 1", notes);

  // 10-token fixture, all histories over V+UNK, all masks, orders 2..4
  std::vector<std::vector<std::string>> posts = {{"a", "b", "a", "c", "b"},
                                                 {"c", "a", "b", "d", "a"}};
  model::LmVocab lm_vocab = model::LmVocab::build({&posts});
  const std::uint32_t v = static_cast<std::uint32_t>(lm_vocab.size());
  double worst_lm = 0.0;
  for (int order : {2, 3, 4}) {
    for (bool skips : {true, false}) {
      model::LmModel lm = model::LmModel::train(posts, lm_vocab, {order, skips});
      for (int k = 0; k < order; ++k) {
        std::size_t combos = 1;
        for (int i = 0; i < k; ++i) combos *= v;
        std::vector<std::uint32_t> history(static_cast<std::size_t>(k));
        for (std::size_t combo = 0; combo < combos; ++combo) {
          std::size_t rest = combo;
          for (int i = 0; i < k; ++i) {
            history[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % v);
            rest /= v;
          }
          for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            double sum = 0.0;
            for (std::uint32_t w = 0; w < v; ++w) sum += lm.pattern_probability(w, history, mask);
            worst_lm = std::max(worst_lm, std::abs(sum - 1.0));
          }
        }
      }
    }
  }
  ok &= expect(worst_lm <= 1e-9, "KN pattern distributions sum to 1", notes);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "NB and KN distributions normalize (worst |sum-1| = %.2e, %.2e)%s%s", worst,
                worst_lm, notes.empty() ? "" : " — ", notes.c_str());
  report(3, ok, buf);
}

// ---------------------------------------------------------------------------
// 4. NB oracle equivalence over an exhaustive small corpus grid.
void criterion_4() {
  std::string notes;
  bool ok = true;
  const std::vector<std::string> alphabet{"a", "b", "c", "d", "e"};

  // All multisets of sizes 1..4 over 5 words (order is irrelevant to the
  // model), enumerated as non-decreasing index tuples.
  std::vector<std::vector<std::string>> docs;
  std::vector<int> stack;
  std::function<void(std::size_t, std::size_t)> emit = [&](std::size_t from, std::size_t left) {
    if (!stack.empty()) {
      std::vector<std::string> doc;
      for (int i : stack) doc.push_back(alphabet[static_cast<std::size_t>(i)]);
      docs.push_back(doc);
    }
    if (left == 0) return;
    for (std::size_t i = from; i < alphabet.size(); ++i) {
      stack.push_back(static_cast<int>(i));
      emit(i, left - 1);
      stack.pop_back();
    }
  };
  emit(0, 4);

  // oracle: direct evaluation of the smoothed estimates and the weighted
  // product, from plain count maps
  auto oracle_scores = [&](const std::vector<std::vector<std::string>>& corpus,
                           const std::vector<int>& labels,
                           const std::vector<std::string>& test_doc, double delta) {
    std::map<std::string, std::uint64_t> tf[2], df;
    std::uint64_t tokens[2] = {0, 0}, doc_count[2] = {0, 0};
    std::set<std::string> vocab;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
      ++doc_count[labels[d]];
      std::set<std::string> seen;
      for (const auto& w : corpus[d]) {
        ++tf[labels[d]][w];
        ++tokens[labels[d]];
        vocab.insert(w);
        seen.insert(w);
      }
      for (const auto& w : seen) ++df[w];
    }
    std::map<std::string, std::uint64_t> test_tf;
    for (const auto& w : test_doc)
      if (vocab.count(w)) ++test_tf[w];
    double n = static_cast<double>(corpus.size());
    std::array<double, 2> scores{};
    for (int k = 0; k < 2; ++k) {
      double score = std::log(double(doc_count[k]) / n);
      for (const auto& [w, count] : test_tf) {
        double idf = std::log(n / double(df[w]));
        double weight = double(count) * idf;
        if (weight <= 0.0) continue;
        double p = (double(tf[k].count(w) ? tf[k].at(w) : 0) + delta) /
                   (double(tokens[k]) + delta * double(vocab.size()));
        score += weight * std::log(p);
      }
      scores[k] = score;
    }
    return scores;
  };

  std::uint64_t cases = 0;
  double worst = 0.0;
  bool argmax_ok = true;
  const double delta = 1.0;
  // every ordered pair of documents: one per class ((1,1) split), plus a
  // sampled-but-complete sweep of (2,1) splits below
  for (std::size_t i = 0; i < docs.size() && ok; ++i) {
    for (std::size_t j = 0; j < docs.size(); ++j) {
      std::vector<std::vector<std::string>> corpus{docs[j], docs[i]};
      std::vector<int> labels{0, 1};
      features::Vocabulary vocab = features::build_vocabulary(corpus, labels);
      model::NbModel nb = model::train_nb(vocab, delta);
      for (const auto& test_doc : {corpus[0], corpus[1]}) {
        auto stemmed = test_doc;  // single letters are their own stems
        model::NbPrediction got =
            model::predict_nb(nb, features::tfidf_vector(stemmed, vocab));
        auto expected = oracle_scores(corpus, labels, test_doc, delta);
        worst = std::max({worst, std::abs(got.log_score[0] - expected[0]),
                          std::abs(got.log_score[1] - expected[1])});
        int expected_label = expected[1] > expected[0] ? 1 : 0;
        argmax_ok = argmax_ok && got.label == expected_label;
        ++cases;
      }
    }
  }
  // exhaustive three-document corpora: (2,1) and (1,2) class splits with the
  // same-class pair unordered (documents are bags, so this enumerates every
  // model-distinct corpus on the grid)
  for (std::size_t a = 0; a < docs.size() && ok; ++a) {
    for (std::size_t b = a; b < docs.size(); ++b) {
      for (std::size_t c = 0; c < docs.size(); ++c) {
        std::vector<std::vector<std::string>> corpus{docs[a], docs[b], docs[c]};
        for (const auto& labels : {std::vector<int>{0, 0, 1}, std::vector<int>{1, 1, 0}}) {
          features::Vocabulary vocab = features::build_vocabulary(corpus, labels);
          model::NbModel nb = model::train_nb(vocab, delta);
          for (const auto& test_doc : {corpus[0], corpus[2]}) {
            model::NbPrediction got =
                model::predict_nb(nb, features::tfidf_vector(test_doc, vocab));
            auto expected = oracle_scores(corpus, labels, test_doc, delta);
            worst = std::max({worst, std::abs(got.log_score[0] - expected[0]),
                              std::abs(got.log_score[1] - expected[1])});
            argmax_ok = argmax_ok && got.label == (expected[1] > expected[0] ? 1 : 0);
            ++cases;
          }
        }
        if (!argmax_ok || worst > 1e-12) break;
      }
      if (!argmax_ok || worst > 1e-12) break;
    }
  }

  ok &= expect(worst <= 1e-12, "log scores within 1e-12 of the oracle", notes);
  ok &= expect(argmax_ok, "argmax matches the oracle exactly", notes);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "NB matches the direct-evaluation oracle on %llu cases "
                                  "(worst log-score gap %.2e)%s%s",
                static_cast<unsigned long long>(cases), worst, notes.empty() ? "" : " — ",
                notes.c_str());
  report(4, ok, buf);
}

// ---------------------------------------------------------------------------
// 5. AUC oracle: pairwise win fraction on 1000 random sets; all-equal = 0.5;
//    random scorer near 0.5.
void criterion_5() {
  std::string notes;
  bool ok = true;
  util::Rng rng(90210);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 2 + rng.below(49);
    std::vector<eval::ScoredPrediction> preds;
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      int label = static_cast<int>(rng.below(2));
      double score = rng.below(2) ? double(rng.below(10)) : rng.unit();
      preds.push_back({score, label});
      (label ? has_pos : has_neg) = true;
    }
    auto auc = eval::roc_auc(preds);
    if (!has_pos || !has_neg) {
      ok &= expect(!auc.has_value(), "single-class input undefined", notes);
      continue;
    }
    double wins = 0.0;
    std::uint64_t pairs = 0;
    for (const auto& p : preds)
      for (const auto& q : preds) {
        if (p.label != 1 || q.label != 0) continue;
        ++pairs;
        wins += p.score > q.score ? 1.0 : (p.score == q.score ? 0.5 : 0.0);
      }
    worst = std::max(worst, std::abs(auc.value() - wins / double(pairs)));
  }
  ok &= expect(worst <= 1e-12, "pairwise win fraction within 1e-12", notes);

  std::vector<eval::ScoredPrediction> equal;
  for (int i = 0; i < 20; ++i) equal.push_back({1.0, i % 2});
  ok &= expect(eval::roc_auc(equal).value() == 0.5, "all-equal scores give exactly 0.5", notes);

  std::vector<eval::ScoredPrediction> random_scorer;
  for (int i = 0; i < 1000; ++i) random_scorer.push_back({rng.unit(), i % 2});
  double rand_auc = eval::roc_auc(random_scorer).value();
  ok &= expect(std::abs(rand_auc - 0.5) <= 0.05, "random scorer lands at 0.5 +/- 0.05", notes);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "AUC equals the pairwise statistic (worst gap %.2e; random scorer %.3f)%s%s",
                worst, rand_auc, notes.empty() ? "" : " — ", notes.c_str());
  report(5, ok, buf);
}

// ---------------------------------------------------------------------------
// 6. Metric arithmetic on 10,000 random confusion matrices.
void criterion_6() {
  std::string notes;
  bool ok = true;
  util::Rng rng(1618);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    eval::Confusion c{rng.below(50), rng.below(50), rng.below(50), rng.below(50)};
    if (c.total() == 0) c.tn = 1;
    eval::Metrics m = eval::compute_metrics(c);
    auto check_ratio = [&](const std::optional<double>& got, std::uint64_t num,
                           std::uint64_t den) {
      if (den == 0) {
        if (got.has_value()) ok = false;
        return;
      }
      if (!got.has_value()) {
        ok = false;
        return;
      }
      worst = std::max(worst, std::abs(*got - double(num) / double(den)));
    };
    check_ratio(m.precision_pos, c.tp, c.tp + c.fp);
    check_ratio(m.recall_pos, c.tp, c.tp + c.fn);
    check_ratio(m.precision_neg, c.tn, c.tn + c.fn);
    check_ratio(m.recall_neg, c.tn, c.tn + c.fp);
    check_ratio(m.accuracy, c.tp + c.tn, c.total());
    // F1 from the harmonic-mean equation
    if (m.precision_pos && m.recall_pos && *m.precision_pos + *m.recall_pos > 0) {
      double f1 = 2.0 * *m.precision_pos * *m.recall_pos / (*m.precision_pos + *m.recall_pos);
      if (!m.f1_pos) ok = false;
      else worst = std::max(worst, std::abs(*m.f1_pos - f1));
    } else if (m.f1_pos) {
      ok = false;
    }
    // undefined metrics render as a dash, never NaN
    if (eval::format_metric_percent(m.f1_pos).find("nan") != std::string::npos) ok = false;
  }
  ok &= expect(worst <= 1e-12, "metric formulas within 1e-12", notes);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "metrics match direct formulas on 10000 random confusions (worst %.2e)%s%s",
                worst, notes.empty() ? "" : " — ", notes.c_str());
  report(6, ok, buf);
}

// ---------------------------------------------------------------------------
// 7. SVM sanity: analytic 4-point fixture and a 200-point separable set.
void criterion_7() {
  std::string notes;
  bool ok = true;
  auto start = std::chrono::steady_clock::now();

  auto vec2 = [](double x, double y) {
    features::SparseVector v;
    if (x != 0.0) v.entries.push_back({0, x});
    if (y != 0.0) v.entries.push_back({1, y});
    return v;
  };
  std::vector<features::SparseVector> points{vec2(2, 0), vec2(0, 2), vec2(-2, 0), vec2(0, -2)};
  std::vector<int> labels{1, 1, 0, 0};
  model::SvmModel m = model::train_svm(points, labels, 2, {1.0, 1e-4, 0, 0});

  double norm = std::hypot(m.weights[0], m.weights[1]);
  double cosine = (m.weights[0] + m.weights[1]) / (norm * std::sqrt(2.0));
  double angle = std::acos(std::min(1.0, cosine)) * 180.0 / M_PI;
  ok &= expect(angle < 2.0, "weight direction within 2 degrees of the optimum", notes);
  int correct = 0;
  double margin = 1e18;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (model::svm_predict(m, points[i]) == labels[i]) ++correct;
    double y = labels[i] ? 1.0 : -1.0;
    margin = std::min(margin, y * model::svm_score(m, points[i]) / norm);
  }
  ok &= expect(correct == 4, "4-point fixture classified perfectly", notes);
  ok &= expect(margin >= std::sqrt(2.0) - 1e-2, "geometric margin near sqrt(2)", notes);

  util::Rng rng(515);
  std::vector<features::SparseVector> big;
  std::vector<int> big_labels;
  while (big.size() < 200) {
    double x = rng.unit() * 4.0 - 2.0, y = rng.unit() * 4.0 - 2.0;
    double s = x + y;
    if (s > 0.4) {
      big.push_back(vec2(x, y));
      big_labels.push_back(1);
    } else if (s < -0.4) {
      big.push_back(vec2(x, y));
      big_labels.push_back(0);
    }
  }
  model::SvmModel m2 = model::train_svm(big, big_labels, 2, {10.0, 1e-3, 0, 0});
  int correct2 = 0;
  for (std::size_t i = 0; i < big.size(); ++i)
    if (model::svm_predict(m2, big[i]) == big_labels[i]) ++correct2;
  ok &= expect(correct2 >= 190, "200-point separable set at >= 95% accuracy", notes);

  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok &= expect(seconds < 5.0, "runtime under 5 s", notes);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "SVM recovers the analytic hyperplane (%.3f deg off, margin ok) and scores "
                "%d/200 (%.2f s)%s%s",
                angle, correct2, seconds, notes.empty() ? "" : " — ", notes.c_str());
  report(7, ok, buf);
}

// ---------------------------------------------------------------------------
// 8. Labeling monotonicity over 200 random fixtures; inclusive boundary.
void criterion_8() {
  std::string notes;
  bool ok = true;
  util::Rng rng(2718);
  constexpr std::int64_t kDay = 86400;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<textclean::CleanPost> posts;
    std::vector<ingest::BlockEvent> blocks;
    int n_posts = 1 + static_cast<int>(rng.below(20));
    int n_blocks = static_cast<int>(rng.below(8));
    for (int i = 0; i < n_posts; ++i) {
      textclean::CleanPost p;
      p.author = "U" + std::to_string(rng.below(5));
      p.timestamp = static_cast<std::int64_t>(rng.below(50)) * 6 * 3600;
      p.tokens = {"t"};
      posts.push_back(p);
    }
    for (int i = 0; i < n_blocks; ++i) {
      ingest::BlockEvent b;
      b.blocked_user = "U" + std::to_string(rng.below(5));
      b.timestamp = static_cast<std::int64_t>(rng.below(50)) * 6 * 3600;
      b.admin_user = "A";
      blocks.push_back(b);
    }
    std::size_t last = 0;
    bool first = true;
    for (std::int64_t frame : {6 * 3600L, 12 * 3600L, kDay, 2 * kDay, 4 * kDay, 8 * kDay}) {
      auto labeled = corpus::label_posts(posts, blocks, frame);
      std::size_t disruptive = 0;
      for (const auto& p : labeled)
        if (p.label == corpus::Label::disruptive) ++disruptive;
      if (!first && disruptive < last) {
        ok = expect(false, "monotonicity", notes);
        break;
      }
      last = disruptive;
      first = false;
    }
  }

  // delta == timeframe labels disruptive
  textclean::CleanPost p;
  p.author = "A";
  p.timestamp = 0;
  p.tokens = {"x"};
  ingest::BlockEvent b;
  b.blocked_user = "A";
  b.timestamp = kDay;
  auto labeled = corpus::label_posts({p}, {b}, kDay);
  ok &= expect(labeled[0].label == corpus::Label::disruptive, "inclusive boundary", notes);

  report(8, ok, "disruptive counts are non-decreasing in the timeframe; boundary inclusive" +
                    (notes.empty() ? "" : " — " + notes));
}

// ---------------------------------------------------------------------------
// 9. Cleaning invariants: 10,000 random byte strings, alphabet preserved,
//    pinned examples hold.
void criterion_9() {
  std::string notes;
  bool ok = true;
  textclean::TextCleaner cleaner(
      textclean::load_pattern_file(std::string(AFDFORGE_DATA_DIR) + "/afd_boilerplate.txt"),
      textclean::load_pattern_file(std::string(AFDFORGE_DATA_DIR) + "/signature_patterns.txt"));

  util::Rng rng(600613);
  std::size_t bad_tokens = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::string junk;
    std::size_t len = rng.below(160);
    for (std::size_t i = 0; i < len; ++i) junk.push_back(static_cast<char>(rng.below(256)));
    auto tokens = cleaner.clean_text(junk);
    for (const auto& t : tokens) {
      bool lower = !t.empty();
      for (char c : t) lower = lower && c >= 'a' && c <= 'z';
      if (!lower && !textclean::is_link_token(t)) ++bad_tokens;
    }
  }
  ok &= expect(bad_tokens == 0, "no token violates the clean alphabet", notes);

  ok &= expect(textclean::canonicalize_links("[[WP:NPA]]") == "WPNPA", "[[WP:NPA]] -> WPNPA",
               notes);
  ok &= expect(textclean::normalize("b4") == std::vector<std::string>{"b"}, "b4 -> b", notes);

  report(9, ok, "10000 fuzz inputs cleaned without a crash or alphabet violation" +
                    (notes.empty() ? "" : " — " + notes));
}

// ---------------------------------------------------------------------------
// 10. CV partition law for every sampling mode and sizes 20..200.
void criterion_10() {
  std::string notes;
  bool ok = true;
  util::Rng rng(10101);
  for (std::size_t n = 20; n <= 200 && ok; ++n) {
    std::vector<int> labels(n);
    std::size_t positives = std::max<std::size_t>(10, std::min(n - 10, n / 2 + rng.below(3)));
    for (std::size_t i = 0; i < n; ++i) labels[i] = i < positives ? 1 : 0;
    util::shuffle(labels, rng);

    for (auto sampling : {eval::Sampling::stratified, eval::Sampling::linear_per_class,
                          eval::Sampling::linear_global}) {
      auto folds = eval::make_folds(labels, 10, sampling, n);
      std::set<std::size_t> seen;
      for (const auto& fold : folds)
        for (std::size_t i : fold) {
          if (i >= n || !seen.insert(i).second) ok = expect(false, "disjoint covering", notes);
        }
      if (seen.size() != n) ok = expect(false, "folds cover the corpus", notes);

      if (sampling == eval::Sampling::stratified) {
        std::size_t pos_total = 0;
        for (int l : labels) pos_total += static_cast<std::size_t>(l);
        std::size_t lo_pos = pos_total / 10, hi_pos = (pos_total + 9) / 10;
        std::size_t neg_total = n - pos_total;
        std::size_t lo_neg = neg_total / 10, hi_neg = (neg_total + 9) / 10;
        for (const auto& fold : folds) {
          std::size_t pos = 0;
          for (std::size_t i : fold) pos += static_cast<std::size_t>(labels[i]);
          std::size_t neg = fold.size() - pos;
          if (pos < lo_pos || pos > hi_pos || neg < lo_neg || neg > hi_neg)
            ok = expect(false, "stratified balance within +/-1 per class", notes);
        }
      }
    }
  }
  report(10, ok, "fold partitions are disjoint, covering, and stratified-balanced for "
                 "sizes 20..200" + (notes.empty() ? "" : " — " + notes));
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void()>>> criteria{
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
      {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
      {9, criterion_9}, {10, criterion_10}};
  for (const auto& [number, body] : criteria) {
    try {
      body();
    } catch (const std::exception& e) {
      report(number, false, std::string("exception: ") + e.what());
    }
  }
  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
