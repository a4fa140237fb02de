#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "afdforge/authorship.hpp"
#include "afdforge/block_filter.hpp"
#include "afdforge/config.hpp"
#include "afdforge/corpus.hpp"
#include "afdforge/dump_ingest.hpp"
#include "afdforge/evaluate.hpp"
#include "afdforge/features.hpp"
#include "afdforge/io.hpp"
#include "afdforge/lm.hpp"
#include "afdforge/nb.hpp"
#include "afdforge/rng.hpp"
#include "afdforge/svm.hpp"
#include "afdforge/text_clean.hpp"
#include "afdforge/text_util.hpp"

#ifndef AFDFORGE_DEFAULT_DATA_DIR
#define AFDFORGE_DEFAULT_DATA_DIR "data"
#endif
#ifndef AFDFORGE_VERSION
#define AFDFORGE_VERSION "dev"
#endif

namespace {

using namespace afdforge;
using nlohmann::json;

// data errors exit with code 2, usage problems with 1
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::unique_ptr<std::istream> open_input(const std::string& path) {
  if (path == "-") return std::make_unique<std::istream>(std::cin.rdbuf());
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) throw std::runtime_error("cannot open input: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output: " + path);
  return out;
}

std::string slurp(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in->rdbuf();
  return buf.str();
}

std::int64_t parse_duration_or_throw(const std::string& text, const std::string& what) {
  auto v = util::parse_duration_seconds(text);
  if (!v) throw UsageError("bad " + what + " duration '" + text + "' (use e.g. 13h, 1d, 1.5d)");
  return *v;
}

int parse_int_or_throw(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " value '" + text + "' (expected an integer)");
  }
}

double parse_double_or_throw(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " value '" + text + "' (expected a number)");
  }
}

std::uint64_t parse_u64_or_throw(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " value '" + text + "' (expected an unsigned integer)");
  }
}

struct CommonOptions {
  std::string config_path;
  std::string data_dir = AFDFORGE_DEFAULT_DATA_DIR;
  std::optional<std::string> seed_flag;

  config::Config config;

  void load() {
    if (!config_path.empty()) config = config::Config::load_file(config_path);
  }
  std::string resolve(const std::string& key, const std::optional<std::string>& flag,
                      const std::string& fallback) const {
    return config.resolve(key, flag, fallback);
  }
  std::uint64_t seed() const;
  std::string data_file(const std::string& name) const { return data_dir + "/" + name; }
};

std::uint64_t CommonOptions::seed() const {
  return parse_u64_or_throw(resolve("seed", seed_flag, "0"), "seed");
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::map<std::string, std::string>& inputs,
                    const std::map<std::string, std::string>& outputs,
                    const std::map<std::string, std::string>& parameters,
                    const std::string& status, const std::string& failure_stage = "") {
  json j;
  j["command"] = command;
  j["version"] = AFDFORGE_VERSION;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["parameters"] = parameters;
  j["status"] = status;
  if (!failure_stage.empty()) j["failure_stage"] = failure_stage;
  std::ofstream out(out_path, std::ios::binary);
  if (out) out << j.dump(2) << '\n';
}

textclean::TextCleaner make_cleaner(const CommonOptions& common,
                                    const std::optional<std::string>& boilerplate_flag,
                                    const std::optional<std::string>& signature_flag) {
  std::string boilerplate = common.resolve("boilerplate-patterns", boilerplate_flag,
                                           common.data_file("afd_boilerplate.txt"));
  std::string signatures = common.resolve("signature-patterns", signature_flag,
                                          common.data_file("signature_patterns.txt"));
  return textclean::TextCleaner(textclean::load_pattern_file(boilerplate),
                                textclean::load_pattern_file(signatures));
}

features::FunctionWordList load_function_words(const CommonOptions& common,
                                               const std::optional<std::string>& flag) {
  return features::FunctionWordList::load_file(
      common.resolve("function-words", flag, common.data_file("function_words.txt")));
}

eval::ClassifierSpec make_spec(const std::string& classifier, const std::string& features_mode,
                               double delta, double c, int lm_order, bool lm_skips) {
  eval::ClassifierSpec spec;
  auto kind = eval::classifier_from_name(classifier);
  if (!kind) throw UsageError("unknown classifier '" + classifier + "' (nb, lm, svm)");
  spec.kind = *kind;
  if (features_mode == "function-words") spec.function_words_only = true;
  else if (features_mode != "full-text")
    throw UsageError("unknown features mode '" + features_mode + "' (full-text, function-words)");
  spec.nb_delta = delta;
  spec.svm_c = c;
  spec.lm_order = lm_order;
  spec.lm_skips = lm_skips;
  return spec;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::string_view t = util::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_extract_afd(const CommonOptions& common, const std::string& dump_path,
                    const std::string& out_path, const std::string& prefix) {
  auto in = open_input(dump_path);
  auto out = open_output(out_path);
  ingest::AfdPageStream stream(*in, prefix);
  std::size_t pages = 0;
  while (auto page = stream.next()) {
    io::write_page(out, *page);
    ++pages;
  }
  write_manifest(out_path + ".manifest.json", "extract-afd", {{"dump", dump_path}},
                 {{"pages", out_path}},
                 {{"prefix", prefix}, {"pages_extracted", std::to_string(pages)}}, "ok");
  (void)common;
  return 0;
}

int cmd_extract_blocks(const CommonOptions& common, const std::string& log_path,
                       const std::string& out_path) {
  auto in = open_input(log_path);
  ingest::BlockLogResult result = ingest::parse_block_log(*in);
  auto out = open_output(out_path);
  ingest::write_block_log_tsv(out, result.events);
  std::cerr << "extract-blocks: " << result.events.size() << " blocks, " << result.skipped
            << " skipped, " << result.rejected << " rejected\n";
  write_manifest(out_path + ".manifest.json", "extract-blocks", {{"log", log_path}},
                 {{"blocks", out_path}},
                 {{"blocks", std::to_string(result.events.size())},
                  {"skipped", std::to_string(result.skipped)},
                  {"rejected", std::to_string(result.rejected)}},
                 "ok");
  (void)common;
  return 0;
}

int cmd_attribute(const CommonOptions& common, const std::string& pages_path,
                  const std::string& out_path) {
  auto in = open_input(pages_path);
  auto out = open_output(out_path);
  std::size_t posts = 0;
  for (const auto& page : io::read_pages(*in)) {
    auto extracted = authorship::extract_posts(page);
    io::write_raw_posts(out, extracted);
    posts += extracted.size();
  }
  write_manifest(out_path + ".manifest.json", "attribute", {{"pages", pages_path}},
                 {{"posts", out_path}}, {{"posts", std::to_string(posts)}}, "ok");
  (void)common;
  return 0;
}

int cmd_clean(const CommonOptions& common, const std::string& in_path, const std::string& out_path,
              const std::optional<std::string>& boilerplate,
              const std::optional<std::string>& signatures, bool keep_empty) {
  textclean::TextCleaner cleaner = make_cleaner(common, boilerplate, signatures);
  auto in = open_input(in_path);
  auto raw = io::read_raw_posts(*in);
  std::vector<textclean::CleanPost> clean;
  clean.reserve(raw.size());
  for (const auto& post : raw) {
    textclean::CleanPost cp = cleaner.clean(post);
    // zero-token posts carry no words for any model; dropped by default
    if (cp.token_count == 0 && !keep_empty) continue;
    clean.push_back(std::move(cp));
  }
  auto out = open_output(out_path);
  io::write_clean_posts(out, clean);
  write_manifest(
      out_path + ".manifest.json", "clean", {{"posts", in_path}}, {{"clean", out_path}},
      {{"posts", std::to_string(clean.size())},
       {"unbalanced_templates", std::to_string(cleaner.counters().unbalanced_templates)}},
      "ok");
  return 0;
}

int cmd_filter_blocks(const CommonOptions& common, const std::string& in_path,
                      const std::string& out_path, const std::string& mode_name,
                      const std::optional<std::string>& terms_flag) {
  blockfilter::FilterMode mode;
  if (mode_name == "blacklist") mode = blockfilter::FilterMode::blacklist;
  else if (mode_name == "whitelist") mode = blockfilter::FilterMode::whitelist;
  else throw UsageError("unknown filter mode '" + mode_name + "' (blacklist, whitelist)");

  std::string terms_path = common.resolve(
      "filter-terms", terms_flag,
      common.data_file(mode == blockfilter::FilterMode::blacklist ? "blacklist_terms.txt"
                                                                  : "whitelist_terms.txt"));
  auto terms = blockfilter::load_term_file(terms_path);

  auto in = open_input(in_path);
  ingest::BlockLogResult log = ingest::parse_block_log(*in);
  auto registered = blockfilter::drop_anonymous(log.events);
  auto filtered = blockfilter::filter_blocks(registered, mode, terms);
  auto out = open_output(out_path);
  ingest::write_block_log_tsv(out, filtered);
  write_manifest(out_path + ".manifest.json", "filter-blocks", {{"blocks", in_path}},
                 {{"filtered", out_path}},
                 {{"mode", mode_name},
                  {"terms", terms_path},
                  {"in", std::to_string(log.events.size())},
                  {"registered", std::to_string(registered.size())},
                  {"out", std::to_string(filtered.size())}},
                 "ok");
  return 0;
}

int cmd_label(const CommonOptions& common, const std::string& posts_path,
              const std::string& blocks_path, const std::string& out_path,
              const std::string& timeframe_text) {
  std::int64_t timeframe = parse_duration_or_throw(timeframe_text, "timeframe");
  auto posts_in = open_input(posts_path);
  auto posts = blockfilter::drop_anonymous(io::read_clean_posts(*posts_in));
  auto blocks_in = open_input(blocks_path);
  auto blocks = ingest::parse_block_log(*blocks_in).events;
  auto labeled = corpus::label_posts(posts, blocks, timeframe);
  auto out = open_output(out_path);
  io::write_labeled_posts(out, labeled);
  std::size_t disruptive = 0;
  for (const auto& p : labeled)
    if (p.label == corpus::Label::disruptive) ++disruptive;
  write_manifest(out_path + ".manifest.json", "label",
                 {{"posts", posts_path}, {"blocks", blocks_path}}, {{"labeled", out_path}},
                 {{"timeframe", timeframe_text},
                  {"posts", std::to_string(labeled.size())},
                  {"disruptive", std::to_string(disruptive)}},
                 "ok");
  (void)common;
  return 0;
}

int cmd_window(const CommonOptions& common, const std::string& in_path,
               const std::string& out_path, const std::string& window_text) {
  std::int64_t window = parse_duration_or_throw(window_text, "window");
  auto in = open_input(in_path);
  auto labeled = io::read_labeled_posts(*in);
  auto merged = corpus::sliding_window_merge_all(labeled, window);
  auto out = open_output(out_path);
  io::write_merged_posts(out, merged);
  write_manifest(out_path + ".manifest.json", "window", {{"labeled", in_path}},
                 {{"merged", out_path}},
                 {{"window", window_text}, {"merged", std::to_string(merged.size())}}, "ok");
  (void)common;
  return 0;
}

int cmd_sample(const CommonOptions& common, const std::string& in_path,
               const std::string& out_path, const std::string& strategy_name, std::uint64_t seed,
               bool merged_input) {
  corpus::SampleStrategy strategy;
  if (strategy_name == "random") strategy = corpus::SampleStrategy::random;
  else if (strategy_name == "chronological") strategy = corpus::SampleStrategy::chronological;
  else throw UsageError("unknown strategy '" + strategy_name + "' (random, chronological)");

  auto in = open_input(in_path);
  auto out = open_output(out_path);
  std::size_t kept = 0;
  if (merged_input) {
    auto merged = io::read_merged_posts(*in);
    auto balanced = corpus::balance_sample(merged, strategy, seed);
    io::write_merged_posts(out, balanced);
    kept = balanced.size();
  } else {
    auto labeled = io::read_labeled_posts(*in);
    auto balanced = corpus::balance_sample(labeled, strategy, seed);
    io::write_labeled_posts(out, balanced);
    kept = balanced.size();
  }
  write_manifest(out_path + ".manifest.json", "sample", {{"corpus", in_path}},
                 {{"balanced", out_path}},
                 {{"strategy", strategy_name},
                  {"seed", std::to_string(seed)},
                  {"posts", std::to_string(kept)}},
                 "ok");
  (void)common;
  return 0;
}

int cmd_train(const CommonOptions& common, const std::string& in_path,
              const std::string& out_prefix, const eval::ClassifierSpec& spec,
              const std::optional<std::string>& fw_flag) {
  auto in = open_input(in_path);
  auto docs = io::read_documents(*in);

  std::optional<features::FunctionWordList> fw;
  if (spec.function_words_only) fw = load_function_words(common, fw_flag);

  std::vector<std::vector<std::string>> stemmed(docs.size());
  std::vector<int> labels(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    labels[i] = docs[i].label;
    stemmed[i] = spec.function_words_only
                     ? features::stem_all(features::filter_function_words(docs[i].tokens, *fw))
                     : features::stem_all(docs[i].tokens);
  }

  std::map<std::string, std::string> outputs;
  if (spec.kind == eval::ClassifierSpec::Kind::lm) {
    std::vector<std::vector<std::string>> class_posts[2];
    for (std::size_t i = 0; i < stemmed.size(); ++i) class_posts[labels[i]].push_back(stemmed[i]);
    model::LmVocab vocab = model::LmVocab::build({&class_posts[0], &class_posts[1]});
    model::LmOptions options{spec.lm_order, spec.lm_skips};
    model::LmModel negative = model::LmModel::train(class_posts[0], vocab, options);
    model::LmModel positive = model::LmModel::train(class_posts[1], vocab, options);
    auto pos_out = open_output(out_prefix + ".pos.lm");
    positive.dump(pos_out);
    auto neg_out = open_output(out_prefix + ".neg.lm");
    negative.dump(neg_out);
    outputs["model_pos"] = out_prefix + ".pos.lm";
    outputs["model_neg"] = out_prefix + ".neg.lm";
  } else {
    features::Vocabulary vocab = features::build_vocabulary(stemmed, labels);
    if (spec.kind == eval::ClassifierSpec::Kind::nb) {
      model::NbModel nb = model::train_nb(vocab, spec.nb_delta);
      auto out = open_output(out_prefix + ".nb.tsv");
      model::write_nb_tsv(out, nb);
      outputs["model"] = out_prefix + ".nb.tsv";
    } else {
      std::vector<features::SparseVector> vectors;
      vectors.reserve(stemmed.size());
      for (const auto& doc : stemmed) vectors.push_back(features::tfidf_vector(doc, vocab));
      model::SvmOptions options;
      options.c = spec.svm_c;
      model::SvmModel svm = model::train_svm(vectors, labels, vocab.size(), options);
      svm.terms = vocab.terms;
      auto out = open_output(out_prefix + ".svm.tsv");
      model::write_svm_tsv(out, svm);
      outputs["model"] = out_prefix + ".svm.tsv";
    }
    auto vocab_out = open_output(out_prefix + ".vocab.tsv");
    features::write_vocabulary_tsv(vocab_out, vocab);
    outputs["vocabulary"] = out_prefix + ".vocab.tsv";
  }

  write_manifest(out_prefix + ".manifest.json", "train", {{"corpus", in_path}}, outputs,
                 {{"classifier", spec.name()}, {"documents", std::to_string(docs.size())}}, "ok");
  return 0;
}

int cmd_evaluate(const CommonOptions& common, const std::string& in_path,
                 const std::string& out_path, const eval::ClassifierSpec& spec, int folds,
                 const std::string& sampling_name, std::uint64_t seed,
                 const std::optional<std::string>& fw_flag) {
  auto sampling = eval::sampling_from_name(sampling_name);
  if (!sampling) throw UsageError("unknown sampling '" + sampling_name + "'");

  auto in = open_input(in_path);
  auto docs = io::read_documents(*in);
  std::optional<features::FunctionWordList> fw;
  if (spec.function_words_only) fw = load_function_words(common, fw_flag);

  eval::EvalReport report =
      eval::cross_validate(docs, spec, folds, *sampling, seed, fw ? &*fw : nullptr);

  auto out = open_output(out_path);
  eval::write_report_header(out);
  eval::write_report_row(out, spec.name(), report.metrics, report.auc);

  std::map<std::string, std::string> params(report.metadata.begin(), report.metadata.end());
  write_manifest(out_path + ".manifest.json", "evaluate", {{"corpus", in_path}},
                 {{"report", out_path}}, params, "ok");
  return 0;
}

int cmd_sweep(const CommonOptions& common, const std::string& posts_path,
              const std::string& blocks_path, const std::string& out_path,
              const std::string& timeframes_text, const std::string& classifiers_text, int folds,
              std::uint64_t seed, const std::string& features_mode, double delta, double c,
              int lm_order, bool lm_skips, const std::optional<std::string>& fw_flag) {
  std::vector<std::int64_t> timeframes;
  for (const std::string& item : split_csv(timeframes_text))
    timeframes.push_back(parse_duration_or_throw(item, "timeframe"));
  if (timeframes.empty()) throw UsageError("no timeframes given");

  std::vector<eval::ClassifierSpec> specs;
  for (const std::string& name : split_csv(classifiers_text))
    specs.push_back(make_spec(name, features_mode, delta, c, lm_order, lm_skips));
  if (specs.empty()) throw UsageError("no classifiers given");

  auto posts_in = open_input(posts_path);
  auto posts = blockfilter::drop_anonymous(io::read_clean_posts(*posts_in));
  auto blocks_in = open_input(blocks_path);
  auto blocks = ingest::parse_block_log(*blocks_in).events;

  std::optional<features::FunctionWordList> fw;
  bool needs_fw = false;
  for (const auto& spec : specs) needs_fw = needs_fw || spec.function_words_only;
  if (needs_fw) fw = load_function_words(common, fw_flag);

  eval::SweepOptions options;
  options.folds = folds;
  options.seed = seed;
  auto rows = eval::timeframe_sweep(posts, blocks, timeframes, specs, options, fw ? &*fw : nullptr);
  auto out = open_output(out_path);
  eval::write_sweep_tsv(out, rows);

  write_manifest(out_path + ".manifest.json", "sweep",
                 {{"posts", posts_path}, {"blocks", blocks_path}}, {{"table", out_path}},
                 {{"timeframes", timeframes_text},
                  {"classifiers", classifiers_text},
                  {"folds", std::to_string(folds)},
                  {"seed", std::to_string(seed)}},
                 "ok");
  return 0;
}

int cmd_stats(const CommonOptions& common, const std::string& in_path, const std::string& out_path,
              const std::optional<std::string>& posts_path,
              const std::optional<std::string>& blocks_path,
              const std::optional<std::string>& delta_out, const std::string& bucket_text,
              const std::string& horizon_text) {
  auto in = open_input(in_path);
  auto docs = io::read_documents(*in);
  eval::CorpusStatsReport report = eval::corpus_stats(docs);
  auto out = open_output(out_path);
  eval::write_stats_tsv(out, report);

  std::map<std::string, std::string> outputs{{"stats", out_path}};
  if (delta_out) {
    if (!posts_path || !blocks_path) throw UsageError("--delta-out needs --posts and --blocks");
    auto posts_in = open_input(*posts_path);
    auto posts = blockfilter::drop_anonymous(io::read_clean_posts(*posts_in));
    auto blocks_in = open_input(*blocks_path);
    auto blocks = ingest::parse_block_log(*blocks_in).events;
    auto histogram =
        corpus::delta_distribution(posts, blocks, parse_duration_or_throw(horizon_text, "horizon"),
                                   parse_duration_or_throw(bucket_text, "bucket"));
    auto delta_stream = open_output(*delta_out);
    corpus::write_delta_csv(delta_stream, histogram);
    outputs["deltas"] = *delta_out;
  }
  write_manifest(out_path + ".manifest.json", "stats", {{"corpus", in_path}}, outputs, {}, "ok");
  (void)common;
  return 0;
}

int cmd_report(const CommonOptions& common, const std::vector<std::string>& inputs,
               const std::string& out_path) {
  if (inputs.empty()) throw UsageError("report: no input tables");
  std::string header;
  std::vector<std::string> rows;
  for (const std::string& path : inputs) {
    std::istringstream in(slurp(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("report: empty table: " + path);
    if (header.empty()) header = line;
    else if (line != header) throw std::runtime_error("report: header mismatch in " + path);
    while (std::getline(in, line))
      if (!line.empty()) rows.push_back(line);
  }
  auto out = open_output(out_path);
  out << header << '\n';
  for (const auto& row : rows) out << row << '\n';
  std::map<std::string, std::string> in_map;
  for (std::size_t i = 0; i < inputs.size(); ++i) in_map["table" + std::to_string(i)] = inputs[i];
  write_manifest(out_path + ".manifest.json", "report", in_map, {{"merged", out_path}}, {}, "ok");
  (void)common;
  return 0;
}

int cmd_pipeline(CommonOptions& common, const std::string& outdir) {
  // resolved configuration, recorded in the manifest for reproduction
  auto get = [&](const std::string& key, const std::string& fallback) {
    return common.resolve(key, std::nullopt, fallback);
  };
  std::map<std::string, std::string> params;
  auto param = [&](const std::string& key, const std::string& fallback) {
    params[key] = get(key, fallback);
    return params[key];
  };

  const std::string dump = param("dump", "");
  const std::string block_log = param("block-log", "");
  const std::string prefix = param("prefix", ingest::kAfdTitlePrefix);
  const std::string timeframe = param("timeframe", "1d");
  const std::string window = param("window", "1d");
  const std::string approach = param("approach", "independent");
  const std::string filter_mode = param("block-filter", "blacklist");
  const std::string strategy = param("strategy", "random");
  const std::string classifiers = param("classifiers", "nb,svm,lm");
  const std::string features_mode = param("features", "full-text");
  const int folds = std::stoi(param("folds", "10"));
  const double delta = std::stod(param("delta", "1.0"));
  const double c = std::stod(param("c", "1.0"));
  const int lm_order = std::stoi(param("lm-order", "4"));
  const bool lm_skips = param("lm-skips", "1") != "0";
  const std::uint64_t seed = std::stoull(param("seed", std::to_string(common.seed())));
  const std::string sampling =
      param("sampling", approach == "sliding-window" ? "linear_global" : "stratified");
  const std::string lm_sampling =
      param("lm-sampling", approach == "sliding-window" ? "linear_global" : "linear_per_class");
  params["outdir"] = outdir;

  if (dump.empty() || block_log.empty())
    throw UsageError("pipeline: config must set dump= and block-log=");
  if (approach != "independent" && approach != "sliding-window")
    throw UsageError("pipeline: approach must be independent or sliding-window");

  std::filesystem::create_directories(outdir);
  auto path = [&](const std::string& name) { return outdir + "/" + name; };
  const std::string manifest_path = path("manifest.json");
  std::map<std::string, std::string> inputs{{"dump", dump}, {"block-log", block_log}};
  std::map<std::string, std::string> outputs;

  std::string stage = "extract-afd";
  try {
    cmd_extract_afd(common, dump, path("pages.jsonl"), prefix);
    outputs["pages"] = path("pages.jsonl");

    stage = "attribute";
    cmd_attribute(common, path("pages.jsonl"), path("raw_posts.jsonl"));
    outputs["raw_posts"] = path("raw_posts.jsonl");

    stage = "clean";
    cmd_clean(common, path("raw_posts.jsonl"), path("clean_posts.jsonl"), std::nullopt,
              std::nullopt, false);
    outputs["clean_posts"] = path("clean_posts.jsonl");

    stage = "extract-blocks";
    cmd_extract_blocks(common, block_log, path("blocks.tsv"));
    outputs["blocks"] = path("blocks.tsv");

    stage = "filter-blocks";
    cmd_filter_blocks(common, path("blocks.tsv"), path("blocks_filtered.tsv"), filter_mode,
                      std::nullopt);
    outputs["blocks_filtered"] = path("blocks_filtered.tsv");

    stage = "label";
    cmd_label(common, path("clean_posts.jsonl"), path("blocks_filtered.tsv"),
              path("labeled.jsonl"), timeframe);
    outputs["labeled"] = path("labeled.jsonl");

    std::string corpus_file = path("labeled.jsonl");
    bool merged = false;
    if (approach == "sliding-window") {
      stage = "window";
      cmd_window(common, path("labeled.jsonl"), path("merged.jsonl"), window);
      outputs["merged"] = path("merged.jsonl");
      corpus_file = path("merged.jsonl");
      merged = true;
    }

    stage = "sample";
    cmd_sample(common, corpus_file, path("balanced.jsonl"), strategy,
               util::derive_seed(seed, "sample"), merged);
    outputs["balanced"] = path("balanced.jsonl");

    stage = "evaluate";
    {
      std::vector<std::string> tables;
      for (const std::string& name : split_csv(classifiers)) {
        eval::ClassifierSpec spec = make_spec(name, features_mode, delta, c, lm_order, lm_skips);
        const std::string use_sampling =
            spec.kind == eval::ClassifierSpec::Kind::lm ? lm_sampling : sampling;
        const std::string table = path("report_" + spec.name() + ".tsv");
        cmd_evaluate(common, path("balanced.jsonl"), table, spec, folds, use_sampling,
                     util::derive_seed(seed, "evaluate-" + spec.name()), std::nullopt);
        tables.push_back(table);
      }
      cmd_report(common, tables, path("report.tsv"));
      outputs["report"] = path("report.tsv");
    }

    stage = "stats";
    cmd_stats(common, path("balanced.jsonl"), path("stats.tsv"), path("clean_posts.jsonl"),
              path("blocks_filtered.tsv"), path("deltas.csv"), get("delta-bucket", "1h"),
              get("delta-horizon", "14d"));
    outputs["stats"] = path("stats.tsv");
    outputs["deltas"] = path("deltas.csv");
  } catch (...) {
    write_manifest(manifest_path, "pipeline", inputs, outputs, params, "failed", stage);
    throw;
  }

  write_manifest(manifest_path, "pipeline", inputs, outputs, params, "ok");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"afdforge: deletion-discussion corpus builder and word-level classifiers"};
  app.set_version_flag("--version", AFDFORGE_VERSION);
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--config", common.config_path, "key=value config file");
  app.add_option("--data-dir", common.data_dir, "directory with bundled data files");
  std::string seed_text;
  auto* seed_opt = app.add_option("--seed", seed_text, "top-level random seed");

  int rc = 0;
  auto run = [&](auto fn) {
    return [&common, &rc, seed_opt, &seed_text, fn]() {
      common.load();
      if (seed_opt->count()) common.seed_flag = seed_text;
      rc = fn();
    };
  };

  // a parameter resolves as: flag, AFDFORGE_<KEY> env var, config file,
  // default; one Param can be registered on several subcommands (only the
  // invoked one ever parses its copy)
  struct Param {
    std::vector<CLI::Option*> opts;
    std::string value;
    void add(CLI::Option* o) { opts.push_back(o); }
    bool set() const {
      for (const CLI::Option* o : opts)
        if (o->count()) return true;
      return false;
    }
  };
  auto resolved = [&common](const Param& p, const std::string& key, const std::string& fallback) {
    return common.resolve(key, p.set() ? std::optional(p.value) : std::nullopt, fallback);
  };

  // extract-afd
  std::string dump_path, out_path;
  Param prefix;
  auto* extract_afd = app.add_subcommand("extract-afd", "stream AfD page histories out of a dump");
  extract_afd->add_option("--dump", dump_path, "pages-meta-history XML ('-' = stdin)")->required();
  extract_afd->add_option("--out", out_path, "pages JSONL output")->required();
  prefix.add(extract_afd->add_option("--prefix", prefix.value, "title prefix filter"));
  extract_afd->callback(run([&] {
    return cmd_extract_afd(common, dump_path, out_path,
                           resolved(prefix, "prefix", ingest::kAfdTitlePrefix));
  }));

  // extract-blocks
  std::string log_path, blocks_out;
  auto* extract_blocks = app.add_subcommand("extract-blocks", "parse a block log (XML or TSV)");
  extract_blocks->add_option("--log", log_path, "logging XML or TSV ('-' = stdin)")->required();
  extract_blocks->add_option("--out", blocks_out, "block TSV output")->required();
  extract_blocks->callback(run([&] { return cmd_extract_blocks(common, log_path, blocks_out); }));

  // attribute
  std::string pages_path, raw_out;
  auto* attribute = app.add_subcommand("attribute", "attribute tokens and extract posts");
  attribute->add_option("--pages", pages_path, "pages JSONL")->required();
  attribute->add_option("--out", raw_out, "raw post JSONL output")->required();
  attribute->callback(run([&] { return cmd_attribute(common, pages_path, raw_out); }));

  // clean
  std::string clean_in, clean_out;
  std::string boilerplate_path, signature_path;
  bool keep_empty = false;
  auto* clean = app.add_subcommand("clean", "scrub markup, templates and signatures");
  clean->add_option("--in", clean_in, "raw post JSONL")->required();
  clean->add_option("--out", clean_out, "clean post JSONL output")->required();
  auto* bp_opt = clean->add_option("--boilerplate", boilerplate_path, "boilerplate pattern file");
  auto* sig_opt = clean->add_option("--signatures", signature_path, "signature pattern file");
  clean->add_flag("--keep-empty", keep_empty, "keep posts that clean to zero tokens");
  clean->callback(run([&] {
    return cmd_clean(common, clean_in, clean_out,
                     bp_opt->count() ? std::optional(boilerplate_path) : std::nullopt,
                     sig_opt->count() ? std::optional(signature_path) : std::nullopt, keep_empty);
  }));

  // filter-blocks
  std::string fb_in, fb_out, fb_terms;
  Param fb_mode;
  auto* filter_blocks = app.add_subcommand("filter-blocks", "comment-filter the block log");
  filter_blocks->add_option("--in", fb_in, "block TSV or logging XML")->required();
  filter_blocks->add_option("--out", fb_out, "filtered block TSV")->required();
  fb_mode.add(filter_blocks->add_option("--mode", fb_mode.value,
                                          "blacklist or whitelist (default blacklist)"));
  auto* fb_terms_opt = filter_blocks->add_option("--terms", fb_terms, "term list file");
  filter_blocks->callback(run([&] {
    return cmd_filter_blocks(common, fb_in, fb_out, resolved(fb_mode, "block-filter", "blacklist"),
                             fb_terms_opt->count() ? std::optional(fb_terms) : std::nullopt);
  }));

  // label
  std::string label_posts_path, label_blocks_path, label_out;
  Param timeframe;
  auto* label = app.add_subcommand("label", "label posts by the block timeframe rule");
  label->add_option("--posts", label_posts_path, "clean post JSONL")->required();
  label->add_option("--blocks", label_blocks_path, "filtered block TSV")->required();
  label->add_option("--out", label_out, "labeled JSONL output")->required();
  timeframe.add(label->add_option("--timeframe", timeframe.value,
                                    "e.g. 13h, 1d, 1.5d (default 1d)"));
  label->callback(run([&] {
    return cmd_label(common, label_posts_path, label_blocks_path, label_out,
                     resolved(timeframe, "timeframe", "1d"));
  }));

  // window
  std::string window_in, window_out;
  Param window_size;
  auto* window = app.add_subcommand("window", "sliding-window merge per author");
  window->add_option("--in", window_in, "labeled JSONL")->required();
  window->add_option("--out", window_out, "merged JSONL output")->required();
  window_size.add(window->add_option("--window", window_size.value,
                                       "window span, e.g. 1d (default 1d)"));
  window->callback(run([&] {
    return cmd_window(common, window_in, window_out, resolved(window_size, "window", "1d"));
  }));

  // sample
  std::string sample_in, sample_out;
  Param strategy;
  bool sample_merged = false;
  auto* sample = app.add_subcommand("sample", "balance classes");
  sample->add_option("--in", sample_in, "labeled or merged JSONL")->required();
  sample->add_option("--out", sample_out, "balanced JSONL output")->required();
  strategy.add(sample->add_option("--strategy", strategy.value,
                                    "random or chronological (default random)"));
  sample->add_flag("--merged", sample_merged, "input is merged posts");
  sample->callback(run([&] {
    return cmd_sample(common, sample_in, sample_out, resolved(strategy, "strategy", "random"),
                      common.seed(), sample_merged);
  }));

  // shared classifier options
  Param classifier, features_mode, delta, c_value, lm_order, folds;
  std::string fw_path;
  bool no_skips = false;

  auto add_classifier_options = [&](CLI::App* sub) {
    classifier.add(sub->add_option("--classifier", classifier.value, "nb, lm or svm"));
    delta.add(sub->add_option("--delta", delta.value, "NB smoothing (default 1 = Laplace)"));
    c_value.add(sub->add_option("--c", c_value.value, "SVM regularization (default 1)"));
    lm_order.add(sub->add_option("--lm-order", lm_order.value, "LM n-gram order (default 4)"));
    sub->add_flag("--no-skips", no_skips, "disable LM skip interpolation");
    features_mode.add(
        sub->add_option("--features", features_mode.value, "full-text or function-words"));
    return sub->add_option("--function-words", fw_path, "function word list file");
  };
  auto resolved_spec = [&]() {
    bool skips = no_skips ? false : resolved({}, "lm-skips", "1") != "0";
    return make_spec(resolved(classifier, "classifier", "nb"),
                     resolved(features_mode, "features", "full-text"),
                     parse_double_or_throw(resolved(delta, "delta", "1.0"), "delta"),
                     parse_double_or_throw(resolved(c_value, "c", "1.0"), "c"),
                     parse_int_or_throw(resolved(lm_order, "lm-order", "4"), "lm-order"), skips);
  };
  auto resolved_folds = [&]() {
    return parse_int_or_throw(resolved(folds, "folds", "10"), "folds");
  };

  // train
  std::string train_in, train_out;
  auto* train = app.add_subcommand("train", "train a model on a labeled corpus");
  train->add_option("--in", train_in, "labeled/merged JSONL")->required();
  train->add_option("--out", train_out, "output path prefix")->required();
  auto* train_fw = add_classifier_options(train);
  train->callback(run([&] {
    return cmd_train(common, train_in, train_out, resolved_spec(),
                     train_fw->count() ? std::optional(fw_path) : std::nullopt);
  }));

  // evaluate
  std::string eval_in, eval_out;
  Param sampling;
  auto* evaluate = app.add_subcommand("evaluate", "10-fold cross-validation report");
  evaluate->add_option("--in", eval_in, "labeled/merged JSONL")->required();
  evaluate->add_option("--out", eval_out, "report TSV output")->required();
  folds.add(evaluate->add_option("--folds", folds.value, "fold count (default 10)"));
  sampling.add(evaluate->add_option(
      "--sampling", sampling.value,
      "stratified, linear_per_class, linear_global (default stratified)"));
  auto* eval_fw = add_classifier_options(evaluate);
  evaluate->callback(run([&] {
    return cmd_evaluate(common, eval_in, eval_out, resolved_spec(), resolved_folds(),
                        resolved(sampling, "sampling", "stratified"), common.seed(),
                        eval_fw->count() ? std::optional(fw_path) : std::nullopt);
  }));

  // sweep
  std::string sweep_posts, sweep_blocks, sweep_out;
  Param timeframes, sweep_classifiers;
  auto* sweep = app.add_subcommand("sweep", "timeframe sweep table");
  sweep->add_option("--posts", sweep_posts, "clean post JSONL")->required();
  sweep->add_option("--blocks", sweep_blocks, "filtered block TSV")->required();
  sweep->add_option("--out", sweep_out, "table TSV output")->required();
  timeframes.add(sweep->add_option("--timeframes", timeframes.value,
                                     "comma-separated durations"));
  sweep_classifiers.add(
      sweep->add_option("--classifiers", sweep_classifiers.value, "comma-separated classifiers"));
  folds.add(sweep->add_option("--folds", folds.value, "fold count (default 10)"));
  auto* sweep_fw = add_classifier_options(sweep);
  sweep->callback(run([&] {
    eval::ClassifierSpec spec = resolved_spec();
    return cmd_sweep(common, sweep_posts, sweep_blocks, sweep_out,
                     resolved(timeframes, "timeframes", "13h,1d,1.5d,2d,2.5d,3d,4d,5d,6d"),
                     resolved(sweep_classifiers, "classifiers", "nb,svm,lm"), resolved_folds(),
                     common.seed(), spec.function_words_only ? "function-words" : "full-text",
                     spec.nb_delta, spec.svm_c, spec.lm_order, spec.lm_skips,
                     sweep_fw->count() ? std::optional(fw_path) : std::nullopt);
  }));

  // stats
  std::string stats_in, stats_out, stats_posts, stats_blocks, delta_out;
  Param bucket, horizon;
  auto* stats = app.add_subcommand("stats", "corpus statistics report");
  stats->add_option("--in", stats_in, "labeled/merged JSONL")->required();
  stats->add_option("--out", stats_out, "stats TSV output")->required();
  auto* sp = stats->add_option("--posts", stats_posts, "clean post JSONL (for deltas)");
  auto* sb = stats->add_option("--blocks", stats_blocks, "filtered block TSV (for deltas)");
  auto* sd = stats->add_option("--delta-out", delta_out, "block-delta histogram CSV");
  bucket.add(stats->add_option("--bucket", bucket.value, "histogram bucket (default 1h)"));
  horizon.add(stats->add_option("--horizon", horizon.value, "histogram horizon (default 14d)"));
  stats->callback(run([&] {
    return cmd_stats(common, stats_in, stats_out,
                     sp->count() ? std::optional(stats_posts) : std::nullopt,
                     sb->count() ? std::optional(stats_blocks) : std::nullopt,
                     sd->count() ? std::optional(delta_out) : std::nullopt,
                     resolved(bucket, "delta-bucket", "1h"),
                     resolved(horizon, "delta-horizon", "14d"));
  }));

  // report
  std::vector<std::string> report_in;
  std::string report_out;
  auto* report = app.add_subcommand("report", "merge evaluation tables");
  report->add_option("--in", report_in, "input TSV tables")->required()->expected(-1);
  report->add_option("--out", report_out, "merged TSV output")->required();
  report->callback(run([&] { return cmd_report(common, report_in, report_out); }));

  // pipeline
  std::string outdir = "out";
  auto* pipeline = app.add_subcommand("pipeline", "run all stages from one config file");
  pipeline->add_option("--outdir", outdir, "artifact directory");
  pipeline->callback(run([&] { return cmd_pipeline(common, outdir); }));

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
