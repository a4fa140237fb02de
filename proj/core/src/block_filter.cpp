#include "afdforge/block_filter.hpp"

#include <fstream>

#include "afdforge/text_util.hpp"

namespace afdforge::blockfilter {

std::vector<Term> load_terms(std::istream& in) {
  std::vector<Term> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = util::trim(line);
    if (t.empty() || t[0] == '#') continue;
    Term term;
    if (util::starts_with(t, "word:")) {
      term.word_boundary = true;
      t = util::trim(t.substr(5));
    }
    term.text = util::to_lower(t);
    if (!term.text.empty()) out.push_back(std::move(term));
  }
  return out;
}

std::vector<Term> load_term_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open term file: " + path);
  return load_terms(in);
}

std::vector<Term> default_blacklist() {
  // Blocks unrelated to a human communication style: bot malfunction, test
  // blocks, self-requested breaks, copyright infringement, sourcing-only
  // misconduct.
  return {
      {"bot", true},
      {"test", false},
      {"self-request", false},
      {"self request", false},
      {"user request", false},
      {"block on demand", false},
      {"copyright", false},
      {"copyvio", false},
      {"unsourced", false},
      {"unreliable source", false},
      {"citing sources", false},
  };
}

std::vector<Term> default_whitelist() {
  return {
      {"personal attack", false},
      {"harass", false},
      {"vandal", false},
      {"hating", false},
      {"legal threat", false},
      {"wp:npa", false},
      {"wp:personal", false},
  };
}

bool comment_matches(std::string_view comment, const std::vector<Term>& terms) {
  for (const Term& term : terms) {
    if (term.word_boundary ? util::contains_word_ci(comment, term.text)
                           : util::contains_ci(comment, term.text))
      return true;
  }
  return false;
}

std::vector<ingest::BlockEvent> drop_anonymous(const std::vector<ingest::BlockEvent>& events) {
  std::vector<ingest::BlockEvent> out;
  out.reserve(events.size());
  for (const auto& e : events)
    if (!util::is_ip_address(e.blocked_user)) out.push_back(e);
  return out;
}

std::vector<textclean::CleanPost> drop_anonymous(const std::vector<textclean::CleanPost>& posts) {
  std::vector<textclean::CleanPost> out;
  out.reserve(posts.size());
  for (const auto& p : posts)
    if (!util::is_ip_address(p.author)) out.push_back(p);
  return out;
}

std::vector<ingest::BlockEvent> filter_blocks(const std::vector<ingest::BlockEvent>& events,
                                              FilterMode mode,
                                              const std::vector<Term>& terms) {
  std::vector<ingest::BlockEvent> out;
  out.reserve(events.size());
  for (const auto& e : events) {
    bool matched = comment_matches(e.comment, terms);
    bool keep = (mode == FilterMode::blacklist) ? !matched : matched;
    if (keep) out.push_back(e);
  }
  return out;
}

std::vector<ingest::BlockEvent> filter_blocks(const std::vector<ingest::BlockEvent>& events,
                                              FilterMode mode) {
  return filter_blocks(events, mode,
                       mode == FilterMode::blacklist ? default_blacklist() : default_whitelist());
}

}  // namespace afdforge::blockfilter
