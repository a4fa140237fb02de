#pragma once

#include <cstdint>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "afdforge/authorship.hpp"
#include "afdforge/time.hpp"

namespace afdforge::textclean {

struct CleanPost {
  std::string page_title;
  std::string author;
  std::int64_t revision_id = 0;
  util::Instant timestamp = 0;
  std::vector<std::string> tokens;  // [a-z]+ words or canonical link tokens
  std::size_t token_count = 0;
};

struct CleanCounters {
  std::size_t unbalanced_templates = 0;
  std::size_t boilerplate_hits = 0;
};

// HTML tags/attributes (contents kept), comments, entities, and wikitext
// formatting: bold/italic quotes, list bullets, headings, horizontal rules,
// table syntax. Broken tags lose only the tag text itself.
std::string strip_markup(std::string_view text);

// External links keep their label and drop the URI; Wikipedia:/WP: internal
// links collapse to a single alphanumeric token ("[[WP:NPA]]" -> "WPNPA"),
// keeping a label only when it differs from the target; other internal links
// keep their visible text. User/User talk links are left untouched so the
// signature pass can still see them.
std::string canonicalize_links(std::string_view text);

// {{...}} transclusions removed nesting-aware; an unbalanced "{{" removes to
// end of line and tallies a warning. Substituted boilerplate is removed by
// the configured pattern list.
std::string remove_templates(std::string_view text,
                             const std::vector<std::regex>& boilerplate = {},
                             CleanCounters* counters = nullptr);

// A signature is a User/User talk link cluster followed on the same line by
// a timestamp ending in "(UTC)"; each is removed from the link up to that
// marker. Extra patterns handle customised signatures. Leftover user links
// are resolved to their visible text afterwards.
std::string remove_signatures(std::string_view text,
                              const std::vector<std::regex>& custom = {});

// Whitespace split; canonical link tokens pass through verbatim; everything
// else is lowercased with non-alphabetic characters stripped; empty results
// are dropped.
std::vector<std::string> normalize(std::string_view text);

// True iff the token survived canonicalize_links as a link token: "WP" or
// "Wikipedia" prefix followed by alphanumerics with at least one uppercase
// letter or digit after the prefix.
bool is_link_token(std::string_view token);

// Usernames ending in the exact suffix "Bot" (case-sensitive).
bool is_bot(std::string_view username);

// One regex per line, '#' starts a comment line, blank lines ignored.
std::vector<std::regex> load_patterns(std::istream& in);
std::vector<std::regex> load_pattern_file(const std::string& path);

class TextCleaner {
 public:
  TextCleaner() = default;
  TextCleaner(std::vector<std::regex> boilerplate, std::vector<std::regex> signatures)
      : boilerplate_(std::move(boilerplate)), signatures_(std::move(signatures)) {}

  // Fixed pipeline: strip_markup -> canonicalize_links -> remove_templates
  // -> remove_signatures -> normalize.
  std::vector<std::string> clean_text(std::string_view raw) const;

  CleanPost clean(const authorship::RawPost& post) const;

  const CleanCounters& counters() const { return counters_; }

 private:
  std::vector<std::regex> boilerplate_;
  std::vector<std::regex> signatures_;
  mutable CleanCounters counters_;
};

}  // namespace afdforge::textclean
