#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "afdforge/dump_ingest.hpp"
#include "afdforge/text_clean.hpp"

namespace afdforge::blockfilter {

enum class FilterMode { blacklist, whitelist };

// A term list entry. Matching is case-insensitive substring over the block
// comment; entries flagged word_boundary only match at non-alphanumeric
// boundaries ("bot" must not fire on "sabotage").
struct Term {
  std::string text;  // lowercase
  bool word_boundary = false;
};

// File format: one lowercase term per line, '#' comments; a "word:" prefix
// requests boundary matching.
std::vector<Term> load_terms(std::istream& in);
std::vector<Term> load_term_file(const std::string& path);

std::vector<Term> default_blacklist();
std::vector<Term> default_whitelist();

bool comment_matches(std::string_view comment, const std::vector<Term>& terms);

// Removes records whose user name parses as an IPv4/IPv6 address.
std::vector<ingest::BlockEvent> drop_anonymous(const std::vector<ingest::BlockEvent>& events);
std::vector<textclean::CleanPost> drop_anonymous(const std::vector<textclean::CleanPost>& posts);

// blacklist: remove events whose comments match the blacklist terms;
// whitelist: keep only events whose comments match the whitelist terms.
// Order-preserving.
std::vector<ingest::BlockEvent> filter_blocks(const std::vector<ingest::BlockEvent>& events,
                                              FilterMode mode,
                                              const std::vector<Term>& terms);

std::vector<ingest::BlockEvent> filter_blocks(const std::vector<ingest::BlockEvent>& events,
                                              FilterMode mode);

}  // namespace afdforge::blockfilter
