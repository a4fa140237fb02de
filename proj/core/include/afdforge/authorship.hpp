#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "afdforge/dump_ingest.hpp"

namespace afdforge::authorship {

struct AttributedToken {
  std::string token;
  std::int64_t origin_revision = 0;
  std::string origin_author;  // empty for anonymous editors
  std::size_t position = 0;   // index within the revision token sequence
};

struct RevisionAttribution {
  std::int64_t revision_id = 0;
  std::vector<AttributedToken> tokens;  // the full revision, in order
};

// One editor's contribution to one page: the tokens a single revision
// introduced.
struct RawPost {
  std::string page_title;
  std::string author;
  std::int64_t revision_id = 0;
  util::Instant timestamp = 0;
  std::vector<std::string> raw_tokens;
};

// Attributes every whitespace token of every revision to the editor who
// first introduced it. An exact revert (full-text match against any prior
// revision) copies that revision's attribution outright. Otherwise tokens
// are aligned against the immediate predecessor by longest common
// subsequence; tokens that vanished from one place and reappear in another
// within the same edit keep their original origin, so moved text is not
// credited to the mover.
std::vector<RevisionAttribution> attribute_tokens(const ingest::PageHistory& history);

// One RawPost per revision that introduced at least one token and whose
// author is a registered, non-bot editor.
std::vector<RawPost> extract_posts(const ingest::PageHistory& history,
                                   const std::vector<RevisionAttribution>& attribution);

std::vector<RawPost> extract_posts(const ingest::PageHistory& history);

}  // namespace afdforge::authorship
