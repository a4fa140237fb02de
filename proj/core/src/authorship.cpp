#include "afdforge/authorship.hpp"

#include <deque>
#include <unordered_map>

#include "afdforge/text_clean.hpp"
#include "afdforge/text_util.hpp"

namespace afdforge::authorship {

namespace {

// Myers would be overkill here; AfD edits are append-heavy, so trimming the
// common prefix/suffix keeps the quadratic LCS window small.
std::vector<int> lcs_alignment(const std::vector<AttributedToken>& prev,
                               const std::vector<std::string>& cur) {
  const std::size_t n = prev.size(), m = cur.size();
  std::vector<int> match(m, -1);

  std::size_t lo = 0;
  while (lo < n && lo < m && prev[lo].token == cur[lo]) {
    match[lo] = static_cast<int>(lo);
    ++lo;
  }
  std::size_t hi = 0;
  while (hi < n - lo && hi < m - lo && prev[n - 1 - hi].token == cur[m - 1 - hi]) {
    match[m - 1 - hi] = static_cast<int>(n - 1 - hi);
    ++hi;
  }
  const std::size_t pn = n - lo - hi, pm = m - lo - hi;
  if (pn == 0 || pm == 0) return match;

  std::vector<std::uint32_t> dp((pn + 1) * (pm + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return dp[i * (pm + 1) + j];
  };
  for (std::size_t i = 1; i <= pn; ++i) {
    for (std::size_t j = 1; j <= pm; ++j) {
      if (prev[lo + i - 1].token == cur[lo + j - 1])
        at(i, j) = at(i - 1, j - 1) + 1;
      else
        at(i, j) = std::max(at(i - 1, j), at(i, j - 1));
    }
  }
  std::size_t i = pn, j = pm;
  while (i > 0 && j > 0) {
    if (prev[lo + i - 1].token == cur[lo + j - 1]) {
      match[lo + j - 1] = static_cast<int>(lo + i - 1);
      --i;
      --j;
    } else if (at(i - 1, j) >= at(i, j - 1)) {
      --i;
    } else {
      --j;
    }
  }
  return match;
}

}  // namespace

std::vector<RevisionAttribution> attribute_tokens(const ingest::PageHistory& history) {
  std::vector<RevisionAttribution> out;
  out.reserve(history.revisions.size());
  std::unordered_map<std::string, std::size_t> seen_texts;  // full text -> revision index

  for (std::size_t r = 0; r < history.revisions.size(); ++r) {
    const ingest::Revision& rev = history.revisions[r];
    RevisionAttribution attr;
    attr.revision_id = rev.revision_id;

    auto revert_of = seen_texts.find(rev.full_text);
    if (revert_of != seen_texts.end()) {
      // Exact restore of an earlier revision; the reverter introduces nothing.
      attr.tokens = out[revert_of->second].tokens;
    } else {
      std::vector<std::string> tokens = util::split_whitespace(rev.full_text);
      attr.tokens.reserve(tokens.size());
      const std::string author = rev.author.value_or("");

      if (out.empty()) {
        for (std::size_t p = 0; p < tokens.size(); ++p)
          attr.tokens.push_back({tokens[p], rev.revision_id, author, p});
      } else {
        const std::vector<AttributedToken>& prev = out.back().tokens;
        std::vector<int> match = lcs_alignment(prev, tokens);

        // Tokens deleted from the predecessor, available for move detection.
        std::vector<bool> kept(prev.size(), false);
        for (int mi : match)
          if (mi >= 0) kept[static_cast<std::size_t>(mi)] = true;
        std::unordered_map<std::string, std::deque<const AttributedToken*>> removed;
        for (std::size_t p = 0; p < prev.size(); ++p)
          if (!kept[p]) removed[prev[p].token].push_back(&prev[p]);

        for (std::size_t p = 0; p < tokens.size(); ++p) {
          AttributedToken t;
          t.token = tokens[p];
          t.position = p;
          if (match[p] >= 0) {
            const AttributedToken& src = prev[static_cast<std::size_t>(match[p])];
            t.origin_revision = src.origin_revision;
            t.origin_author = src.origin_author;
          } else if (auto it = removed.find(tokens[p]);
                     it != removed.end() && !it->second.empty()) {
            // Deleted here, inserted there: a move keeps the original author.
            const AttributedToken* src = it->second.front();
            it->second.pop_front();
            t.origin_revision = src->origin_revision;
            t.origin_author = src->origin_author;
          } else {
            t.origin_revision = rev.revision_id;
            t.origin_author = author;
          }
          attr.tokens.push_back(std::move(t));
        }
      }
    }
    seen_texts.emplace(rev.full_text, r);
    out.push_back(std::move(attr));
  }
  return out;
}

std::vector<RawPost> extract_posts(const ingest::PageHistory& history,
                                   const std::vector<RevisionAttribution>& attribution) {
  std::vector<RawPost> posts;
  for (std::size_t r = 0; r < history.revisions.size(); ++r) {
    const ingest::Revision& rev = history.revisions[r];
    if (!rev.author || rev.author->empty()) continue;
    if (util::is_ip_address(*rev.author)) continue;
    if (textclean::is_bot(*rev.author)) continue;

    RawPost post;
    post.page_title = history.title;
    post.author = *rev.author;
    post.revision_id = rev.revision_id;
    post.timestamp = rev.timestamp;
    for (const AttributedToken& t : attribution[r].tokens)
      if (t.origin_revision == rev.revision_id) post.raw_tokens.push_back(t.token);
    if (!post.raw_tokens.empty()) posts.push_back(std::move(post));
  }
  return posts;
}

std::vector<RawPost> extract_posts(const ingest::PageHistory& history) {
  return extract_posts(history, attribute_tokens(history));
}

}  // namespace afdforge::authorship
