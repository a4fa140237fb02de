#include <doctest.h>

#include <map>

#include "afdforge/authorship.hpp"
#include "afdforge/rng.hpp"
#include "afdforge/text_util.hpp"

using namespace afdforge;

namespace {

ingest::PageHistory make_history(const std::vector<std::pair<std::string, std::string>>& revs) {
  ingest::PageHistory page;
  page.title = "Wikipedia:Articles for deletion/T";
  std::int64_t id = 1;
  util::Instant ts = util::parse_iso8601("2007-01-01T00:00:00Z").value();
  for (const auto& [author, text] : revs) {
    ingest::Revision r;
    r.revision_id = id++;
    r.timestamp = ts;
    ts += 3600;
    if (!author.empty()) r.author = author;
    r.full_text = text;
    page.revisions.push_back(std::move(r));
  }
  return page;
}

}  // namespace

TEST_CASE("single revision attributes everything to its author") {
  auto page = make_history({{"X", "delete as per nom"}});
  auto attr = authorship::attribute_tokens(page);
  REQUIRE(attr.size() == 1);
  CHECK(attr[0].tokens.size() == 4);
  for (const auto& t : attr[0].tokens) {
    CHECK(t.origin_author == "X");
    CHECK(t.origin_revision == 1);
  }
  auto posts = authorship::extract_posts(page, attr);
  REQUIRE(posts.size() == 1);
  CHECK(posts[0].raw_tokens == std::vector<std::string>{"delete", "as", "per", "nom"});
}

TEST_CASE("exact revert credits the reverter with nothing") {
  auto page = make_history({
      {"X", "a fine article discussion"},
      {"V", "TOTAL GARBAGE"},
      {"R", "a fine article discussion"},
  });
  auto attr = authorship::attribute_tokens(page);
  for (const auto& t : attr[2].tokens) {
    CHECK(t.origin_author == "X");
    CHECK(t.origin_revision == 1);
  }
  auto posts = authorship::extract_posts(page, attr);
  // V posted garbage (their own tokens); R introduced nothing
  REQUIRE(posts.size() == 2);
  CHECK(posts[0].author == "X");
  CHECK(posts[1].author == "V");
}

TEST_CASE("moved text keeps its original author") {
  auto page = make_history({
      {"X", "alpha beta gamma delta epsilon zeta"},
      {"Y", "delta epsilon zeta alpha beta gamma"},
  });
  auto attr = authorship::attribute_tokens(page);
  for (const auto& t : attr[1].tokens) {
    CHECK(t.origin_author == "X");
    CHECK(t.origin_revision == 1);
  }
  auto posts = authorship::extract_posts(page, attr);
  REQUIRE(posts.size() == 1);  // Y introduced nothing new
  CHECK(posts[0].author == "X");
}

TEST_CASE("appending text credits only the new tokens") {
  auto page = make_history({
      {"X", "keep the article"},
      {"Y", "keep the article\ndelete it instead"},
  });
  auto posts = authorship::extract_posts(page);
  REQUIRE(posts.size() == 2);
  CHECK(posts[1].author == "Y");
  CHECK(posts[1].raw_tokens == std::vector<std::string>{"delete", "it", "instead"});
}

TEST_CASE("bots and anonymous editors yield no posts") {
  auto page = make_history({
      {"X", "keep"},
      {"SineBot", "keep\nsigned for you"},
      {"", "keep\nsigned for you\nanon was here"},
  });
  auto posts = authorship::extract_posts(page);
  REQUIRE(posts.size() == 1);
  CHECK(posts[0].author == "X");
}

TEST_CASE("ip-form usernames are treated as anonymous") {
  auto page = make_history({{"192.168.1.1", "spam from an ip"}});
  CHECK(authorship::extract_posts(page).empty());
}

TEST_CASE("conservation: every token of the latest revision has an origin") {
  auto page = make_history({
      {"A", "one two three"},
      {"B", "one two three four five"},
      {"C", "zero one two three four five"},
  });
  auto attr = authorship::attribute_tokens(page);
  auto latest_tokens = util::split_whitespace(page.revisions.back().full_text);
  REQUIRE(attr.back().tokens.size() == latest_tokens.size());
  std::map<std::string, int> expected_origin{{"zero", 3}, {"one", 1}, {"two", 1},
                                             {"three", 1}, {"four", 2}, {"five", 2}};
  for (const auto& t : attr.back().tokens)
    CHECK(t.origin_revision == expected_origin[t.token]);
}

TEST_CASE("attribution is deterministic") {
  auto page = make_history({
      {"A", "x y z"},
      {"B", "x q y z w"},
      {"A", "x y z"},
  });
  auto a = authorship::attribute_tokens(page);
  auto b = authorship::attribute_tokens(page);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].tokens.size() == b[i].tokens.size());
    for (std::size_t j = 0; j < a[i].tokens.size(); ++j) {
      CHECK(a[i].tokens[j].origin_revision == b[i].tokens[j].origin_revision);
      CHECK(a[i].tokens[j].origin_author == b[i].tokens[j].origin_author);
    }
  }
}

TEST_CASE("revert idempotence holds on random histories") {
  util::Rng rng(77);
  const char* words[] = {"alpha", "beta", "gamma", "delta", "eps"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<std::string, std::string>> revs;
    std::string text;
    int n = 2 + static_cast<int>(rng.below(4));
    for (int r = 0; r < n; ++r) {
      int extra = 1 + static_cast<int>(rng.below(4));
      for (int w = 0; w < extra; ++w) {
        if (!text.empty()) text += " ";
        text += words[rng.below(5)];
      }
      revs.push_back({"U" + std::to_string(r), text});
    }
    // extend with an exact revert of a random earlier revision
    std::size_t target = rng.below(revs.size());
    revs.push_back({"Reverter", revs[target].second});
    auto page = make_history(revs);
    auto attr = authorship::attribute_tokens(page);
    for (const auto& t : attr.back().tokens)
      CHECK(t.origin_author != "Reverter");
  }
}
