#include <doctest.h>

#include <sstream>

#include "afdforge/dump_ingest.hpp"
#include "afdforge/rng.hpp"
#include "afdforge/text_util.hpp"

using namespace afdforge;

namespace {

std::string wrap_pages(const std::string& pages) {
  return "<mediawiki>\n<siteinfo><sitename>T</sitename></siteinfo>\n" + pages + "</mediawiki>\n";
}

std::string simple_page(const std::string& title, int first_id, int revisions) {
  std::string out = "<page><title>" + title + "</title><ns>0</ns>";
  for (int i = 0; i < revisions; ++i) {
    out += "<revision><id>" + std::to_string(first_id + i) + "</id>";
    out += "<timestamp>2007-01-0" + std::to_string(1 + i) + "T00:00:00Z</timestamp>";
    out += "<contributor><username>U</username></contributor>";
    out += "<text>rev " + std::to_string(i) + "</text></revision>";
  }
  return out + "</page>";
}

}  // namespace

TEST_CASE("afd stream keeps matching pages and skips log pages") {
  std::string dump = wrap_pages(
      simple_page("Wikipedia:Articles for deletion/Foo", 1, 2) +
      simple_page("Wikipedia:Articles for deletion/Log/2005 May 1", 10, 1) +
      simple_page("Some Article", 20, 1) +
      simple_page("Wikipedia:Articles for deletion/Bar", 30, 1));
  std::istringstream in(dump);
  ingest::AfdPageStream stream(in);

  auto first = stream.next();
  REQUIRE(first.has_value());
  CHECK(first->title == "Wikipedia:Articles for deletion/Foo");
  CHECK(first->revisions.size() == 2);
  CHECK(first->revisions[0].timestamp < first->revisions[1].timestamp);
  CHECK(first->revisions[0].author.value() == "U");

  auto second = stream.next();
  REQUIRE(second.has_value());
  CHECK(second->title == "Wikipedia:Articles for deletion/Bar");
  CHECK_FALSE(stream.next().has_value());
}

TEST_CASE("empty dump yields an empty iterator") {
  std::istringstream in(wrap_pages(""));
  ingest::AfdPageStream stream(in);
  CHECK_FALSE(stream.next().has_value());
}

TEST_CASE("anonymous contributors come back authorless, entities decode") {
  std::string dump = wrap_pages(
      "<page><title>Wikipedia:Articles for deletion/Baz</title>"
      "<revision><id>1</id><timestamp>2007-01-01T00:00:00Z</timestamp>"
      "<contributor><ip>10.0.0.1</ip></contributor>"
      "<text>a &amp;&lt;tag&gt; b</text></revision></page>");
  std::istringstream in(dump);
  ingest::AfdPageStream stream(in);
  auto page = stream.next();
  REQUIRE(page.has_value());
  CHECK_FALSE(page->revisions[0].author.has_value());
  CHECK(page->revisions[0].full_text == "a &<tag> b");
}

TEST_CASE("cdata and numeric entities decode") {
  std::string dump = wrap_pages(
      "<page><title>Wikipedia:Articles for deletion/Cd</title>"
      "<revision><id>1</id><timestamp>2007-01-01T00:00:00Z</timestamp>"
      "<contributor><username>U</username></contributor>"
      "<text><![CDATA[raw <tag> kept]]> and &#65;&#x42;</text></revision></page>");
  std::istringstream in(dump);
  ingest::AfdPageStream stream(in);
  auto page = stream.next();
  REQUIRE(page.has_value());
  CHECK(page->revisions[0].full_text == "raw <tag> kept and AB");
}

TEST_CASE("malformed xml reports a byte offset") {
  std::string dump = "<mediawiki><page><title>X</badtag></page></mediawiki>";
  std::istringstream in(dump);
  ingest::AfdPageStream stream(in);
  try {
    stream.next();
    FAIL("expected XmlError");
  } catch (const util::XmlError& e) {
    CHECK(e.byte_offset() > 0);
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("truncated dump yields complete pages before erroring") {
  std::string dump = "<mediawiki>" + simple_page("Wikipedia:Articles for deletion/Ok", 1, 1) +
                     "<page><title>Wikipedia:Articles for deletion/Cut</title><revision>";
  std::istringstream in(dump);
  ingest::AfdPageStream stream(in);
  auto ok = stream.next();
  REQUIRE(ok.has_value());
  CHECK(ok->title == "Wikipedia:Articles for deletion/Ok");
  CHECK_THROWS_AS(stream.next(), util::XmlTruncated);
}

TEST_CASE("prefix filter is exact and case-sensitive over random titles") {
  util::Rng rng(123);
  const std::string prefix = "Wikipedia:Articles for deletion/";
  std::string pages;
  std::vector<std::string> expected;
  for (int i = 0; i < 60; ++i) {
    std::string title;
    switch (rng.below(4)) {
      case 0: title = prefix + "T" + std::to_string(i); break;
      case 1: title = "wikipedia:articles for deletion/T" + std::to_string(i); break;
      case 2: title = prefix + "Log/T" + std::to_string(i); break;
      default: title = "Talk:T" + std::to_string(i); break;
    }
    if (util::starts_with(title, prefix) && !util::starts_with(title.substr(prefix.size()), "Log/"))
      expected.push_back(title);
    pages += simple_page(title, 1000 + i * 10, 1);
  }
  std::istringstream in(wrap_pages(pages));
  ingest::AfdPageStream stream(in);
  std::vector<std::string> got;
  while (auto page = stream.next()) got.push_back(page->title);
  CHECK(got == expected);
}

TEST_CASE("block log xml keeps block actions only") {
  std::string log =
      "<mediawiki>"
      "<logitem><id>1</id><timestamp>2007-01-01T00:00:00Z</timestamp>"
      "<contributor><username>Bob</username><id>7</id></contributor>"
      "<type>block</type><action>block</action>"
      "<logtitle>User:Alice</logtitle><comment>personal attacks</comment></logitem>"
      "<logitem><id>2</id><timestamp>2007-01-02T00:00:00Z</timestamp>"
      "<contributor><username>Bob</username><id>7</id></contributor>"
      "<type>block</type><action>unblock</action>"
      "<logtitle>User:Alice</logtitle><comment>appealed</comment></logitem>"
      "<logitem><id>3</id><timestamp>2007-01-03T00:00:00Z</timestamp>"
      "<contributor><username>Bob</username><id>7</id></contributor>"
      "<type>block</type><action>block</action>"
      "<logtitle>User:Mallet</logtitle><comment></comment></logitem>"
      "</mediawiki>";
  std::istringstream in(log);
  auto result = ingest::parse_block_log(in);
  CHECK(result.records == 3);
  CHECK(result.skipped == 1);
  CHECK(result.rejected == 0);
  REQUIRE(result.events.size() == 2);
  CHECK(result.events[0].blocked_user == "Alice");
  CHECK(result.events[0].admin_user == "Bob");
  CHECK(result.events[0].admin_id == 7);
  CHECK(result.events[0].comment == "personal attacks");
  CHECK(result.events[1].comment.empty());  // blank comments are retained
  CHECK(result.events.size() + result.skipped + result.rejected == result.records);
}

TEST_CASE("block log tsv round trip with escaping") {
  std::vector<ingest::BlockEvent> events{
      {util::parse_iso8601("2007-01-01T00:00:00Z").value(), "Alice", "Bob", 7,
       "line1\nline2\twith tab"},
      {util::parse_iso8601("2007-01-02T00:00:00Z").value(), "Carol", "Bob", 7, ""},
  };
  std::ostringstream out;
  ingest::write_block_log_tsv(out, events);
  std::istringstream in(out.str());
  auto parsed = ingest::parse_block_log(in);
  REQUIRE(parsed.events.size() == 2);
  CHECK(parsed.rejected == 0);
  CHECK(parsed.events[0].comment == "line1\nline2\twith tab");
  CHECK(parsed.events[1].comment.empty());
}

TEST_CASE("tsv records missing a timestamp are rejected and tallied") {
  std::istringstream in(
      "2007-01-01T00:00:00Z\tAlice\tBob\t7\tok\n"
      "not-a-time\tCarol\tBob\t7\tbad\n"
      "2007-01-03T00:00:00Z\t\tBob\t7\tno user\n");
  auto result = ingest::parse_block_log(in);
  CHECK(result.records == 3);
  CHECK(result.events.size() == 1);
  CHECK(result.rejected == 2);
  CHECK(result.events.size() + result.skipped + result.rejected == result.records);
}

TEST_CASE("pages stream one at a time") {
  // A page boundary must yield before the rest of the stream is consumed:
  // feed a dump whose tail is malformed and harvest the leading pages.
  std::string dump = "<mediawiki>" +
                     simple_page("Wikipedia:Articles for deletion/A", 1, 1) +
                     simple_page("Wikipedia:Articles for deletion/B", 5, 1) +
                     "<page><title>Wikipedia:Articles for deletion/C</title><oops";
  std::istringstream in(dump);
  ingest::AfdPageStream stream(in);
  CHECK(stream.next()->title == "Wikipedia:Articles for deletion/A");
  CHECK(stream.next()->title == "Wikipedia:Articles for deletion/B");
  CHECK_THROWS(stream.next());
}

TEST_CASE("a single huge page among small ones parses fully") {
  // the stream holds one page at a time; a multi-megabyte revision must not
  // disturb its neighbours (the memory bound itself is structural: skipped
  // pages never buffer text, and each wanted page is released on yield)
  std::string big(2 * 1024 * 1024, 'x');
  for (std::size_t i = 500; i < big.size(); i += 997) big[i] = ' ';
  std::string dump = "<mediawiki>" + simple_page("Wikipedia:Articles for deletion/Small1", 1, 1) +
                     "<page><title>Wikipedia:Articles for deletion/Big</title>"
                     "<revision><id>9</id><timestamp>2007-01-05T00:00:00Z</timestamp>"
                     "<contributor><username>U</username></contributor>"
                     "<text>" + big + "</text></revision></page>" +
                     simple_page("Gorbel", 20, 1) +
                     simple_page("Wikipedia:Articles for deletion/Small2", 30, 1) + "</mediawiki>";
  std::istringstream in(dump);
  ingest::AfdPageStream stream(in);
  CHECK(stream.next()->title == "Wikipedia:Articles for deletion/Small1");
  auto big_page = stream.next();
  REQUIRE(big_page.has_value());
  CHECK(big_page->revisions[0].full_text.size() == big.size());
  CHECK(stream.next()->title == "Wikipedia:Articles for deletion/Small2");
  CHECK_FALSE(stream.next().has_value());
}
