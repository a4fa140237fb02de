#include <doctest.h>

#include <set>

#include "afdforge/rng.hpp"
#include "afdforge/text_util.hpp"
#include "afdforge/time.hpp"

using namespace afdforge;

TEST_CASE("iso8601 round trip") {
  auto t = util::parse_iso8601("2007-05-03T20:00:00Z");
  REQUIRE(t.has_value());
  CHECK(util::format_iso8601(*t) == "2007-05-03T20:00:00Z");
  CHECK(util::parse_iso8601("2015-06-02T00:00:00Z").value() == 1433203200);
  CHECK(util::format_iso8601(0) == "1970-01-01T00:00:00Z");

  CHECK_FALSE(util::parse_iso8601("2007-05-03 20:00:00").has_value());
  CHECK_FALSE(util::parse_iso8601("2007-13-03T20:00:00Z").has_value());
  CHECK_FALSE(util::parse_iso8601("").has_value());
}

TEST_CASE("durations parse with decimal fractions") {
  CHECK(util::parse_duration_seconds("1d").value() == 86400);
  CHECK(util::parse_duration_seconds("13h").value() == 13 * 3600);
  CHECK(util::parse_duration_seconds("1.5d").value() == 129600);
  CHECK(util::parse_duration_seconds("2.5d").value() == 216000);
  CHECK(util::parse_duration_seconds("30m").value() == 1800);
  CHECK(util::parse_duration_seconds("45s").value() == 45);
  CHECK_FALSE(util::parse_duration_seconds("1w").has_value());
  CHECK_FALSE(util::parse_duration_seconds("d").has_value());
  CHECK_FALSE(util::parse_duration_seconds("-1d").has_value());
  CHECK(util::format_duration(86400) == "1d");
  CHECK(util::format_duration(13 * 3600) == "13h");
  CHECK(util::format_duration(129600) == "36h");
}

TEST_CASE("rng is deterministic and unbiased enough") {
  util::Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  util::Rng r(7);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 5000; ++i) counts[r.below(5)]++;
  for (int c : counts) CHECK(c > 800);

  CHECK(util::derive_seed(1, "stage") == util::derive_seed(1, "stage"));
  CHECK(util::derive_seed(1, "stage") != util::derive_seed(2, "stage"));
  CHECK(util::derive_seed(1, "a") != util::derive_seed(1, "b"));
}

TEST_CASE("sample_indices draws distinct ascending indices") {
  util::Rng r(9);
  auto sample = util::sample_indices(50, 10, r);
  CHECK(sample.size() == 10);
  std::set<std::size_t> unique(sample.begin(), sample.end());
  CHECK(unique.size() == 10);
  CHECK(std::is_sorted(sample.begin(), sample.end()));
  for (std::size_t i : sample) CHECK(i < 50);

  util::Rng r2(9);
  CHECK(util::sample_indices(50, 10, r2) == sample);
}

TEST_CASE("ip detection") {
  CHECK(util::is_ip_address("192.168.1.1"));
  CHECK(util::is_ip_address("2001:db8::1"));
  CHECK(util::is_ip_address("2001:DB8:0:0:0:0:0:1"));
  CHECK_FALSE(util::is_ip_address("Alice"));
  CHECK_FALSE(util::is_ip_address("192.168.1"));
  CHECK_FALSE(util::is_ip_address(""));
}

TEST_CASE("word-boundary search") {
  CHECK(util::contains_word_ci("malfunctioning bot on the loose", "bot"));
  CHECK(util::contains_word_ci("Bot malfunction", "bot"));
  CHECK_FALSE(util::contains_word_ci("sabotage of the process", "bot"));
  CHECK(util::contains_ci("Personal Attacks", "personal attack"));
}
