#include "afdforge/stemmer.hpp"

#include <array>
#include <string>
#include <string_view>

// Snowball English (Porter2) stemmer. Consonant-y is marked as 'Y' while
// stemming and restored afterwards; R1/R2 follow the published definition
// including the gener/commun/arsen prefixes.

namespace afdforge::features {

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_double(std::string_view w) {
  if (w.size() < 2) return false;
  char a = w[w.size() - 2], b = w[w.size() - 1];
  if (a != b) return false;
  return a == 'b' || a == 'd' || a == 'f' || a == 'g' || a == 'm' || a == 'n' || a == 'p' ||
         a == 'r' || a == 't';
}

bool valid_li_ending(char c) {
  return c == 'c' || c == 'd' || c == 'e' || c == 'g' || c == 'h' || c == 'k' || c == 'm' ||
         c == 'n' || c == 'r' || c == 't';
}

// True if w ends in a short syllable.
bool ends_short_syllable(std::string_view w) {
  std::size_t n = w.size();
  if (n == 2) return is_vowel(w[0]) && !is_vowel(w[1]);
  if (n < 3) return false;
  char c1 = w[n - 3], c2 = w[n - 2], c3 = w[n - 1];
  return !is_vowel(c1) && is_vowel(c2) && !is_vowel(c3) && c3 != 'w' && c3 != 'x' && c3 != 'Y';
}

std::size_t region_after_vowel_nonvowel(std::string_view w, std::size_t from) {
  std::size_t i = from;
  while (i < w.size() && !is_vowel(w[i])) ++i;      // to first vowel
  while (i < w.size() && is_vowel(w[i])) ++i;       // through the vowels
  return i < w.size() ? i + 1 : w.size();           // past the non-vowel
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

bool contains_vowel(std::string_view w) {
  for (char c : w)
    if (is_vowel(c)) return true;
  return false;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

}  // namespace

std::string stem_english(std::string_view input) {
  std::string w(input);
  if (w.size() <= 2) return w;

  if (w.front() == '\'') w.erase(0, 1);

  static const std::array<std::pair<std::string_view, std::string_view>, 18> kExceptions1{{
      {"skis", "ski"},     {"skies", "sky"},   {"dying", "die"},    {"lying", "lie"},
      {"tying", "tie"},    {"idly", "idl"},    {"gently", "gentl"}, {"ugly", "ugli"},
      {"early", "earli"},  {"only", "onli"},   {"singly", "singl"}, {"sky", "sky"},
      {"news", "news"},    {"howe", "howe"},   {"atlas", "atlas"},  {"cosmos", "cosmos"},
      {"bias", "bias"},    {"andes", "andes"},
  }};
  for (const auto& [word, out] : kExceptions1)
    if (w == word) return std::string(out);
  if (w.size() <= 2) return w;

  // Mark consonant y.
  if (w[0] == 'y') w[0] = 'Y';
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == 'y' && is_vowel(w[i - 1])) w[i] = 'Y';

  std::size_t r1;
  if (w.compare(0, 5, "gener") == 0)
    r1 = 5;
  else if (w.compare(0, 6, "commun") == 0)
    r1 = 6;
  else if (w.compare(0, 5, "arsen") == 0)
    r1 = 5;
  else
    r1 = region_after_vowel_nonvowel(w, 0);
  std::size_t r2 = region_after_vowel_nonvowel(w, r1);

  auto in_r1 = [&](std::size_t suffix_len) { return w.size() - suffix_len >= r1; };
  auto in_r2 = [&](std::size_t suffix_len) { return w.size() - suffix_len >= r2; };

  // Step 0: apostrophe suffixes.
  if (ends_with(w, "'s'")) w.resize(w.size() - 3);
  else if (ends_with(w, "'s")) w.resize(w.size() - 2);
  else if (ends_with(w, "'")) w.resize(w.size() - 1);

  // Step 1a.
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ied") || ends_with(w, "ies")) {
    if (w.size() - 3 > 1)
      w.resize(w.size() - 2);
    else
      w.resize(w.size() - 1);
  } else if (ends_with(w, "us") || ends_with(w, "ss")) {
    // leave
  } else if (ends_with(w, "s")) {
    // delete when some vowel exists before the letter preceding the s
    bool vowel_before = false;
    for (std::size_t i = 0; i + 2 < w.size(); ++i)
      if (is_vowel(w[i])) vowel_before = true;
    if (vowel_before) w.resize(w.size() - 1);
  }

  static const std::array<std::string_view, 8> kExceptions2{
      "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"};
  for (std::string_view word : kExceptions2) {
    if (w == word) {
      for (char& c : w)
        if (c == 'Y') c = 'y';
      return w;
    }
  }

  // Step 1b.
  {
    std::string_view sw(w);
    bool handled = false;
    for (std::string_view s : {std::string_view("eedly"), std::string_view("eed")}) {
      if (ends_with(sw, s)) {
        if (in_r1(s.size())) w.resize(w.size() - s.size() + 2);  // -> ee
        handled = true;
        break;
      }
    }
    if (!handled) {
      for (std::string_view s : {std::string_view("ingly"), std::string_view("edly"),
                                 std::string_view("ing"), std::string_view("ed")}) {
        if (!ends_with(sw, s)) continue;
        std::string_view stempart = sw.substr(0, sw.size() - s.size());
        if (contains_vowel(stempart)) {
          w.resize(w.size() - s.size());
          if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w.push_back('e');
          } else if (is_double(w)) {
            w.resize(w.size() - 1);
          } else if (ends_short_syllable(w) && r1 >= w.size()) {
            w.push_back('e');
          }
        }
        break;
      }
    }
  }

  // Step 1c: y -> i after a non-vowel that is not the first letter.
  if (w.size() > 2 && (w.back() == 'y' || w.back() == 'Y') && !is_vowel(w[w.size() - 2]))
    w.back() = 'i';

  // Step 2 (longest suffix wins; applies only inside R1).
  {
    static const std::array<Rule, 25> kStep2{{
        {"ization", "ize"}, {"ational", "ate"}, {"ousness", "ous"}, {"iveness", "ive"},
        {"fulness", "ful"}, {"tional", "tion"}, {"biliti", "ble"},  {"lessli", "less"},
        {"entli", "ent"},   {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
        {"ousli", "ous"},   {"iviti", "ive"},   {"fulli", "ful"},   {"enci", "ence"},
        {"anci", "ance"},   {"abli", "able"},   {"izer", "ize"},    {"ator", "ate"},
        {"alli", "al"},     {"bli", "ble"},     {"ogi", "og"},      {"li", ""},
        {"", ""},
    }};
    for (const Rule& rule : kStep2) {
      if (rule.suffix.empty()) break;
      if (!ends_with(w, rule.suffix)) continue;
      if (in_r1(rule.suffix.size())) {
        if (rule.suffix == "ogi") {
          if (w.size() > 3 && w[w.size() - 4] == 'l') w.resize(w.size() - 1);  // ogi -> og
        } else if (rule.suffix == "li") {
          if (w.size() > 2 && valid_li_ending(w[w.size() - 3])) w.resize(w.size() - 2);
        } else {
          w.resize(w.size() - rule.suffix.size());
          w += rule.replacement;
        }
      }
      break;
    }
  }

  // Step 3.
  {
    static const std::array<Rule, 9> kStep3{{
        {"ational", "ate"}, {"tional", "tion"}, {"alize", "al"}, {"icate", "ic"},
        {"iciti", "ic"},    {"ative", ""},      {"ical", "ic"},  {"ness", ""},
        {"ful", ""},
    }};
    for (const Rule& rule : kStep3) {
      if (!ends_with(w, rule.suffix)) continue;
      if (in_r1(rule.suffix.size())) {
        if (rule.suffix == "ative") {
          if (in_r2(rule.suffix.size())) w.resize(w.size() - 5);
        } else {
          w.resize(w.size() - rule.suffix.size());
          w += rule.replacement;
        }
      }
      break;
    }
  }

  // Step 4 (R2 only).
  {
    static const std::array<std::string_view, 18> kStep4{{
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism", "ate",
        "iti", "ous", "ive", "ize", "ion", "al", "er", "ic",
    }};
    for (std::string_view s : kStep4) {
      if (!ends_with(w, s)) continue;
      if (in_r2(s.size())) {
        if (s == "ion") {
          char before = w.size() > 3 ? w[w.size() - 4] : '\0';
          if (before == 's' || before == 't') w.resize(w.size() - 3);
        } else {
          w.resize(w.size() - s.size());
        }
      }
      break;
    }
  }

  // Step 5.
  if (!w.empty() && w.back() == 'e') {
    std::string_view before(w.data(), w.size() - 1);
    if (in_r2(1) || (in_r1(1) && !ends_short_syllable(before))) w.resize(w.size() - 1);
  } else if (!w.empty() && w.back() == 'l') {
    if (in_r2(1) && w.size() > 1 && w[w.size() - 2] == 'l') w.resize(w.size() - 1);
  }

  for (char& c : w)
    if (c == 'Y') c = 'y';
  return w;
}

}  // namespace afdforge::features
