#include "afdforge/text_clean.hpp"

#include <fstream>
#include <sstream>

#include "afdforge/text_util.hpp"

namespace afdforge::textclean {

using util::is_ascii_alnum;
using util::is_ascii_alpha;
using util::is_ascii_digit;
using util::is_ascii_space;
using util::to_ascii_lower;

namespace {

bool ci_prefix(std::string_view s, std::string_view lower_prefix) {
  if (s.size() < lower_prefix.size()) return false;
  for (std::size_t i = 0; i < lower_prefix.size(); ++i)
    if (to_ascii_lower(s[i]) != lower_prefix[i]) return false;
  return true;
}

bool ci_equal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (to_ascii_lower(a[i]) != to_ascii_lower(b[i])) return false;
  return true;
}

// ---- strip_markup helpers -------------------------------------------------

std::string remove_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 4, "<!--") == 0) {
      std::size_t end = text.find("-->", i + 4);
      i = (end == std::string_view::npos) ? text.size() : end + 3;
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

// A tag span is '<', optional '/', an ASCII letter, then anything up to the
// next '>' outside quotes. Anything else after '<' is literal text.
std::string remove_tags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '<') {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t j = i + 1;
    if (j < text.size() && text[j] == '/') ++j;
    if (j >= text.size() || !is_ascii_alpha(text[j])) {
      out.push_back(text[i++]);
      continue;
    }
    char quote = 0;
    std::size_t end = std::string_view::npos;
    for (std::size_t k = j; k < text.size(); ++k) {
      char c = text[k];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        end = k;
        break;
      } else if (c == '<') {
        break;  // a new '<' before '>': the first one was not a tag
      }
    }
    if (end == std::string_view::npos) {
      out.push_back(text[i++]);  // broken tag start stays literal
    } else {
      i = end + 1;
    }
  }
  return out;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    std::string_view name = text.substr(i + 1, semi - i - 1);
    if (name == "amp") out.push_back('&');
    else if (name == "lt") out.push_back('<');
    else if (name == "gt") out.push_back('>');
    else if (name == "quot") out.push_back('"');
    else if (name == "apos") out.push_back('\'');
    else if (name == "nbsp") out.push_back(' ');
    else if (!name.empty() && name[0] == '#') {
      long code = 0;
      bool ok = name.size() > 1;
      bool hex = ok && (name[1] == 'x' || name[1] == 'X');
      for (std::size_t k = hex ? 2 : 1; ok && k < name.size(); ++k) {
        char c = name[k];
        if (is_ascii_digit(c)) code = code * (hex ? 16 : 10) + (c - '0');
        else if (hex && to_ascii_lower(c) >= 'a' && to_ascii_lower(c) <= 'f')
          code = code * 16 + (to_ascii_lower(c) - 'a' + 10);
        else ok = false;
        if (code > 0x10FFFF) ok = false;
      }
      if (!ok) {
        out.push_back(text[i++]);
        continue;
      }
      if (code >= 0x20 && code < 0x7F) out.push_back(static_cast<char>(code));
      else out.push_back(' ');
    } else {
      bool word = !name.empty();
      for (char c : name)
        if (!is_ascii_alnum(c)) word = false;
      if (!word) {
        out.push_back(text[i++]);
        continue;
      }
      // unknown named entity: not author text, drop it
    }
    i = semi + 1;
  }
  return out;
}

std::string strip_wikitext_lines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    bool last = eol == std::string_view::npos;
    std::string_view line = text.substr(pos, (last ? text.size() : eol) - pos);

    std::string_view t = util::trim(line);
    bool drop = false;
    if (util::starts_with(t, "{|") || util::starts_with(t, "|}") ||
        util::starts_with(t, "|-")) {
      drop = true;  // table open/close/row
    } else if (t.size() >= 4 && t.find_first_not_of('-') == std::string_view::npos) {
      drop = true;  // horizontal rule
    }

    if (!drop) {
      std::string cooked(line);
      // headings: == Title == keeps Title
      std::string_view tt = util::trim(cooked);
      if (tt.size() >= 2 && tt.front() == '=' && tt.back() == '=') {
        std::size_t b = 0, e = tt.size();
        while (b < e && tt[b] == '=') ++b;
        while (e > b && tt[e - 1] == '=') --e;
        cooked = std::string(util::trim(tt.substr(b, e - b)));
      } else {
        // list/indent markers
        std::size_t b = 0;
        while (b < cooked.size() &&
               (cooked[b] == '*' || cooked[b] == '#' || cooked[b] == ':' || cooked[b] == ';'))
          ++b;
        if (b > 0) cooked.erase(0, b);
        std::string_view rest = util::trim(cooked);
        if (util::starts_with(rest, "|") || util::starts_with(rest, "!")) {
          // table cell line: drop the marker, split multi-cell separators
          std::string cells(rest.substr(1));
          std::string rebuilt;
          for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k + 1 < cells.size() &&
                ((cells[k] == '|' && cells[k + 1] == '|') ||
                 (cells[k] == '!' && cells[k + 1] == '!'))) {
              rebuilt.push_back(' ');
              ++k;
            } else {
              rebuilt.push_back(cells[k]);
            }
          }
          cooked = rebuilt;
        }
      }
      out += cooked;
    }
    if (last) break;
    out.push_back('\n');
    pos = eol + 1;
  }
  return out;
}

std::string strip_quote_runs(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\'') {
      std::size_t run = 1;
      while (i + run < text.size() && text[i + run] == '\'') ++run;
      if (run >= 2) {
        i += run;  // formatting quotes vanish
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

// ---- link helpers ----------------------------------------------------------

bool is_user_namespace(std::string_view target) {
  std::string_view t = util::trim(target);
  if (!ci_prefix(t, "user")) return false;
  std::string_view rest = t.substr(4);
  if (ci_prefix(rest, " talk") || ci_prefix(rest, "_talk")) rest = rest.substr(5);
  rest = util::trim(rest);
  return !rest.empty() && rest[0] == ':';
}

bool is_project_namespace(std::string_view target) {
  std::string_view t = util::trim(target);
  return ci_prefix(t, "wikipedia:") || ci_prefix(t, "wp:");
}

std::string alnum_only(std::string_view s) {
  std::string out;
  for (char c : s)
    if (is_ascii_alnum(c)) out.push_back(c);
  return out;
}

bool looks_like_uri(std::string_view s) {
  static constexpr std::string_view kSchemes[] = {"http://", "https://", "ftp://",
                                                  "irc://", "news:", "mailto:", "//"};
  for (std::string_view scheme : kSchemes)
    if (ci_prefix(s, scheme)) return true;
  return false;
}

std::string canonicalize_links_impl(std::string_view text, bool resolve_user_links);

// [[target|label]] — nesting-aware; returns replacement text.
std::string render_internal_link(std::string_view inner, bool resolve_user_links) {
  std::size_t bar = std::string_view::npos;
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner.compare(i, 2, "[[") == 0) { depth++; ++i; }
    else if (inner.compare(i, 2, "]]") == 0) { depth--; ++i; }
    else if (inner[i] == '|' && depth == 0 && bar == std::string_view::npos) bar = i;
  }
  std::string_view target = bar == std::string_view::npos ? inner : inner.substr(0, bar);
  std::string label;
  if (bar != std::string_view::npos) {
    std::string_view raw_label = inner.substr(bar + 1);
    std::size_t last_bar = raw_label.rfind('|');
    if (last_bar != std::string_view::npos && raw_label.find("[[") == std::string_view::npos)
      raw_label = raw_label.substr(last_bar + 1);  // image params: keep the caption
    label = canonicalize_links_impl(raw_label, resolve_user_links);
  }

  if (is_user_namespace(target)) {
    if (!resolve_user_links) {
      std::string out = "[[";
      out += std::string(inner);
      out += "]]";
      return out;
    }
    if (!label.empty()) return label;
    std::string_view name = util::trim(target);
    std::size_t colon = name.find(':');
    if (colon != std::string_view::npos) name = util::trim(name.substr(colon + 1));
    return std::string(name);
  }
  if (is_project_namespace(target)) {
    std::string canonical = alnum_only(target);
    if (!label.empty() && !ci_equal(util::trim(label), util::trim(target)))
      return canonical + " " + label;
    return canonical;
  }
  if (!label.empty()) return label;
  return std::string(util::trim(target));
}

std::string canonicalize_links_impl(std::string_view text, bool resolve_user_links) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 2, "[[") == 0) {
      // find the matching ]] with nesting
      int depth = 1;
      std::size_t j = i + 2;
      while (j < text.size() && depth > 0) {
        if (text.compare(j, 2, "[[") == 0) { depth++; j += 2; }
        else if (text.compare(j, 2, "]]") == 0) { depth--; j += 2; }
        else ++j;
      }
      if (depth != 0) {  // unterminated: keep literally
        out.push_back(text[i++]);
        continue;
      }
      std::string_view inner = text.substr(i + 2, j - 2 - (i + 2));
      out += render_internal_link(inner, resolve_user_links);
      i = j;
      continue;
    }
    if (text[i] == '[' && looks_like_uri(text.substr(i + 1))) {
      std::size_t close = text.find(']', i + 1);
      if (close == std::string_view::npos) {
        out.push_back(text[i++]);
        continue;
      }
      std::string_view inner = text.substr(i + 1, close - i - 1);
      // URI runs to the first '|' or whitespace; the rest is the label.
      std::size_t sep = inner.size();
      for (std::size_t k = 0; k < inner.size(); ++k) {
        if (inner[k] == '|' || is_ascii_space(inner[k])) {
          sep = k;
          break;
        }
      }
      if (sep < inner.size()) out += std::string(util::trim(inner.substr(sep + 1)));
      i = close + 1;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

}  // namespace

std::string strip_markup(std::string_view text) {
  std::string s = remove_comments(text);
  s = remove_tags(s);
  s = decode_entities(s);
  s = strip_wikitext_lines(s);
  s = strip_quote_runs(s);
  return s;
}

std::string canonicalize_links(std::string_view text) {
  return canonicalize_links_impl(text, /*resolve_user_links=*/false);
}

std::string remove_templates(std::string_view text, const std::vector<std::regex>& boilerplate,
                             CleanCounters* counters) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 2, "{{") == 0) {
      int depth = 1;
      std::size_t j = i + 2;
      while (j < text.size() && depth > 0) {
        if (text.compare(j, 2, "{{") == 0) { depth++; j += 2; }
        else if (text.compare(j, 2, "}}") == 0) { depth--; j += 2; }
        else ++j;
      }
      if (depth == 0) {
        i = j;
      } else {
        // unbalanced: remove to end of the line the "{{" started on
        if (counters) ++counters->unbalanced_templates;
        std::size_t eol = text.find('\n', i);
        i = (eol == std::string_view::npos) ? text.size() : eol;
      }
      continue;
    }
    out.push_back(text[i++]);
  }
  for (const std::regex& re : boilerplate) {
    std::string replaced = std::regex_replace(out, re, "");
    if (counters && replaced.size() != out.size()) ++counters->boilerplate_hits;
    out = std::move(replaced);
  }
  return out;
}

std::string remove_signatures(std::string_view text, const std::vector<std::regex>& custom) {
  std::string s(text);
  static const std::string kUtc = "(UTC)";
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, 2, "[[") != 0) {
      ++i;
      continue;
    }
    std::size_t name_start = i + 2;
    while (name_start < s.size() && is_ascii_space(s[name_start])) ++name_start;
    if (!is_user_namespace(std::string_view(s).substr(name_start, 32))) {
      ++i;
      continue;
    }
    // signature runs on one line, from this link to the "(UTC)" marker
    std::size_t eol = s.find('\n', i);
    std::size_t line_end = (eol == std::string::npos) ? s.size() : eol;
    std::size_t utc = s.find(kUtc, i);
    if (utc == std::string::npos || utc + kUtc.size() > line_end) {
      i += 2;
      continue;
    }
    s.erase(i, utc + kUtc.size() - i);
  }
  for (const std::regex& re : custom) s = std::regex_replace(s, re, "");
  // a user link that was not part of a signature becomes its visible text
  return canonicalize_links_impl(s, /*resolve_user_links=*/true);
}

bool is_link_token(std::string_view token) {
  std::string_view rest;
  if (util::starts_with(token, "Wikipedia")) rest = token.substr(9);
  else if (util::starts_with(token, "WP")) rest = token.substr(2);
  else return false;
  if (rest.empty()) return false;
  bool has_marker = false;
  for (char c : rest) {
    if (!is_ascii_alnum(c)) return false;
    if (is_ascii_digit(c) || (c >= 'A' && c <= 'Z')) has_marker = true;
  }
  return has_marker;
}

std::vector<std::string> normalize(std::string_view text) {
  std::vector<std::string> out;
  for (std::string& token : util::split_whitespace(text)) {
    if (is_link_token(token)) {
      out.push_back(std::move(token));
      continue;
    }
    std::string word;
    word.reserve(token.size());
    for (char c : token)
      if (is_ascii_alpha(c)) word.push_back(to_ascii_lower(c));
    if (!word.empty()) out.push_back(std::move(word));
  }
  return out;
}

bool is_bot(std::string_view username) { return util::ends_with(username, "Bot"); }

std::vector<std::regex> load_patterns(std::istream& in) {
  std::vector<std::regex> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = util::trim(line);
    if (t.empty() || t[0] == '#') continue;
    try {
      out.emplace_back(std::string(t), std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw std::runtime_error("bad pattern on line " + std::to_string(lineno) + ": " +
                               std::string(t) + " (" + e.what() + ")");
    }
  }
  return out;
}

std::vector<std::regex> load_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern file: " + path);
  return load_patterns(in);
}

std::vector<std::string> TextCleaner::clean_text(std::string_view raw) const {
  std::string s = strip_markup(raw);
  s = canonicalize_links(s);
  s = remove_templates(s, boilerplate_, &counters_);
  s = remove_signatures(s, signatures_);
  return normalize(s);
}

CleanPost TextCleaner::clean(const authorship::RawPost& post) const {
  CleanPost out;
  out.page_title = post.page_title;
  out.author = post.author;
  out.revision_id = post.revision_id;
  out.timestamp = post.timestamp;
  out.tokens = clean_text(util::join(post.raw_tokens, " "));
  out.token_count = out.tokens.size();
  return out;
}

}  // namespace afdforge::textclean
