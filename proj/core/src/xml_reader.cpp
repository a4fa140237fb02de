#include "afdforge/xml_reader.hpp"

#include "afdforge/text_util.hpp"

namespace afdforge::util {

int XmlReader::peek() { return in_.peek(); }

int XmlReader::get() {
  int c = in_.get();
  if (c != EOF) ++offset_;
  return c;
}

void XmlReader::expect(char c) {
  int got = get();
  if (got == EOF) throw XmlTruncated(offset_);
  if (got != c)
    throw XmlError(std::string("expected '") + c + "'", offset_ - 1);
}

std::string XmlReader::read_name() {
  std::string name;
  int c = peek();
  while (c != EOF && !is_ascii_space(static_cast<char>(c)) && c != '>' && c != '/' && c != '=') {
    name.push_back(static_cast<char>(get()));
    c = peek();
  }
  if (name.empty()) throw XmlError("empty element name", offset_);
  return name;
}

void XmlReader::skip_until(const std::string& terminator) {
  std::size_t matched = 0;
  for (;;) {
    int c = get();
    if (c == EOF) throw XmlTruncated(offset_);
    if (static_cast<char>(c) == terminator[matched]) {
      if (++matched == terminator.size()) return;
    } else {
      matched = (static_cast<char>(c) == terminator[0]) ? 1 : 0;
    }
  }
}

void XmlReader::decode_entity(std::string& out) {
  // '&' already consumed.
  std::string name;
  for (;;) {
    int c = get();
    if (c == EOF) throw XmlTruncated(offset_);
    if (c == ';') break;
    name.push_back(static_cast<char>(c));
    if (name.size() > 12) throw XmlError("unterminated entity", offset_);
  }
  if (name == "lt") out.push_back('<');
  else if (name == "gt") out.push_back('>');
  else if (name == "amp") out.push_back('&');
  else if (name == "quot") out.push_back('"');
  else if (name == "apos") out.push_back('\'');
  else if (!name.empty() && name[0] == '#') {
    long code = 0;
    bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
    for (std::size_t i = hex ? 2 : 1; i < name.size(); ++i) {
      char c = name[i];
      int digit;
      if (is_ascii_digit(c)) digit = c - '0';
      else if (hex && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
      else if (hex && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
      else throw XmlError("bad character reference", offset_);
      code = code * (hex ? 16 : 10) + digit;
      if (code > 0x10FFFF) throw XmlError("character reference out of range", offset_);
    }
    // UTF-8 encode.
    if (code < 0x80) out.push_back(static_cast<char>(code));
    else if (code < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (code >> 6)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else if (code < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (code >> 12)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (code >> 18)));
      out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    }
  } else {
    throw XmlError("unknown entity &" + name + ";", offset_);
  }
}

XmlEvent XmlReader::read_tag() {
  // '<' already consumed.
  int c = peek();
  if (c == EOF) throw XmlTruncated(offset_);
  if (c == '?') {
    skip_until("?>");
    return next();
  }
  if (c == '!') {
    get();
    c = peek();
    if (c == '-') {
      expect('-');
      expect('-');
      skip_until("-->");
      return next();
    }
    if (c == '[') {
      // <![CDATA[ ... ]]> — emit raw content as text.
      static const std::string kCdata = "[CDATA[";
      for (char expected : kCdata) expect(expected);
      XmlEvent ev;
      ev.kind = XmlEvent::Text;
      std::size_t matched = 0;
      static const std::string kEnd = "]]>";
      for (;;) {
        int ch = get();
        if (ch == EOF) throw XmlTruncated(offset_);
        ev.text.push_back(static_cast<char>(ch));
        if (static_cast<char>(ch) == kEnd[matched]) {
          if (++matched == kEnd.size()) {
            ev.text.resize(ev.text.size() - kEnd.size());
            return ev;
          }
        } else {
          matched = (static_cast<char>(ch) == kEnd[0]) ? 1 : 0;
        }
      }
    }
    // DOCTYPE and friends: skip to the closing '>'.
    skip_until(">");
    return next();
  }
  if (c == '/') {
    get();
    std::string name = read_name();
    while (peek() != EOF && is_ascii_space(static_cast<char>(peek()))) get();
    expect('>');
    if (open_.empty() || open_.back() != name)
      throw XmlError("mismatched end tag </" + name + ">", offset_);
    open_.pop_back();
    XmlEvent ev;
    ev.kind = XmlEvent::EndElement;
    ev.name = std::move(name);
    return ev;
  }
  std::string name = read_name();
  // Skip attributes; honor quoting so '>' inside values is not a terminator.
  bool self_closing = false;
  for (;;) {
    int ch = get();
    if (ch == EOF) throw XmlTruncated(offset_);
    if (ch == '"' || ch == '\'') {
      char quote = static_cast<char>(ch);
      for (;;) {
        int q = get();
        if (q == EOF) throw XmlTruncated(offset_);
        if (static_cast<char>(q) == quote) break;
      }
    } else if (ch == '/') {
      if (peek() == '>') {
        get();
        self_closing = true;
        break;
      }
    } else if (ch == '>') {
      break;
    }
  }
  XmlEvent ev;
  ev.kind = XmlEvent::StartElement;
  ev.name = name;
  if (self_closing) {
    pending_end_ = true;
    pending_name_ = name;
  } else {
    open_.push_back(name);
  }
  return ev;
}

XmlEvent XmlReader::read_text(int first) {
  XmlEvent ev;
  ev.kind = XmlEvent::Text;
  if (first == '&') decode_entity(ev.text);
  else ev.text.push_back(static_cast<char>(first));
  for (;;) {
    int c = peek();
    if (c == EOF || c == '<') break;
    get();
    if (c == '&') decode_entity(ev.text);
    else ev.text.push_back(static_cast<char>(c));
  }
  return ev;
}

XmlEvent XmlReader::next() {
  if (pending_end_) {
    pending_end_ = false;
    XmlEvent ev;
    ev.kind = XmlEvent::EndElement;
    ev.name = std::move(pending_name_);
    return ev;
  }
  if (done_) return XmlEvent{};
  int c = get();
  if (c == EOF) {
    if (!open_.empty()) throw XmlTruncated(offset_);
    done_ = true;
    return XmlEvent{};
  }
  if (c == '<') return read_tag();
  return read_text(c);
}

}  // namespace afdforge::util
