#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace afdforge::util {

// Raised on malformed input; carries the byte offset of the failure.
class XmlError : public std::runtime_error {
 public:
  XmlError(const std::string& message, std::size_t byte_offset)
      : std::runtime_error(message + " at byte " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Raised when the stream ends mid-document (open elements remain).
class XmlTruncated : public XmlError {
 public:
  explicit XmlTruncated(std::size_t byte_offset)
      : XmlError("unexpected end of stream", byte_offset) {}
};

struct XmlEvent {
  enum Kind { StartElement, EndElement, Text, Eof };
  Kind kind = Eof;
  std::string name;  // element name for Start/End
  std::string text;  // decoded character data for Text
};

// Minimal pull parser for the machine-generated XML subset that MediaWiki
// export and logging dumps use: elements, attributes (skipped), character
// data with the five predefined entities plus numeric references, comments,
// CDATA, processing instructions. Never loads more than one event.
class XmlReader {
 public:
  explicit XmlReader(std::istream& in) : in_(in) {}

  XmlEvent next();

  std::size_t byte_offset() const { return offset_; }
  std::size_t depth() const { return open_.size(); }

 private:
  int peek();
  int get();
  void expect(char c);
  std::string read_name();
  void skip_until(const std::string& terminator);
  XmlEvent read_tag();
  XmlEvent read_text(int first);
  void decode_entity(std::string& out);

  std::istream& in_;
  std::size_t offset_ = 0;
  std::vector<std::string> open_;
  bool pending_end_ = false;  // set after a self-closing tag
  std::string pending_name_;
  bool done_ = false;
};

}  // namespace afdforge::util
