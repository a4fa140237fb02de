#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "afdforge/time.hpp"
#include "afdforge/xml_reader.hpp"

namespace afdforge::ingest {

inline constexpr const char* kAfdTitlePrefix = "Wikipedia:Articles for deletion/";

struct Revision {
  std::int64_t revision_id = 0;
  util::Instant timestamp = 0;
  std::optional<std::string> author;  // absent => anonymous/IP editor
  std::string full_text;              // dumps store full text, not diffs
};

struct PageHistory {
  std::string title;
  std::vector<Revision> revisions;  // sorted by timestamp ascending
};

struct BlockEvent {
  util::Instant timestamp = 0;
  std::string blocked_user;
  std::string admin_user;
  std::int64_t admin_id = 0;
  std::string comment;  // may be empty
};

// Streams page histories out of a pages-meta-history export. Holds at most
// one page history in memory; pages whose title does not match the prefix
// are skipped without buffering their text. Daily summary pages
// (prefix + "Log/...") are excluded.
class AfdPageStream {
 public:
  explicit AfdPageStream(std::istream& in, std::string title_prefix = kAfdTitlePrefix);

  // Next matching page, or nullopt at end of dump. Throws util::XmlError /
  // util::XmlTruncated on malformed or cut-off input; pages returned before
  // the error remain valid.
  std::optional<PageHistory> next();

 private:
  util::XmlReader reader_;
  std::string prefix_;
  bool exhausted_ = false;
};

struct BlockLogResult {
  std::vector<BlockEvent> events;  // "block" actions, in file order
  std::size_t skipped = 0;         // unblock/reblock/unknown actions
  std::size_t rejected = 0;        // records missing timestamp or user
  std::size_t records = 0;         // events.size() + skipped + rejected
};

// MediaWiki logging dump restricted to block actions (<logitem> elements).
BlockLogResult parse_block_log_xml(std::istream& in);

// Tab-separated form: timestamp \t blocked_user \t admin_user \t admin_id
// \t comment, one record per line, \t and \n escaped inside comments.
BlockLogResult parse_block_log_tsv(std::istream& in);

// Dispatches on the first non-whitespace byte ('<' selects XML).
BlockLogResult parse_block_log(std::istream& in);

void write_block_log_tsv(std::ostream& out, const std::vector<BlockEvent>& events);

}  // namespace afdforge::ingest
