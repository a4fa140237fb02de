#include "afdforge/dump_ingest.hpp"

#include <algorithm>
#include <ostream>

#include "afdforge/text_util.hpp"

namespace afdforge::ingest {

using util::XmlEvent;

namespace {

bool is_summary_page(std::string_view title, std::string_view prefix) {
  return util::starts_with(title.substr(prefix.size()), "Log/");
}

std::string unescape_tsv(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '\\' && i + 1 < field.size()) {
      char c = field[++i];
      if (c == 't') out.push_back('\t');
      else if (c == 'n') out.push_back('\n');
      else if (c == '\\') out.push_back('\\');
      else { out.push_back('\\'); out.push_back(c); }
    } else {
      out.push_back(field[i]);
    }
  }
  return out;
}

std::string escape_tsv(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    if (c == '\t') out += "\\t";
    else if (c == '\n') out += "\\n";
    else if (c == '\\') out += "\\\\";
    else out.push_back(c);
  }
  return out;
}

std::string strip_user_namespace(std::string_view title) {
  std::string_view t = util::trim(title);
  if (util::starts_with(t, "User:")) t.remove_prefix(5);
  return std::string(util::trim(t));
}

}  // namespace

AfdPageStream::AfdPageStream(std::istream& in, std::string title_prefix)
    : reader_(in), prefix_(std::move(title_prefix)) {}

std::optional<PageHistory> AfdPageStream::next() {
  if (exhausted_) return std::nullopt;

  PageHistory page;
  Revision rev;
  bool in_page = false;
  bool in_revision = false;
  bool in_contributor = false;
  bool title_known = false;
  bool wanted = false;
  std::string text_buf;
  // element we are currently collecting character data for
  enum class Field { none, title, rev_id, timestamp, username, ip, text };
  Field field = Field::none;

  for (;;) {
    XmlEvent ev = reader_.next();
    switch (ev.kind) {
      case XmlEvent::Eof:
        exhausted_ = true;
        return std::nullopt;
      case XmlEvent::StartElement:
        if (ev.name == "page") {
          in_page = true;
          page = PageHistory{};
          title_known = false;
          wanted = false;
        } else if (!in_page) {
          // siteinfo etc.
        } else if (ev.name == "revision") {
          in_revision = true;
          rev = Revision{};
        } else if (ev.name == "contributor") {
          in_contributor = true;
        } else if (ev.name == "title" && !in_revision) {
          field = Field::title;
          text_buf.clear();
        } else if (ev.name == "id" && in_revision && !in_contributor && rev.revision_id == 0) {
          field = Field::rev_id;
          text_buf.clear();
        } else if (ev.name == "timestamp" && in_revision) {
          field = Field::timestamp;
          text_buf.clear();
        } else if (ev.name == "username" && in_contributor) {
          field = Field::username;
          text_buf.clear();
        } else if (ev.name == "ip" && in_contributor) {
          field = Field::ip;
          text_buf.clear();
        } else if (ev.name == "text" && in_revision) {
          field = Field::text;
          text_buf.clear();
        }
        break;
      case XmlEvent::Text:
        if (field != Field::none) {
          // Unwanted pages: record only the scalar fields needed to decide,
          // never the page text, so memory stays bounded by one wanted page.
          if (field == Field::text && title_known && !wanted) break;
          text_buf += ev.text;
        }
        break;
      case XmlEvent::EndElement:
        switch (field) {
          case Field::title:
            if (ev.name == "title") {
              page.title = text_buf;
              title_known = true;
              wanted = util::starts_with(page.title, prefix_) && !is_summary_page(page.title, prefix_);
              field = Field::none;
            }
            break;
          case Field::rev_id:
            if (ev.name == "id") {
              rev.revision_id = std::strtoll(text_buf.c_str(), nullptr, 10);
              field = Field::none;
            }
            break;
          case Field::timestamp:
            if (ev.name == "timestamp") {
              auto t = util::parse_iso8601(util::trim(text_buf));
              if (!t)
                throw util::XmlError("unparseable revision timestamp '" + text_buf + "'",
                                     reader_.byte_offset());
              rev.timestamp = *t;
              field = Field::none;
            }
            break;
          case Field::username:
            if (ev.name == "username") {
              rev.author = text_buf;
              field = Field::none;
            }
            break;
          case Field::ip:
            if (ev.name == "ip") {
              rev.author = std::nullopt;
              field = Field::none;
            }
            break;
          case Field::text:
            if (ev.name == "text") {
              rev.full_text = text_buf;
              text_buf.clear();
              field = Field::none;
            }
            break;
          case Field::none:
            break;
        }
        if (ev.name == "contributor") {
          in_contributor = false;
        } else if (ev.name == "revision") {
          in_revision = false;
          if (wanted) page.revisions.push_back(std::move(rev));
          rev = Revision{};
        } else if (ev.name == "page") {
          in_page = false;
          if (wanted) {
            std::stable_sort(page.revisions.begin(), page.revisions.end(),
                             [](const Revision& a, const Revision& b) {
                               return a.timestamp < b.timestamp;
                             });
            return page;
          }
        }
        break;
    }
  }
}

BlockLogResult parse_block_log_xml(std::istream& in) {
  util::XmlReader reader(in);
  BlockLogResult result;

  bool in_item = false;
  bool in_contributor = false;
  std::string text_buf;
  std::string field;
  std::string action, type, logtitle, comment, username, timestamp_text, contrib_id;

  for (;;) {
    XmlEvent ev = reader.next();
    if (ev.kind == XmlEvent::Eof) break;
    if (ev.kind == XmlEvent::StartElement) {
      if (ev.name == "logitem") {
        in_item = true;
        action.clear(); type.clear(); logtitle.clear(); comment.clear();
        username.clear(); timestamp_text.clear(); contrib_id.clear();
      } else if (in_item && ev.name == "contributor") {
        in_contributor = true;
      } else if (in_item) {
        field = ev.name;
        text_buf.clear();
      }
    } else if (ev.kind == XmlEvent::Text) {
      if (in_item && !field.empty()) text_buf += ev.text;
    } else if (ev.kind == XmlEvent::EndElement) {
      if (in_item && ev.name == field) {
        if (field == "action") action = util::trim(text_buf);
        else if (field == "type") type = util::trim(text_buf);
        else if (field == "logtitle") logtitle = text_buf;
        else if (field == "comment") comment = text_buf;
        else if (field == "timestamp") timestamp_text = util::trim(text_buf);
        else if (field == "username" && in_contributor) username = text_buf;
        else if (field == "id" && in_contributor) contrib_id = util::trim(text_buf);
        field.clear();
      } else if (ev.name == "contributor") {
        in_contributor = false;
      } else if (ev.name == "logitem") {
        in_item = false;
        ++result.records;
        if (!type.empty() && type != "block") {
          ++result.skipped;
          continue;
        }
        if (action != "block") {
          // unblock/reblock and anything unrecognized
          ++result.skipped;
          continue;
        }
        auto ts = util::parse_iso8601(timestamp_text);
        std::string blocked = strip_user_namespace(logtitle);
        if (!ts || blocked.empty()) {
          ++result.rejected;
          continue;
        }
        BlockEvent event;
        event.timestamp = *ts;
        event.blocked_user = std::move(blocked);
        event.admin_user = username;
        event.admin_id = contrib_id.empty() ? 0 : std::strtoll(contrib_id.c_str(), nullptr, 10);
        event.comment = comment;
        result.events.push_back(std::move(event));
      }
    }
  }
  return result;
}

BlockLogResult parse_block_log_tsv(std::istream& in) {
  BlockLogResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++result.records;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() < 4) {
      ++result.rejected;
      continue;
    }
    auto ts = util::parse_iso8601(util::trim(fields[0]));
    std::string blocked(util::trim(fields[1]));
    if (!ts || blocked.empty()) {
      ++result.rejected;
      continue;
    }
    BlockEvent event;
    event.timestamp = *ts;
    event.blocked_user = std::move(blocked);
    event.admin_user = fields[2];
    event.admin_id = std::strtoll(fields[3].c_str(), nullptr, 10);
    event.comment = fields.size() > 4 ? unescape_tsv(fields[4]) : std::string();
    result.events.push_back(std::move(event));
  }
  return result;
}

BlockLogResult parse_block_log(std::istream& in) {
  int c = in.peek();
  while (c != EOF && util::is_ascii_space(static_cast<char>(c))) {
    in.get();
    c = in.peek();
  }
  if (c == '<') return parse_block_log_xml(in);
  return parse_block_log_tsv(in);
}

void write_block_log_tsv(std::ostream& out, const std::vector<BlockEvent>& events) {
  for (const BlockEvent& e : events) {
    out << util::format_iso8601(e.timestamp) << '\t' << escape_tsv(e.blocked_user) << '\t'
        << escape_tsv(e.admin_user) << '\t' << e.admin_id << '\t' << escape_tsv(e.comment)
        << '\n';
  }
}

}  // namespace afdforge::ingest
