#include "afdforge/io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace afdforge::io {

using nlohmann::json;

namespace {

json tokens_json(const std::vector<std::string>& tokens) {
  json arr = json::array();
  for (const auto& t : tokens) arr.push_back(t);
  return arr;
}

std::vector<std::string> tokens_from(const json& j) {
  std::vector<std::string> out;
  for (const auto& t : j) out.push_back(t.get<std::string>());
  return out;
}

util::Instant instant_from(const json& j) {
  auto parsed = util::parse_iso8601(j.get<std::string>());
  if (!parsed) throw std::runtime_error("bad timestamp: " + j.get<std::string>());
  return *parsed;
}

template <typename T, typename Fn>
std::vector<T> read_lines(std::istream& in, Fn parse) {
  std::vector<T> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

void write_page(std::ostream& out, const ingest::PageHistory& page) {
  json revs = json::array();
  for (const auto& r : page.revisions) {
    json rev;
    rev["id"] = r.revision_id;
    rev["ts"] = util::format_iso8601(r.timestamp);
    if (r.author) rev["author"] = *r.author;
    rev["text"] = r.full_text;
    revs.push_back(std::move(rev));
  }
  json j;
  j["title"] = page.title;
  j["revisions"] = std::move(revs);
  out << j.dump() << '\n';
}

void write_pages(std::ostream& out, const std::vector<ingest::PageHistory>& pages) {
  for (const auto& p : pages) write_page(out, p);
}

std::vector<ingest::PageHistory> read_pages(std::istream& in) {
  return read_lines<ingest::PageHistory>(in, [](const json& j) {
    ingest::PageHistory page;
    page.title = j.at("title").get<std::string>();
    for (const auto& rev : j.at("revisions")) {
      ingest::Revision r;
      r.revision_id = rev.at("id").get<std::int64_t>();
      r.timestamp = instant_from(rev.at("ts"));
      if (rev.contains("author")) r.author = rev.at("author").get<std::string>();
      r.full_text = rev.at("text").get<std::string>();
      page.revisions.push_back(std::move(r));
    }
    return page;
  });
}

void write_raw_posts(std::ostream& out, const std::vector<authorship::RawPost>& posts) {
  for (const auto& p : posts) {
    json j;
    j["page"] = p.page_title;
    j["author"] = p.author;
    j["rev"] = p.revision_id;
    j["ts"] = util::format_iso8601(p.timestamp);
    j["tokens"] = tokens_json(p.raw_tokens);
    out << j.dump() << '\n';
  }
}

std::vector<authorship::RawPost> read_raw_posts(std::istream& in) {
  return read_lines<authorship::RawPost>(in, [](const json& j) {
    authorship::RawPost p;
    p.page_title = j.at("page").get<std::string>();
    p.author = j.at("author").get<std::string>();
    p.revision_id = j.at("rev").get<std::int64_t>();
    p.timestamp = instant_from(j.at("ts"));
    p.raw_tokens = tokens_from(j.at("tokens"));
    return p;
  });
}

void write_clean_posts(std::ostream& out, const std::vector<textclean::CleanPost>& posts) {
  for (const auto& p : posts) {
    json j;
    j["page"] = p.page_title;
    j["author"] = p.author;
    j["rev"] = p.revision_id;
    j["ts"] = util::format_iso8601(p.timestamp);
    j["tokens"] = tokens_json(p.tokens);
    j["clean"] = true;
    out << j.dump() << '\n';
  }
}

std::vector<textclean::CleanPost> read_clean_posts(std::istream& in) {
  return read_lines<textclean::CleanPost>(in, [](const json& j) {
    textclean::CleanPost p;
    p.page_title = j.at("page").get<std::string>();
    p.author = j.at("author").get<std::string>();
    p.revision_id = j.at("rev").get<std::int64_t>();
    p.timestamp = instant_from(j.at("ts"));
    p.tokens = tokens_from(j.at("tokens"));
    p.token_count = p.tokens.size();
    return p;
  });
}

void write_labeled_posts(std::ostream& out, const std::vector<corpus::LabeledPost>& posts) {
  for (const auto& p : posts) {
    json j;
    j["id"] = p.id;
    j["page"] = p.post.page_title;
    j["author"] = p.post.author;
    j["rev"] = p.post.revision_id;
    j["ts"] = util::format_iso8601(p.post.timestamp);
    j["tokens"] = tokens_json(p.post.tokens);
    j["label"] = p.label == corpus::Label::disruptive ? "disruptive" : "constructive";
    if (p.delta_seconds) j["delta_seconds"] = *p.delta_seconds;
    out << j.dump() << '\n';
  }
}

std::vector<corpus::LabeledPost> read_labeled_posts(std::istream& in) {
  return read_lines<corpus::LabeledPost>(in, [](const json& j) {
    corpus::LabeledPost p;
    p.id = j.at("id").get<std::uint64_t>();
    p.post.page_title = j.at("page").get<std::string>();
    p.post.author = j.at("author").get<std::string>();
    p.post.revision_id = j.at("rev").get<std::int64_t>();
    p.post.timestamp = instant_from(j.at("ts"));
    p.post.tokens = tokens_from(j.at("tokens"));
    p.post.token_count = p.post.tokens.size();
    p.label = j.at("label").get<std::string>() == "disruptive" ? corpus::Label::disruptive
                                                               : corpus::Label::constructive;
    if (j.contains("delta_seconds")) p.delta_seconds = j.at("delta_seconds").get<std::int64_t>();
    return p;
  });
}

void write_merged_posts(std::ostream& out, const std::vector<corpus::MergedPost>& posts) {
  for (const auto& p : posts) {
    json j;
    j["author"] = p.author;
    json members = json::array();
    for (auto id : p.member_ids) members.push_back(id);
    j["members"] = std::move(members);
    j["tokens"] = tokens_json(p.tokens);
    j["label"] = p.label == corpus::Label::disruptive ? "disruptive" : "constructive";
    j["window_start"] = util::format_iso8601(p.window_start);
    j["window_end"] = util::format_iso8601(p.window_end);
    out << j.dump() << '\n';
  }
}

std::vector<corpus::MergedPost> read_merged_posts(std::istream& in) {
  return read_lines<corpus::MergedPost>(in, [](const json& j) {
    corpus::MergedPost p;
    p.author = j.at("author").get<std::string>();
    for (const auto& id : j.at("members")) p.member_ids.push_back(id.get<std::uint64_t>());
    p.tokens = tokens_from(j.at("tokens"));
    p.label = j.at("label").get<std::string>() == "disruptive" ? corpus::Label::disruptive
                                                               : corpus::Label::constructive;
    p.window_start = instant_from(j.at("window_start"));
    p.window_end = instant_from(j.at("window_end"));
    return p;
  });
}

std::vector<eval::Document> read_documents(std::istream& in) {
  return read_lines<eval::Document>(in, [](const json& j) {
    eval::Document doc;
    doc.tokens = tokens_from(j.at("tokens"));
    doc.label = j.at("label").get<std::string>() == "disruptive" ? 1 : 0;
    return doc;
  });
}

}  // namespace afdforge::io
