#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "afdforge/authorship.hpp"
#include "afdforge/corpus.hpp"
#include "afdforge/dump_ingest.hpp"
#include "afdforge/evaluate.hpp"
#include "afdforge/text_clean.hpp"

namespace afdforge::io {

// JSON Lines. Keys are emitted in sorted order and timestamps as ISO-8601
// Zulu strings, so equal inputs serialize byte-identically.

void write_pages(std::ostream& out, const std::vector<ingest::PageHistory>& pages);
void write_page(std::ostream& out, const ingest::PageHistory& page);
std::vector<ingest::PageHistory> read_pages(std::istream& in);

void write_raw_posts(std::ostream& out, const std::vector<authorship::RawPost>& posts);
std::vector<authorship::RawPost> read_raw_posts(std::istream& in);

void write_clean_posts(std::ostream& out, const std::vector<textclean::CleanPost>& posts);
std::vector<textclean::CleanPost> read_clean_posts(std::istream& in);

void write_labeled_posts(std::ostream& out, const std::vector<corpus::LabeledPost>& posts);
std::vector<corpus::LabeledPost> read_labeled_posts(std::istream& in);

void write_merged_posts(std::ostream& out, const std::vector<corpus::MergedPost>& posts);
std::vector<corpus::MergedPost> read_merged_posts(std::istream& in);

// Accepts labeled or merged corpora; both carry "tokens" and "label".
std::vector<eval::Document> read_documents(std::istream& in);

}  // namespace afdforge::io
