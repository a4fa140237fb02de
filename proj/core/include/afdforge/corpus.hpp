#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afdforge/dump_ingest.hpp"
#include "afdforge/text_clean.hpp"

namespace afdforge::corpus {

enum class Label : int { constructive = 0, disruptive = 1 };

struct LabeledPost {
  textclean::CleanPost post;
  Label label = Label::constructive;
  // Time to the author's earliest block strictly after the post; absent when
  // the author is never blocked afterwards. label == disruptive iff present
  // and <= timeframe (boundary inclusive).
  std::optional<std::int64_t> delta_seconds;
  std::uint64_t id = 0;  // corpus-wide, assigned in labeling order
};

struct MergedPost {
  std::string author;
  std::vector<std::uint64_t> member_ids;     // chronological
  std::vector<std::string> tokens;           // concatenated member tokens
  Label label = Label::constructive;         // disruptive iff any member is
  util::Instant window_start = 0;
  util::Instant window_end = 0;
};

std::vector<LabeledPost> label_posts(const std::vector<textclean::CleanPost>& posts,
                                     const std::vector<ingest::BlockEvent>& blocks,
                                     std::int64_t timeframe_seconds);

// Posts must belong to one author and be sorted chronologically. Every post
// starts one window; a window grows while the next post stays within the
// window span, except that it may extend past a disruptive member only onto
// a disruptive post of the same block.
std::vector<MergedPost> sliding_window_merge(const std::vector<LabeledPost>& author_posts,
                                             std::int64_t window_seconds);

// Groups by author, merges each group, and returns all windows ordered by
// (author, window_start).
std::vector<MergedPost> sliding_window_merge_all(const std::vector<LabeledPost>& posts,
                                                 std::int64_t window_seconds);

enum class SampleStrategy { random, chronological };

// Keeps every disruptive post and an equal number of constructive posts,
// chosen uniformly at random under the seed or as the chronologically first
// n. Output is ordered by (timestamp, id). Throws if the constructive side
// is smaller than the disruptive one.
std::vector<LabeledPost> balance_sample(const std::vector<LabeledPost>& posts,
                                        SampleStrategy strategy, std::uint64_t seed);
std::vector<MergedPost> balance_sample(const std::vector<MergedPost>& posts,
                                       SampleStrategy strategy, std::uint64_t seed);

// n posts per class (all of a class when it has fewer), random under the
// seed; used by the timeframe sweep to hold sample size fixed across rows.
std::vector<LabeledPost> sample_per_class(const std::vector<LabeledPost>& posts,
                                          std::size_t per_class, std::uint64_t seed);

struct DeltaHistogram {
  std::int64_t bucket_seconds = 0;
  std::vector<std::uint64_t> counts;  // counts[i] covers [i*bucket, (i+1)*bucket)
};

// For each (author, block) pair, buckets the gap between the author's last
// post before that block and the block itself; pairs without a prior post
// contribute nothing. Deltas beyond the horizon are ignored.
DeltaHistogram delta_distribution(const std::vector<textclean::CleanPost>& posts,
                                  const std::vector<ingest::BlockEvent>& blocks,
                                  std::int64_t horizon_seconds, std::int64_t bucket_seconds);

void write_delta_csv(std::ostream& out, const DeltaHistogram& histogram);

}  // namespace afdforge::corpus
