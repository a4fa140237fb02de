#include "afdforge/corpus.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include "afdforge/rng.hpp"

namespace afdforge::corpus {

namespace {

// author -> sorted block timestamps
std::map<std::string, std::vector<util::Instant>> index_blocks(
    const std::vector<ingest::BlockEvent>& blocks) {
  std::map<std::string, std::vector<util::Instant>> index;
  for (const auto& b : blocks) index[b.blocked_user].push_back(b.timestamp);
  for (auto& [user, times] : index) std::sort(times.begin(), times.end());
  return index;
}

std::optional<std::int64_t> next_block_delta(
    const std::map<std::string, std::vector<util::Instant>>& index, const std::string& author,
    util::Instant post_time) {
  auto it = index.find(author);
  if (it == index.end()) return std::nullopt;
  // earliest block strictly after the post
  auto pos = std::upper_bound(it->second.begin(), it->second.end(), post_time);
  if (pos == it->second.end()) return std::nullopt;
  return *pos - post_time;
}

// Nearest later block instant, used for the same-block test: two disruptive
// posts share a block iff the same event is each one's nearest later block.
std::optional<util::Instant> next_block_time(const LabeledPost& p) {
  if (!p.delta_seconds) return std::nullopt;
  return p.post.timestamp + *p.delta_seconds;
}

template <typename T, typename LabelOf, typename KeyOf>
std::vector<T> balance_impl(const std::vector<T>& items, SampleStrategy strategy,
                            std::uint64_t seed, LabelOf label_of, KeyOf key_of) {
  std::vector<std::size_t> disruptive, constructive;
  for (std::size_t i = 0; i < items.size(); ++i)
    (label_of(items[i]) == Label::disruptive ? disruptive : constructive).push_back(i);
  if (constructive.size() < disruptive.size())
    throw std::runtime_error("balance_sample: fewer constructive than disruptive posts");

  std::vector<std::size_t> chosen;
  if (strategy == SampleStrategy::random) {
    util::Rng rng(seed);
    std::vector<std::size_t> picks =
        util::sample_indices(constructive.size(), disruptive.size(), rng);
    for (std::size_t p : picks) chosen.push_back(constructive[p]);
  } else {
    std::vector<std::size_t> order = constructive;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key_of(items[a]) < key_of(items[b]); });
    order.resize(disruptive.size());
    chosen = std::move(order);
  }
  chosen.insert(chosen.end(), disruptive.begin(), disruptive.end());
  std::stable_sort(chosen.begin(), chosen.end(),
                   [&](std::size_t a, std::size_t b) { return key_of(items[a]) < key_of(items[b]); });
  std::vector<T> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(items[i]);
  return out;
}

}  // namespace

std::vector<LabeledPost> label_posts(const std::vector<textclean::CleanPost>& posts,
                                     const std::vector<ingest::BlockEvent>& blocks,
                                     std::int64_t timeframe_seconds) {
  auto index = index_blocks(blocks);
  std::vector<LabeledPost> out;
  out.reserve(posts.size());
  std::uint64_t next_id = 0;
  for (const auto& post : posts) {
    LabeledPost lp;
    lp.post = post;
    lp.id = next_id++;
    lp.delta_seconds = next_block_delta(index, post.author, post.timestamp);
    lp.label = (lp.delta_seconds && *lp.delta_seconds <= timeframe_seconds)
                   ? Label::disruptive
                   : Label::constructive;
    out.push_back(std::move(lp));
  }
  return out;
}

std::vector<MergedPost> sliding_window_merge(const std::vector<LabeledPost>& author_posts,
                                             std::int64_t window_seconds) {
  std::vector<MergedPost> out;
  const std::size_t n = author_posts.size();
  for (std::size_t start = 0; start < n; ++start) {
    MergedPost merged;
    merged.author = author_posts[start].post.author;
    merged.window_start = author_posts[start].post.timestamp;
    merged.window_end = merged.window_start;
    merged.label = Label::constructive;

    for (std::size_t next = start;; ++next) {
      const LabeledPost& p = author_posts[next];
      merged.member_ids.push_back(p.id);
      merged.tokens.insert(merged.tokens.end(), p.post.tokens.begin(), p.post.tokens.end());
      merged.window_end = p.post.timestamp;
      if (p.label == Label::disruptive) merged.label = Label::disruptive;

      if (next + 1 >= n) break;
      const LabeledPost& candidate = author_posts[next + 1];
      if (candidate.post.timestamp - merged.window_start > window_seconds) break;
      if (p.label == Label::disruptive) {
        // grows past a disruptive member only onto a disruptive post of the
        // same block
        if (candidate.label != Label::disruptive) break;
        if (next_block_time(p) != next_block_time(candidate)) break;
      }
    }
    out.push_back(std::move(merged));
  }
  return out;
}

std::vector<MergedPost> sliding_window_merge_all(const std::vector<LabeledPost>& posts,
                                                 std::int64_t window_seconds) {
  std::map<std::string, std::vector<LabeledPost>> by_author;
  for (const auto& p : posts) by_author[p.post.author].push_back(p);
  std::vector<MergedPost> out;
  for (auto& [author, group] : by_author) {
    std::stable_sort(group.begin(), group.end(), [](const LabeledPost& a, const LabeledPost& b) {
      return a.post.timestamp < b.post.timestamp;
    });
    auto merged = sliding_window_merge(group, window_seconds);
    out.insert(out.end(), merged.begin(), merged.end());
  }
  return out;  // std::map keeps authors ordered; windows are chronological
}

std::vector<LabeledPost> balance_sample(const std::vector<LabeledPost>& posts,
                                        SampleStrategy strategy, std::uint64_t seed) {
  return balance_impl(
      posts, strategy, seed, [](const LabeledPost& p) { return p.label; },
      [](const LabeledPost& p) { return std::make_pair(p.post.timestamp, p.id); });
}

std::vector<MergedPost> balance_sample(const std::vector<MergedPost>& posts,
                                       SampleStrategy strategy, std::uint64_t seed) {
  return balance_impl(
      posts, strategy, seed, [](const MergedPost& p) { return p.label; },
      [](const MergedPost& p) { return std::make_pair(p.window_start, p.author); });
}

std::vector<LabeledPost> sample_per_class(const std::vector<LabeledPost>& posts,
                                          std::size_t per_class, std::uint64_t seed) {
  std::vector<std::size_t> classes[2];
  for (std::size_t i = 0; i < posts.size(); ++i)
    classes[static_cast<int>(posts[i].label)].push_back(i);

  std::vector<std::size_t> chosen;
  for (int k = 0; k < 2; ++k) {
    util::Rng rng(util::derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::size_t take = std::min(per_class, classes[k].size());
    for (std::size_t p : util::sample_indices(classes[k].size(), take, rng))
      chosen.push_back(classes[k][p]);
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<LabeledPost> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(posts[i]);
  return out;
}

DeltaHistogram delta_distribution(const std::vector<textclean::CleanPost>& posts,
                                  const std::vector<ingest::BlockEvent>& blocks,
                                  std::int64_t horizon_seconds, std::int64_t bucket_seconds) {
  if (bucket_seconds <= 0) throw std::runtime_error("delta_distribution: bucket must be positive");
  DeltaHistogram hist;
  hist.bucket_seconds = bucket_seconds;
  hist.counts.assign(static_cast<std::size_t>((horizon_seconds + bucket_seconds - 1) / bucket_seconds), 0);

  std::map<std::string, std::vector<util::Instant>> post_times;
  for (const auto& p : posts) post_times[p.author].push_back(p.timestamp);
  for (auto& [author, times] : post_times) std::sort(times.begin(), times.end());

  for (const auto& block : blocks) {
    auto it = post_times.find(block.blocked_user);
    if (it == post_times.end()) continue;
    // last post strictly before the block
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), block.timestamp);
    if (pos == it->second.begin()) continue;
    std::int64_t delta = block.timestamp - *(pos - 1);
    if (delta >= horizon_seconds) continue;
    ++hist.counts[static_cast<std::size_t>(delta / bucket_seconds)];
  }
  return hist;
}

void write_delta_csv(std::ostream& out, const DeltaHistogram& histogram) {
  out << "bucket_start_seconds,count\n";
  for (std::size_t i = 0; i < histogram.counts.size(); ++i)
    out << i * static_cast<std::uint64_t>(histogram.bucket_seconds) << ',' << histogram.counts[i]
        << '\n';
}

}  // namespace afdforge::corpus
