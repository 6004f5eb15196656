#pragma once

// Exhaustive machinery: enumeration of all matchings and the branch-and-bound
// search for a matching that beats (or ties) a given one in a head-to-head vote.

#include <atomic>
#include <exception>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

#include "threedpm/model.hpp"

namespace threedpm {

namespace detail {

/// Per-A-agent candidate (b, c) pairs in canonical order: b by a's ranking,
/// then c by b's ranking, keeping only those c that accept a.
inline std::vector<std::vector<std::pair<AgentId, AgentId>>> triple_options(const Instance& inst) {
  std::vector<std::vector<std::pair<AgentId, AgentId>>> options;
  for (AgentId a : inst.members(AgentClass::A)) {
    auto& opts = options.emplace_back();
    for (AgentId b : inst.prefs(a)) {
      for (AgentId c : inst.prefs(b)) {
        if (inst.accepts(c, a)) opts.emplace_back(b, c);
      }
    }
  }
  return options;
}

}  // namespace detail

/// Visits every matching of `inst` exactly once, in canonical order: A agents
/// by index, each either taking a triple (pairs in rank order) or, last,
/// staying unmatched. `fn` may return false to stop early.
template <typename Fn>
void for_each_matching(const Instance& inst, Fn&& fn) {
  const auto as = inst.members(AgentClass::A);
  const auto options = detail::triple_options(inst);
  std::vector<bool> used(inst.agent_count(), false);
  std::vector<Triple> current;
  bool stopped = false;

  auto emit = [&] {
    Matching m(inst, current);
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const Matching&>, bool>) {
      if (!fn(m)) stopped = true;
    } else {
      fn(m);
    }
  };

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (stopped) return;
    if (i == as.size()) {
      emit();
      return;
    }
    const AgentId a = as[i];
    for (auto [b, c] : options[i]) {
      if (used[b] || used[c]) continue;
      used[b] = used[c] = true;
      current.push_back({a, b, c});
      self(self, i + 1);
      current.pop_back();
      used[b] = used[c] = false;
      if (stopped) return;
    }
    self(self, i + 1);
  };
  rec(rec, 0);
}

inline std::vector<Matching> enumerate_matchings(const Instance& inst) {
  std::vector<Matching> out;
  for_each_matching(inst, [&](const Matching& m) { out.push_back(m); });
  return out;
}

/// What the searched-for matching must achieve against the base matching.
enum class Threshold : std::uint8_t {
  MorePopular,           ///< delta >= 1
  NotLessPopularAndDifferent,  ///< delta >= 0 and not equal to the base
};

struct SearchOptions {
  std::uint64_t max_nodes = 0;  ///< 0 means unbounded
  unsigned threads = 1;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

namespace detail {

class PopularitySearch {
 public:
  struct Shared {
    std::uint64_t max_nodes = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
  };

  PopularitySearch(const Instance& inst, const Matching& base, Voters voters, Threshold threshold,
                   const std::vector<std::vector<std::pair<AgentId, AgentId>>>& options, Shared& shared)
      : inst_(inst),
        base_(base),
        options_(options),
        as_(inst.members(AgentClass::A)),
        need_(threshold == Threshold::MorePopular ? 1 : 0),
        require_different_(threshold == Threshold::NotLessPopularAndDifferent),
        shared_(shared) {
    const std::size_t n = inst.agent_count();
    base_pos_.resize(n);
    best_.assign(n, 0);
    unmatched_vote_.assign(n, 0);
    voter_.assign(n, false);
    used_.assign(n, false);
    for (AgentId x = 0; x < n; ++x) {
      base_pos_[x] = inst.position(x, base.partner(x));
      voter_[x] = inst.is_voter(x, voters);
      if (!voter_[x]) continue;
      best_[x] = base_pos_[x] > 0 ? 1 : 0;
      unmatched_vote_[x] = base.is_matched(x) ? -1 : 0;
      optimistic_ += best_[x];
      if (inst.class_of(x) != AgentClass::A) rest_unmatched_ += unmatched_vote_[x];
    }
    base_choice_.resize(as_.size(), -1);
    for (std::size_t i = 0; i < as_.size(); ++i) {
      const AgentId a = as_[i];
      if (!base.is_matched(a)) continue;
      const AgentId b = base.partner(a);
      const AgentId c = base.partner(b);
      for (std::size_t k = 0; k < options_[i].size(); ++k) {
        if (options_[i][k] == std::pair{b, c}) base_choice_[i] = static_cast<int>(k);
      }
    }
  }

  /// Replays a prefix of decisions (option index, or -1 for unmatched).
  bool apply_prefix(const std::vector<int>& prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] >= 0) {
        auto [b, c] = options_[i][static_cast<std::size_t>(prefix[i])];
        if (used_[b] || used_[c]) return false;
      }
      apply(i, prefix[i]);
    }
    return true;
  }

  /// Depth-first search from decision `depth`; true when a witness was found.
  bool run(std::size_t depth) { return dfs(depth); }

  /// Collects all surviving decision prefixes of length `depth`.
  void collect(std::size_t i, std::size_t depth, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    count_node();
    if (bound() < need_) return;
    if (i == depth) {
      out.push_back(prefix);
      return;
    }
    for_each_choice(i, [&](int k) {
      prefix.push_back(k);
      collect(i + 1, depth, prefix, out);
      prefix.pop_back();
      return false;
    });
  }

  std::vector<Triple> witness() const { return witness_; }

 private:
  int bound() const { return tally_ + optimistic_; }

  void count_node() {
    const auto n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared_.max_nodes && n > shared_.max_nodes) throw SearchLimitExceeded(n - 1);
  }

  int cmp(AgentId x, AgentId partner) const {
    if (!voter_[x]) return 0;
    const std::size_t p = inst_.position(x, partner);
    return p < base_pos_[x] ? 1 : (p == base_pos_[x] ? 0 : -1);
  }

  void fix(AgentId x, AgentId partner) {
    used_[x] = true;
    const int v = cmp(x, partner);
    tally_ += v;
    optimistic_ -= best_[x];
    if (voter_[x] && inst_.class_of(x) != AgentClass::A) rest_unmatched_ -= unmatched_vote_[x];
  }

  void unfix(AgentId x, AgentId partner) {
    used_[x] = false;
    tally_ -= cmp(x, partner);
    optimistic_ += best_[x];
    if (voter_[x] && inst_.class_of(x) != AgentClass::A) rest_unmatched_ += unmatched_vote_[x];
  }

  void apply(std::size_t i, int k) {
    const AgentId a = as_[i];
    if (k >= 0) {
      auto [b, c] = options_[i][static_cast<std::size_t>(k)];
      fix(a, b);
      fix(b, c);
      fix(c, a);
      current_.push_back({a, b, c});
    } else {
      fix(a, a);
    }
    if (k == base_choice_[i]) ++same_;
  }

  void undo(std::size_t i, int k) {
    const AgentId a = as_[i];
    if (k == base_choice_[i]) --same_;
    if (k >= 0) {
      auto [b, c] = options_[i][static_cast<std::size_t>(k)];
      current_.pop_back();
      unfix(c, a);
      unfix(b, c);
      unfix(a, b);
    } else {
      unfix(a, a);
    }
  }

  template <typename Body>
  bool for_each_choice(std::size_t i, Body&& body) {
    const auto& opts = options_[i];
    for (std::size_t k = 0; k < opts.size(); ++k) {
      auto [b, c] = opts[k];
      if (used_[b] || used_[c]) continue;
      apply(i, static_cast<int>(k));
      const bool done = body(static_cast<int>(k));
      undo(i, static_cast<int>(k));
      if (done) return true;
    }
    apply(i, -1);
    const bool done = body(-1);
    undo(i, -1);
    return done;
  }

  bool dfs(std::size_t i) {
    if (shared_.stop.load(std::memory_order_relaxed)) return false;
    count_node();
    if (bound() < need_) return false;
    if (i == as_.size()) {
      const int total = tally_ + rest_unmatched_;
      if (total < need_) return false;
      if (require_different_ && same_ == as_.size()) return false;
      witness_ = current_;
      return true;
    }
    return for_each_choice(i, [&](int) { return dfs(i + 1); });
  }

  const Instance& inst_;
  const Matching& base_;
  const std::vector<std::vector<std::pair<AgentId, AgentId>>>& options_;
  std::span<const AgentId> as_;
  int need_;
  bool require_different_;
  Shared& shared_;

  std::vector<std::size_t> base_pos_;
  std::vector<int> best_;
  std::vector<int> unmatched_vote_;
  std::vector<bool> voter_;
  std::vector<bool> used_;
  std::vector<int> base_choice_;
  std::vector<Triple> current_;
  std::vector<Triple> witness_;
  int tally_ = 0;
  int optimistic_ = 0;
  int rest_unmatched_ = 0;
  std::size_t same_ = 0;
};

}  // namespace detail

/// Exact branch-and-bound search for M' meeting `threshold` against `base`,
/// counting only `voters`. A agents are decided in index order; a branch is
/// cut once its fixed votes plus +1 for every still-undecided voter that can
/// still improve cannot reach the threshold.
///
/// With `threads == 1` the first witness in canonical order is returned. With
/// more threads the subtrees are explored concurrently and any valid witness
/// may come back; the yes/no answer does not depend on scheduling.
/// Throws SearchLimitExceeded when `max_nodes` is exceeded.
inline std::optional<Matching> more_popular_search(const Instance& inst, const Matching& base, Voters voters,
                                                   Threshold threshold, const SearchOptions& opts = {},
                                                   SearchStats* stats = nullptr) {
  require_same_instance(inst, base);
  const auto options = detail::triple_options(inst);
  detail::PopularitySearch::Shared shared;
  shared.max_nodes = opts.max_nodes;
  const std::size_t depth_limit = inst.class_size(AgentClass::A);

  auto finish = [&](std::optional<std::vector<Triple>> triples) -> std::optional<Matching> {
    if (stats) stats->nodes = shared.nodes.load();
    if (!triples) return std::nullopt;
    return Matching(inst, std::move(*triples));
  };

  if (opts.threads <= 1 || depth_limit < 2) {
    detail::PopularitySearch search(inst, base, voters, threshold, options, shared);
    if (search.run(0)) return finish(search.witness());
    return finish(std::nullopt);
  }

  // Split the tree into decision prefixes, enough to keep every worker busy.
  std::vector<std::vector<int>> tasks;
  {
    detail::PopularitySearch splitter(inst, base, voters, threshold, options, shared);
    for (std::size_t depth = 1; depth <= depth_limit; ++depth) {
      tasks.clear();
      std::vector<int> prefix;
      splitter.collect(0, depth, prefix, tasks);
      if (tasks.size() >= 4 * static_cast<std::size_t>(opts.threads) || depth == depth_limit) break;
    }
  }

  std::atomic<std::size_t> next_task{0};
  std::mutex mutex;
  std::optional<std::vector<Triple>> found;
  std::exception_ptr failure;
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < opts.threads; ++w) {
      workers.emplace_back([&] {
        try {
          while (!shared.stop.load()) {
            const std::size_t t = next_task.fetch_add(1);
            if (t >= tasks.size()) return;
            detail::PopularitySearch search(inst, base, voters, threshold, options, shared);
            if (!search.apply_prefix(tasks[t])) continue;
            if (search.run(tasks[t].size())) {
              std::lock_guard lock(mutex);
              if (!found) found = search.witness();
              shared.stop = true;
            }
          }
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          shared.stop = true;
        }
      });
    }
  }
  if (found) return finish(std::move(found));
  if (failure) std::rethrow_exception(failure);
  return finish(std::nullopt);
}

}  // namespace threedpm
