#pragma once

// Core data model: instances with cyclic preferences, matchings, votes and
// the head-to-head comparison between two matchings.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "threedpm/errors.hpp"

namespace threedpm {

enum class AgentClass : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<AgentClass, 3> kClasses{AgentClass::A, AgentClass::B, AgentClass::C};

constexpr std::size_t index_of(AgentClass c) noexcept { return static_cast<std::size_t>(c); }

/// The class whose members `c` ranks (A ranks B, B ranks C, C ranks A).
constexpr AgentClass next(AgentClass c) noexcept {
  return static_cast<AgentClass>((index_of(c) + 1) % 3);
}

constexpr AgentClass prev(AgentClass c) noexcept {
  return static_cast<AgentClass>((index_of(c) + 2) % 3);
}

constexpr char label(AgentClass c) noexcept { return "ABC"[index_of(c)]; }

/// Dense agent handle, valid for the Instance that issued it. Ids are laid out
/// class by class: all of A, then B, then C, each in declaration order.
using AgentId = std::uint32_t;

struct Triple {
  AgentId a = 0;
  AgentId b = 0;
  AgentId c = 0;

  AgentId operator[](AgentClass cls) const noexcept {
    switch (cls) {
      case AgentClass::A: return a;
      case AgentClass::B: return b;
      default: return c;
    }
  }

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Which agents take part in a head-to-head vote.
enum class Voters : std::uint8_t { All, AB };

class InstanceBuilder;

/// Three classes of agents with strict, possibly incomplete preference lists
/// over the cyclically next class. Immutable once built.
class Instance {
 public:
  Instance() = default;

  std::size_t agent_count() const noexcept { return names_.size(); }
  std::size_t class_size(AgentClass c) const noexcept { return members_[index_of(c)].size(); }

  std::span<const AgentId> members(AgentClass c) const noexcept { return members_[index_of(c)]; }
  AgentClass class_of(AgentId x) const { return class_[checked(x)]; }
  /// Position of `x` within its own class.
  std::size_t local_index(AgentId x) const { return local_[checked(x)]; }
  const std::string& name(AgentId x) const { return names_[checked(x)]; }

  std::optional<AgentId> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  AgentId id(std::string_view name) const {
    if (auto x = find(name)) return *x;
    throw Error("unknown agent '" + std::string(name) + "'");
  }

  /// Acceptable partners of `x`, most preferred first.
  std::span<const AgentId> prefs(AgentId x) const { return prefs_[checked(x)]; }

  /// 0-based rank of `y` in x's list, or nullopt when x does not accept y.
  std::optional<std::size_t> rank(AgentId x, AgentId y) const {
    const auto& row = rank_[checked(x)];
    if (y >= class_.size() || class_[y] != next(class_[x])) return std::nullopt;
    const auto r = row[local_[y]];
    if (r < 0) return std::nullopt;
    return static_cast<std::size_t>(r);
  }

  bool accepts(AgentId x, AgentId y) const { return rank(x, y).has_value(); }

  /// Rank used for comparisons: being unmatched (partner == x) sits strictly
  /// below every acceptable partner. Unacceptable partners are an error.
  std::size_t position(AgentId x, AgentId partner) const {
    if (partner == x) return prefs_[checked(x)].size();
    if (auto r = rank(x, partner)) return *r;
    throw Error("agent '" + name(x) + "' does not accept '" + name(partner) + "'");
  }

  bool acceptable(const Triple& t) const {
    return accepts(t.a, t.b) && accepts(t.b, t.c) && accepts(t.c, t.a);
  }

  /// Every agent ranks the whole next class.
  bool complete() const {
    for (AgentId x = 0; x < agent_count(); ++x) {
      if (prefs_[x].size() != class_size(next(class_[x]))) return false;
    }
    return true;
  }

  bool balanced() const {
    return class_size(AgentClass::A) == class_size(AgentClass::B) &&
           class_size(AgentClass::B) == class_size(AgentClass::C);
  }

  bool is_voter(AgentId x, Voters voters) const {
    return voters == Voters::All || class_of(x) != AgentClass::C;
  }

  friend bool operator==(const Instance& l, const Instance& r) {
    return l.names_ == r.names_ && l.class_ == r.class_ && l.prefs_ == r.prefs_;
  }

 private:
  friend class InstanceBuilder;

  AgentId checked(AgentId x) const {
    if (x >= names_.size()) throw Error("agent id " + std::to_string(x) + " out of range");
    return x;
  }

  std::vector<std::string> names_;
  std::vector<AgentClass> class_;
  std::vector<std::size_t> local_;
  std::array<std::vector<AgentId>, 3> members_;
  std::vector<std::vector<AgentId>> prefs_;
  std::vector<std::vector<std::int32_t>> rank_;
  std::unordered_map<std::string, AgentId> by_name_;
};

/// Collects agents by name, resolves preference lists, and checks the
/// instance invariants on build().
class InstanceBuilder {
 public:
  InstanceBuilder& add(AgentClass cls, std::string name, std::vector<std::string> prefs = {}) {
    pending_[index_of(cls)].push_back({std::move(name), std::move(prefs)});
    return *this;
  }

  InstanceBuilder& set_prefs(std::string_view name, std::vector<std::string> prefs) {
    for (auto& cls : pending_) {
      for (auto& agent : cls) {
        if (agent.name == name) {
          agent.prefs = std::move(prefs);
          return *this;
        }
      }
    }
    throw Error("unknown agent '" + std::string(name) + "'");
  }

  Instance build() const {
    Instance inst;
    for (AgentClass cls : kClasses) {
      for (const auto& agent : pending_[index_of(cls)]) {
        if (agent.name.empty()) throw Error("empty agent name");
        const auto id = static_cast<AgentId>(inst.names_.size());
        if (!inst.by_name_.emplace(agent.name, id).second) {
          throw Error("duplicate agent '" + agent.name + "'");
        }
        inst.members_[index_of(cls)].push_back(id);
        inst.local_.push_back(inst.members_[index_of(cls)].size() - 1);
        inst.names_.push_back(agent.name);
        inst.class_.push_back(cls);
      }
    }
    inst.prefs_.resize(inst.names_.size());
    inst.rank_.resize(inst.names_.size());
    AgentId x = 0;
    for (AgentClass cls : kClasses) {
      const AgentClass target = next(cls);
      for (const auto& agent : pending_[index_of(cls)]) {
        auto& row = inst.rank_[x];
        row.assign(inst.members_[index_of(target)].size(), -1);
        for (const auto& pname : agent.prefs) {
          auto it = inst.by_name_.find(pname);
          if (it == inst.by_name_.end()) {
            throw Error("agent '" + agent.name + "' lists unknown agent '" + pname + "'");
          }
          const AgentId y = it->second;
          if (inst.class_[y] != target) {
            throw Error("agent '" + agent.name + "' in class " + label(cls) + " lists '" + pname +
                        "' from class " + label(inst.class_[y]) + ", expected class " +
                        label(target));
          }
          auto& slot = row[inst.local_[y]];
          if (slot >= 0) {
            throw Error("agent '" + agent.name + "' lists '" + pname + "' twice");
          }
          slot = static_cast<std::int32_t>(inst.prefs_[x].size());
          inst.prefs_[x].push_back(y);
        }
        ++x;
      }
    }
    return inst;
  }

 private:
  struct PendingAgent {
    std::string name;
    std::vector<std::string> prefs;
  };
  std::array<std::vector<PendingAgent>, 3> pending_;
};

/// Why a set of triples is not a matching of an instance.
struct Violation {
  enum class Kind { UnknownAgent, WrongClass, AgentReused, Acceptability };
  Kind kind;
  std::size_t triple_index;
  std::string message;
};

inline std::vector<Violation> validate_matching(const Instance& inst, std::span<const Triple> triples) {
  std::vector<Violation> out;
  std::vector<bool> used(inst.agent_count(), false);
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const Triple& t = triples[i];
    bool structural_ok = true;
    for (AgentClass cls : kClasses) {
      const AgentId x = t[cls];
      if (x >= inst.agent_count()) {
        out.push_back({Violation::Kind::UnknownAgent, i,
                       "triple " + std::to_string(i) + ": unknown agent id " + std::to_string(x)});
        structural_ok = false;
      } else if (inst.class_of(x) != cls) {
        out.push_back({Violation::Kind::WrongClass, i,
                       "triple " + std::to_string(i) + ": '" + inst.name(x) + "' is not in class " +
                           label(cls)});
        structural_ok = false;
      }
    }
    if (!structural_ok) continue;
    for (AgentClass cls : kClasses) {
      const AgentId x = t[cls];
      if (used[x]) {
        out.push_back({Violation::Kind::AgentReused, i,
                       "agent reused: '" + inst.name(x) + "' appears in more than one triple"});
      }
      used[x] = true;
    }
    if (!inst.acceptable(t)) {
      out.push_back({Violation::Kind::Acceptability, i,
                     "acceptability: (" + inst.name(t.a) + ", " + inst.name(t.b) + ", " +
                         inst.name(t.c) + ") is not cyclically acceptable"});
    }
  }
  return out;
}

/// A set of disjoint acceptable triples together with the partner map
/// M(a) = b, M(b) = c, M(c) = a, and M(x) = x for unmatched x.
class Matching {
 public:
  Matching() = default;

  /// Throws Error listing every violation when `triples` is not a matching.
  Matching(const Instance& inst, std::vector<Triple> triples) {
    const auto violations = validate_matching(inst, triples);
    if (!violations.empty()) {
      std::string msg = "invalid matching:";
      for (const auto& v : violations) msg += "\n  " + v.message;
      throw Error(msg);
    }
    std::sort(triples.begin(), triples.end());
    triples_ = std::move(triples);
    partner_.resize(inst.agent_count());
    for (AgentId x = 0; x < partner_.size(); ++x) partner_[x] = x;
    for (const Triple& t : triples_) {
      partner_[t.a] = t.b;
      partner_[t.b] = t.c;
      partner_[t.c] = t.a;
    }
  }

  static Matching empty(const Instance& inst) { return Matching(inst, {}); }

  const std::vector<Triple>& triples() const noexcept { return triples_; }
  std::size_t size() const noexcept { return triples_.size(); }
  std::size_t agent_count() const noexcept { return partner_.size(); }

  AgentId partner(AgentId x) const {
    if (x >= partner_.size()) throw Error("agent id " + std::to_string(x) + " out of range");
    return partner_[x];
  }

  bool is_matched(AgentId x) const { return partner(x) != x; }

  /// The triple containing `x`, if any.
  std::optional<Triple> triple_of(const Instance& inst, AgentId x) const {
    if (!is_matched(x)) return std::nullopt;
    AgentId a = x;
    if (inst.class_of(x) == AgentClass::B) a = partner_[partner_[x]];
    if (inst.class_of(x) == AgentClass::C) a = partner_[x];
    auto it = std::lower_bound(triples_.begin(), triples_.end(), Triple{a, 0, 0});
    return *it;
  }

  friend bool operator==(const Matching& l, const Matching& r) {
    return l.partner_.size() == r.partner_.size() && l.triples_ == r.triples_;
  }

 private:
  std::vector<Triple> triples_;
  std::vector<AgentId> partner_;
};

inline std::vector<Violation> validate_matching(const Instance& inst, const Matching& m) {
  if (m.agent_count() != inst.agent_count()) {
    return {{Violation::Kind::UnknownAgent, 0, "matching belongs to a different instance"}};
  }
  return validate_matching(inst, std::span<const Triple>(m.triples()));
}

inline void require_same_instance(const Instance& inst, const Matching& m) {
  if (m.agent_count() != inst.agent_count()) {
    throw Error("matching belongs to a different instance");
  }
}

/// +1 if x prefers its partner in `mp` to its partner in `m`, 0 if equal, -1 otherwise.
inline int vote(const Instance& inst, AgentId x, const Matching& mp, const Matching& m) {
  require_same_instance(inst, mp);
  require_same_instance(inst, m);
  const AgentId p = mp.partner(x);
  const AgentId q = m.partner(x);
  if (p == q) return 0;
  return inst.position(x, p) < inst.position(x, q) ? 1 : -1;
}

struct Tally {
  int improved = 0;
  int worsened = 0;
  int delta() const noexcept { return improved - worsened; }
};

inline Tally tally(const Instance& inst, const Matching& mp, const Matching& m, Voters voters = Voters::All) {
  require_same_instance(inst, mp);
  require_same_instance(inst, m);
  Tally t;
  for (AgentId x = 0; x < inst.agent_count(); ++x) {
    if (!inst.is_voter(x, voters)) continue;
    const int v = vote(inst, x, mp, m);
    if (v > 0) ++t.improved;
    if (v < 0) ++t.worsened;
  }
  return t;
}

/// Sum of votes for `mp` against `m`; `mp` is more popular when this is >= 1.
inline int delta(const Instance& inst, const Matching& mp, const Matching& m, Voters voters = Voters::All) {
  return tally(inst, mp, m, voters).delta();
}

struct Maximality {
  bool maximal = true;
  std::optional<Triple> addable;
};

/// Looks for three unmatched, mutually acceptable agents, in canonical order
/// (A by index, then b by a's ranking, then c by b's ranking).
inline Maximality is_maximal(const Instance& inst, const Matching& m) {
  require_same_instance(inst, m);
  for (AgentId a : inst.members(AgentClass::A)) {
    if (m.is_matched(a)) continue;
    for (AgentId b : inst.prefs(a)) {
      if (m.is_matched(b)) continue;
      for (AgentId c : inst.prefs(b)) {
        if (!m.is_matched(c) && inst.accepts(c, a)) return {false, Triple{a, b, c}};
      }
    }
  }
  return {};
}

/// Calls `fn(t)` for every acceptable triple, in canonical order.
template <typename Fn>
void for_each_acceptable_triple(const Instance& inst, Fn&& fn) {
  for (AgentId a : inst.members(AgentClass::A)) {
    for (AgentId b : inst.prefs(a)) {
      for (AgentId c : inst.prefs(b)) {
        if (inst.accepts(c, a)) fn(Triple{a, b, c});
      }
    }
  }
}

/// A strict order over the class ranked by `ranker`; every member of
/// `ranker` has a list that is a subsequence of `order`.
struct MasterList {
  AgentClass ranker;
  std::vector<AgentId> order;

  /// 0-based position of `y` in the order; -1 when absent.
  std::ptrdiff_t position(AgentId y) const {
    auto it = std::find(order.begin(), order.end(), y);
    return it == order.end() ? -1 : it - order.begin();
  }
};

/// Builds the union of "consecutive in some list" constraints over the ranked
/// class and returns its lexicographically smallest topological order, or
/// nullopt when the constraints contain a cycle.
inline std::optional<MasterList> detect_master_list(const Instance& inst, AgentClass ranker) {
  const AgentClass target = next(ranker);
  const auto targets = inst.members(target);
  const std::size_t k = targets.size();
  std::vector<std::vector<std::size_t>> succ(k);
  std::vector<std::size_t> indegree(k, 0);
  for (AgentId x : inst.members(ranker)) {
    const auto list = inst.prefs(x);
    for (std::size_t i = 1; i < list.size(); ++i) {
      const std::size_t u = inst.local_index(list[i - 1]);
      const std::size_t v = inst.local_index(list[i]);
      if (std::find(succ[u].begin(), succ[u].end(), v) == succ[u].end()) {
        succ[u].push_back(v);
        ++indegree[v];
      }
    }
  }
  auto by_name = [&](std::size_t l, std::size_t r) {
    return inst.name(targets[l]) > inst.name(targets[r]);
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_name)> ready(by_name);
  for (std::size_t v = 0; v < k; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  MasterList ml{ranker, {}};
  while (!ready.empty()) {
    const std::size_t u = ready.top();
    ready.pop();
    ml.order.push_back(targets[u]);
    for (std::size_t v : succ[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (ml.order.size() != k) return std::nullopt;
  return ml;
}

/// Classes whose members' lists are derived from a master list.
inline std::vector<AgentClass> master_list_classes(const Instance& inst) {
  std::vector<AgentClass> out;
  for (AgentClass cls : kClasses) {
    if (detect_master_list(inst, cls)) out.push_back(cls);
  }
  return out;
}

/// Same agents and lists, with the classes renamed so that old class
/// `first` becomes A (and next(first) becomes B). Cyclic structure is kept.
inline Instance rotate_classes(const Instance& inst, AgentClass first) {
  InstanceBuilder builder;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto old_cls = static_cast<AgentClass>((index_of(first) + k) % 3);
    for (AgentId x : inst.members(old_cls)) {
      std::vector<std::string> prefs;
      for (AgentId y : inst.prefs(x)) prefs.push_back(inst.name(y));
      builder.add(kClasses[k], inst.name(x), std::move(prefs));
    }
  }
  return builder.build();
}

/// Carries a matching between two instances sharing agent names, where class
/// `first` of `from` plays the role of class A in `to`.
inline Matching transfer_matching(const Instance& from, const Instance& to, const Matching& m,
                                  AgentClass first) {
  std::vector<Triple> out;
  for (const Triple& t : m.triples()) {
    std::array<AgentId, 3> slots{};
    for (AgentClass cls : kClasses) {
      const auto k = (index_of(cls) + 3 - index_of(first)) % 3;
      slots[k] = to.id(from.name(t[cls]));
    }
    out.push_back({slots[0], slots[1], slots[2]});
  }
  return Matching(to, std::move(out));
}

}  // namespace threedpm
