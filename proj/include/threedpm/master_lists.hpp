#pragma once

// Constructions for complete instances whose preferences come from master
// lists: the unique strongly popular candidate when one class has a master
// list, more-popular witnesses when two or three classes have one, and the
// popular matching of a 3-master-list instance with one class cut short.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "threedpm/model.hpp"

namespace threedpm {

/// A more-popular matching together with how it was obtained.
struct Witness {
  Matching matching;
  int delta = 0;
  /// "augment", "reversed", "shifted", "rearranged" or "shift-up".
  std::string route;
};

namespace detail {

inline void require_complete_balanced(const Instance& inst, const char* what) {
  if (!inst.complete()) throw PreconditionError(std::string(what) + " needs complete preference lists");
  if (!inst.balanced()) throw PreconditionError(std::string(what) + " needs equal class sizes");
}

inline void require_valid(const Instance& inst, const Matching& m) {
  if (auto v = validate_matching(inst, m); !v.empty()) throw PreconditionError(v.front().message);
}

inline AgentClass inverse_rotation(AgentClass first) {
  return static_cast<AgentClass>((3 - index_of(first)) % 3);
}

inline std::optional<Witness> augment_if_not_maximal(const Instance& inst, const Matching& m) {
  const auto add = is_maximal(inst, m);
  if (add.maximal) return std::nullopt;
  auto triples = m.triples();
  triples.push_back(*add.addable);
  Matching better(inst, std::move(triples));
  const int d = delta(inst, better, m);
  return Witness{std::move(better), d, "augment"};
}

}  // namespace detail

/// The class used as "the" master-list class for the one-master-list
/// characterization: the first of A, B, C whose lists share a master list.
inline std::optional<AgentClass> designated_master_list_class(const Instance& inst) {
  for (AgentClass cls : kClasses) {
    if (detect_master_list(inst, cls)) return cls;
  }
  return std::nullopt;
}

inline bool strong_popular_1ml_eligible(const Instance& inst) {
  return inst.complete() && inst.balanced() && designated_master_list_class(inst).has_value();
}

/// With complete lists and a master-list class X, a matching is strongly
/// popular exactly when every agent outside X holds its top choice.
inline bool strongly_popular_1ml_holds(const Instance& inst, const Matching& m) {
  detail::require_complete_balanced(inst, "the one-master-list characterization");
  const auto ml = designated_master_list_class(inst);
  if (!ml) throw PreconditionError("no class has a master list");
  for (AgentClass cls : kClasses) {
    if (cls == *ml) continue;
    for (AgentId x : inst.members(cls)) {
      if (inst.prefs(x).empty() || m.partner(x) != inst.prefs(x).front()) return false;
    }
  }
  return true;
}

/// The unique strongly popular matching of a complete instance in which some
/// class has a master list, or nullopt. The candidate gives every agent of the
/// two other classes its top choice; it exists iff both top-choice maps are
/// injective.
inline std::optional<Matching> strongly_popular_1ml(const Instance& inst) {
  detail::require_complete_balanced(inst, "strongly_popular_1ml");
  const auto ml = designated_master_list_class(inst);
  if (!ml) throw PreconditionError("strongly_popular_1ml needs a class with a master list");
  const Instance rot = rotate_classes(inst, *ml);
  std::vector<bool> c_taken(rot.agent_count(), false), a_taken(rot.agent_count(), false);
  std::vector<Triple> triples;
  for (AgentId b : rot.members(AgentClass::B)) {
    const AgentId c = rot.prefs(b).front();
    const AgentId a = rot.prefs(c).front();
    if (c_taken[c] || a_taken[a]) return std::nullopt;
    c_taken[c] = a_taken[a] = true;
    triples.push_back({a, b, c});
  }
  // Injective top choices on B already cover C; every C agent must also be used.
  for (AgentId c : rot.members(AgentClass::C)) {
    if (!c_taken[c]) return std::nullopt;
  }
  Matching m(rot, std::move(triples));
  return transfer_matching(rot, inst, m, detail::inverse_rotation(*ml));
}

/// A matching more popular than `m` in a complete instance where all three
/// classes have master lists and n >= 3.
///
/// A non-maximal `m` is augmented by an addable triple. Otherwise the triples
/// of the three lexicographically smallest A agents are rewired: order them so
/// that C's master list ranks a_i over a_j over a_k, then read off how A's
/// master list ranks their B partners. A "reversed" pattern rotates the A
/// agents, a "shifted" one rotates B and C partners. The result is always
/// re-checked; if the case construction does not win, every rearrangement of
/// the B and C partners among the three triples is tried.
inline Witness witness_3ml(const Instance& inst, const Matching& m) {
  detail::require_complete_balanced(inst, "witness_3ml");
  const std::size_t n = inst.class_size(AgentClass::A);
  if (n < 3) throw PreconditionError("witness_3ml needs n >= 3");
  std::array<MasterList, 3> ml;
  for (AgentClass cls : kClasses) {
    auto found = detect_master_list(inst, cls);
    if (!found) throw PreconditionError(std::string("class ") + label(cls) + " has no master list");
    ml[index_of(cls)] = std::move(*found);
  }
  detail::require_valid(inst, m);
  if (auto w = detail::augment_if_not_maximal(inst, m)) return std::move(*w);

  std::vector<AgentId> as(inst.members(AgentClass::A).begin(), inst.members(AgentClass::A).end());
  std::sort(as.begin(), as.end(), [&](AgentId l, AgentId r) { return inst.name(l) < inst.name(r); });
  std::array<Triple, 3> picked{};
  for (std::size_t k = 0; k < 3; ++k) picked[k] = *m.triple_of(inst, as[k]);
  const auto& c_order = ml[index_of(AgentClass::C)];
  std::sort(picked.begin(), picked.end(), [&](const Triple& l, const Triple& r) {
    return c_order.position(l.a) < c_order.position(r.a);
  });
  const auto [ti, tj, tk] = picked;

  // Labels 0=i, 1=j, 2=k listed from best to worst B partner under A's list.
  const auto& a_order = ml[index_of(AgentClass::A)];
  std::array<int, 3> pattern{0, 1, 2};
  std::sort(pattern.begin(), pattern.end(),
            [&](int l, int r) { return a_order.position(picked[l].b) < a_order.position(picked[r].b); });
  const bool even = pattern == std::array{0, 1, 2} || pattern == std::array{1, 2, 0} ||
                    pattern == std::array{2, 0, 1};

  std::vector<Triple> rest;
  for (const Triple& t : m.triples()) {
    if (t != ti && t != tj && t != tk) rest.push_back(t);
  }
  auto with = [&](std::array<Triple, 3> replacement) {
    auto triples = rest;
    triples.insert(triples.end(), replacement.begin(), replacement.end());
    return Matching(inst, std::move(triples));
  };

  Matching candidate = even ? with({Triple{ti.a, tk.b, tj.c}, Triple{tj.a, ti.b, tk.c}, Triple{tk.a, tj.b, ti.c}})
                            : with({Triple{tk.a, ti.b, ti.c}, Triple{ti.a, tj.b, tj.c}, Triple{tj.a, tk.b, tk.c}});
  if (int d = delta(inst, candidate, m); d >= 1) {
    return {std::move(candidate), d, even ? "shifted" : "reversed"};
  }

  std::array<int, 3> pb{0, 1, 2};
  do {
    std::array<int, 3> pc{0, 1, 2};
    do {
      Matching other = with({Triple{ti.a, picked[pb[0]].b, picked[pc[0]].c},
                             Triple{tj.a, picked[pb[1]].b, picked[pc[1]].c},
                             Triple{tk.a, picked[pb[2]].b, picked[pc[2]].c}});
      if (int d = delta(inst, other, m); d >= 1) return {std::move(other), d, "rearranged"};
    } while (std::next_permutation(pc.begin(), pc.end()));
  } while (std::next_permutation(pb.begin(), pb.end()));
  throw std::logic_error("witness_3ml: no rearrangement of three triples is more popular");
}

/// A matching more popular than `m` in a complete instance where two classes
/// have master lists and n >= 5. After rotating the two master-list classes to
/// A and B, every A agent moves one step up A's list among B, and every B agent
/// then moves one step up B's list among C (the top wraps to the bottom). At
/// least 2n-2 agents improve and at most n+2 lose, so delta >= n-4.
inline Witness witness_2ml(const Instance& inst, const Matching& m) {
  detail::require_complete_balanced(inst, "witness_2ml");
  const std::size_t n = inst.class_size(AgentClass::A);
  if (n < 5) throw PreconditionError("witness_2ml needs n >= 5 (got n = " + std::to_string(n) + ")");
  std::optional<AgentClass> first;
  for (AgentClass cls : kClasses) {
    if (detect_master_list(inst, cls) && detect_master_list(inst, next(cls))) {
      first = cls;
      break;
    }
  }
  if (!first) throw PreconditionError("witness_2ml needs two classes with master lists");
  detail::require_valid(inst, m);
  if (auto w = detail::augment_if_not_maximal(inst, m)) return std::move(*w);

  const Instance rot = rotate_classes(inst, *first);
  const Matching rm = transfer_matching(inst, rot, m, *first);
  const auto a_order = detect_master_list(rot, AgentClass::A)->order;
  const auto b_order = detect_master_list(rot, AgentClass::B)->order;
  auto step_up = [n](const std::vector<AgentId>& order, AgentId x) {
    const auto p = static_cast<std::size_t>(std::find(order.begin(), order.end(), x) - order.begin());
    return order[(p + n - 1) % n];
  };
  std::vector<Triple> triples;
  for (AgentId a : rot.members(AgentClass::A)) {
    const AgentId b = step_up(a_order, rm.partner(a));
    const AgentId c = step_up(b_order, rm.partner(b));
    triples.push_back({a, b, c});
  }
  Matching shifted = transfer_matching(rot, inst, Matching(rot, std::move(triples)), detail::inverse_rotation(*first));
  const int d = delta(inst, shifted, m);
  if (d < static_cast<int>(n) - 4) {
    throw std::logic_error("witness_2ml: shift-up lost its guaranteed margin");
  }
  return {std::move(shifted), d, "shift-up"};
}

/// Popular matching of a complete 3-master-list instance with 3 agents per
/// class from which agents of one class were removed (that class keeps 1 or
/// 2 agents). Matches the top choices together, and with two agents left also
/// the second choices.
inline Matching construct_obs1(const Instance& inst) {
  if (!inst.complete()) throw PreconditionError("construct_obs1 needs complete preference lists");
  std::optional<AgentClass> small;
  for (AgentClass cls : kClasses) {
    const auto size = inst.class_size(cls);
    if (size == 1 || size == 2) {
      if (small) throw PreconditionError("construct_obs1: agents removed from more than one class");
      small = cls;
    } else if (size != 3) {
      throw PreconditionError("construct_obs1: classes must have 3 agents before removal");
    }
  }
  if (!small) throw PreconditionError("construct_obs1: no agent was removed");
  for (AgentClass cls : kClasses) {
    if (!detect_master_list(inst, cls)) {
      throw PreconditionError(std::string("construct_obs1: class ") + label(cls) + " has no master list");
    }
  }
  const Instance rot = rotate_classes(inst, *small);
  const auto a_order = detect_master_list(rot, AgentClass::C)->order;
  const auto b_order = detect_master_list(rot, AgentClass::A)->order;
  const auto c_order = detect_master_list(rot, AgentClass::B)->order;
  std::vector<Triple> triples;
  for (std::size_t k = 0; k < rot.class_size(AgentClass::A); ++k) {
    triples.push_back({a_order[k], b_order[k], c_order[k]});
  }
  return transfer_matching(rot, inst, Matching(rot, std::move(triples)), detail::inverse_rotation(*small));
}

}  // namespace threedpm
