#pragma once

// Instance compilers for the four hardness constructions, the mappers between
// source solutions and matchings, and brute-force oracles for the source
// problems. The oracles share no code with the matching searches so that
// equivalence tests compare two independent computations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "threedpm/model.hpp"

namespace threedpm {

// ---------------------------------------------------------------------------
// (2,2)-E3-SAT
// ---------------------------------------------------------------------------

struct Literal {
  std::size_t var = 0;
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// CNF in which every clause has three distinct variables and every variable
/// occurs exactly twice positively and twice negatively.
struct SatInstance {
  std::vector<std::string> variables;
  std::vector<std::array<Literal, 3>> clauses;
  friend bool operator==(const SatInstance&, const SatInstance&) = default;
};

using Assignment = std::vector<bool>;

inline void validate_sat(const SatInstance& phi) {
  std::vector<int> pos(phi.variables.size(), 0), neg(phi.variables.size(), 0);
  for (std::size_t q = 0; q < phi.clauses.size(); ++q) {
    const auto& cl = phi.clauses[q];
    for (std::size_t k = 0; k < 3; ++k) {
      if (cl[k].var >= phi.variables.size()) {
        throw PreconditionError("clause " + std::to_string(q + 1) + " uses an unknown variable");
      }
      for (std::size_t l = 0; l < k; ++l) {
        if (cl[l].var == cl[k].var) {
          throw PreconditionError("clause " + std::to_string(q + 1) + " repeats variable " +
                                  phi.variables[cl[k].var]);
        }
      }
      (cl[k].positive ? pos : neg)[cl[k].var]++;
    }
  }
  for (std::size_t i = 0; i < phi.variables.size(); ++i) {
    if (pos[i] != 2 || neg[i] != 2) {
      throw PreconditionError("variable " + phi.variables[i] + " occurs " + std::to_string(pos[i]) +
                              " times positively and " + std::to_string(neg[i]) +
                              " times negatively, expected 2 and 2");
    }
  }
}

inline bool satisfies(const SatInstance& phi, const Assignment& sigma) {
  if (sigma.size() != phi.variables.size()) return false;
  return std::all_of(phi.clauses.begin(), phi.clauses.end(), [&](const auto& cl) {
    return std::any_of(cl.begin(), cl.end(), [&](const Literal& l) { return sigma[l.var] == l.positive; });
  });
}

/// Exhaustive search over all 2^|variables| assignments.
inline std::optional<Assignment> oracle_sat(const SatInstance& phi) {
  const std::size_t n = phi.variables.size();
  if (n >= 63) throw PreconditionError("oracle_sat: too many variables for exhaustive search");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Assignment sigma(n);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = (mask >> i) & 1U;
    if (satisfies(phi, sigma)) return sigma;
  }
  return std::nullopt;
}

/// Agent names used by reduce_sat. Clause indices are 1-based.
namespace sat_names {

inline std::string clause_agent(std::size_t q, const std::string& var) {
  return "ac" + std::to_string(q) + "." + var;
}
inline std::string clause_b(std::size_t q, int m) { return "bc" + std::to_string(q) + "." + std::to_string(m); }
inline std::string clause_c(std::size_t q, int m) { return "cc" + std::to_string(q) + "." + std::to_string(m); }
inline std::string var_a(const std::string& var, int m) { return "av." + var + "." + std::to_string(m); }
inline std::string var_b(const std::string& var, int m) { return "bv." + var + "." + std::to_string(m); }
inline std::string var_b(const std::string& var, int m, bool positive) {
  return var_b(var, m) + (positive ? "+" : "-");
}
inline std::string var_c(const std::string& var, int m, bool positive) {
  return "cv." + var + "." + std::to_string(m) + (positive ? "+" : "-");
}

}  // namespace sat_names

namespace detail {

/// Clause literals sorted by variable index.
inline std::array<Literal, 3> sorted_literals(std::array<Literal, 3> cl) {
  std::sort(cl.begin(), cl.end(), [](const Literal& l, const Literal& r) { return l.var < r.var; });
  return cl;
}

/// The two clauses (1-based, input order) in which variable `var` occurs with `positive` sign.
inline std::array<std::size_t, 2> occurrences(const SatInstance& phi, std::size_t var, bool positive) {
  std::array<std::size_t, 2> out{};
  std::size_t k = 0;
  for (std::size_t q = 0; q < phi.clauses.size(); ++q) {
    for (const Literal& l : phi.clauses[q]) {
      if (l.var == var && l.positive == positive) out[k++] = q + 1;
    }
  }
  return out;
}

}  // namespace detail

/// Compiles a (2,2)-E3-SAT formula into an instance that admits a popular
/// matching iff the formula is satisfiable.
///
/// Per clause q: clause agents ac<q>.<x> in A, one per variable; dummies
/// bc<q>.1-3 in B and cc<q>.1-3 in C. Per variable x: av.x.1-2 in A,
/// bv.x.1-2 and bv.x.{1,2}{+,-} in B, cv.x.{1,2}{+,-} in C.
///
/// Clause agents get five-entry lists (two variable-gadget agents, then the
/// three clause dummies), although the hardness statement advertises four
/// acceptable agents per agent; the construction is reproduced as given.
inline Instance reduce_sat(const SatInstance& phi) {
  using namespace sat_names;
  validate_sat(phi);
  InstanceBuilder builder;
  for (std::size_t q = 1; q <= phi.clauses.size(); ++q) {
    const auto lits = detail::sorted_literals(phi.clauses[q - 1]);
    std::vector<std::string> clause_as;
    for (const Literal& l : lits) {
      const auto& x = phi.variables[l.var];
      clause_as.push_back(clause_agent(q, x));
      builder.add(AgentClass::A, clause_agent(q, x),
                  {var_b(x, 1, l.positive), var_b(x, 2, l.positive), clause_b(q, 1), clause_b(q, 2), clause_b(q, 3)});
    }
    for (int m = 1; m <= 3; ++m) {
      builder.add(AgentClass::B, clause_b(q, m), {clause_c(q, 1), clause_c(q, 2), clause_c(q, 3)});
      builder.add(AgentClass::C, clause_c(q, m), clause_as);
    }
  }
  for (std::size_t i = 0; i < phi.variables.size(); ++i) {
    const auto& x = phi.variables[i];
    const auto plus = detail::occurrences(phi, i, true);
    const auto minus = detail::occurrences(phi, i, false);
    builder.add(AgentClass::A, var_a(x, 1), {var_b(x, 2), var_b(x, 1)});
    builder.add(AgentClass::A, var_a(x, 2), {var_b(x, 1), var_b(x, 2)});
    builder.add(AgentClass::B, var_b(x, 1), {var_c(x, 2, false), var_c(x, 2, true)});
    builder.add(AgentClass::B, var_b(x, 2), {var_c(x, 1, true), var_c(x, 1, false)});
    builder.add(AgentClass::B, var_b(x, 1, true), {var_c(x, 1, true)});
    builder.add(AgentClass::B, var_b(x, 1, false), {var_c(x, 1, false)});
    builder.add(AgentClass::B, var_b(x, 2, true), {var_c(x, 2, true)});
    builder.add(AgentClass::B, var_b(x, 2, false), {var_c(x, 2, false)});
    builder.add(AgentClass::C, var_c(x, 1, true), {clause_agent(plus[0], x), clause_agent(plus[1], x), var_a(x, 1)});
    builder.add(AgentClass::C, var_c(x, 1, false),
                {clause_agent(minus[0], x), clause_agent(minus[1], x), var_a(x, 2)});
    builder.add(AgentClass::C, var_c(x, 2, true), {clause_agent(plus[0], x), clause_agent(plus[1], x), var_a(x, 2)});
    builder.add(AgentClass::C, var_c(x, 2, false),
                {clause_agent(minus[0], x), clause_agent(minus[1], x), var_a(x, 1)});
  }
  return builder.build();
}

/// The matching built from a satisfying assignment: each variable gadget is
/// matched on the side of its value, the true-side b agents go to their
/// clauses, and each clause matches its false literals to its own dummies.
///
/// This matching is not popular in general. On the smallest formula the
/// first clause agent of a true literal holds its second choice while the
/// matching c agent ranks it first, so moving it up and sending the second
/// clause agent to its dummies wins by one vote.
inline Matching sat_assignment_to_matching(const SatInstance& phi, const Instance& inst, const Assignment& sigma) {
  using namespace sat_names;
  validate_sat(phi);
  if (!satisfies(phi, sigma)) throw PreconditionError("assignment does not satisfy the formula");
  std::vector<Triple> triples;
  auto add = [&](const std::string& a, const std::string& b, const std::string& c) {
    triples.push_back({inst.id(a), inst.id(b), inst.id(c)});
  };
  for (std::size_t i = 0; i < phi.variables.size(); ++i) {
    const auto& x = phi.variables[i];
    const bool v = sigma[i];
    const auto occ = detail::occurrences(phi, i, v);
    add(var_a(x, 2), var_b(x, v ? 2 : 1), var_c(x, v ? 1 : 2, !v));
    add(var_a(x, 1), var_b(x, v ? 1 : 2), var_c(x, v ? 2 : 1, !v));
    add(clause_agent(occ[0], x), var_b(x, 2, v), var_c(x, 2, v));
    add(clause_agent(occ[1], x), var_b(x, 1, v), var_c(x, 1, v));
  }
  for (std::size_t q = 1; q <= phi.clauses.size(); ++q) {
    int m = 1;
    for (const Literal& l : detail::sorted_literals(phi.clauses[q - 1])) {
      if (sigma[l.var] == l.positive) continue;
      add(clause_agent(q, phi.variables[l.var]), clause_b(q, m), clause_c(q, m));
      ++m;
    }
  }
  return Matching(inst, std::move(triples));
}

/// x := true iff one of bv.x.1+ / bv.x.2+ is matched into a clause gadget.
/// Throws when both sides of a variable are, which a popular matching never does.
inline Assignment matching_to_sat_assignment(const SatInstance& phi, const Instance& inst, const Matching& m) {
  using namespace sat_names;
  require_same_instance(inst, m);
  Assignment sigma(phi.variables.size());
  for (std::size_t i = 0; i < phi.variables.size(); ++i) {
    const auto& x = phi.variables[i];
    auto used = [&](bool positive) {
      return m.is_matched(inst.id(var_b(x, 1, positive))) || m.is_matched(inst.id(var_b(x, 2, positive)));
    };
    const bool pos = used(true);
    if (pos && used(false)) {
      throw PreconditionError("variable " + x + " has both signs matched into clause gadgets");
    }
    sigma[i] = pos;
  }
  return sigma;
}

// ---------------------------------------------------------------------------
// Perfect 3D matching with cyclic acceptability
// ---------------------------------------------------------------------------

/// Three equal-size classes with cyclic acceptability (no ranks).
/// accepts[cls][i] holds local indices into next(cls).
struct Cyclic3DM {
  std::array<std::vector<std::string>, 3> names;
  std::array<std::vector<std::vector<std::size_t>>, 3> accepts;

  std::size_t n() const noexcept { return names[0].size(); }
  bool acceptable(AgentClass cls, std::size_t i, std::size_t j) const {
    const auto& list = accepts[index_of(cls)][i];
    return std::find(list.begin(), list.end(), j) != list.end();
  }
  friend bool operator==(const Cyclic3DM&, const Cyclic3DM&) = default;
};

inline void validate_3dm(const Cyclic3DM& j) {
  const std::size_t n = j.n();
  std::set<std::string> seen;
  for (AgentClass cls : kClasses) {
    const auto k = index_of(cls);
    if (j.names[k].size() != n) throw PreconditionError("3D matching classes must have equal sizes");
    if (j.accepts[k].size() != n) throw PreconditionError("3D matching acceptability table has wrong size");
    for (const auto& name : j.names[k]) {
      if (!seen.insert(name).second) throw PreconditionError("duplicate agent '" + name + "'");
    }
    for (const auto& list : j.accepts[k]) {
      std::set<std::size_t> uniq(list.begin(), list.end());
      if (uniq.size() != list.size()) throw PreconditionError("acceptability list repeats an agent");
      if (!list.empty() && *uniq.rbegin() >= n) throw PreconditionError("acceptability refers to unknown agent");
    }
  }
}

using Triple3DM = std::array<std::size_t, 3>;

/// A perfect matching (local indices a, b, c), by backtracking over A.
inline std::optional<std::vector<Triple3DM>> oracle_3dm(const Cyclic3DM& j) {
  validate_3dm(j);
  const std::size_t n = j.n();
  std::vector<bool> used_b(n, false), used_c(n, false);
  std::vector<Triple3DM> current;
  auto rec = [&](auto&& self, std::size_t a) -> bool {
    if (a == n) return true;
    for (std::size_t b : j.accepts[0][a]) {
      if (used_b[b]) continue;
      for (std::size_t c : j.accepts[1][b]) {
        if (used_c[c] || !j.acceptable(AgentClass::C, c, a)) continue;
        used_b[b] = used_c[c] = true;
        current.push_back({a, b, c});
        if (self(self, a + 1)) return true;
        current.pop_back();
        used_b[b] = used_c[c] = false;
      }
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return current;
}

struct ReducedInstance {
  Instance instance;
  Matching designated;
};

namespace detail {

inline std::vector<std::string> neighbours(const Cyclic3DM& j, AgentClass cls, std::size_t i) {
  auto idx = j.accepts[index_of(cls)][i];
  std::sort(idx.begin(), idx.end());
  std::vector<std::string> out;
  for (std::size_t k : idx) out.push_back(j.names[index_of(next(cls))][k]);
  return out;
}

inline std::vector<std::string> concat(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

/// Two-entry list, collapsing to one entry when both coincide (n = 1).
inline std::vector<std::string> pair_list(std::string first, std::string second) {
  if (first == second) return {std::move(first)};
  return {std::move(first), std::move(second)};
}

inline std::string prime(const std::string& s, int k) { return s + std::string(static_cast<std::size_t>(k), '\''); }

}  // namespace detail

/// Strong-popularity gadget: the designated matching {(a_i, b_i', c_i')} is
/// strongly popular iff `j` has no perfect matching. Neighbours from `j` are
/// listed in declaration order; indices wrap modulo n.
///
/// For n = 1 the wrap leaves b1' with c1' only, so when j has its single
/// triple the matching {(a1, b1, c1), (a1', b1', c1')} is strongly popular.
/// The claim about the designated matching still holds there.
inline ReducedInstance reduce_3dm_spmi(const Cyclic3DM& j) {
  using detail::prime;
  validate_3dm(j);
  const std::size_t n = j.n();
  const auto& A = j.names[0];
  const auto& B = j.names[1];
  const auto& C = j.names[2];
  InstanceBuilder builder;
  for (std::size_t i = 0; i < n; ++i) {
    builder.add(AgentClass::A, A[i], detail::concat({prime(B[i], 1)}, detail::neighbours(j, AgentClass::A, i)));
  }
  for (std::size_t i = 0; i < n; ++i) builder.add(AgentClass::A, prime(A[i], 1), {prime(B[i], 1)});
  for (std::size_t i = 0; i < n; ++i) builder.add(AgentClass::B, B[i], detail::neighbours(j, AgentClass::B, i));
  for (std::size_t i = 0; i < n; ++i) {
    builder.add(AgentClass::B, prime(B[i], 1), detail::pair_list(prime(C[i], 1), prime(C[(i + 1) % n], 1)));
  }
  for (std::size_t i = 0; i < n; ++i) builder.add(AgentClass::C, C[i], detail::neighbours(j, AgentClass::C, i));
  for (std::size_t i = 0; i < n; ++i) {
    builder.add(AgentClass::C, prime(C[i], 1), {A[i], prime(A[(i + n - 1) % n], 1)});
  }
  Instance inst = builder.build();
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < n; ++i) {
    triples.push_back({inst.id(A[i]), inst.id(prime(B[i], 1)), inst.id(prime(C[i], 1))});
  }
  Matching designated(inst, std::move(triples));
  return {std::move(inst), std::move(designated)};
}

/// Popularity-verification gadget (n odd): the designated matching
/// {(a_i, b_i', c_i')} ∪ {(a_i'', b_i, c_i'')} is popular iff `j` has no
/// perfect matching. c_i'' ranks a_{i-1}'' first for odd i (1-based) and a_i''
/// first for even i.
///
/// For n = 1 the designated matching is never popular: a1' takes (b1', c1')
/// from a1 and wins by one whether or not j has a triple.
inline ReducedInstance reduce_3dm_pmvi(const Cyclic3DM& j) {
  using detail::prime;
  validate_3dm(j);
  const std::size_t n = j.n();
  if (n % 2 == 0) throw PreconditionError("reduce_3dm_pmvi needs an odd class size (got " + std::to_string(n) + ")");
  const auto& A = j.names[0];
  const auto& B = j.names[1];
  const auto& C = j.names[2];
  auto prev_i = [n](std::size_t i) { return (i + n - 1) % n; };
  auto next_i = [n](std::size_t i) { return (i + 1) % n; };
  InstanceBuilder builder;
  for (std::size_t i = 0; i < n; ++i) {
    builder.add(AgentClass::A, A[i], detail::concat({prime(B[i], 1)}, detail::neighbours(j, AgentClass::A, i)));
  }
  for (std::size_t i = 0; i < n; ++i) builder.add(AgentClass::A, prime(A[i], 1), {prime(B[i], 1)});
  for (std::size_t i = 0; i < n; ++i) builder.add(AgentClass::A, prime(A[i], 2), {B[i], prime(B[i], 2)});
  for (std::size_t i = 0; i < n; ++i) {
    builder.add(AgentClass::B, B[i], detail::concat({prime(C[i], 2)}, detail::neighbours(j, AgentClass::B, i)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    builder.add(AgentClass::B, prime(B[i], 1), detail::pair_list(prime(C[i], 1), prime(C[next_i(i)], 1)));
  }
  for (std::size_t i = 0; i < n; ++i) builder.add(AgentClass::B, prime(B[i], 2), {prime(C[next_i(i)], 2)});
  for (std::size_t i = 0; i < n; ++i) builder.add(AgentClass::C, C[i], detail::neighbours(j, AgentClass::C, i));
  for (std::size_t i = 0; i < n; ++i) builder.add(AgentClass::C, prime(C[i], 1), {prime(A[prev_i(i)], 1), A[i]});
  for (std::size_t i = 0; i < n; ++i) {
    const bool odd = (i + 1) % 2 == 1;
    builder.add(AgentClass::C, prime(C[i], 2),
                odd ? detail::pair_list(prime(A[prev_i(i)], 2), prime(A[i], 2))
                    : detail::pair_list(prime(A[i], 2), prime(A[prev_i(i)], 2)));
  }
  Instance inst = builder.build();
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < n; ++i) {
    triples.push_back({inst.id(A[i]), inst.id(prime(B[i], 1)), inst.id(prime(C[i], 1))});
    triples.push_back({inst.id(prime(A[i], 2)), inst.id(B[i]), inst.id(prime(C[i], 2))});
  }
  Matching designated(inst, std::move(triples));
  return {std::move(inst), std::move(designated)};
}

// ---------------------------------------------------------------------------
// Bipartite popular matching with one-sided ties
// ---------------------------------------------------------------------------

/// Bipartite graph U ∪ W. Every u has a strict list over its neighbours; each
/// w has either a strict list or a single tie over its neighbours.
struct OneSidedTiesInstance {
  std::vector<std::string> u_names;
  std::vector<std::string> w_names;
  std::vector<std::vector<std::size_t>> u_prefs;  ///< indices into W
  std::vector<std::vector<std::size_t>> w_prefs;  ///< indices into U
  std::vector<bool> w_tie;
  friend bool operator==(const OneSidedTiesInstance&, const OneSidedTiesInstance&) = default;
};

/// Partner in W of each u, or nullopt.
using OSMatching = std::vector<std::optional<std::size_t>>;

inline void validate_osties(const OneSidedTiesInstance& g) {
  const std::size_t nu = g.u_names.size();
  const std::size_t nw = g.w_names.size();
  if (g.u_prefs.size() != nu || g.w_prefs.size() != nw || g.w_tie.size() != nw) {
    throw PreconditionError("one-sided ties instance: table sizes do not match agent counts");
  }
  std::set<std::string> names(g.u_names.begin(), g.u_names.end());
  names.insert(g.w_names.begin(), g.w_names.end());
  if (names.size() != nu + nw) throw PreconditionError("one-sided ties instance: duplicate agent name");
  std::set<std::pair<std::size_t, std::size_t>> from_u, from_w;
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t w : g.u_prefs[u]) {
      if (w >= nw || !from_u.insert({u, w}).second) throw PreconditionError("bad list for " + g.u_names[u]);
    }
  }
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t u : g.w_prefs[w]) {
      if (u >= nu || !from_w.insert({u, w}).second) throw PreconditionError("bad list for " + g.w_names[w]);
    }
  }
  if (from_u != from_w) throw PreconditionError("one-sided ties instance: lists on both sides must name the same edges");
}

namespace detail {

/// Rank of `u` for `w`; ties put every neighbour at rank 0; unmatched ranks last.
inline std::size_t os_w_rank(const OneSidedTiesInstance& g, std::size_t w, std::optional<std::size_t> u) {
  const auto& list = g.w_prefs[w];
  if (!u) return list.size();
  if (g.w_tie[w]) return 0;
  return static_cast<std::size_t>(std::find(list.begin(), list.end(), *u) - list.begin());
}

inline std::size_t os_u_rank(const OneSidedTiesInstance& g, std::size_t u, std::optional<std::size_t> w) {
  const auto& list = g.u_prefs[u];
  if (!w) return list.size();
  return static_cast<std::size_t>(std::find(list.begin(), list.end(), *w) - list.begin());
}

inline std::vector<std::optional<std::size_t>> os_w_side(const OneSidedTiesInstance& g, const OSMatching& m) {
  std::vector<std::optional<std::size_t>> w_partner(g.w_names.size());
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (m[u]) w_partner[*m[u]] = u;
  }
  return w_partner;
}

}  // namespace detail

/// Votes of all agents of G for `mp` against `m`.
inline int osties_delta(const OneSidedTiesInstance& g, const OSMatching& mp, const OSMatching& m) {
  int d = 0;
  auto sgn = [](std::size_t p, std::size_t q) { return p < q ? 1 : (p > q ? -1 : 0); };
  for (std::size_t u = 0; u < g.u_names.size(); ++u) d += sgn(detail::os_u_rank(g, u, mp[u]), detail::os_u_rank(g, u, m[u]));
  const auto wp = detail::os_w_side(g, mp);
  const auto wm = detail::os_w_side(g, m);
  for (std::size_t w = 0; w < g.w_names.size(); ++w) d += sgn(detail::os_w_rank(g, w, wp[w]), detail::os_w_rank(g, w, wm[w]));
  return d;
}

/// Every matching of G, u by u (partners in u's order, unmatched last).
inline std::vector<OSMatching> osties_matchings(const OneSidedTiesInstance& g) {
  std::vector<OSMatching> out;
  OSMatching current(g.u_names.size());
  std::vector<bool> used(g.w_names.size(), false);
  auto rec = [&](auto&& self, std::size_t u) -> void {
    if (u == g.u_names.size()) {
      out.push_back(current);
      return;
    }
    for (std::size_t w : g.u_prefs[u]) {
      if (used[w]) continue;
      used[w] = true;
      current[u] = w;
      self(self, u + 1);
      used[w] = false;
    }
    current[u].reset();
    self(self, u + 1);
  };
  rec(rec, 0);
  return out;
}

/// The first popular matching of G in enumeration order, by comparing every
/// pair of matchings.
inline std::optional<OSMatching> oracle_osties(const OneSidedTiesInstance& g) {
  validate_osties(g);
  const auto all = osties_matchings(g);
  for (const auto& m : all) {
    const bool popular =
        std::none_of(all.begin(), all.end(), [&](const OSMatching& other) { return osties_delta(g, other, m) >= 1; });
    if (popular) return m;
  }
  return std::nullopt;
}

namespace detail {

inline std::string os_c_name(const OneSidedTiesInstance& g, std::size_t w) { return "c." + g.w_names[w]; }
inline std::string os_c_name(const OneSidedTiesInstance& g, std::size_t w, std::size_t u) {
  return "c." + g.w_names[w] + "." + g.u_names[u];
}

}  // namespace detail

/// A∪B-popularity gadget: A copies U, B copies W; a tied w gets one C agent
/// c.<w> ranking w's neighbours, a strict w gets one C agent c.<w>.<u> per u,
/// each accepting only that u. G has a popular matching iff the result has an
/// A∪B-popular matching.
inline Instance reduce_osties_ab(const OneSidedTiesInstance& g) {
  validate_osties(g);
  InstanceBuilder builder;
  for (std::size_t u = 0; u < g.u_names.size(); ++u) {
    std::vector<std::string> prefs;
    for (std::size_t w : g.u_prefs[u]) prefs.push_back(g.w_names[w]);
    builder.add(AgentClass::A, g.u_names[u], std::move(prefs));
  }
  for (std::size_t w = 0; w < g.w_names.size(); ++w) {
    if (g.w_tie[w]) {
      builder.add(AgentClass::B, g.w_names[w], {detail::os_c_name(g, w)});
      std::vector<std::string> prefs;
      for (std::size_t u : g.w_prefs[w]) prefs.push_back(g.u_names[u]);
      builder.add(AgentClass::C, detail::os_c_name(g, w), std::move(prefs));
    } else {
      std::vector<std::string> prefs;
      for (std::size_t u : g.w_prefs[w]) prefs.push_back(detail::os_c_name(g, w, u));
      builder.add(AgentClass::B, g.w_names[w], std::move(prefs));
      for (std::size_t u = 0; u < g.u_names.size(); ++u) {
        builder.add(AgentClass::C, detail::os_c_name(g, w, u), {g.u_names[u]});
      }
    }
  }
  return builder.build();
}

/// M ↦ M̄: each edge (u, w) becomes (a_u, b_w, c) with c = c.<w> or c.<w>.<u>.
inline Matching osties_to_matching(const OneSidedTiesInstance& g, const Instance& inst, const OSMatching& m) {
  std::vector<Triple> triples;
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (!m[u]) continue;
    const std::size_t w = *m[u];
    const auto c = g.w_tie[w] ? detail::os_c_name(g, w) : detail::os_c_name(g, w, u);
    triples.push_back({inst.id(g.u_names[u]), inst.id(g.w_names[w]), inst.id(c)});
  }
  return Matching(inst, std::move(triples));
}

inline OSMatching matching_to_osties(const OneSidedTiesInstance& g, const Instance& inst, const Matching& m) {
  OSMatching out(g.u_names.size());
  for (const Triple& t : m.triples()) {
    const auto u = std::find(g.u_names.begin(), g.u_names.end(), inst.name(t.a)) - g.u_names.begin();
    const auto w = std::find(g.w_names.begin(), g.w_names.end(), inst.name(t.b)) - g.w_names.begin();
    out[static_cast<std::size_t>(u)] = static_cast<std::size_t>(w);
  }
  return out;
}

}  // namespace threedpm
