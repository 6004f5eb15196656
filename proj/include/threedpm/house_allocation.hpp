#pragma once

// One-sided house allocation (applicants rank posts, posts are indifferent)
// and the A∪B-popularity route built on it for complete, balanced instances:
// A∪B-popularity splits into one house allocation problem A→B and one B→C.

#include <optional>
#include <string>
#include <vector>

#include "threedpm/model.hpp"

namespace threedpm {

struct HAInstance {
  std::size_t posts = 0;
  /// prefs[applicant] lists post indices, most preferred first.
  std::vector<std::vector<std::size_t>> prefs;

  std::size_t applicants() const noexcept { return prefs.size(); }
};

/// Post held by each applicant; nullopt is the applicant's private last-resort post.
using HAMatching = std::vector<std::optional<std::size_t>>;

namespace detail {

inline std::size_t ha_position(const HAInstance& h, std::size_t a, const std::optional<std::size_t>& post) {
  const auto& list = h.prefs[a];
  if (!post) return list.size();
  for (std::size_t r = 0; r < list.size(); ++r) {
    if (list[r] == *post) return r;
  }
  throw PreconditionError("applicant " + std::to_string(a) + " does not list post " + std::to_string(*post));
}

struct FirstSecond {
  std::vector<std::optional<std::size_t>> f;
  std::vector<std::optional<std::size_t>> s;
  std::vector<bool> is_f_post;
};

/// f(a) is a's top post; s(a) is a's best post that is nobody's f-post.
inline FirstSecond first_second(const HAInstance& h) {
  FirstSecond fs;
  fs.f.resize(h.applicants());
  fs.s.resize(h.applicants());
  fs.is_f_post.assign(h.posts, false);
  for (std::size_t a = 0; a < h.applicants(); ++a) {
    if (!h.prefs[a].empty()) {
      fs.f[a] = h.prefs[a].front();
      fs.is_f_post[h.prefs[a].front()] = true;
    }
  }
  for (std::size_t a = 0; a < h.applicants(); ++a) {
    for (std::size_t p : h.prefs[a]) {
      if (!fs.is_f_post[p]) {
        fs.s[a] = p;
        break;
      }
    }
  }
  return fs;
}

inline std::vector<std::optional<std::size_t>> holders(const HAInstance& h, const HAMatching& m) {
  std::vector<std::optional<std::size_t>> holder(h.posts);
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (m[a]) holder[*m[a]] = a;
  }
  return holder;
}

}  // namespace detail

inline void validate_ha(const HAInstance& h) {
  for (std::size_t a = 0; a < h.applicants(); ++a) {
    std::vector<bool> seen(h.posts, false);
    for (std::size_t p : h.prefs[a]) {
      if (p >= h.posts) throw PreconditionError("applicant " + std::to_string(a) + " lists unknown post");
      if (seen[p]) throw PreconditionError("applicant " + std::to_string(a) + " lists a post twice");
      seen[p] = true;
    }
  }
}

inline void validate_ha_matching(const HAInstance& h, const HAMatching& m) {
  if (m.size() != h.applicants()) throw PreconditionError("house allocation matching has wrong size");
  std::vector<bool> taken(h.posts, false);
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (!m[a]) continue;
    detail::ha_position(h, a, m[a]);
    if (taken[*m[a]]) throw PreconditionError("post " + std::to_string(*m[a]) + " assigned twice");
    taken[*m[a]] = true;
  }
}

/// Applicant votes only; posts have no preferences.
inline int ha_delta(const HAInstance& h, const HAMatching& mp, const HAMatching& m) {
  int d = 0;
  for (std::size_t a = 0; a < h.applicants(); ++a) {
    const auto p = detail::ha_position(h, a, mp[a]);
    const auto q = detail::ha_position(h, a, m[a]);
    d += p < q ? 1 : (p > q ? -1 : 0);
  }
  return d;
}

/// Popular iff every f-post is taken and every applicant holds f(a) or s(a).
inline bool ha_is_popular(const HAInstance& h, const HAMatching& m) {
  validate_ha_matching(h, m);
  const auto fs = detail::first_second(h);
  const auto holder = detail::holders(h, m);
  for (std::size_t p = 0; p < h.posts; ++p) {
    if (fs.is_f_post[p] && !holder[p]) return false;
  }
  for (std::size_t a = 0; a < h.applicants(); ++a) {
    if (m[a] != fs.f[a] && m[a] != fs.s[a]) return false;
  }
  return true;
}

/// A matching with strictly more applicant votes than `m`, or nullopt when `m`
/// is popular. Built directly from whichever condition of the f/s
/// characterization fails, so the witness is found in linear time.
inline std::optional<HAMatching> ha_more_popular(const HAInstance& h, const HAMatching& m) {
  validate_ha_matching(h, m);
  const auto fs = detail::first_second(h);
  const auto holder = detail::holders(h, m);
  auto pos = [&](std::size_t a, const std::optional<std::size_t>& p) { return detail::ha_position(h, a, p); };
  auto first_with_f = [&](std::size_t post) {
    for (std::size_t a = 0; a < h.applicants(); ++a) {
      if (fs.f[a] == post) return a;
    }
    throw std::logic_error("f-post without applicant");
  };

  HAMatching out = m;
  // An unoccupied f-post: promote one of its applicants.
  for (std::size_t p = 0; p < h.posts; ++p) {
    if (fs.is_f_post[p] && !holder[p]) {
      out[first_with_f(p)] = p;
      return out;
    }
  }
  for (std::size_t a = 0; a < h.applicants(); ++a) {
    if (m[a] == fs.f[a] || m[a] == fs.s[a]) continue;
    if (fs.s[a] && pos(a, m[a]) > pos(a, fs.s[a])) {
      // a sits below s(a).
      const std::size_t target = *fs.s[a];
      if (!holder[target]) {
        out[a] = target;
        return out;
      }
      const std::size_t a1 = *holder[target];
      const std::size_t f1 = *fs.f[a1];
      const std::size_t a2 = *holder[f1];
      out[a] = target;
      out[a1] = f1;
      if (a2 != a) out[a2] = std::nullopt;
      return out;
    }
    // a sits strictly between f(a) and s(a): its post is someone else's f-post.
    const std::size_t p = *m[a];
    const std::size_t a1 = first_with_f(p);
    const std::size_t a2 = *holder[*fs.f[a]];
    out[a] = fs.f[a];
    out[a1] = p;
    if (a2 != a1) out[a2] = std::nullopt;
    return out;
  }
  return std::nullopt;
}

/// Maximum-cardinality bipartite matching by augmenting paths.
inline std::vector<std::optional<std::size_t>> bipartite_max_matching(
    std::size_t left, std::size_t right, const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::optional<std::size_t>> match_left(left), match_right(right);
  std::vector<bool> visited;
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (std::size_t v : adj[u]) {
      if (visited[v]) continue;
      visited[v] = true;
      if (!match_right[v] || self(self, *match_right[v])) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < left; ++u) {
    visited.assign(right, false);
    augment(augment, u);
  }
  return match_left;
}

/// An applicant-complete popular matching (last-resort posts allowed), or
/// nullopt when none exists. Finds an applicant-complete matching on the
/// edges {a, f(a)} and {a, s(a)}, then moves an applicant onto every f-post
/// that is still free.
inline std::optional<HAMatching> ha_popular(const HAInstance& h) {
  validate_ha(h);
  const auto fs = detail::first_second(h);
  const std::size_t n = h.applicants();
  // Right side: real posts, then one last-resort post per applicant.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!fs.f[a]) {
      adj[a].push_back(h.posts + a);
      continue;
    }
    adj[a].push_back(*fs.f[a]);
    adj[a].push_back(fs.s[a] ? *fs.s[a] : h.posts + a);
  }
  const auto matched = bipartite_max_matching(n, h.posts + n, adj);
  HAMatching out(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!matched[a]) return std::nullopt;
    if (*matched[a] < h.posts) out[a] = *matched[a];
  }
  auto holder = detail::holders(h, out);
  for (std::size_t a = 0; a < n; ++a) {
    if (fs.f[a] && !holder[*fs.f[a]]) {
      if (out[a]) holder[*out[a]].reset();
      out[a] = fs.f[a];
      holder[*fs.f[a]] = a;
    }
  }
  return out;
}

/// The house allocation problem of class `cls` over the next class.
inline HAInstance project(const Instance& inst, AgentClass cls) {
  HAInstance h;
  h.posts = inst.class_size(next(cls));
  for (AgentId x : inst.members(cls)) {
    auto& list = h.prefs.emplace_back();
    for (AgentId y : inst.prefs(x)) list.push_back(inst.local_index(y));
  }
  return h;
}

inline HAMatching project(const Instance& inst, const Matching& m, AgentClass cls) {
  HAMatching out;
  for (AgentId x : inst.members(cls)) {
    if (m.is_matched(x)) {
      out.emplace_back(inst.local_index(m.partner(x)));
    } else {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

inline bool ab_poly_eligible(const Instance& inst) { return inst.complete() && inst.balanced(); }

namespace detail {

inline void require_ab_poly(const Instance& inst) {
  if (!ab_poly_eligible(inst)) {
    throw PreconditionError("the polynomial A∪B route needs complete lists and equal class sizes");
  }
}

/// Gives every applicant on its last resort some free post, in index order.
inline void complete_to_perfect(const HAInstance& h, HAMatching& m) {
  std::vector<bool> taken(h.posts, false);
  for (const auto& p : m) {
    if (p) taken[*p] = true;
  }
  std::size_t next_free = 0;
  for (auto& p : m) {
    if (p) continue;
    while (next_free < h.posts && taken[next_free]) ++next_free;
    if (next_free == h.posts) return;
    p = next_free;
    taken[next_free] = true;
  }
}

}  // namespace detail

/// Composes popular matchings of the A→B and B→C house allocation problems.
/// Requires complete lists and equal class sizes.
inline std::optional<Matching> ab_popular_find(const Instance& inst) {
  detail::require_ab_poly(inst);
  const auto ha = project(inst, AgentClass::A);
  const auto hb = project(inst, AgentClass::B);
  const auto ma = ha_popular(ha);
  const auto mb = ha_popular(hb);
  if (!ma || !mb) return std::nullopt;
  const auto bs = inst.members(AgentClass::B);
  const auto cs = inst.members(AgentClass::C);
  const auto as = inst.members(AgentClass::A);
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < as.size(); ++i) {
    // With complete lists and equal sizes popular house allocations are perfect.
    const std::size_t b = (*ma)[i].value();
    const std::size_t c = (*mb)[b].value();
    triples.push_back({as[i], bs[b], cs[c]});
  }
  return Matching(inst, std::move(triples));
}

/// A matching that is A∪B-more popular than `m`, or nullopt when `m` is
/// A∪B-popular. Requires complete lists and equal class sizes.
inline std::optional<Matching> ab_more_popular_poly(const Instance& inst, const Matching& m) {
  detail::require_ab_poly(inst);
  require_same_instance(inst, m);
  if (auto add = is_maximal(inst, m); !add.maximal) {
    auto triples = m.triples();
    triples.push_back(*add.addable);
    return Matching(inst, std::move(triples));
  }
  // Maximal with complete lists and equal sizes means perfect.
  const auto as = inst.members(AgentClass::A);
  const auto bs = inst.members(AgentClass::B);
  const auto cs = inst.members(AgentClass::C);
  const auto ha = project(inst, AgentClass::A);
  const auto hb = project(inst, AgentClass::B);
  std::vector<Triple> triples;
  if (auto better = ha_more_popular(ha, project(inst, m, AgentClass::A))) {
    detail::complete_to_perfect(ha, *better);
    for (std::size_t i = 0; i < as.size(); ++i) {
      const AgentId b = bs[better->at(i).value()];
      triples.push_back({as[i], b, m.partner(b)});
    }
  } else if (auto better_b = ha_more_popular(hb, project(inst, m, AgentClass::B))) {
    detail::complete_to_perfect(hb, *better_b);
    for (AgentId a : as) {
      const AgentId b = m.partner(a);
      triples.push_back({a, b, cs[better_b->at(inst.local_index(b)).value()]});
    }
  } else {
    return std::nullopt;
  }
  Matching witness(inst, std::move(triples));
  if (delta(inst, witness, m, Voters::AB) < 1) {
    throw std::logic_error("A∪B witness composition lost its majority");
  }
  return witness;
}

}  // namespace threedpm
