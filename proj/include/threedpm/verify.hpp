#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "threedpm/house_allocation.hpp"
#include "threedpm/master_lists.hpp"
#include "threedpm/model.hpp"
#include "threedpm/search.hpp"

namespace threedpm {

enum class Property : std::uint8_t { WeakStable, StrongStable, Popular, StrongPopular, ABPopular };

inline constexpr std::string_view to_string(Property p) noexcept {
  switch (p) {
    case Property::WeakStable: return "weak-stable";
    case Property::StrongStable: return "strong-stable";
    case Property::Popular: return "popular";
    case Property::StrongPopular: return "strong-popular";
    case Property::ABPopular: return "ab-popular";
  }
  return "?";
}

inline std::optional<Property> parse_property(std::string_view s) {
  for (Property p : {Property::WeakStable, Property::StrongStable, Property::Popular, Property::StrongPopular,
                     Property::ABPopular}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

/// auto: polynomial route when the instance qualifies, brute force otherwise.
enum class Strategy : std::uint8_t { Auto, Brute, Poly };

inline std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "auto") return Strategy::Auto;
  if (s == "brute") return Strategy::Brute;
  if (s == "poly") return Strategy::Poly;
  return std::nullopt;
}

enum class BlockingMode : std::uint8_t {
  Strong,  ///< all three agents improve; none means weakly stable
  Weak,    ///< two improve, the third is not worse; none means strongly stable
};

/// All blocking triples of the given kind, in canonical triple order.
inline std::vector<Triple> blocking_triples(const Instance& inst, const Matching& m, BlockingMode mode) {
  require_same_instance(inst, m);
  std::vector<Triple> out;
  auto cmp = [&](AgentId x, AgentId partner) {
    const auto p = inst.position(x, partner);
    const auto q = inst.position(x, m.partner(x));
    return p < q ? 1 : (p == q ? 0 : -1);
  };
  for_each_acceptable_triple(inst, [&](const Triple& t) {
    const std::array<int, 3> v{cmp(t.a, t.b), cmp(t.b, t.c), cmp(t.c, t.a)};
    int better = 0, worse = 0;
    for (int x : v) {
      better += x > 0;
      worse += x < 0;
    }
    const bool blocks = mode == BlockingMode::Strong ? better == 3 : (better >= 2 && worse == 0);
    if (blocks) out.push_back(t);
  });
  return out;
}

struct VerifyOptions {
  Strategy strategy = Strategy::Auto;
  SearchOptions search;
};

struct Verdict {
  Property property = Property::Popular;
  bool holds = true;
  /// A more popular (or not less popular) matching, or a blocking triple.
  std::variant<std::monostate, Matching, Triple> witness;
  /// Tally of the witness matching against the verified one.
  std::optional<Tally> tally;
  /// Which route decided the verdict: "scan", "brute" or "poly".
  std::string route;

  std::optional<int> delta() const {
    if (!tally) return std::nullopt;
    return tally->delta();
  }
};

inline Voters voters_of(Property p) noexcept { return p == Property::ABPopular ? Voters::AB : Voters::All; }

namespace detail {

inline Verdict matching_verdict(const Instance& inst, const Matching& m, Property p, std::optional<Matching> w,
                                std::string route) {
  Verdict v;
  v.property = p;
  v.route = std::move(route);
  v.holds = !w.has_value();
  if (w) {
    v.tally = tally(inst, *w, m, voters_of(p));
    v.witness = std::move(*w);
  }
  return v;
}

}  // namespace detail

/// Decides whether `m` has property `p`, with a witness when it does not.
/// Stability is decided by scanning all acceptable triples. Popularity and
/// strong popularity use the exact branch-and-bound search, except that
/// strong popularity on complete instances with a master-list class uses the
/// top-choice characterization. A∪B-popularity on complete, balanced
/// instances splits into two house allocation problems; otherwise it falls
/// back to the search with only A and B voting.
///
/// Throws PreconditionError when `m` is not a matching of `inst` or when
/// Strategy::Poly is requested for an instance without a polynomial route.
inline Verdict verify(const Instance& inst, const Matching& m, Property p, const VerifyOptions& opts = {}) {
  if (auto v = validate_matching(inst, m); !v.empty()) {
    throw PreconditionError("not a matching of this instance: " + v.front().message);
  }
  switch (p) {
    case Property::WeakStable:
    case Property::StrongStable: {
      const auto blocking =
          blocking_triples(inst, m, p == Property::WeakStable ? BlockingMode::Strong : BlockingMode::Weak);
      Verdict v;
      v.property = p;
      v.route = "scan";
      v.holds = blocking.empty();
      if (!blocking.empty()) v.witness = blocking.front();
      return v;
    }
    case Property::Popular: {
      if (opts.strategy == Strategy::Poly) {
        throw PreconditionError("popularity has no polynomial verification route");
      }
      auto w = more_popular_search(inst, m, Voters::All, Threshold::MorePopular, opts.search);
      return detail::matching_verdict(inst, m, p, std::move(w), "brute");
    }
    case Property::StrongPopular: {
      const bool eligible = strong_popular_1ml_eligible(inst);
      if (opts.strategy == Strategy::Poly && !eligible) {
        throw PreconditionError(
            "polynomial strong-popularity route needs complete lists, equal classes and a master-list class");
      }
      if (opts.strategy != Strategy::Brute && eligible) {
        if (strongly_popular_1ml_holds(inst, m)) return detail::matching_verdict(inst, m, p, std::nullopt, "poly");
        // The unique strongly popular matching, when it exists, beats m outright.
        std::optional<Matching> w = strongly_popular_1ml(inst);
        if (!w) w = more_popular_search(inst, m, Voters::All, Threshold::NotLessPopularAndDifferent, opts.search);
        return detail::matching_verdict(inst, m, p, std::move(w), "poly");
      }
      auto w = more_popular_search(inst, m, Voters::All, Threshold::NotLessPopularAndDifferent, opts.search);
      return detail::matching_verdict(inst, m, p, std::move(w), "brute");
    }
    case Property::ABPopular: {
      const bool eligible = ab_poly_eligible(inst);
      if (opts.strategy == Strategy::Poly && !eligible) {
        throw PreconditionError("polynomial A∪B route needs complete lists and equal class sizes");
      }
      if (opts.strategy != Strategy::Brute && eligible) {
        return detail::matching_verdict(inst, m, p, ab_more_popular_poly(inst, m), "poly");
      }
      auto w = more_popular_search(inst, m, Voters::AB, Threshold::MorePopular, opts.search);
      return detail::matching_verdict(inst, m, p, std::move(w), "brute");
    }
  }
  throw std::logic_error("unknown property");
}

/// Searches only the neighbourhood of `m`: matchings obtained by inserting at
/// most `max_new` new acceptable triples and dropping the triples of `m` they
/// collide with. Returns one with delta >= 1 if the neighbourhood has one.
inline std::optional<Matching> local_more_popular_search(const Instance& inst, const Matching& m,
                                                         std::size_t max_new) {
  require_same_instance(inst, m);
  std::vector<Triple> candidates;
  for_each_acceptable_triple(inst, [&](const Triple& t) {
    if (!std::binary_search(m.triples().begin(), m.triples().end(), t)) candidates.push_back(t);
  });
  std::vector<std::size_t> chosen;
  std::optional<Matching> found;
  auto disjoint = [](const Triple& l, const Triple& r) { return l.a != r.a && l.b != r.b && l.c != r.c; };
  auto rec = [&](auto&& self, std::size_t from) -> bool {
    if (!chosen.empty()) {
      std::vector<Triple> triples;
      for (const Triple& t : m.triples()) {
        bool keep = true;
        for (std::size_t k : chosen) keep = keep && disjoint(t, candidates[k]);
        if (keep) triples.push_back(t);
      }
      for (std::size_t k : chosen) triples.push_back(candidates[k]);
      Matching other(inst, std::move(triples));
      if (delta(inst, other, m) >= 1) {
        found = std::move(other);
        return true;
      }
    }
    if (chosen.size() == max_new) return false;
    for (std::size_t k = from; k < candidates.size(); ++k) {
      bool ok = true;
      for (std::size_t j : chosen) ok = ok && disjoint(candidates[j], candidates[k]);
      if (!ok) continue;
      chosen.push_back(k);
      if (self(self, k + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

}  // namespace threedpm
