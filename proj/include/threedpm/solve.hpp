#pragma once

#include <optional>
#include <string>

#include "threedpm/house_allocation.hpp"
#include "threedpm/master_lists.hpp"
#include "threedpm/search.hpp"
#include "threedpm/verify.hpp"

namespace threedpm {

struct SolveResult {
  std::optional<Matching> matching;
  /// "brute" or "poly".
  std::string route;
};

/// Finds a matching with property `p`.
///
/// The brute-force route returns the first matching in canonical enumeration
/// order that `verify` accepts. Non-maximal matchings are skipped up front:
/// an addable triple gains three votes (two for A∪B), so none of them can be
/// popular in any sense, and stability-wise a non-maximal matching always has
/// a strongly blocking triple.
///
/// Strategy::Auto switches to polynomial constructions when they apply:
/// A∪B-popularity on complete, balanced instances and strong popularity on
/// complete, balanced instances with a master-list class.
inline SolveResult find_matching(const Instance& inst, Property p, const VerifyOptions& opts = {}) {
  const bool want_poly = opts.strategy != Strategy::Brute;
  if (p == Property::ABPopular && want_poly && ab_poly_eligible(inst)) {
    return {ab_popular_find(inst), "poly"};
  }
  if (p == Property::StrongPopular && want_poly && strong_popular_1ml_eligible(inst)) {
    return {strongly_popular_1ml(inst), "poly"};
  }
  if (opts.strategy == Strategy::Poly) {
    throw PreconditionError("no polynomial route for " + std::string(to_string(p)) + " on this instance");
  }
  VerifyOptions brute = opts;
  brute.strategy = Strategy::Brute;
  SolveResult out{std::nullopt, "brute"};
  for_each_matching(inst, [&](const Matching& m) {
    if (!is_maximal(inst, m).maximal) return true;
    if (verify(inst, m, p, brute).holds) {
      out.matching = m;
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace threedpm
