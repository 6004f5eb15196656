#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "threedpm/solve.hpp"

using namespace threedpm;

namespace {

bool exists(const oracle::Table& t, Property p) {
  for (std::size_t i = 0; i < t.matchings.size(); ++i) {
    const auto& m = t.matchings[i];
    switch (p) {
      case Property::WeakStable:
        if (!oracle::has_blocking(t.prefs, m, false)) return true;
        break;
      case Property::StrongStable:
        if (!oracle::has_blocking(t.prefs, m, true)) return true;
        break;
      case Property::Popular:
        if (t.popular(i)) return true;
        break;
      case Property::StrongPopular:
        if (t.strongly_popular(i)) return true;
        break;
      case Property::ABPopular:
        if (t.ab_popular(i)) return true;
        break;
    }
  }
  return false;
}

}  // namespace

TEST(Solve, ExistenceMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const Instance inst = testing_helpers::random_instance(seed < 8 ? 2 : 3, seed % 2 == 1, seed);
    oracle::Table table(inst);
    for (Property p : {Property::WeakStable, Property::StrongStable, Property::Popular, Property::StrongPopular,
                       Property::ABPopular}) {
      const SolveResult r = find_matching(inst, p, {Strategy::Brute, {}});
      EXPECT_EQ(r.matching.has_value(), exists(table, p)) << to_string(p) << " seed " << seed;
      if (r.matching) {
        EXPECT_TRUE(verify(inst, *r.matching, p, {Strategy::Brute, {}}).holds);
      }
    }
  }
}

TEST(Solve, FigureTwoStronglyPopularMatchingIsTheDiagonal) {
  const Instance inst = fixture_instance("fig2");
  const auto r = find_matching(inst, Property::StrongPopular, {Strategy::Brute, {}});
  ASSERT_TRUE(r.matching.has_value());
  EXPECT_EQ(*r.matching, fixture_matching("fig2_M"));
}

TEST(Solve, AutoUsesPolynomialRoutesWhenEligible) {
  const Instance inst = testing_helpers::ml_instance(3, 1, 4);
  const auto sp = find_matching(inst, Property::StrongPopular);
  EXPECT_EQ(sp.route, "poly");
  EXPECT_EQ(sp.matching.has_value(), find_matching(inst, Property::StrongPopular, {Strategy::Brute, {}}).matching.has_value());
  const auto ab = find_matching(inst, Property::ABPopular);
  EXPECT_EQ(ab.route, "poly");
  EXPECT_EQ(ab.matching.has_value(), find_matching(inst, Property::ABPopular, {Strategy::Brute, {}}).matching.has_value());
  const auto pop = find_matching(inst, Property::Popular);
  EXPECT_EQ(pop.route, "brute");
}

TEST(Solve, PolyWithoutRouteThrows) {
  const Instance inst = testing_helpers::random_instance(3, false, 2);
  EXPECT_THROW(find_matching(inst, Property::Popular, {Strategy::Poly, {}}), PreconditionError);
  EXPECT_THROW(find_matching(inst, Property::ABPopular, {Strategy::Poly, {}}), PreconditionError);
}

TEST(Solve, ThreeMasterListsHaveNoPopularMatching) {
  const Instance inst = testing_helpers::ml_instance(3, 3, 1);
  EXPECT_FALSE(find_matching(inst, Property::Popular).matching.has_value());
}
