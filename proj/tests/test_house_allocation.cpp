#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "threedpm/house_allocation.hpp"
#include "threedpm/search.hpp"

using namespace threedpm;

namespace {

/// Every house allocation instance on `applicants` x `posts` reachable from
/// `seed`: random acceptable subsets in random order.
HAInstance random_ha(std::size_t applicants, std::size_t posts, std::uint64_t seed) {
  Rng rng(seed);
  HAInstance h;
  h.posts = posts;
  for (std::size_t a = 0; a < applicants; ++a) {
    std::vector<std::size_t> list;
    for (std::size_t p = 0; p < posts; ++p) {
      if (rng.below(3) != 0) list.push_back(p);
    }
    rng.shuffle(list);
    h.prefs.push_back(list);
  }
  return h;
}

}  // namespace

TEST(HouseAllocation, PopularExistenceMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const HAInstance h = random_ha(1 + seed % 4, 1 + (seed / 4) % 4, seed);
    const auto m = ha_popular(h);
    EXPECT_EQ(m.has_value(), oracle::ha_popular_exists(h)) << "seed " << seed;
    if (m) {
      validate_ha_matching(h, *m);
      EXPECT_TRUE(oracle::ha_is_popular(h, *m)) << "seed " << seed;
      EXPECT_TRUE(ha_is_popular(h, *m));
    }
  }
}

TEST(HouseAllocation, MorePopularWitnessIsExactlyWhenNotPopular) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const HAInstance h = random_ha(1 + seed % 4, 1 + (seed / 4) % 4, seed + 1000);
    for (const HAMatching& m : oracle::ha_all(h)) {
      const bool popular = oracle::ha_is_popular(h, m);
      EXPECT_EQ(ha_is_popular(h, m), popular);
      const auto w = ha_more_popular(h, m);
      EXPECT_EQ(w.has_value(), !popular);
      if (w) {
        validate_ha_matching(h, *w);
        EXPECT_GE(ha_delta(h, *w, m), 1);
        EXPECT_EQ(ha_delta(h, *w, m), oracle::ha_vote_delta(h, *w, m));
      }
    }
  }
}

TEST(HouseAllocation, BipartiteMatchingIsMaximum) {
  // Two applicants competing for one post plus a free one.
  const std::vector<std::vector<std::size_t>> adj{{0}, {0, 1}, {1}};
  const auto m = bipartite_max_matching(3, 2, adj);
  EXPECT_EQ(std::count_if(m.begin(), m.end(), [](const auto& x) { return x.has_value(); }), 2);
}

TEST(HouseAllocation, RejectsBadInput) {
  HAInstance h;
  h.posts = 1;
  h.prefs = {{0, 0}};
  EXPECT_THROW(validate_ha(h), PreconditionError);
  h.prefs = {{1}};
  EXPECT_THROW(validate_ha(h), PreconditionError);
}

TEST(ABPopular, FindMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = testing_helpers::random_instance(1 + seed % 3, true, seed);
    oracle::Table table(inst);
    bool exists = false;
    for (std::size_t i = 0; i < table.matchings.size(); ++i) exists = exists || table.ab_popular(i);
    const auto m = ab_popular_find(inst);
    EXPECT_EQ(m.has_value(), exists) << "seed " << seed;
    if (m) {
      EXPECT_TRUE(table.ab_popular(*table.index_of(oracle::names_of(inst, *m))));
    }
  }
}

TEST(ABPopular, PolynomialWitnessMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Instance inst = testing_helpers::random_instance(3, true, seed + 50);
    oracle::Table table(inst);
    for (const Matching& m : enumerate_matchings(inst)) {
      const auto idx = *table.index_of(oracle::names_of(inst, m));
      const auto w = ab_more_popular_poly(inst, m);
      EXPECT_EQ(w.has_value(), !table.ab_popular(idx));
      if (w) {
        EXPECT_GE(delta(inst, *w, m, Voters::AB), 1);
      }
    }
  }
}

TEST(ABPopular, NeedsCompleteBalancedInstance) {
  const Instance inst = testing_helpers::random_instance(3, false, 1);
  EXPECT_FALSE(ab_poly_eligible(inst));
  EXPECT_THROW(ab_popular_find(inst), PreconditionError);
}

TEST(ABPopular, ProjectionKeepsLocalIndices) {
  const Instance inst = fixture_instance("fig1");
  const HAInstance h = project(inst, AgentClass::B);
  EXPECT_EQ(h.posts, 3u);
  EXPECT_EQ(h.prefs[0], (std::vector<std::size_t>{1, 0, 2}));
  const HAMatching m = project(inst, fixture_matching("fig1_Mprime"), AgentClass::A);
  EXPECT_EQ(m[0], 1u);
}
