#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "threedpm/model.hpp"
#include "threedpm/search.hpp"

using namespace threedpm;
using testing_helpers::matching_of;

namespace {

Instance tiny() {
  return InstanceBuilder{}
      .add(AgentClass::A, "a1", {"b1", "b2"})
      .add(AgentClass::A, "a2", {"b2"})
      .add(AgentClass::B, "b1", {"c1"})
      .add(AgentClass::B, "b2", {"c2", "c1"})
      .add(AgentClass::C, "c1", {"a2", "a1"})
      .add(AgentClass::C, "c2", {"a2"})
      .build();
}

}  // namespace

TEST(Builder, RejectsDuplicateUnknownCrossClassAndRepeats) {
  EXPECT_THROW(InstanceBuilder{}.add(AgentClass::A, "x").add(AgentClass::B, "x").build(), Error);
  EXPECT_THROW(InstanceBuilder{}.add(AgentClass::A, "a", {"nobody"}).build(), Error);
  EXPECT_THROW(InstanceBuilder{}.add(AgentClass::A, "a", {"c"}).add(AgentClass::C, "c").build(), Error);
  EXPECT_THROW(InstanceBuilder{}.add(AgentClass::A, "a", {"b", "b"}).add(AgentClass::B, "b").build(), Error);
  EXPECT_THROW(InstanceBuilder{}.add(AgentClass::A, "").build(), Error);
}

TEST(Instance, LayoutAndRanks) {
  const Instance inst = tiny();
  EXPECT_EQ(inst.agent_count(), 6u);
  EXPECT_EQ(inst.class_of(inst.id("b2")), AgentClass::B);
  EXPECT_EQ(inst.local_index(inst.id("c2")), 1u);
  EXPECT_EQ(inst.rank(inst.id("b2"), inst.id("c1")), 1u);
  EXPECT_FALSE(inst.rank(inst.id("a2"), inst.id("b1")).has_value());
  EXPECT_TRUE(inst.acceptable({inst.id("a1"), inst.id("b2"), inst.id("c1")}));
  EXPECT_FALSE(inst.acceptable({inst.id("a1"), inst.id("b1"), inst.id("c2")}));
  EXPECT_FALSE(inst.complete());
  EXPECT_TRUE(inst.balanced());
  EXPECT_THROW((void)inst.id("zz"), Error);
}

TEST(Instance, UnmatchedRanksBelowEveryAcceptablePartner) {
  const Instance inst = tiny();
  const AgentId b2 = inst.id("b2");
  EXPECT_EQ(inst.position(b2, inst.id("c2")), 0u);
  EXPECT_EQ(inst.position(b2, inst.id("c1")), 1u);
  EXPECT_EQ(inst.position(b2, b2), 2u);
  EXPECT_THROW((void)inst.position(inst.id("a2"), inst.id("b1")), Error);
}

TEST(Matching, PartnersFollowTheCycle) {
  const Instance inst = tiny();
  const Matching m = matching_of(inst, {{"a1", "b2", "c1"}});
  EXPECT_EQ(m.partner(inst.id("a1")), inst.id("b2"));
  EXPECT_EQ(m.partner(inst.id("b2")), inst.id("c1"));
  EXPECT_EQ(m.partner(inst.id("c1")), inst.id("a1"));
  EXPECT_FALSE(m.is_matched(inst.id("a2")));
  EXPECT_EQ(m.partner(inst.id("a2")), inst.id("a2"));
  ASSERT_TRUE(m.triple_of(inst, inst.id("c1")).has_value());
  EXPECT_EQ(m.triple_of(inst, inst.id("c1"))->a, inst.id("a1"));
}

TEST(Matching, ValidationReportsReuseAndAcceptability) {
  const Instance inst = tiny();
  const Triple t1{inst.id("a1"), inst.id("b2"), inst.id("c1")};
  const Triple t2{inst.id("a2"), inst.id("b2"), inst.id("c2")};
  auto v = validate_matching(inst, std::vector<Triple>{t1, t2});
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().kind, Violation::Kind::AgentReused);
  EXPECT_NE(v.front().message.find("agent reused"), std::string::npos);

  const Triple bad{inst.id("a2"), inst.id("b1"), inst.id("c1")};
  v = validate_matching(inst, std::vector<Triple>{bad});
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().kind, Violation::Kind::Acceptability);
  EXPECT_NE(v.front().message.find("acceptability"), std::string::npos);
  EXPECT_THROW(Matching(inst, {bad}), Error);
}

TEST(Votes, FigureOneSwapGainsThree) {
  const Instance inst = fixture_instance("fig1");
  const Matching m = fixture_matching("fig1_M");
  const Matching mp = fixture_matching("fig1_Mprime");
  const Tally t = tally(inst, mp, m);
  EXPECT_EQ(t.delta(), 3);
  EXPECT_EQ(delta(inst, mp, m), -delta(inst, m, mp));
  const auto p = oracle::prefs_of(inst);
  EXPECT_EQ(oracle::delta(p, oracle::names_of(inst, mp), oracle::names_of(inst, m)), 3);
}

TEST(Votes, FigureTwoAlternativeLosesTwo) {
  const Instance inst = fixture_instance("fig2");
  const Matching m = fixture_matching("fig2_M");
  const Matching mp = matching_of(inst, {{"a1", "b1", "c1"}, {"a2", "b2", "c3"}, {"a3", "b3", "c2"}});
  EXPECT_EQ(delta(inst, mp, m), -2);
  const auto p = oracle::prefs_of(inst);
  EXPECT_EQ(oracle::delta(p, oracle::names_of(inst, mp), oracle::names_of(inst, m)), -2);
}

TEST(Votes, ABVotersIgnoreClassC) {
  const Instance inst = fixture_instance("fig1");
  const Matching m = fixture_matching("fig1_M");
  const Matching mp = fixture_matching("fig1_Mprime");
  const auto p = oracle::prefs_of(inst);
  EXPECT_EQ(delta(inst, mp, m, Voters::AB),
            oracle::delta(p, oracle::names_of(inst, mp), oracle::names_of(inst, m), true));
}

TEST(Maximality, FindsAddableTriple) {
  const Instance inst = tiny();
  const Matching empty = Matching::empty(inst);
  const auto r = is_maximal(inst, empty);
  EXPECT_FALSE(r.maximal);
  ASSERT_TRUE(r.addable.has_value());
  EXPECT_TRUE(inst.acceptable(*r.addable));
  EXPECT_TRUE(is_maximal(inst, matching_of(inst, {{"a1", "b2", "c1"}})).maximal);
}

TEST(Enumeration, CountsOnCompleteInstances) {
  const std::vector<std::size_t> expected{2, 13, 172, 3809};
  for (std::size_t n = 1; n <= 4; ++n) {
    const Instance inst = testing_helpers::ml_instance(n, 3, 7);
    std::size_t count = 0;
    for_each_matching(inst, [&](const Matching&) { ++count; });
    EXPECT_EQ(count, expected[n - 1]) << "n=" << n;
    if (n <= 3) {
      EXPECT_EQ(oracle::all_matchings(oracle::prefs_of(inst)).size(), expected[n - 1]);
    }
  }
}

TEST(Enumeration, MatchesOracleOnIncompleteInstances) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = testing_helpers::random_instance(3, false, seed);
    EXPECT_EQ(enumerate_matchings(inst).size(), oracle::all_matchings(oracle::prefs_of(inst)).size());
  }
}

TEST(MasterList, DetectsSharedOrder) {
  const Instance inst = InstanceBuilder{}
                            .add(AgentClass::A, "a1", {"b2", "b3"})
                            .add(AgentClass::A, "a2", {"b1", "b3"})
                            .add(AgentClass::A, "a3", {"b2", "b1"})
                            .add(AgentClass::B, "b1")
                            .add(AgentClass::B, "b2")
                            .add(AgentClass::B, "b3")
                            .build();
  const auto ml = detect_master_list(inst, AgentClass::A);
  ASSERT_TRUE(ml.has_value());
  std::vector<std::string> order;
  for (AgentId y : ml->order) order.push_back(inst.name(y));
  EXPECT_EQ(order, (std::vector<std::string>{"b2", "b1", "b3"}));
  // Every list is a subsequence of the detected order.
  for (AgentId a : inst.members(AgentClass::A)) {
    std::ptrdiff_t last = -1;
    for (AgentId b : inst.prefs(a)) {
      EXPECT_GT(ml->position(b), last);
      last = ml->position(b);
    }
  }
}

TEST(MasterList, RejectsConflictingOrders) {
  const Instance fig1 = fixture_instance("fig1");
  EXPECT_FALSE(detect_master_list(fig1, AgentClass::A).has_value());
  EXPECT_FALSE(detect_master_list(fig1, AgentClass::C).has_value());
  // b2 and b3 share a list but b1 ranks c2 over c3 like them and c1 over c3.
  EXPECT_FALSE(detect_master_list(fig1, AgentClass::B).has_value());
}

TEST(MasterList, TieBreakIsLexicographic) {
  const Instance inst = InstanceBuilder{}
                            .add(AgentClass::A, "a1", {"b3"})
                            .add(AgentClass::A, "a2", {"b2"})
                            .add(AgentClass::B, "b3")
                            .add(AgentClass::B, "b2")
                            .add(AgentClass::B, "b1")
                            .build();
  const auto ml = detect_master_list(inst, AgentClass::A);
  ASSERT_TRUE(ml.has_value());
  std::vector<std::string> order;
  for (AgentId y : ml->order) order.push_back(inst.name(y));
  EXPECT_EQ(order, (std::vector<std::string>{"b1", "b2", "b3"}));
}

TEST(Rotation, TransferRoundTripPreservesVotes) {
  const Instance inst = testing_helpers::random_instance(3, true, 11);
  const auto all = enumerate_matchings(inst);
  for (AgentClass first : kClasses) {
    const Instance rot = rotate_classes(inst, first);
    EXPECT_EQ(rot.class_size(AgentClass::A), inst.class_size(first));
    const AgentClass back = static_cast<AgentClass>((3 - index_of(first)) % 3);
    for (std::size_t k = 0; k + 1 < all.size(); k += 17) {
      const Matching r0 = transfer_matching(inst, rot, all[k], first);
      const Matching r1 = transfer_matching(inst, rot, all[k + 1], first);
      EXPECT_EQ(delta(rot, r1, r0), delta(inst, all[k + 1], all[k]));
      EXPECT_EQ(transfer_matching(rot, inst, r0, back), all[k]);
    }
  }
}
