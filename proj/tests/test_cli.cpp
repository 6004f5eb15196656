#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "threedpm/cli.hpp"

using namespace threedpm;
namespace fs = std::filesystem;

namespace {

const std::string kData = THREEDPM_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("threedpm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST(Cli, Fig1IsNotPopularAndPrintsWitness) {
  const Outcome r = run({"verify", data("fig1.inst"), data("fig1_M.match"), "--property=popular", "--witness"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("popular: fails"), std::string::npos);
  const auto pos = r.out.find("3dpm-matching v1");
  ASSERT_NE(pos, std::string::npos);
  const Instance inst = fixture_instance("fig1");
  const Matching w = parse_matching(inst, r.out.substr(pos));
  EXPECT_GE(delta(inst, w, fixture_matching("fig1_M")), 1);
}

TEST(Cli, Fig2IsStronglyPopular) {
  EXPECT_EQ(run({"verify", data("fig2.inst"), data("fig2_M.match"), "--property=strong-popular"}).code, 0);
}

TEST(Cli, WeakStabilityWitnessIsABlockingTriple) {
  const Outcome r = run({"verify", data("fig2.inst"), data("fig2_M.match"), "--property=weak-stable", "--witness"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("blocking triple: a1 b2 c3"), std::string::npos);
}

TEST_F(CliFiles, GarbledMatchingIsAnInputError) {
  const std::string bad = write("garbled.match", "3dpm-matching v1\na1 b1\n");
  const Outcome r = run({"verify", data("fig1.inst"), bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"verify", data("fig1.inst"), (dir_ / "missing.match").string()}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", data("fig1.inst")}).code, 2);
  EXPECT_EQ(run({"verify", data("fig1.inst"), data("fig1_M.match"), "--property=bogus"}).code, 2);
  EXPECT_EQ(run({"verify", data("fig1.inst"), data("fig1_M.match"), "--voters=ab", "--property=weak-stable"}).code, 2);
}

TEST(Cli, JsonOutputParses) {
  const Outcome r = run({"verify", data("fig1.inst"), data("fig1_M.match"), "--property=popular", "--json"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["property"], "popular");
  EXPECT_EQ(j["holds"], false);
  EXPECT_EQ(j["witness"]["kind"], "matching");
  EXPECT_GE(j["delta"].get<int>(), 1);

  const Outcome ok = run({"verify", data("fig2.inst"), data("fig2_M.match"), "--property=strong-popular", "--json"});
  const auto k = nlohmann::json::parse(ok.out);
  EXPECT_EQ(k["holds"], true);
  EXPECT_TRUE(k["witness"].is_null());
  EXPECT_TRUE(k["delta"].is_null());
}

TEST(Cli, PolyStrategyOnIneligibleInstanceFails) {
  const Outcome r = run({"verify", data("fig1.inst"), data("fig1_M.match"), "--property=strong-popular", "--strategy=poly"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, AutoFallbackLogsNotice) {
  const Outcome r = run({"verify", data("fig2.inst"), data("fig2_M.match"), "--property=strong-popular"});
  EXPECT_NE(r.err.find("exhaustive"), std::string::npos);
}

TEST(Cli, SolveThreeMasterListsHasNoPopularMatching) {
  const Outcome r = run({"solve", data("threeML_n3.inst"), "--property=popular"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "none\n");
}

TEST(Cli, SolveFindsStronglyPopularOnFig2) {
  const Outcome r = run({"solve", data("fig2.inst"), "--property=strong-popular", "--strategy=brute"});
  EXPECT_EQ(r.code, 0);
  const Instance inst = fixture_instance("fig2");
  EXPECT_EQ(parse_matching(inst, r.out), fixture_matching("fig2_M"));
}

TEST_F(CliFiles, ReduceWritesInstanceAndMatching) {
  const std::string base = (dir_ / "out").string();
  EXPECT_EQ(run({"reduce", "--from=3dm-spm", data("j.3dm"), "-o", base}).code, 0);
  ASSERT_TRUE(fs::exists(base + ".inst"));
  ASSERT_TRUE(fs::exists(base + ".match"));
  const Instance inst = parse_instance(slurp(base + ".inst"));
  EXPECT_NO_THROW(parse_matching(inst, slurp(base + ".match")));

  const std::string sat_base = (dir_ / "sat").string();
  EXPECT_EQ(run({"reduce", "--from=sat", data("smallest.cnf"), "-o", sat_base}).code, 0);
  EXPECT_TRUE(fs::exists(sat_base + ".inst"));
  EXPECT_FALSE(fs::exists(sat_base + ".match"));
}

TEST(Cli, ReducePmvRejectsEvenSize) {
  EXPECT_EQ(run({"reduce", "--from=3dm-pmv", data("j.3dm")}).code, parse_3dm(slurp(data("j.3dm"))).n() % 2 ? 0 : 2);
}

TEST(Cli, WitnessTwoMasterLists) {
  const Outcome r = run({"witness", data("twoML_n5.inst"), data("perfect.match"), "--method=2ml"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Instance inst = parse_instance(slurp(data("twoML_n5.inst")));
  const Matching m = parse_matching(inst, slurp(data("perfect.match")));
  EXPECT_GE(delta(inst, parse_matching(inst, r.out), m), 1);
}

TEST_F(CliFiles, WitnessTwoMasterListsNeedsFiveAgents) {
  const std::string inst = write("n4.inst", run({"generate", "--kind=k-masterlist", "--n=4", "--k=2", "--seed=3"}).out);
  const std::string match = write("n4.match", "3dpm-matching v1\na1 b1 c1\n");
  EXPECT_EQ(run({"witness", inst, match, "--method=2ml"}).code, 2);
}

TEST_F(CliFiles, WitnessThreeMasterLists) {
  const std::string diag = write("diag.match", "3dpm-matching v1\na1 b1 c1\na2 b2 c2\na3 b3 c3\n");
  const Outcome r = run({"witness", data("threeML_n3.inst"), diag, "--method=3ml"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Instance inst = parse_instance(slurp(data("threeML_n3.inst")));
  EXPECT_GE(delta(inst, parse_matching(inst, r.out), parse_matching(inst, slurp(diag))), 1);
}

TEST_F(CliFiles, ObservationMatchingIsPopular) {
  const std::string path = write("trunc.inst",
                                 "3dpm-instance v1\nclass A\na1: b2 b1 b3\na2: b2 b1 b3\n"
                                 "class B\nb1: c2 c3 c1\nb2: c2 c3 c1\nb3: c2 c3 c1\n"
                                 "class C\nc1: a2 a1\nc2: a2 a1\nc3: a2 a1\n");
  const Outcome r = run({"witness", path, "--method=obs1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Instance inst = parse_instance(slurp(path));
  EXPECT_TRUE(verify(inst, parse_matching(inst, r.out), Property::Popular).holds);
  EXPECT_EQ(run({"witness", data("threeML_n3.inst"), "--method=obs1"}).code, 2);
}

TEST(Cli, MaxNodesAbortsWithPartialReport) {
  const Outcome r = run({"solve", data("threeML_n3.inst"), "--property=popular", "--max-nodes=5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("explored"), std::string::npos);
}

TEST(Cli, ThreadsFromEnvironment) {
  ::setenv("THREEDPM_THREADS", "4", 1);
  const Outcome four = run({"solve", data("threeML_n3.inst"), "--property=popular"});
  ::setenv("THREEDPM_THREADS", "zero", 1);
  const Outcome bad = run({"solve", data("threeML_n3.inst"), "--property=popular"});
  ::unsetenv("THREEDPM_THREADS");
  EXPECT_EQ(four.code, 1);
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(run({"solve", data("threeML_n3.inst"), "--property=popular", "--threads=2"}).code, 1);
  EXPECT_EQ(run({"solve", data("threeML_n3.inst"), "--threads=0"}).code, 2);
}

TEST(Cli, GenerateIsDeterministic) {
  const Outcome a = run({"generate", "--kind=k-masterlist", "--n=3", "--k=3", "--seed=1"});
  const Outcome b = run({"generate", "--kind=k-masterlist", "--n=3", "--k=3", "--seed=1"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, slurp(data("threeML_n3.inst")));
  EXPECT_EQ(run({"generate", "--k=4"}).code, 2);
}

TEST(Cli, OracleSubcommands) {
  const Outcome sat = run({"oracle", "--problem=sat", data("smallest.cnf")});
  EXPECT_EQ(sat.code, 0);
  EXPECT_NE(sat.out.find("x1="), std::string::npos);
  const Outcome j = run({"oracle", "--problem=3dm", data("j.3dm")});
  EXPECT_EQ(j.code, oracle_3dm(parse_3dm(slurp(data("j.3dm")))) ? 0 : 1);
  const Outcome os = run({"oracle", "--problem=osties", data("ties.ost")});
  EXPECT_EQ(os.code, oracle_osties(parse_osties(slurp(data("ties.ost")))) ? 0 : 1);
}

TEST(Cli, FixturePrintsDocument) {
  const Outcome r = run({"fixture", "fig1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, fixture_text("fig1"));
  EXPECT_EQ(run({"fixture", "bogus"}).code, 2);
}
