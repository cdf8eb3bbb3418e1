#include "common.hpp"
#include "lch/cli.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tf = testing_fixtures;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result lch_run(std::vector<std::string> args) {
  args.insert(args.begin(), "lch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = lch::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("lch_test_" + name);
  std::ofstream(p) << body;
  return p.string();
}

// d a = b, d b = 1: d^2 a = 1
const char* kBadSquare = R"({"components":["K"],"generators":[
  {"name":"a","degree":0,"action":"2","from":"K","to":"K"},
  {"name":"b","degree":1,"action":"1","from":"K","to":"K"}],
  "differential":{"a":[["b"]],"b":[[]]}})";

// two b-chords forcing opposite values on c12
const char* kContradiction = R"({"components":["L","D1","D2"],"generators":[
  {"name":"a1","degree":0,"action":"1","from":"D1","to":"L"},
  {"name":"a2","degree":0,"action":"1","from":"D2","to":"L"},
  {"name":"c12","degree":0,"action":"1","from":"D1","to":"D2"},
  {"name":"b12","degree":1,"action":"5","from":"D1","to":"L"},
  {"name":"b12p","degree":1,"action":"6","from":"D1","to":"L"}],
  "differential":{"b12":[["a2","c12"]],"b12p":[["a2","c12"],["a1"]]}})";
const char* kContradictionStructure = R"({"test":"L","discs":["D1","D2"],"chords":{
  "a1":{"type":"a","i":1},"a2":{"type":"a","i":2},"c12":{"type":"c","i":1,"j":2},
  "b12":{"type":"b","i":1,"j":2},"b12p":{"type":"b","i":1,"j":2}}})";

}  // namespace

TEST(Cli, CheckPasses) {
  auto r = lch_run({"check", tf::path("unknot.json"), "--from-diagram"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("d^2 = 0: PASS"), std::string::npos) << r.out;
  auto auto_detect = lch_run({"check", tf::path("trefoil.json")});
  EXPECT_EQ(auto_detect.code, 0) << auto_detect.err;
}

TEST(Cli, CheckFailsWithExitOne) {
  auto r = lch_run({"check", temp_file("bad_square.json", kBadSquare)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("d^2 = 0: FAIL"), std::string::npos) << r.out;
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(lch_run({"check", tf::path("malformed.json")}).code, 2);
  EXPECT_EQ(lch_run({"check", tf::path("nope.json")}).code, 2);
  EXPECT_EQ(lch_run({"frobnicate"}).code, 2);
  EXPECT_EQ(lch_run({"--field", "q", "check", tf::path("unknot.json")}).code, 2);
  auto r = lch_run({"check", tf::path("malformed.json")});
  EXPECT_NE(r.err.find("Malformed"), std::string::npos) << r.err;
}

TEST(Cli, AugmentationsAndEmptyCsv) {
  auto t = lch_run({"augs", tf::path("trefoil.json")});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("count: 5"), std::string::npos) << t.out;
  auto csv = lch_run({"--format", "csv", "augs", tf::path("obstructed.json")});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 1) << csv.out;  // header only
  auto json = lch_run({"--format", "json", "augs", tf::path("obstructed.json")});
  EXPECT_EQ(lch::io::parse_text(json.out), lch::io::json::array());
}

TEST(Cli, InconsistentInductionExitsOne) {
  auto r = lch_run({"induce", temp_file("contra.json", kContradiction), "--structure",
                    temp_file("contra.structure.json", kContradictionStructure)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("Inconsistent"), std::string::npos);
  auto ok = lch_run({"induce", tf::path("induction/k3_chain.json"), "--structure", tf::path("induction/k3_chain.structure.json")});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST(Cli, SurgeryFormulaAndChop) {
  auto r = lch_run({"--format", "csv", "surgery-formula", "--fixture", tf::path("formula_a.json"), "--fixture",
                    tf::path("formula_c.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  auto t = lch::parse_csv_table(r.out);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].back(), "PASS");
  auto chop = lch_run({"twisted", "chop", "--fixture", tf::path("cone_e.json")});
  EXPECT_EQ(chop.code, 0);
  EXPECT_NE(chop.out.find("PASS"), std::string::npos);
  auto not_acyclic = lch_run({"twisted", "chop", "--fixture", tf::path("formula_a.json")});
  EXPECT_EQ(not_acyclic.code, 0);
  EXPECT_NE(not_acyclic.out.find("NotAcyclic"), std::string::npos);
  auto mc = lch_run({"twisted", "mc", "--fixture", tf::path("formula_b.json")});
  EXPECT_EQ(mc.code, 0);
  EXPECT_NE(mc.out.find("maurer-cartan: PASS"), std::string::npos);
}

TEST(Cli, LinhomAllPairs) {
  auto r = lch_run({"--format", "csv", "linhom", tf::path("hopf.json"), "--comp0", "L1", "--comp1", "L2", "--all-pairs"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_GE(lch::parse_csv_table(r.out).rows.size(), 1u);
}

TEST(Cli, OutputFileAndDeterminism) {
  auto path = std::filesystem::temp_directory_path() / "lch_test_out.json";
  std::filesystem::remove(path);
  auto a = lch_run({"--format", "json", "--seed", "7", "-o", path.string(), "check", tf::path("trefoil.json")});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(a.out.empty());
  std::ifstream in(path);
  std::string first((std::istreambuf_iterator<char>(in)), {});
  auto b = lch_run({"--format", "json", "--seed", "7", "check", tf::path("trefoil.json")});
  EXPECT_EQ(first, b.out);
  EXPECT_EQ(lch_run({"dga", tf::path("trefoil.json"), "--format", "json"}).out,
            lch_run({"dga", tf::path("trefoil.json"), "--format", "json"}).out);
}

TEST(Cli, BudgetFlagOverridesEnvironment) {
  ::setenv("LCH_BUDGET_AUGS", "2", 1);
  EXPECT_EQ(lch_run({"augs", tf::path("trefoil.json")}).code, 2);
  EXPECT_EQ(lch_run({"--budget-augs", "24", "augs", tf::path("trefoil.json")}).code, 0);
  ::unsetenv("LCH_BUDGET_AUGS");
  ::setenv("LCH_BUDGET_DISCS", "3", 1);
  EXPECT_EQ(lch_run({"check", tf::path("trefoil.json")}).code, 2);
  ::unsetenv("LCH_BUDGET_DISCS");
  EXPECT_EQ(lch_run({"augs", tf::path("trefoil.json")}).code, 0);
}

// The installed binary, not just the in-process entry point.
TEST(Cli, BinaryExitCodes) {
  auto status = [](const std::string& args) {
    int s = std::system((std::string(LCH_BINARY) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("check " + tf::path("unknot.json")), 0);
  EXPECT_EQ(status("check " + temp_file("bad_square_bin.json", kBadSquare)), 1);
  EXPECT_EQ(status("check " + tf::path("malformed.json")), 2);

  std::array<char, 256> buf{};
  std::string out;
  FILE* pipe = ::popen((std::string(LCH_BINARY) + " check " + tf::path("unknot.json")).c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  ::pclose(pipe);
  EXPECT_NE(out.find("d^2 = 0: PASS"), std::string::npos);
}
