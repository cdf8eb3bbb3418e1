#include "common.hpp"
#include "oracles/discs.hpp"
#include "oracles/naive.hpp"

#include <gtest/gtest.h>

using namespace lch;
namespace tf = testing_fixtures;

namespace {

ErrorKind parse_error(const std::string& text) {
  try {
    io::diagram_from_json(io::parse_text(text));
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorKind::Malformed;
}

std::multiset<oracle::Disc> as_oracle(const LinkDiagram& d, const std::vector<AdmissibleDisc>& discs) {
  std::multiset<oracle::Disc> out;
  for (const auto& a : discs) {
    oracle::Disc o{{d.crossing(a.positive_crossing).id, a.positive_quadrant}, {}};
    for (std::size_t k = 0; k < a.negative_corners.size(); ++k)
      o.negative.push_back({d.crossing(a.negative_corners[k]).id, a.negative_quadrants[k]});
    out.insert(o);
  }
  return out;
}

}  // namespace

TEST(ParseDiagram, Unknot) {
  auto d = io::parse_diagram(tf::path("unknot.json"));
  EXPECT_EQ(d.crossing_count(), 1u);
  EXPECT_EQ(d.faces().size(), 3u);
  auto dga = diagram_to_dga(d);
  EXPECT_EQ(dga.generator(dga.id("a")).degree, 1);
  EXPECT_TRUE(dga.differential(dga.id("a")).is_zero());  // the two teardrops cancel
  EXPECT_EQ(enumerate_admissible_discs(d).size(), 2u);
}

TEST(ParseDiagram, Errors) {
  EXPECT_EQ(parse_error(R"({"crossings":[],"edges":[]})"), ErrorKind::BadValence);
  const std::string edges = R"("edges":[{"from":["a",0],"to":["a",1],"component":"K"},{"from":["a",3],"to":["a",2],"component":"K"}])";
  EXPECT_EQ(parse_error(R"({"crossings":[{"id":"a","height":"0","quadrants":["+","-","+","-"]}],)" + edges + "}"),
            ErrorKind::NonpositiveAction);
  EXPECT_EQ(parse_error(R"({"crossings":[{"id":"b","height":"1","quadrants":["+","-","+","-"]}],)" + edges + "}"),
            ErrorKind::UnknownCrossing);
  EXPECT_EQ(parse_error(R"({"crossings":[{"id":"a","height":"1","quadrants":["+","-","+","-"]}],"edges":[{"from":["a",0],"to":["a",1],"component":"K"}]})"),
            ErrorKind::BadValence);
  // two loops through one crossing: an odd number of crossings between closed curves
  EXPECT_EQ(parse_error(R"({"crossings":[{"id":"a","height":"1","quadrants":["+","-","+","-"]}],"edges":[{"from":["a",0],"to":["a",2],"component":"K"},{"from":["a",3],"to":["a",1],"component":"J"}]})"),
            ErrorKind::NonPlanar);
  EXPECT_EQ(parse_error(R"({"crossings":[{"id":"a","height":"1","quadrants":["+","-","+","-"]}],)" + edges +
                        R"(,"contractible":["zz"]})"),
            ErrorKind::UnknownCrossing);
}

TEST(Discs, AgreeWithFaceVectorOracle) {
  for (const auto& p : tf::diagrams()) {
    auto j = io::read_json_file(p);
    auto d = io::diagram_from_json(j);
    auto brute = oracle::brute_force_discs(j);
    EXPECT_EQ(as_oracle(d, enumerate_admissible_discs(d)), brute.discs) << p;
  }
}

TEST(Discs, EnergyFiltration) {
  for (const auto& p : tf::diagrams()) {
    auto d = io::parse_diagram(p);
    for (const auto& disc : enumerate_admissible_discs(d)) {
      Rational neg(0);
      for (auto x : disc.negative_corners) neg += d.height(x);
      EXPECT_LT(neg, d.height(disc.positive_crossing)) << p;
    }
  }
}

TEST(Discs, BudgetExhaustion) {
  auto d = io::parse_diagram(tf::path("trefoil.json"));
  EXPECT_THROW(enumerate_admissible_discs(d, {0}), Error);
  EXPECT_THROW(enumerate_admissible_discs(d, {3}), Error);
  try {
    enumerate_admissible_discs(d, {3});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SearchBudgetExceeded);
  }
}

TEST(DiagramToDga, DSquaredOnCorpus) {
  for (const auto& p : tf::diagrams()) {
    auto dga = tf::load(p);
    EXPECT_TRUE(check_d_squared(dga).pass()) << p;
    EXPECT_TRUE(oracle::naive_d_squared_failures(oracle::naive_from_json(io::to_json(dga))).empty()) << p;
  }
}

TEST(DiagramToDga, TrefoilMatchesClassicalDifferential) {
  auto dga = tf::load(tf::path("trefoil.json"));
  auto classical = oracle::classical_trefoil();
  auto as_set = [](const std::vector<oracle::NWord>& ws) { return std::multiset<oracle::NWord>(ws.begin(), ws.end()); };
  std::multiset<std::multiset<oracle::NWord>> ours, theirs;
  for (std::string b : {"b1", "b2"}) {
    std::vector<oracle::NWord> ws;
    for (const auto& w : dga.differential(dga.id(b))) {
      oracle::NWord nw;
      for (GenId g : w) nw.push_back(dga.name(g));
      ws.push_back(nw);
    }
    ours.insert(as_set(ws));
    theirs.insert(as_set(classical.d.at(b)));
  }
  EXPECT_EQ(ours, theirs);
  for (std::string a : {"a1", "a2", "a3"}) EXPECT_EQ(dga.generator(dga.id(a)).degree, 0);
  for (std::string b : {"b1", "b2"}) EXPECT_EQ(dga.generator(dga.id(b)).degree, 1);
}

TEST(ResolveCrossing, UnknotBecomesDegenerate) {
  auto j = io::read_json_file(tf::path("unknot.json"));
  j["contractible"] = {"a"};
  auto r = resolve_crossing(io::diagram_from_json(j), "a");
  EXPECT_EQ(r.crossing_count(), 0u);
  EXPECT_TRUE(r.degenerate());
}

TEST(ResolveCrossing, ClaspJoinsComponents) {
  auto d = io::parse_diagram(tf::path("hopf.json"));
  EXPECT_EQ(d.components().size(), 2u);
  auto r = resolve_crossing(d, "a");
  EXPECT_EQ(r.components().size(), 1u);
  EXPECT_EQ(r.crossing_count(), d.crossing_count() - 1);
  for (std::size_t x = 0; x < r.crossing_count(); ++x) {
    auto orig = d.find_crossing(r.crossing(x).id);
    ASSERT_TRUE(orig);
    EXPECT_EQ(r.crossing(x).height, d.crossing(*orig).height);
    EXPECT_EQ(r.crossing(x).positive, d.crossing(*orig).positive);
  }
  EXPECT_TRUE(check_d_squared(diagram_to_dga(r)).pass());
}

TEST(ResolveCrossing, SurgeryDiagramsStayRealisable) {
  for (const auto& p : tf::diagrams()) {
    auto d = io::parse_diagram(p);
    for (std::size_t x = 0; x < d.crossing_count(); ++x) {
      if (!d.contractible(x)) continue;
      auto r = resolve_crossing(d, d.crossing(x).id);
      EXPECT_EQ(r.crossing_count() + 1, d.crossing_count());
      const auto dc = d.components().size(), rc = r.components().size();
      EXPECT_TRUE(rc + 1 == dc || rc == dc + 1) << p;
      EXPECT_TRUE(check_d_squared(diagram_to_dga(r)).pass()) << p;
    }
  }
}

TEST(ResolveCrossing, Errors) {
  auto d = io::parse_diagram(tf::path("hopf.json"));
  try {
    resolve_crossing(d, "nope");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownCrossing);
  }
  try {
    resolve_crossing(d, "b");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotContractible);
  }
}
