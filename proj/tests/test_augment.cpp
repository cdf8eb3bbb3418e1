#include "common.hpp"
#include "oracles/naive.hpp"

#include <gtest/gtest.h>

using namespace lch;
namespace tf = testing_fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Malformed;
}

std::map<std::string, int> as_map(const FreeDGA& dga, const Augmentation& eps) {
  std::map<std::string, int> out;
  for (GenId g : dga.ids()) out[dga.name(g)] = eps(g) ? 1 : 0;
  return out;
}

std::size_t even_count(const FreeDGA& dga) {
  std::size_t n = 0;
  for (const auto& g : dga.generators()) n += g.degree == 0;
  return n;
}

// L, D1, D2 with one c-chord whose two b-chords disagree about it.
FreeDGA contradictory() {
  return make_dga({{"a1", 0, Rational(1), "D1", "L"},
                   {"a2", 0, Rational(1), "D2", "L"},
                   {"c12", 0, Rational(1), "D1", "D2"},
                   {"b12", 1, Rational(5), "D1", "L"},
                   {"b12p", 1, Rational(6), "D1", "L"}},
                  {{"b12", {{"a2", "c12"}}}, {"b12p", {{"a2", "c12"}, {"a1"}}}}, {"L", "D1", "D2"});
}

TriangleStructure two_discs() {
  TriangleStructure s;
  s.test = "L";
  s.discs = {"D1", "D2"};
  s.chords = {{"a1", {ChordType::A, 1, 0}},
              {"a2", {ChordType::A, 2, 0}},
              {"c12", {ChordType::C, 1, 2}},
              {"b12", {ChordType::B, 1, 2}},
              {"b12p", {ChordType::B, 1, 2}}};
  return s;
}

}  // namespace

TEST(Augmentations, CountsMatchExhaustiveSearch) {
  std::vector<std::string> files = tf::diagrams();
  for (const auto& p : tf::dgas()) files.push_back(p);
  for (const auto& p : files) {
    auto dga = tf::load(p);
    if (even_count(dga) > 20) continue;
    auto naive = oracle::naive_from_json(io::to_json(dga));
    auto brute = oracle::brute_force_augmentations(naive);
    std::set<std::map<std::string, int>> expect(brute.begin(), brute.end()), got;
    for (const auto& eps : enumerate_augmentations(dga)) {
      EXPECT_TRUE(is_augmentation(dga, eps)) << p;
      got.insert(as_map(dga, eps));
    }
    EXPECT_EQ(got, expect) << p;
  }
}

TEST(Augmentations, KnownCounts) {
  EXPECT_EQ(enumerate_augmentations(tf::load(tf::path("unknot.json"))).size(), 1u);
  EXPECT_EQ(enumerate_augmentations(tf::load(tf::path("obstructed.json"))).size(), 0u);
  EXPECT_EQ(enumerate_augmentations(tf::load(tf::path("trefoil.json"))).size(), 5u);
  EXPECT_EQ(oracle::brute_force_augmentations(oracle::classical_trefoil()).size(), 5u);
}

TEST(Augmentations, CapIsEnforced) {
  auto dga = tf::load(tf::path("trefoil.json"));
  EXPECT_EQ(kind_of([&] { enumerate_augmentations(dga, {2}); }), ErrorKind::BudgetExceeded);
}

TEST(Augmentations, RejectsOddValuesAndBadLength) {
  auto dga = tf::load(tf::path("obstructed.json"));
  Augmentation eps(dga.size());
  eps.set(dga.id("b"), true);
  auto check = is_augmentation(dga, eps);
  EXPECT_FALSE(check);
  EXPECT_EQ(check.witness, dga.id("b"));
  EXPECT_EQ(kind_of([&] { is_augmentation(dga, Augmentation(1)); }), ErrorKind::UnknownGenerator);
}

// The filtered solver against exhaustive search with a = 1, b = 0, reversing = 0 and
// the declared pure values pinned.
TEST(Induction, AgreesWithRestrictedExhaustiveSearch) {
  auto files = tf::structured();
  ASSERT_GE(files.size(), 5u);
  for (const auto& p : files) {
    auto dga = tf::load(p);
    auto s = io::structure_from_json(io::read_json_file(tf::structure_of(p)));
    auto result = filtered_induction(dga, s);
    EXPECT_TRUE(is_augmentation(dga, result.eps)) << p;

    auto naive = oracle::naive_from_json(io::to_json(dga));
    std::set<std::map<std::string, int>> allowed;
    for (const auto& v : oracle::brute_force_augmentations(naive)) {
      bool ok = true;
      for (GenId g : dga.ids()) {
        const auto& name = dga.name(g);
        int want = -1;
        if (auto it = s.chords.find(name); it != s.chords.end()) {
          if (it->second.type == ChordType::A) want = 1;
          else if (it->second.type != ChordType::C) want = 0;
        } else {
          want = s.pure_values.count(name) ? s.pure_values.at(name) : 0;
        }
        if (want >= 0 && v.at(name) != want) ok = false;
      }
      if (ok) allowed.insert(v);
    }
    EXPECT_TRUE(allowed.count(as_map(dga, result.eps))) << p;
    // every c-chord constrained by a b-chord is forced
    for (GenId c : result.solve_order) {
      std::set<int> seen;
      for (const auto& v : allowed) seen.insert(v.at(dga.name(c)));
      bool constrained = false;
      for (const auto& [name, r] : s.chords)
        if (r.type == ChordType::B)
          for (const auto& w : dga.differential(dga.id(name)))
            if (w.size() == 2 && w[1] == c) constrained = true;
      if (constrained) EXPECT_EQ(seen.size(), 1u) << p << " " << dga.name(c);
    }
  }
}

TEST(Induction, ChainSolvesFromTheTop) {
  const auto p = tf::path("induction/k3_chain.json");
  auto dga = tf::load(p);
  auto r = filtered_induction(dga, io::structure_from_json(io::read_json_file(tf::structure_of(p))));
  std::vector<std::string> order;
  for (GenId c : r.solve_order) order.push_back(dga.name(c));
  EXPECT_EQ(order, (std::vector<std::string>{"c23", "c12", "c13"}));
  for (const auto& n : order) EXPECT_TRUE(r.eps(dga.id(n))) << n;
}

TEST(Induction, Inconsistent) {
  EXPECT_EQ(kind_of([] { filtered_induction(contradictory(), two_discs()); }), ErrorKind::Inconsistent);
}

TEST(Induction, ShapeViolations) {
  auto dga = contradictory();
  auto s = two_discs();
  s.chords.erase("b12p");
  EXPECT_EQ(kind_of([&] { filtered_induction(dga, s); }), ErrorKind::ShapeViolation);  // unclassified
  s = two_discs();
  s.chords["a2"] = {ChordType::A, 1, 0};
  EXPECT_EQ(kind_of([&] { filtered_induction(dga, s); }), ErrorKind::ShapeViolation);  // wrong disc
  auto lonely = make_dga({{"a1", 0, Rational(1), "D1", "L"}, {"a2", 0, Rational(1), "D2", "L"},
                          {"c12", 0, Rational(1), "D1", "D2"}, {"b12", 1, Rational(5), "D1", "L"}},
                         {{"b12", {{"a1"}}}}, {"L", "D1", "D2"});
  s = two_discs();
  s.chords.erase("b12p");
  EXPECT_EQ(kind_of([&] { filtered_induction(lonely, s); }), ErrorKind::ShapeViolation);  // no a_j c word
}

TEST(Induction, EqualActionsRejected) {
  auto dga = make_dga({{"a1", 0, Rational(1), "D1", "L"}, {"a2", 0, Rational(1), "D2", "L"}, {"a3", 0, Rational(1), "D3", "L"},
                       {"c12", 0, Rational(2), "D1", "D2"}, {"c13", 0, Rational(2), "D1", "D3"}},
                      {}, {"L", "D1", "D2", "D3"});
  TriangleStructure s;
  s.test = "L";
  s.discs = {"D1", "D2", "D3"};
  s.chords = {{"a1", {ChordType::A, 1, 0}}, {"a2", {ChordType::A, 2, 0}}, {"a3", {ChordType::A, 3, 0}},
              {"c12", {ChordType::C, 1, 2}}, {"c13", {ChordType::C, 1, 3}}};
  EXPECT_EQ(kind_of([&] { filtered_induction(dga, s); }), ErrorKind::DistinctActionsRequired);
}

TEST(SurgeryQuotient, KillsTheSurgeredWord) {
  auto dga = tf::load(tf::path("quotient_example.json"));
  auto q = surgery_quotient(dga, {"a"}, augmentation_from_map(dga, {{"a", 1}}));
  EXPECT_EQ(q.dga.size(), 2u);
  EXPECT_TRUE(q.dga.differential(q.dga.id("b")).is_zero());
  EXPECT_FALSE(q.projection[dga.id("a").value]);
}

TEST(SurgeryQuotient, Errors) {
  auto dga = tf::load(tf::path("quotient_example.json"));
  EXPECT_EQ(kind_of([&] { surgery_quotient(dga, {"a"}, Augmentation(dga.size())); }), ErrorKind::NotUnitValued);
  EXPECT_EQ(kind_of([&] { surgery_quotient(dga, {"b"}, augmentation_from_map(dga, {{"a", 1}})); }),
            ErrorKind::DegreeObstruction);
  auto open = make_dga({{"a", 0, Rational(2), "K", "J"}, {"x", 1, Rational(1), "K", "J"}}, {{"a", {{"x"}}}}, {"J", "K"});
  EXPECT_EQ(kind_of([&] { surgery_quotient(open, {"a"}, augmentation_from_map(open, {{"a", 1}})); }),
            ErrorKind::QuotientNotClosed);
}

// eps = eps_bar . pi on every surgery fixture.
TEST(SurgeryQuotient, PushforwardFactorsThroughProjection) {
  auto files = tf::formulas();
  ASSERT_FALSE(files.empty());
  for (const auto& p : files) {
    auto f = io::parse_surgery_fixture(p);
    auto dga = diagram_to_dga(f.diagram);
    auto eps = augmentation_from_map(dga, f.augmentation);
    auto q = surgery_quotient(dga, f.surgery, eps);
    EXPECT_TRUE(check_d_squared(q.dga).pass()) << p;
    EXPECT_TRUE(is_augmentation(q.dga, q.eps)) << p;
    for (GenId g : dga.ids()) {
      auto img = q.projection[g.value];
      EXPECT_EQ(eps(g), img ? q.eps(*img) : true) << p << " " << dga.name(g);
      EXPECT_EQ(q.project(dga.differential(g)), img ? q.dga.differential(*img) : Element{}) << p;
    }
  }
}
