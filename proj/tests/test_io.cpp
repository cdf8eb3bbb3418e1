#include "common.hpp"
#include "lch/report.hpp"

#include <gtest/gtest.h>

#include <random>

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

}  // namespace

TEST(Rationals, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  for (const char* bad : {"", "1/0", "1/-2", "x", "1/", "99999999999999999999"})
    EXPECT_EQ(kind_of([&] { parse_rational(bad); }), ErrorKind::Malformed) << bad;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Rational r(static_cast<std::int64_t>(rng() % 2001) - 1000, static_cast<std::int64_t>(rng() % 999) + 1);
    EXPECT_EQ(parse_rational(format_rational(r)), r);
  }
}

TEST(RoundTrip, Dga) {
  std::vector<std::string> files = tf::diagrams();
  for (const auto& p : tf::dgas()) files.push_back(p);
  for (const auto& p : files) {
    auto dga = tf::load(p);
    auto j = io::to_json(dga);
    EXPECT_EQ(io::dga_from_json(j), dga) << p;
    EXPECT_EQ(io::to_json(io::dga_from_json(io::parse_text(j.dump()))), j) << p;
  }
}

TEST(RoundTrip, Diagram) {
  for (const auto& p : tf::diagrams()) {
    auto data = io::diagram_data_from_json(io::read_json_file(p));
    EXPECT_EQ(io::diagram_data_from_json(io::to_json(data)), data) << p;
  }
}

TEST(RoundTrip, Augmentation) {
  auto dga = tf::load(tf::path("trefoil.json"));
  for (const auto& eps : enumerate_augmentations(dga)) EXPECT_EQ(io::augmentation_from_json(dga, io::to_json(dga, eps)), eps);
  EXPECT_EQ(kind_of([&] { io::augmentation_from_json(dga, io::parse_text(R"({"values":{"a1":2}})")); }), ErrorKind::Malformed);
  EXPECT_EQ(kind_of([&] { io::augmentation_from_json(dga, io::parse_text(R"({"values":{"zz":1}})")); }),
            ErrorKind::UnknownGenerator);
}

TEST(RoundTrip, Structure) {
  for (const auto& p : tf::structured()) {
    auto s = io::structure_from_json(io::read_json_file(tf::structure_of(p)));
    EXPECT_EQ(io::structure_from_json(io::to_json(s)), s) << p;
  }
}

TEST(RoundTrip, CsvTable) {
  Table t{{"name", "note"}, {}};
  t.add({"plain", "with, comma"});
  t.add({"quote\"d", "line\nbreak"});
  t.add({"", "x"});
  EXPECT_EQ(parse_csv_table(emit_table(t, Format::Csv)), t);
  Table empty{{"a", "b"}, {}};
  EXPECT_EQ(emit_table(empty, Format::Csv), "a,b\n");
  EXPECT_EQ(parse_csv_table("a,b\n"), empty);
}

TEST(Report, JsonAndText) {
  Table t{{"k", "v"}, {}};
  t.add({"x", 3});
  auto j = io::parse_text(emit_table(t, Format::Json));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["v"], 3);
  EXPECT_EQ(j[0]["k"], "x");
  EXPECT_NE(emit_table(t, Format::Text).find("x  3"), std::string::npos);
  EXPECT_EQ(kind_of([] { parse_format("yaml"); }), ErrorKind::Malformed);
  EXPECT_EQ(kind_of([&] { t.add({"only one"}); }), ErrorKind::Malformed);
}

TEST(Parse, MalformedInputs) {
  EXPECT_EQ(kind_of([] { io::read_json_file(tf::path("malformed.json")); }), ErrorKind::Malformed);
  EXPECT_EQ(kind_of([] { io::read_json_file(tf::path("does_not_exist.json")); }), ErrorKind::Malformed);
  EXPECT_EQ(kind_of([] { io::dga_from_json(io::parse_text(R"({"components":["K"],"generators":[],"bogus":1})")); }),
            ErrorKind::Malformed);
  EXPECT_EQ(kind_of([] {
              io::dga_from_json(io::parse_text(
                  R"({"components":["K"],"generators":[{"name":"a","degree":0,"action":"1","from":"K","to":"Q"}]})"));
            }),
            ErrorKind::UnknownComponent);
}

TEST(Parse, SurgeryFixtures) {
  for (const auto& p : tf::formulas()) {
    auto f = io::parse_surgery_fixture(p);
    EXPECT_FALSE(f.test.empty());
    EXPECT_EQ(f.objects.size(), 2u);
    EXPECT_EQ(f.surgery, std::vector<std::string>{"a"});
    EXPECT_EQ(f.diagram.components().size(), 3u);
  }
}
