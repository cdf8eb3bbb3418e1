#pragma once

// The `lch` command line. Exit codes: 0 ok, 1 a computed check failed, 2 bad input.

#include "lch/io.hpp"
#include "lch/linearized.hpp"
#include "lch/report.hpp"
#include "lch/surgery.hpp"
#include "lch/twisted.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lch::cli {

using json = io::json;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string field = "f2";
  std::uint64_t budget_discs = DiscSearchOptions{}.budget;
  std::size_t budget_augs = EnumerationOptions{}.cap;
  Format format = Format::Text;
  std::uint64_t seed = 0;
  std::string output;
};

namespace detail {

struct Fail {};  // a computed check came out false; the report has already been written

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

inline std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t pos = 0;
    long long n = std::stoll(v, &pos);
    if (pos != std::string(v).size() || n <= 0) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(n);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Malformed, std::string(name) + " must be a positive integer");
  }
}

/// A DGA file, or a diagram file (recognised by its "crossings" key) run through the disc search.
inline FreeDGA load_dga(const std::string& path, bool from_diagram, const RunConfig& cfg) {
  json j = io::read_json_file(path);
  if (from_diagram || (j.is_object() && j.contains("crossings")))
    return diagram_to_dga(io::diagram_from_json(j), DiscSearchOptions{cfg.budget_discs});
  return io::dga_from_json(j);
}

inline std::string label(const FreeDGA& dga, const Augmentation& eps) {
  std::string s;
  for (GenId g : dga.ids())
    if (eps(g)) s += (s.empty() ? "" : "+") + dga.name(g);
  return s.empty() ? "0" : s;
}

inline std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace detail

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out) : cfg_(std::move(cfg)), out_(out) {}

  void emit(const std::string& bytes) { buffer_ += bytes; }
  void emit(const Table& t) { emit(emit_table(t, cfg_.format)); }
  /// Two-column check lists read best as "name: result" in text mode.
  void emit_checks(const Table& t) {
    if (cfg_.format != Format::Text) return emit(t);
    for (const auto& row : t.rows) emit(row[0].get<std::string>() + ": " + row[1].get<std::string>() + "\n");
  }
  void flush() {
    if (cfg_.output.empty()) {
      out_ << buffer_;
    } else {
      std::ofstream f(cfg_.output, std::ios::binary);
      if (!f) throw Error(ErrorKind::Malformed, "cannot write '" + cfg_.output + "'");
      f << buffer_;
    }
    buffer_.clear();
  }

  const RunConfig& config() const { return cfg_; }
  DiscSearchOptions discs() const { return {cfg_.budget_discs}; }
  EnumerationOptions augs() const { return {cfg_.budget_augs}; }

 private:
  RunConfig cfg_;
  std::ostream& out_;
  std::string buffer_;
};

// ---------------------------------------------------------------------------
// commands

inline bool cmd_check(Runner& r, const std::string& file, bool from_diagram, std::size_t words) {
  const FreeDGA dga = detail::load_dga(file, from_diagram, r.config());
  const auto d2 = check_d_squared(dga);
  const auto props = check_word_properties(dga, words, r.config().seed);
  Table t{{"check", "result", "detail"}, {}};
  std::string detail;
  for (const auto& f : d2.failures) detail += (detail.empty() ? "" : "; ") + ("d^2 " + dga.name(f.generator) + " = " + dga.render(f.residual));
  t.add({"d^2 = 0", detail::pass_fail(d2.pass()), detail});
  const std::string n = std::to_string(props.words) + " words";
  t.add({"leibniz", detail::pass_fail(props.leibniz_failures == 0), n});
  t.add({"energy", detail::pass_fail(props.energy_failures == 0), n});
  t.add({"grading", detail::pass_fail(props.grading_failures == 0), n});
  if (r.config().format == Format::Text) {
    Table brief{{"check", "result"}, {}};
    for (const auto& row : t.rows) brief.add({row[0], row[1]});
    r.emit_checks(brief);
  } else {
    r.emit(t);
  }
  return d2.pass() && props.pass();
}

inline bool cmd_dga(Runner& r, const std::string& file, bool from_diagram) {
  const FreeDGA dga = detail::load_dga(file, from_diagram, r.config());
  if (r.config().format == Format::Json) {
    r.emit(io::to_json(dga).dump(2) + "\n");
    return true;
  }
  Table t{{"generator", "degree", "action", "from", "to", "differential"}, {}};
  for (GenId g : dga.ids()) {
    const auto& gen = dga.generator(g);
    t.add({gen.name, gen.degree, format_rational(gen.action), dga.components()[gen.from_component],
           dga.components()[gen.to_component], dga.render(dga.differential(g))});
  }
  r.emit(t);
  return true;
}

inline bool cmd_augs(Runner& r, const std::string& file, bool from_diagram) {
  const FreeDGA dga = detail::load_dga(file, from_diagram, r.config());
  const auto all = enumerate_augmentations(dga, r.augs());
  Table t;
  for (GenId g : dga.ids()) t.columns.push_back(dga.name(g));
  for (const auto& eps : all) {
    std::vector<json> row;
    for (GenId g : dga.ids()) row.push_back(eps(g) ? 1 : 0);
    t.add(std::move(row));
  }
  r.emit(t);
  if (r.config().format == Format::Text) r.emit("count: " + std::to_string(all.size()) + "\n");
  return true;
}

inline bool cmd_induce(Runner& r, const std::string& file, bool from_diagram, const std::string& structure) {
  const FreeDGA dga = detail::load_dga(file, from_diagram, r.config());
  const TriangleStructure s = io::structure_from_json(io::read_json_file(structure));
  const InductionResult res = filtered_induction(dga, s);
  Table t{{"generator", "value", "solved"}, {}};
  for (GenId g : dga.ids()) {
    json step = "";
    for (std::size_t i = 0; i < res.solve_order.size(); ++i)
      if (res.solve_order[i] == g) step = static_cast<int>(i + 1);
    t.add({dga.name(g), res.eps(g) ? 1 : 0, step});
  }
  r.emit(t);
  return true;
}

inline bool cmd_surger(Runner& r, const std::string& file, bool from_diagram, const std::string& chords,
                       const std::string& aug) {
  const FreeDGA dga = detail::load_dga(file, from_diagram, r.config());
  const Augmentation eps = io::augmentation_from_json(dga, io::read_json_file(aug));
  const SurgeryQuotient q = surgery_quotient(dga, detail::split(chords), eps);
  bool push = true;
  for (GenId g : dga.ids()) {
    const auto p = q.projection[g.value];
    push = push && eps(g) == (p ? q.eps(*p) : true);
  }
  const bool d2 = check_d_squared(q.dga).pass();
  if (r.config().format == Format::Json) {
    json j;
    j["dga"] = io::to_json(q.dga);
    j["augmentation"] = io::to_json(q.dga, q.eps);
    j["pushforward"] = detail::pass_fail(push);
    j["d_squared"] = detail::pass_fail(d2);
    r.emit(j.dump(2) + "\n");
  } else {
    Table t{{"generator", "degree", "eps", "differential"}, {}};
    for (GenId g : q.dga.ids())
      t.add({q.dga.name(g), q.dga.generator(g).degree, q.eps(g) ? 1 : 0, q.dga.render(q.dga.differential(g))});
    r.emit(t);
    Table c{{"check", "result"}, {}};
    c.add({"eps = eps-bar o pi", detail::pass_fail(push)});
    c.add({"d^2 = 0", detail::pass_fail(d2)});
    if (r.config().format == Format::Text) r.emit("\n");
    r.emit_checks(c);
  }
  return push && d2;
}

inline bool cmd_linhom(Runner& r, const std::string& file, bool from_diagram, const std::string& comp0,
                       const std::string& comp1, const std::string& aug0, const std::string& aug1, bool all_pairs) {
  const FreeDGA dga = detail::load_dga(file, from_diagram, r.config());
  const auto g0 = detail::split(comp0), g1 = detail::split(comp1);
  if (g0.empty() || g1.empty()) throw Error(ErrorKind::Malformed, "--comp0 and --comp1 are required");
  std::vector<Augmentation> e0, e1;
  if (all_pairs) {
    auto lift = [&](const std::vector<std::string>& group) {
      const FreeDGA sub = sub_dga(dga, group);
      std::vector<Augmentation> out;
      for (const auto& e : enumerate_augmentations(sub, r.augs())) {
        Augmentation full(dga.size());
        for (GenId g : sub.ids()) full.set(dga.id(sub.name(g)), e(g));
        out.push_back(std::move(full));
      }
      return out;
    };
    e0 = lift(g0);
    e1 = lift(g1);
  } else {
    if (aug0.empty() || aug1.empty()) throw Error(ErrorKind::Malformed, "give --aug0 and --aug1, or --all-pairs");
    e0.push_back(io::augmentation_from_json(dga, io::read_json_file(aug0)));
    e1.push_back(io::augmentation_from_json(dga, io::read_json_file(aug1)));
  }
  Table t{{"aug0", "aug1", "generators", "h0", "h1"}, {}};
  for (const auto& a : e0) {
    for (const auto& b : e1) {
      const F2Complex c = bilinearized_complex(dga, g0, g1, a, b);
      const HomologyRanks h = homology_f2(c);
      t.add({detail::label(dga, a), detail::label(dga, b), static_cast<int>(c.size()), static_cast<int>(h.h0),
             static_cast<int>(h.h1)});
    }
  }
  r.emit(t);
  return true;
}

struct TwistedInput {
  FreeDGA dga;
  std::string test;
  std::vector<std::string> objects;
  Augmentation eps;
};

inline TwistedInput twisted_input(Runner& r, const std::string& file, bool from_diagram, const std::string& fixture,
                                  const std::string& test, const std::string& objects, const std::string& aug) {
  if (!fixture.empty()) {
    const SurgeryFixture f = io::parse_surgery_fixture(fixture);
    FreeDGA dga = diagram_to_dga(f.diagram, r.discs());
    Augmentation eps = augmentation_from_map(dga, f.augmentation);
    return {std::move(dga), f.test, f.objects, std::move(eps)};
  }
  if (file.empty()) throw Error(ErrorKind::Malformed, "give an input file or --fixture");
  FreeDGA dga = detail::load_dga(file, from_diagram, r.config());
  Augmentation eps = aug.empty() ? Augmentation(dga.size()) : io::augmentation_from_json(dga, io::read_json_file(aug));
  return {std::move(dga), test, detail::split(objects), std::move(eps)};
}

inline bool cmd_twisted(Runner& r, const std::string& mode, const TwistedInput& in) {
  if (in.objects.empty()) throw Error(ErrorKind::Malformed, "--objects is required");
  std::vector<std::string> order;
  if (!in.test.empty()) order.push_back(in.test);
  order.insert(order.end(), in.objects.begin(), in.objects.end());
  const AInfData a = ainf_from_link(in.dga, order, in.eps);
  const TwistedComplex tw = build_mc_from_aug(a, in.objects, in.eps);
  if (mode == "mc") {
    const auto mc = check_maurer_cartan(a, tw);
    std::string entries, residual;
    for (GenId g : tw.entries) entries += (entries.empty() ? "" : " ") + a.dga.name(g);
    for (GenId g : mc.residual) residual += (residual.empty() ? "" : " ") + a.dga.name(g);
    Table t{{"check", "result"}, {}};
    t.add({"X", entries.empty() ? "0" : entries});
    t.add({"maurer-cartan", detail::pass_fail(mc.holds)});
    if (!mc.holds) t.add({"residual", residual});
    r.emit_checks(t);
    return mc.holds;
  }
  if (in.test.empty()) throw Error(ErrorKind::Malformed, "--test is required");
  if (mode == "hom") {
    const F2Complex c = tw_hom_complex(a, in.test, tw);
    const HomologyRanks h = homology_f2(c);  // validates (mu^1_Tw)^2 = 0
    Table t{{"test", "objects", "generators", "h0", "h1"}, {}};
    std::string objs;
    for (const auto& o : in.objects) objs += (objs.empty() ? "" : " ") + o;
    t.add({in.test, objs, static_cast<int>(c.size()), static_cast<int>(h.h0), static_cast<int>(h.h1)});
    r.emit(t);
    return true;
  }
  if (mode == "chop") {
    const ChopReport c = chop_rank_check(a, in.test, tw);
    const std::string status = !c.acyclic ? "NotAcyclic" : detail::pass_fail(c.equal());
    Table t{{"whole_h0", "whole_h1", "first_h0", "first_h1", "rest_h0", "rest_h1", "result"}, {}};
    t.add({static_cast<int>(c.whole.h0), static_cast<int>(c.whole.h1), static_cast<int>(c.first.h0),
           static_cast<int>(c.first.h1), static_cast<int>(c.rest.h0), static_cast<int>(c.rest.h1), status});
    r.emit(t);
    return !c.acyclic || c.equal();
  }
  throw Error(ErrorKind::Malformed, "unknown twisted mode '" + mode + "' (expected mc, hom or chop)");
}

inline bool cmd_surgery_formula(Runner& r, const std::vector<std::string>& fixtures) {
  if (fixtures.empty()) throw Error(ErrorKind::Malformed, "--fixture is required");
  Table t{{"fixture", "twisted_h0", "twisted_h1", "quotient_h0", "quotient_h1", "resolved_h0", "resolved_h1",
           "corrected", "result"},
          {}};
  bool all = true;
  for (const auto& path : fixtures) {
    const SurgeryFormulaReport rep = surgery_formula(io::parse_surgery_fixture(path), r.discs());
    std::string corrected;
    for (const auto& c : rep.corrected) corrected += (corrected.empty() ? "" : " ") + c;
    auto n = [](std::size_t v) { return json(static_cast<int>(v)); };
    t.add({path, n(rep.twisted.h0), n(rep.twisted.h1), n(rep.quotient.h0), n(rep.quotient.h1),
           rep.resolved ? n(rep.resolved->h0) : json(nullptr), rep.resolved ? n(rep.resolved->h1) : json(nullptr),
           corrected, detail::pass_fail(rep.pass())});
    all = all && rep.pass();
  }
  r.emit(t);
  return all;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Legendrian contact homology over F2"};
  app.name("lch");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "text";
  std::optional<std::uint64_t> budget_discs;
  std::optional<std::size_t> budget_augs;
  app.add_option("--output,-o", cfg.output, "write the report to a file");
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--field", cfg.field, "coefficient field (only f2)")->check(CLI::IsMember({"f2"}));
  app.add_option("--budget-discs", budget_discs, "disc search step budget")->check(CLI::PositiveNumber);
  app.add_option("--budget-augs", budget_augs, "max degree-0 generators to enumerate over")->check(CLI::PositiveNumber);

  std::string file, structure, chords, aug, aug0, aug1, comp0, comp1, test, objects, fixture, mode;
  std::vector<std::string> fixtures;
  bool from_diagram = false, all_pairs = false;
  std::size_t words = 1000;
  auto input = [&](CLI::App* sub, bool required = true) {
    auto* pos = sub->add_option("file", file, "DGA or diagram JSON");
    if (required) pos->required();
    sub->add_flag("--from-diagram", from_diagram, "treat the input as a diagram");
  };

  auto* check = app.add_subcommand("check", "d^2 = 0 and random-word properties");
  input(check);
  check->add_option("--words", words, "number of random words");
  auto* dga = app.add_subcommand("dga", "print the DGA");
  dga->add_option("file", file, "DGA JSON");
  dga->add_option("--from-diagram", file, "diagram JSON");
  auto* augs = app.add_subcommand("augs", "enumerate augmentations");
  input(augs);
  auto* induce = app.add_subcommand("induce", "filtered induction on a triangle structure");
  input(induce);
  induce->add_option("--structure", structure)->required();
  auto* surger = app.add_subcommand("surger", "quotient by a_i - 1");
  input(surger);
  surger->add_option("--chords", chords)->required();
  surger->add_option("--aug", aug)->required();
  auto* linhom = app.add_subcommand("linhom", "bilinearized homology");
  input(linhom);
  linhom->add_option("--comp0", comp0)->required();
  linhom->add_option("--comp1", comp1)->required();
  linhom->add_option("--aug0", aug0);
  linhom->add_option("--aug1", aug1);
  linhom->add_flag("--all-pairs", all_pairs);
  auto* twisted = app.add_subcommand("twisted", "twisted complexes: mc, hom or chop");
  twisted->add_option("mode", mode)->required()->check(CLI::IsMember({"mc", "hom", "chop"}));
  input(twisted, false);
  twisted->add_option("--fixture", fixture, "surgery fixture supplying test, objects and augmentation");
  twisted->add_option("--test", test);
  twisted->add_option("--objects", objects);
  twisted->add_option("--aug", aug);
  auto* formula = app.add_subcommand("surgery-formula", "twisted side vs surgered side");
  formula->add_option("--fixture", fixtures)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    cfg.format = parse_format(format);
    cfg.budget_discs = budget_discs.value_or(detail::env_budget("LCH_BUDGET_DISCS", cfg.budget_discs));
    cfg.budget_augs = budget_augs.value_or(detail::env_budget("LCH_BUDGET_AUGS", cfg.budget_augs));
    cfg.command = app.get_subcommands().front()->get_name();
    Runner r(cfg, out);
    bool ok = true;
    try {
      if (*check) ok = cmd_check(r, file, from_diagram, words);
      else if (*dga) {
        if (file.empty()) throw Error(ErrorKind::Malformed, "give a DGA file or --from-diagram");
        ok = cmd_dga(r, file, dga->count("--from-diagram") > 0);
      } else if (*augs) ok = cmd_augs(r, file, from_diagram);
      else if (*induce) ok = cmd_induce(r, file, from_diagram, structure);
      else if (*surger) ok = cmd_surger(r, file, from_diagram, chords, aug);
      else if (*linhom) ok = cmd_linhom(r, file, from_diagram, comp0, comp1, aug0, aug1, all_pairs);
      else if (*twisted) ok = cmd_twisted(r, mode, twisted_input(r, file, from_diagram, fixture, test, objects, aug));
      else if (*formula) ok = cmd_surgery_formula(r, fixtures);
    } catch (const Error& e) {
      // An inconsistent triangle structure is a computed answer, not an input problem.
      if (e.kind() != ErrorKind::Inconsistent) throw;
      r.emit("Inconsistent: " + std::string(e.what()) + "\n");
      ok = false;
    }
    r.flush();
    return ok ? 0 : 1;
  } catch (const Error& e) {
    err << "lch: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "lch: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lch::cli
