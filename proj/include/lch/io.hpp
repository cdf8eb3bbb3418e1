#pragma once

// JSON (de)serialization. Emission uses insertion-ordered objects and canonical word
// order so that emit(parse(emit(x))) is byte-identical to emit(x).

#include "lch/augment.hpp"
#include "lch/diagram.hpp"
#include "lch/surgery.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace lch::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, "'" + path + "' is not valid JSON: " + e.what());
  }
}

inline json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("invalid JSON: ") + e.what());
  }
}

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::Malformed, what);
}

inline void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  require(j.is_object(), where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    require(ok, "unknown key '" + k + "' in " + where);
  }
}

inline std::string get_string(const json& j, const char* key, const std::string& where) {
  require(j.contains(key) && j.at(key).is_string(), where + ": '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

inline Rational get_rational(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  require(v.is_number_integer(), where + ": expected \"num/den\" or an integer");
  return Rational(v.get<std::int64_t>());
}

inline int get_bit(const json& v, const std::string& where) {
  require(v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1), where + " must be 0 or 1");
  return v.get<int>();
}

inline std::string label(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  require(v.is_number_integer(), where + ": component must be a string or an integer");
  return std::to_string(v.get<long long>());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// DGA

inline FreeDGA dga_from_json(const json& j) {
  using namespace detail;
  only_keys(j, {"comment", "components", "generators", "differential"}, "DGA");
  require(j.contains("components") && j["components"].is_array(), "DGA: 'components' must be an array");
  require(j.contains("generators") && j["generators"].is_array(), "DGA: 'generators' must be an array");
  std::vector<std::string> components;
  for (const auto& c : j["components"]) components.push_back(label(c, "components"));
  std::vector<GeneratorSpec> specs;
  for (const auto& g : j["generators"]) {
    only_keys(g, {"name", "degree", "action", "from", "to"}, "generator");
    GeneratorSpec s;
    s.name = get_string(g, "name", "generator");
    require(g.contains("degree") && g["degree"].is_number_integer(), "generator '" + s.name + "': integer 'degree' required");
    s.degree = ((g["degree"].get<int>() % 2) + 2) % 2;
    require(g.contains("action"), "generator '" + s.name + "': 'action' required");
    s.action = get_rational(g["action"], "generator '" + s.name + "'");
    require(g.contains("from") && g.contains("to"), "generator '" + s.name + "': 'from' and 'to' required");
    s.from = label(g["from"], s.name);
    s.to = label(g["to"], s.name);
    specs.push_back(std::move(s));
  }
  DiffTable diff;
  if (j.contains("differential")) {
    require(j["differential"].is_object(), "DGA: 'differential' must be an object");
    for (const auto& [name, words] : j["differential"].items()) {
      require(words.is_array(), "d(" + name + ") must be an array of words");
      auto& out = diff[name];
      for (const auto& w : words) {
        require(w.is_array(), "d(" + name + "): each word is an array of generator names");
        WordSpec ws;
        for (const auto& f : w) {
          require(f.is_string(), "d(" + name + "): factors are generator names");
          ws.push_back(f.get<std::string>());
        }
        out.push_back(std::move(ws));
      }
    }
  }
  return make_dga(specs, diff, components);
}

inline json to_json(const FreeDGA& dga) {
  json j;
  j["components"] = dga.components();
  json gens = json::array();
  for (const auto& g : dga.generators()) {
    json e;
    e["name"] = g.name;
    e["degree"] = g.degree;
    e["action"] = format_rational(g.action);
    e["from"] = dga.components()[g.from_component];
    e["to"] = dga.components()[g.to_component];
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  json diff = json::object();
  for (GenId g : dga.ids()) {
    json words = json::array();
    for (const auto& w : dga.differential(g)) {
      json word = json::array();
      for (GenId f : w) word.push_back(dga.name(f));
      words.push_back(std::move(word));
    }
    diff[dga.name(g)] = std::move(words);
  }
  j["differential"] = std::move(diff);
  return j;
}

// ---------------------------------------------------------------------------
// Diagrams

inline DiagramData diagram_data_from_json(const json& j) {
  using namespace detail;
  only_keys(j, {"comment", "crossings", "edges", "contractible", "component_shifts", "free_loops"}, "diagram");
  DiagramData d;
  if (j.contains("comment")) {
    require(j["comment"].is_string(), "diagram: 'comment' must be a string");
    d.comment = j["comment"].get<std::string>();
  }
  require(j.contains("crossings") && j["crossings"].is_array(), "diagram: 'crossings' must be an array");
  require(j.contains("edges") && j["edges"].is_array(), "diagram: 'edges' must be an array");
  for (const auto& c : j["crossings"]) {
    only_keys(c, {"id", "height", "quadrants", "degree_data"}, "crossing");
    CrossingData x;
    x.id = get_string(c, "id", "crossing");
    require(c.contains("height"), "crossing '" + x.id + "': 'height' required");
    x.height = get_rational(c["height"], "crossing '" + x.id + "'");
    if (c.contains("quadrants")) {
      require(c["quadrants"].is_array() && c["quadrants"].size() == 4, "crossing '" + x.id + "': four quadrant signs");
      for (std::size_t k = 0; k < 4; ++k) {
        const auto& q = c["quadrants"][k];
        require(q.is_string() && (q == "+" || q == "-"), "crossing '" + x.id + "': quadrant signs are \"+\" or \"-\"");
        x.positive[k] = q == "+";
      }
    }
    if (c.contains("degree_data")) {
      require(c["degree_data"].is_number_integer(), "crossing '" + x.id + "': degree_data must be an integer");
      x.degree_data = c["degree_data"].get<int>();
    }
    d.crossings.push_back(std::move(x));
  }
  auto port = [&](const json& p) {
    require(p.is_array() && p.size() == 2 && p[0].is_string() && p[1].is_number_integer(), "edge endpoints are [\"id\", port]");
    return PortRef{p[0].get<std::string>(), p[1].get<int>()};
  };
  for (const auto& e : j["edges"]) {
    only_keys(e, {"from", "to", "component"}, "edge");
    require(e.contains("from") && e.contains("to") && e.contains("component"), "edge needs from, to and component");
    d.edges.push_back(EdgeData{port(e["from"]), port(e["to"]), label(e["component"], "edge")});
  }
  if (j.contains("contractible")) {
    require(j["contractible"].is_array(), "diagram: 'contractible' must be an array");
    for (const auto& c : j["contractible"]) {
      require(c.is_string(), "contractible entries are crossing ids");
      d.contractible.push_back(c.get<std::string>());
    }
  }
  if (j.contains("component_shifts")) {
    require(j["component_shifts"].is_object(), "diagram: 'component_shifts' must be an object");
    for (const auto& [k, v] : j["component_shifts"].items()) {
      require(v.is_number_integer(), "component shift must be an integer");
      d.component_shifts[k] = v.get<int>();
    }
  }
  if (j.contains("free_loops")) {
    require(j["free_loops"].is_array(), "diagram: 'free_loops' must be an array");
    for (const auto& c : j["free_loops"]) d.free_loops.push_back(label(c, "free_loops"));
  }
  return d;
}

inline LinkDiagram diagram_from_json(const json& j) { return LinkDiagram::build(diagram_data_from_json(j)); }
inline LinkDiagram parse_diagram(const std::string& path) { return diagram_from_json(read_json_file(path)); }

inline json to_json(const DiagramData& d) {
  json j;
  if (!d.comment.empty()) j["comment"] = d.comment;
  json xs = json::array();
  for (const auto& c : d.crossings) {
    json x;
    x["id"] = c.id;
    x["height"] = format_rational(c.height);
    json q = json::array();
    for (bool p : c.positive) q.push_back(p ? "+" : "-");
    x["quadrants"] = std::move(q);
    if (c.degree_data) x["degree_data"] = *c.degree_data;
    xs.push_back(std::move(x));
  }
  j["crossings"] = std::move(xs);
  json es = json::array();
  for (const auto& e : d.edges) {
    json x;
    x["from"] = json::array({e.from.crossing, e.from.port});
    x["to"] = json::array({e.to.crossing, e.to.port});
    x["component"] = e.component;
    es.push_back(std::move(x));
  }
  j["edges"] = std::move(es);
  if (!d.contractible.empty()) j["contractible"] = d.contractible;
  if (!d.component_shifts.empty()) {
    json s = json::object();
    for (const auto& [k, v] : d.component_shifts) s[k] = v;
    j["component_shifts"] = std::move(s);
  }
  if (!d.free_loops.empty()) j["free_loops"] = d.free_loops;
  return j;
}

// ---------------------------------------------------------------------------
// Augmentations: {"values": {"gen": 0|1}}; generators not listed are 0.

inline Augmentation augmentation_from_json(const FreeDGA& dga, const json& j) {
  using namespace detail;
  only_keys(j, {"comment", "values"}, "augmentation");
  require(j.contains("values") && j["values"].is_object(), "augmentation: 'values' must be an object");
  Augmentation eps(dga.size());
  for (const auto& [k, v] : j["values"].items()) eps.set(dga.id(k), get_bit(v, "value of '" + k + "'") == 1);
  return eps;
}

inline json to_json(const FreeDGA& dga, const Augmentation& eps) {
  json values = json::object();
  for (GenId g : dga.ids()) values[dga.name(g)] = eps(g) ? 1 : 0;
  json j;
  j["values"] = std::move(values);
  return j;
}

// ---------------------------------------------------------------------------
// Triangle structures:
// {"test": "L", "discs": ["D1", ...], "chords": {"a1": {"type": "a", "i": 1}, "b12": {"type": "b", "i": 1, "j": 2},
//  "c12": {"type": "c", "i": 1, "j": 2}, "r": {"type": "reversing"}}, "pure": {"p": 1}}

inline TriangleStructure structure_from_json(const json& j) {
  using namespace detail;
  only_keys(j, {"comment", "test", "discs", "chords", "pure"}, "structure");
  TriangleStructure s;
  s.test = get_string(j, "test", "structure");
  require(j.contains("discs") && j["discs"].is_array(), "structure: 'discs' must be an array");
  for (const auto& d : j["discs"]) s.discs.push_back(label(d, "discs"));
  require(j.contains("chords") && j["chords"].is_object(), "structure: 'chords' must be an object");
  for (const auto& [name, c] : j["chords"].items()) {
    only_keys(c, {"type", "i", "j"}, "chord '" + name + "'");
    ChordRole r;
    std::string t = get_string(c, "type", "chord '" + name + "'");
    if (t == "a") r.type = ChordType::A;
    else if (t == "b") r.type = ChordType::B;
    else if (t == "c") r.type = ChordType::C;
    else if (t == "reversing") r.type = ChordType::Reversing;
    else throw Error(ErrorKind::Malformed, "chord '" + name + "': unknown type '" + t + "'");
    if (c.contains("i")) r.i = c["i"].get<int>();
    if (c.contains("j")) r.j = c["j"].get<int>();
    s.chords[name] = r;
  }
  if (j.contains("pure")) {
    require(j["pure"].is_object(), "structure: 'pure' must be an object");
    for (const auto& [k, v] : j["pure"].items()) s.pure_values[k] = get_bit(v, "pure value of '" + k + "'");
  }
  return s;
}

inline json to_json(const TriangleStructure& s) {
  json j;
  j["test"] = s.test;
  j["discs"] = s.discs;
  json chords = json::object();
  for (const auto& [name, r] : s.chords) {
    json c;
    switch (r.type) {
      case ChordType::A: c["type"] = "a"; break;
      case ChordType::B: c["type"] = "b"; break;
      case ChordType::C: c["type"] = "c"; break;
      case ChordType::Reversing: c["type"] = "reversing"; break;
    }
    if (r.type != ChordType::Reversing) c["i"] = r.i;
    if (r.type == ChordType::B || r.type == ChordType::C) c["j"] = r.j;
    chords[name] = std::move(c);
  }
  j["chords"] = std::move(chords);
  json pure = json::object();
  for (const auto& [k, v] : s.pure_values) pure[k] = v;
  j["pure"] = std::move(pure);
  return j;
}

// ---------------------------------------------------------------------------
// Surgery-formula fixtures:
// {"comment": ..., "diagram": "file.json" | {...}, "test": "T", "objects": ["L1", "L2"],
//  "surgery": ["a"], "augmentation": {"a": 1, ...}}

inline SurgeryFixture surgery_fixture_from_json(const json& j, const std::string& base_dir = ".") {
  using namespace detail;
  only_keys(j, {"comment", "diagram", "test", "objects", "surgery", "augmentation"}, "surgery fixture");
  require(j.contains("diagram"), "surgery fixture: 'diagram' required");
  SurgeryFixture f{"", j["diagram"].is_string() ? parse_diagram(base_dir + "/" + j["diagram"].get<std::string>())
                                                : diagram_from_json(j["diagram"]),
                   get_string(j, "test", "surgery fixture"), {}, {}, {}};
  if (j.contains("comment")) f.comment = j["comment"].get<std::string>();
  require(j.contains("objects") && j["objects"].is_array(), "surgery fixture: 'objects' must be an array");
  for (const auto& o : j["objects"]) f.objects.push_back(label(o, "objects"));
  require(j.contains("surgery") && j["surgery"].is_array(), "surgery fixture: 'surgery' must be an array");
  for (const auto& o : j["surgery"]) f.surgery.push_back(label(o, "surgery"));
  require(j.contains("augmentation") && j["augmentation"].is_object(), "surgery fixture: 'augmentation' must be an object");
  for (const auto& [k, v] : j["augmentation"].items()) f.augmentation[k] = get_bit(v, "augmentation value of '" + k + "'");
  return f;
}

inline SurgeryFixture parse_surgery_fixture(const std::string& path) {
  auto slash = path.find_last_of('/');
  return surgery_fixture_from_json(read_json_file(path), slash == std::string::npos ? "." : path.substr(0, slash));
}

}  // namespace lch::io
