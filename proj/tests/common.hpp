#pragma once

#include "lch/io.hpp"

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

namespace testing_fixtures {

namespace fs = std::filesystem;

inline std::string path(const std::string& rel) { return std::string(LCH_FIXTURES) + "/" + rel; }

enum class Kind { Diagram, Dga, Structure, Surgery, Other };

inline Kind kind_of(const fs::path& p) {
  if (p.filename().string().find(".structure.") != std::string::npos) return Kind::Structure;
  try {
    auto j = lch::io::read_json_file(p.string());
    if (j.contains("crossings")) return Kind::Diagram;
    if (j.contains("generators")) return Kind::Dga;
    if (j.contains("diagram")) return Kind::Surgery;
  } catch (const lch::Error&) {
  }
  return Kind::Other;
}

/// Every fixture of one kind, sorted, skipping the generator sources in src/.
inline std::vector<std::string> all(Kind k) {
  std::vector<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(LCH_FIXTURES)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    if (e.path().parent_path().filename() == "src") continue;
    if (kind_of(e.path()) == k) out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> diagrams() { return all(Kind::Diagram); }
inline std::vector<std::string> dgas() { return all(Kind::Dga); }

inline std::vector<std::string> prefixed(const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& p : all(Kind::Surgery))
    if (fs::path(p).filename().string().rfind(prefix, 0) == 0) out.push_back(p);
  return out;
}
inline std::vector<std::string> formulas() { return prefixed("formula_"); }
inline std::vector<std::string> cones() { return prefixed("cone_"); }

inline std::vector<std::string> structured() {
  std::vector<std::string> out;
  for (const auto& p : dgas()) {
    const std::string s = p.substr(0, p.size() - 5) + ".structure.json";
    if (fs::exists(s)) out.push_back(p);
  }
  return out;
}
inline std::string structure_of(const std::string& dga) { return dga.substr(0, dga.size() - 5) + ".structure.json"; }

/// DGA of a fixture file of either kind.
inline lch::FreeDGA load(const std::string& p) {
  auto j = lch::io::read_json_file(p);
  return j.contains("crossings") ? lch::diagram_to_dga(lch::io::diagram_from_json(j)) : lch::io::dga_from_json(j);
}

inline std::string stem(const std::string& p) { return fs::path(p).stem().string(); }

}  // namespace testing_fixtures
