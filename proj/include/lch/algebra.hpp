#pragma once

// Free unital noncommutative DGAs over F2 with Z/2 grading and exact actions.

#include "lch/core.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lch {

/// Opaque generator handle; an index into the owning FreeDGA.
struct GenId {
  std::uint32_t value = 0;
  auto operator<=>(const GenId&) const = default;
};

/// Product of generators; the empty word is the unit.
using Word = std::vector<GenId>;

/// F2-linear combination of words. Adding a word that is already present removes it.
class Element {
 public:
  Element() = default;

  static Element unit() { return Element::of(Word{}); }
  static Element of(Word w) {
    Element e;
    e.toggle(std::move(w));
    return e;
  }
  static Element generator(GenId g) { return Element::of(Word{g}); }

  void toggle(Word w) {
    auto [it, inserted] = terms_.insert(std::move(w));
    if (!inserted) terms_.erase(it);
  }

  Element& operator+=(const Element& other) {
    for (const auto& w : other.terms_) toggle(w);
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }

  friend Element operator*(const Element& a, const Element& b) {
    Element out;
    for (const auto& u : a.terms_) {
      for (const auto& v : b.terms_) {
        Word w;
        w.reserve(u.size() + v.size());
        w.insert(w.end(), u.begin(), u.end());
        w.insert(w.end(), v.begin(), v.end());
        out.toggle(std::move(w));
      }
    }
    return out;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool contains(const Word& w) const { return terms_.count(w) != 0; }
  const std::set<Word>& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  bool operator==(const Element&) const = default;

 private:
  std::set<Word> terms_;
};

/// A Reeb chord. `from_component`/`to_component` index FreeDGA::components();
/// the chord starts on `from` (lower endpoint) and ends on `to` (upper endpoint).
struct Generator {
  std::string name;
  int degree = 0;
  Rational action{1};
  std::size_t from_component = 0;
  std::size_t to_component = 0;

  bool is_pure() const noexcept { return from_component == to_component; }
  bool is_mixed() const noexcept { return !is_pure(); }
  bool operator==(const Generator&) const = default;
};

/// Input form of a generator, with components given by name.
struct GeneratorSpec {
  std::string name;
  int degree = 0;
  Rational action{1};
  std::string from;
  std::string to;
};

using WordSpec = std::vector<std::string>;
/// F2 sum of words; each word is a list of generator names, [] is the unit.
using DiffTable = std::map<std::string, std::vector<WordSpec>>;

class FreeDGA {
 public:
  FreeDGA() = default;

  /// Validating constructor shared by every producer of DGAs.
  FreeDGA(std::vector<std::string> components, std::vector<Generator> generators,
          std::vector<Element> differential)
      : components_(std::move(components)),
        generators_(std::move(generators)),
        differential_(std::move(differential)) {
    if (differential_.size() != generators_.size())
      throw Error(ErrorKind::Malformed, "differential table size does not match generator count");
    for (std::size_t i = 0; i < components_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (components_[i] == components_[j])
          throw Error(ErrorKind::Malformed, "duplicate component '" + components_[i] + "'");
      }
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto& g = generators_[i];
      if (g.name.empty()) throw Error(ErrorKind::Malformed, "generator with empty name");
      if (!by_name_.emplace(g.name, GenId{static_cast<std::uint32_t>(i)}).second)
        throw Error(ErrorKind::DuplicateGenerator, "generator '" + g.name + "' declared twice");
      if (g.degree != 0 && g.degree != 1)
        throw Error(ErrorKind::Malformed, "degree of '" + g.name + "' must be 0 or 1");
      if (g.action <= Rational(0))
        throw Error(ErrorKind::NonpositiveAction, "generator '" + g.name + "' has action " + format_rational(g.action));
      if (g.from_component >= components_.size() || g.to_component >= components_.size())
        throw Error(ErrorKind::UnknownComponent, "generator '" + g.name + "' references an undeclared component");
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const int want = (generators_[i].degree + 1) % 2;
      for (const auto& w : differential_[i]) {
        int deg = 0;
        for (GenId f : w) {
          if (f.value >= generators_.size())
            throw Error(ErrorKind::UnknownGenerator, "differential of '" + generators_[i].name + "' uses an undeclared generator");
          deg += generators_[f.value].degree;
        }
        if (deg % 2 != want)
          throw Error(ErrorKind::GradingMismatch, "word " + render(w) + " in d(" + generators_[i].name + ") has the wrong parity");
      }
    }
  }

  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const Generator& generator(GenId g) const {
    check(g);
    return generators_[g.value];
  }
  const std::vector<std::string>& components() const noexcept { return components_; }
  const Element& differential(GenId g) const {
    check(g);
    return differential_[g.value];
  }

  std::optional<GenId> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  GenId id(std::string_view name) const {
    if (auto g = find(name)) return *g;
    throw Error(ErrorKind::UnknownGenerator, "no generator named '" + std::string(name) + "'");
  }
  const std::string& name(GenId g) const { return generator(g).name; }

  std::optional<std::size_t> find_component(std::string_view name) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (components_[i] == name) return i;
    return std::nullopt;
  }
  std::size_t component(std::string_view name) const {
    if (auto c = find_component(name)) return *c;
    throw Error(ErrorKind::UnknownComponent, "no component named '" + std::string(name) + "'");
  }

  std::vector<GenId> ids() const {
    std::vector<GenId> out;
    out.reserve(size());
    for (std::uint32_t i = 0; i < size(); ++i) out.push_back(GenId{i});
    return out;
  }

  void check(GenId g) const {
    if (g.value >= generators_.size()) throw Error(ErrorKind::UnknownGenerator, "generator id out of range");
  }
  void check(const Word& w) const {
    for (GenId g : w) check(g);
  }
  void check(const Element& e) const {
    for (const auto& w : e) check(w);
  }

  std::string render(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += '*';
      out += w[i].value < generators_.size() ? generators_[w[i].value].name : "?";
    }
    return out;
  }
  std::string render(const Element& e) const {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& w : e) {
      if (!first) out += " + ";
      first = false;
      out += render(w);
    }
    return out;
  }

  bool operator==(const FreeDGA& other) const {
    return components_ == other.components_ && generators_ == other.generators_ &&
           differential_ == other.differential_;
  }

 private:
  std::vector<std::string> components_;
  std::vector<Generator> generators_;
  std::vector<Element> differential_;
  std::unordered_map<std::string, GenId> by_name_;
};

/// Builds a validated DGA from named data. Does not check d^2 = 0.
inline FreeDGA make_dga(const std::vector<GeneratorSpec>& specs, const DiffTable& diff,
                        const std::vector<std::string>& components) {
  std::unordered_map<std::string, GenId> ids;
  std::vector<Generator> gens;
  gens.reserve(specs.size());
  auto component_index = [&](const std::string& name, const std::string& gen) {
    auto it = std::find(components.begin(), components.end(), name);
    if (it == components.end())
      throw Error(ErrorKind::UnknownComponent, "generator '" + gen + "' references component '" + name + "'");
    return static_cast<std::size_t>(it - components.begin());
  };
  for (const auto& s : specs) {
    if (!ids.emplace(s.name, GenId{static_cast<std::uint32_t>(gens.size())}).second)
      throw Error(ErrorKind::DuplicateGenerator, "generator '" + s.name + "' declared twice");
    gens.push_back(Generator{s.name, s.degree, s.action, component_index(s.from, s.name),
                             component_index(s.to, s.name)});
  }
  std::vector<Element> d(gens.size());
  for (const auto& [name, words] : diff) {
    auto it = ids.find(name);
    if (it == ids.end()) throw Error(ErrorKind::UnknownGenerator, "differential given for undeclared '" + name + "'");
    Element image;
    for (const auto& ws : words) {
      Word w;
      w.reserve(ws.size());
      for (const auto& f : ws) {
        auto jt = ids.find(f);
        if (jt == ids.end())
          throw Error(ErrorKind::UnknownGenerator, "d(" + name + ") uses undeclared generator '" + f + "'");
        w.push_back(jt->second);
      }
      image.toggle(std::move(w));
    }
    d[it->second.value] = std::move(image);
  }
  return FreeDGA(components, std::move(gens), std::move(d));
}

/// Leibniz extension of the differential; d(1) = 0.
inline Element apply_differential(const FreeDGA& dga, const Word& w) {
  dga.check(w);
  Element out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Element& dg = dga.differential(w[i]);
    for (const auto& v : dg) {
      Word term;
      term.reserve(w.size() + v.size());
      term.insert(term.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      term.insert(term.end(), v.begin(), v.end());
      term.insert(term.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
      out.toggle(std::move(term));
    }
  }
  return out;
}

inline Element apply_differential(const FreeDGA& dga, const Element& e) {
  Element out;
  for (const auto& w : e) out += apply_differential(dga, w);
  return out;
}

struct DSquaredFailure {
  GenId generator;
  Element residual;
};

struct DSquaredReport {
  std::vector<DSquaredFailure> failures;
  bool pass() const noexcept { return failures.empty(); }
};

inline DSquaredReport check_d_squared(const FreeDGA& dga) {
  DSquaredReport report;
  for (GenId g : dga.ids()) {
    Element dd = apply_differential(dga, dga.differential(g));
    if (!dd.is_zero()) report.failures.push_back({g, std::move(dd)});
  }
  return report;
}

struct WordMeasure {
  int degree = 0;
  Rational action{0};
  bool operator==(const WordMeasure&) const = default;
};

inline WordMeasure word_measurements(const FreeDGA& dga, const Word& w) {
  WordMeasure m;
  for (GenId g : w) {
    const auto& gen = dga.generator(g);
    m.degree += gen.degree;
    m.action += gen.action;
  }
  m.degree %= 2;
  return m;
}

/// Leibniz, energy and grading on random words. Draws are plain modular reductions of a
/// 64-bit Mersenne twister so the sample is the same on every platform.
struct PropertyReport {
  std::size_t words = 0;
  std::size_t leibniz_failures = 0;
  std::size_t energy_failures = 0;
  std::size_t grading_failures = 0;
  bool pass() const noexcept { return leibniz_failures + energy_failures + grading_failures == 0; }
};

inline Word random_word(const FreeDGA& dga, std::mt19937_64& rng, std::size_t max_len) {
  Word w(rng() % (max_len + 1));
  for (auto& g : w) g = GenId{static_cast<std::uint32_t>(rng() % dga.size())};
  return w;
}

inline PropertyReport check_word_properties(const FreeDGA& dga, std::size_t count, std::uint64_t seed,
                                            std::size_t max_len = 6) {
  PropertyReport r;
  if (dga.size() == 0) return r;
  std::mt19937_64 rng(seed);
  for (; r.words < count; ++r.words) {
    const Word w = random_word(dga, rng, max_len);
    const std::size_t cut = rng() % (w.size() + 1);
    const Word w1(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut)), w2(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
    const Element dw = apply_differential(dga, w);
    if (dw != apply_differential(dga, w1) * Element::of(w2) + Element::of(w1) * apply_differential(dga, w2))
      ++r.leibniz_failures;
    const WordMeasure m = word_measurements(dga, w);
    for (const auto& v : dw) {
      const WordMeasure mv = word_measurements(dga, v);
      if (!(mv.action < m.action)) ++r.energy_failures;
      if (mv.degree != (m.degree + 1) % 2) ++r.grading_failures;
    }
  }
  return r;
}

}  // namespace lch
