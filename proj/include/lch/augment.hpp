#pragma once

// Augmentations: checking, exhaustive enumeration, the action-filtered inductive
// construction for triangle-structured differentials, and the surgery quotient.

#include "lch/algebra.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lch {

/// Values of a graded algebra map to F2, indexed by generator id.
struct Augmentation {
  std::vector<bool> values;

  Augmentation() = default;
  explicit Augmentation(std::size_t n) : values(n, false) {}

  bool operator()(GenId g) const { return values.at(g.value); }
  void set(GenId g, bool v) { values.at(g.value) = v; }

  /// Multiplicative extension; the unit evaluates to 1.
  bool eval(const Word& w) const {
    for (GenId g : w)
      if (!values.at(g.value)) return false;
    return true;
  }
  bool eval(const Element& e) const {
    bool acc = false;
    for (const auto& w : e) acc ^= eval(w);
    return acc;
  }
  bool operator==(const Augmentation&) const = default;
  bool operator<(const Augmentation& o) const { return values < o.values; }
};

inline Augmentation augmentation_from_map(const FreeDGA& dga, const std::map<std::string, int>& values) {
  Augmentation eps(dga.size());
  for (const auto& [name, v] : values) {
    if (v != 0 && v != 1) throw Error(ErrorKind::Malformed, "augmentation value of '" + name + "' must be 0 or 1");
    eps.set(dga.id(name), v == 1);
  }
  return eps;
}

struct AugmentationCheck {
  bool ok = true;
  std::optional<GenId> witness;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

inline AugmentationCheck is_augmentation(const FreeDGA& dga, const Augmentation& eps) {
  if (eps.values.size() != dga.size())
    throw Error(ErrorKind::UnknownGenerator, "augmentation has " + std::to_string(eps.values.size()) + " values for " +
                                                 std::to_string(dga.size()) + " generators");
  for (GenId g : dga.ids()) {
    if (eps(g) && dga.generator(g).degree != 0) return {false, g, "nonzero value on odd generator " + dga.name(g)};
  }
  for (GenId g : dga.ids()) {
    if (eps.eval(dga.differential(g))) return {false, g, "eps(d " + dga.name(g) + ") = 1"};
  }
  return {};
}

struct EnumerationOptions {
  std::size_t cap = 24;
};

/// All augmentations, in lexicographic order of the degree-0 values (first generator
/// most significant).
inline std::vector<Augmentation> enumerate_augmentations(const FreeDGA& dga, EnumerationOptions options = {}) {
  std::vector<GenId> even;
  for (GenId g : dga.ids())
    if (dga.generator(g).degree == 0) even.push_back(g);
  if (even.size() > options.cap || even.size() > 62)
    throw Error(ErrorKind::BudgetExceeded, std::to_string(even.size()) + " degree-0 generators exceed the enumeration cap of " +
                                               std::to_string(options.cap));
  const std::size_t n = even.size();
  std::vector<int> bit(dga.size(), -1);
  for (std::size_t i = 0; i < n; ++i) bit[even[i].value] = static_cast<int>(n - 1 - i);

  // Every word becomes the mask of degree-0 generators it needs; words with an odd
  // factor never contribute.
  std::vector<std::vector<std::uint64_t>> constraints;
  for (GenId g : dga.ids()) {
    std::vector<std::uint64_t> masks;
    for (const auto& w : dga.differential(g)) {
      std::uint64_t m = 0;
      bool dead = false;
      for (GenId f : w) {
        if (bit[f.value] < 0) {
          dead = true;
          break;
        }
        m |= std::uint64_t{1} << bit[f.value];
      }
      if (!dead) masks.push_back(m);
    }
    if (!masks.empty()) constraints.push_back(std::move(masks));
  }

  std::vector<Augmentation> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < total; ++s) {
    bool ok = true;
    for (const auto& masks : constraints) {
      bool acc = false;
      for (std::uint64_t m : masks) acc ^= (s & m) == m;
      if (acc) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Augmentation eps(dga.size());
    for (std::size_t i = 0; i < n; ++i) eps.values[even[i].value] = (s >> (n - 1 - i)) & 1;
    out.push_back(std::move(eps));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Triangle-structured differentials.

enum class ChordType { A, B, C, Reversing };

struct ChordRole {
  ChordType type = ChordType::Reversing;
  int i = 0;
  int j = 0;
  bool operator==(const ChordRole&) const = default;
};

/// Classification of the mixed chords of a link L ∪ D_1 ∪ ... ∪ D_k:
///   a_i : D_i -> L, degree 0          b_ij : D_i -> L, degree 1
///   c_ij: D_i -> D_j (i < j), degree 0  everything else: order-reversing.
/// The object order is L, D_k, ..., D_1.
struct TriangleStructure {
  std::string test;
  std::vector<std::string> discs;
  std::map<std::string, ChordRole> chords;
  /// Values of the pure augmentations; generators not listed are 0.
  std::map<std::string, int> pure_values;
  bool operator==(const TriangleStructure&) const = default;

  std::vector<std::string> object_order() const {
    std::vector<std::string> order{test};
    for (auto it = discs.rbegin(); it != discs.rend(); ++it) order.push_back(*it);
    return order;
  }
};

struct InductionResult {
  Augmentation eps;
  /// c-chords in the order they were solved.
  std::vector<GenId> solve_order;
};

inline InductionResult filtered_induction(const FreeDGA& dga, const TriangleStructure& s) {
  auto shape = [](const std::string& m) { return Error(ErrorKind::ShapeViolation, m); };
  const int k = static_cast<int>(s.discs.size());
  const std::size_t L = dga.component(s.test);
  std::vector<std::size_t> D;
  for (const auto& name : s.discs) D.push_back(dga.component(name));
  auto disc_index = [&](std::size_t comp) -> int {
    for (int i = 0; i < k; ++i)
      if (D[static_cast<std::size_t>(i)] == comp) return i + 1;
    return 0;
  };

  std::vector<std::optional<ChordRole>> role(dga.size());
  for (const auto& [name, r] : s.chords) {
    GenId g = dga.id(name);
    const auto& gen = dga.generator(g);
    if (gen.is_pure()) throw shape("classified chord '" + name + "' is pure");
    const int fi = disc_index(gen.from_component), ti = disc_index(gen.to_component);
    bool fits = true;
    switch (r.type) {
      case ChordType::A:
        fits = gen.degree == 0 && gen.to_component == L && fi == r.i && r.i >= 1;
        break;
      case ChordType::B:
        fits = gen.degree == 1 && gen.to_component == L && fi == r.i && r.i >= 1 && r.j > r.i && r.j <= k;
        break;
      case ChordType::C:
        fits = gen.degree == 0 && fi == r.i && ti == r.j && r.i >= 1 && r.j > r.i;
        break;
      case ChordType::Reversing:
        break;
    }
    if (!fits) throw shape("chord '" + name + "' does not match its declared type");
    role[g.value] = r;
  }
  for (GenId g : dga.ids()) {
    if (dga.generator(g).is_mixed() && !role[g.value])
      throw shape("mixed chord '" + dga.name(g) + "' is not classified");
  }
  std::vector<std::optional<GenId>> a_of(static_cast<std::size_t>(k) + 1);
  for (GenId g : dga.ids()) {
    if (role[g.value] && role[g.value]->type == ChordType::A) {
      auto& slot = a_of[static_cast<std::size_t>(role[g.value]->i)];
      if (slot) throw shape("two a-chords on disc " + std::to_string(role[g.value]->i));
      slot = g;
    }
  }
  for (int i = 1; i <= k; ++i)
    if (!a_of[static_cast<std::size_t>(i)]) throw shape("no a-chord on disc " + std::to_string(i));

  auto is = [&](GenId g, ChordType t) { return role[g.value] && role[g.value]->type == t; };
  auto has_reversing = [&](const Word& w) {
    for (GenId f : w)
      if (is(f, ChordType::Reversing)) return true;
    return false;
  };

  // Shape of the differential.
  std::map<GenId, GenId> pair_of_b;
  for (GenId g : dga.ids()) {
    if (is(g, ChordType::A)) {
      for (const auto& w : dga.differential(g))
        if (!has_reversing(w)) throw shape("d(" + dga.name(g) + ") has a word " + dga.render(w) + " outside the reversing ideal");
    } else if (is(g, ChordType::C)) {
      for (const auto& w : dga.differential(g)) {
        if (has_reversing(w)) continue;
        for (GenId f : w)
          if (is(f, ChordType::A) || is(f, ChordType::B))
            throw shape("d(" + dga.name(g) + ") contains " + dga.render(w) + ", which is not a word in lower c-chords");
      }
    } else if (is(g, ChordType::B)) {
      const auto& r = *role[g.value];
      std::optional<GenId> paired;
      for (const auto& w : dga.differential(g)) {
        if (has_reversing(w)) continue;
        if (w.size() == 2 && w[0] == *a_of[static_cast<std::size_t>(r.j)] && is(w[1], ChordType::C) &&
            role[w[1].value]->i == r.i && role[w[1].value]->j == r.j) {
          if (paired) throw shape("d(" + dga.name(g) + ") contains two words a_j*c");
          paired = w[1];
        }
      }
      if (!paired) throw shape("d(" + dga.name(g) + ") has no word a_j*c_ij");
      pair_of_b[g] = *paired;
    }
  }

  // Distinct actions of c-chords per index.
  std::map<int, std::vector<GenId>> c_by_index;
  for (GenId g : dga.ids())
    if (is(g, ChordType::C)) c_by_index[role[g.value]->i].push_back(g);
  for (auto& [i, cs] : c_by_index) {
    std::sort(cs.begin(), cs.end(), [&](GenId x, GenId y) {
      const auto &ax = dga.generator(x).action, &ay = dga.generator(y).action;
      return ax != ay ? ax < ay : x < y;
    });
    for (std::size_t n = 1; n < cs.size(); ++n) {
      if (dga.generator(cs[n]).action == dga.generator(cs[n - 1]).action)
        throw Error(ErrorKind::DistinctActionsRequired,
                    "c-chords '" + dga.name(cs[n - 1]) + "' and '" + dga.name(cs[n]) + "' have equal action");
    }
  }

  // Initial values: a = 1, b = 0, reversing = 0, pure as supplied; c pending.
  std::vector<std::optional<bool>> value(dga.size());
  for (GenId g : dga.ids()) {
    if (!role[g.value]) value[g.value] = false;
    else if (role[g.value]->type == ChordType::A) value[g.value] = true;
    else if (role[g.value]->type != ChordType::C) value[g.value] = false;
  }
  for (const auto& [name, v] : s.pure_values) {
    GenId g = dga.id(name);
    if (dga.generator(g).is_mixed()) throw shape("pure value given for mixed chord '" + name + "'");
    if (v != 0 && v != 1) throw Error(ErrorKind::Malformed, "pure value of '" + name + "' must be 0 or 1");
    value[g.value] = v == 1;
  }
  auto eval_word = [&](const Word& w) {
    // A zero factor anywhere kills the word, but every factor must already be known.
    bool acc = true;
    for (GenId f : w) {
      if (!value[f.value]) throw shape("solver needs the value of '" + dga.name(f) + "' before it is determined");
      acc = acc && *value[f.value];
    }
    return acc;
  };

  InductionResult result;
  for (auto it = c_by_index.rbegin(); it != c_by_index.rend(); ++it) {
    for (GenId c : it->second) {
      std::vector<GenId> bs;
      for (const auto& [b, pc] : pair_of_b)
        if (pc == c) bs.push_back(b);
      std::sort(bs.begin(), bs.end(), [&](GenId x, GenId y) {
        const auto &ax = dga.generator(x).action, &ay = dga.generator(y).action;
        return ax != ay ? ax < ay : x < y;
      });
      std::optional<bool> solved;
      for (GenId b : bs) {
        const Word pairing{*a_of[static_cast<std::size_t>(role[b.value]->j)], c};
        bool rest = false;
        for (const auto& w : dga.differential(b)) {
          if (w == pairing || has_reversing(w)) continue;
          rest ^= eval_word(w);
        }
        if (!solved) solved = rest;
        else if (*solved != rest)
          throw Error(ErrorKind::Inconsistent, "constraints from d(" + dga.name(b) + ") contradict an earlier value of " + dga.name(c));
      }
      value[c.value] = solved.value_or(false);
      result.solve_order.push_back(c);
    }
  }

  result.eps = Augmentation(dga.size());
  for (GenId g : dga.ids()) result.eps.set(g, value[g.value].value_or(false));
  if (auto check = is_augmentation(dga, result.eps); !check)
    throw Error(ErrorKind::Inconsistent, "induced map is not an augmentation: " + check.reason);
  return result;
}

// ---------------------------------------------------------------------------
// Surgery quotient by the two-sided ideal generated by (a_i - 1).

struct SurgeryQuotient {
  FreeDGA dga;
  Augmentation eps;
  /// Image of each original generator: a generator of the quotient, or nullopt for 1.
  std::vector<std::optional<GenId>> projection;

  Word project(const Word& w) const {
    Word out;
    for (GenId g : w)
      if (auto p = projection.at(g.value)) out.push_back(*p);
    return out;
  }
  Element project(const Element& e) const {
    Element out;
    for (const auto& w : e) out.toggle(project(w));
    return out;
  }
};

inline SurgeryQuotient surgery_quotient(const FreeDGA& dga, const std::vector<std::string>& chords, const Augmentation& eps) {
  std::set<GenId> surgered;
  for (const auto& name : chords) {
    GenId g = dga.id(name);
    if (dga.generator(g).degree != 0) throw Error(ErrorKind::DegreeObstruction, "surgery chord '" + name + "' has odd degree");
    if (eps.values.size() != dga.size() || !eps(g))
      throw Error(ErrorKind::NotUnitValued, "augmentation does not send '" + name + "' to 1");
    surgered.insert(g);
  }
  if (auto check = is_augmentation(dga, eps); !check)
    throw Error(ErrorKind::NotAnAugmentation, check.reason);

  SurgeryQuotient q;
  q.projection.resize(dga.size());
  std::vector<Generator> gens;
  for (GenId g : dga.ids()) {
    if (surgered.count(g)) continue;
    q.projection[g.value] = GenId{static_cast<std::uint32_t>(gens.size())};
    gens.push_back(dga.generator(g));
  }
  auto project = [&](const Element& e) {
    Element out;
    for (const auto& w : e) {
      Word pw;
      for (GenId f : w)
        if (auto p = q.projection[f.value]) pw.push_back(*p);
      out.toggle(std::move(pw));
    }
    return out;
  };
  for (GenId a : surgered) {
    Element image = project(dga.differential(a));
    if (!image.is_zero())
      throw Error(ErrorKind::QuotientNotClosed, "d(" + dga.name(a) + ") does not vanish in the quotient");
  }
  std::vector<Element> diff;
  for (GenId g : dga.ids())
    if (!surgered.count(g)) diff.push_back(project(dga.differential(g)));
  q.dga = FreeDGA(dga.components(), std::move(gens), std::move(diff));
  q.eps = Augmentation(q.dga.size());
  for (GenId g : dga.ids())
    if (auto p = q.projection[g.value]) q.eps.set(*p, eps(g));
  return q;
}

}  // namespace lch
