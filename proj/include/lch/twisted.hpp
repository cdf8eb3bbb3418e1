#pragma once

// Directed A-infinity data read off a link DGA, twisted complexes over it, and the
// Maurer-Cartan / cone computations.
//
// Objects are components in a chosen order. A mixed chord with rank(to) < rank(from) is
// a morphism in hom(to, from); chords the other way are order-reversing and are killed
// (words containing them span a differential ideal). For a morphism q0 each word of
// d(q0) whose morphism factors, read left to right, are q1, ..., qd contributes the
// product of the augmentation values of its pure factors to the coefficient of q0 in
// mu^d(qd, ..., q1).

#include "lch/linearized.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace lch {

/// Composable morphisms in word order q1, ..., qd.
using Chain = std::vector<GenId>;

struct AInfData {
  FreeDGA dga;
  std::vector<std::string> objects;
  /// Pure augmentation values (entries on mixed chords are ignored).
  Augmentation eps;
  /// rank of each DGA component in `objects`, or -1.
  std::vector<int> rank;
  /// Morphism generators, sorted by id.
  std::vector<GenId> morphisms;
  /// mu^d structure constants: inputs in word order -> outputs with coefficient 1.
  std::map<Chain, std::set<GenId>> ops;

  int source(GenId g) const { return rank.at(dga.generator(g).to_component); }
  int target(GenId g) const { return rank.at(dga.generator(g).from_component); }
  bool is_morphism(GenId g) const {
    const auto& gen = dga.generator(g);
    int a = rank.at(gen.to_component), b = rank.at(gen.from_component);
    return a >= 0 && b >= 0 && a < b;
  }
  bool is_reversing(GenId g) const {
    const auto& gen = dga.generator(g);
    int a = rank.at(gen.to_component), b = rank.at(gen.from_component);
    return a >= 0 && b >= 0 && a > b;
  }
  /// mu^d on a chain of generators; empty set when the entry is zero.
  const std::set<GenId>& mu(const Chain& chain) const {
    static const std::set<GenId> none;
    auto it = ops.find(chain);
    return it == ops.end() ? none : it->second;
  }
  std::size_t max_arity() const {
    std::size_t d = 0;
    for (const auto& [k, v] : ops) d = std::max(d, k.size());
    return d;
  }
};

inline AInfData ainf_from_link(const FreeDGA& dga, const std::vector<std::string>& object_order, const Augmentation& eps) {
  AInfData a;
  a.dga = dga;
  a.objects = object_order;
  a.eps = eps;
  a.rank.assign(dga.components().size(), -1);
  for (std::size_t i = 0; i < object_order.size(); ++i) {
    auto c = dga.component(object_order[i]);
    if (a.rank[c] >= 0) throw Error(ErrorKind::Malformed, "object '" + object_order[i] + "' listed twice");
    a.rank[c] = static_cast<int>(i);
  }
  if (eps.values.size() != dga.size()) throw Error(ErrorKind::UnknownGenerator, "augmentation size mismatch");
  for (std::size_t i = 0; i < object_order.size(); ++i) {
    if (auto chk = is_augmentation_on(dga, eps, {dga.component(object_order[i])}); !chk)
      throw Error(ErrorKind::NotAnAugmentation, "object '" + object_order[i] + "': " + chk.reason);
  }
  auto pure_object = [&](GenId g) {
    const auto& gen = dga.generator(g);
    return gen.is_pure() && a.rank[gen.from_component] >= 0;
  };
  for (GenId g : dga.ids())
    if (a.is_morphism(g)) a.morphisms.push_back(g);

  for (GenId q0 : a.morphisms) {
    const auto& top = dga.generator(q0);
    for (const auto& w : dga.differential(q0)) {
      bool dead = false;
      for (GenId f : w) {
        const auto& gen = dga.generator(f);
        if (a.rank[gen.from_component] < 0 || a.rank[gen.to_component] < 0 || a.is_reversing(f)) dead = true;
      }
      if (dead) continue;
      std::size_t cur = top.to_component;
      Chain chain;
      bool weight = true;
      for (GenId f : w) {
        const auto& gen = dga.generator(f);
        if (gen.to_component != cur)
          throw Error(ErrorKind::DirectednessViolation, "word " + dga.render(w) + " of d(" + top.name + ") is not composable");
        cur = gen.from_component;
        if (pure_object(f)) weight = weight && eps(f);
        else chain.push_back(f);
      }
      if (cur != top.from_component)
        throw Error(ErrorKind::DirectednessViolation, "word " + dga.render(w) + " of d(" + top.name + ") ends on the wrong component");
      if (!weight) continue;
      auto& out = a.ops[chain];
      if (!out.insert(q0).second) out.erase(q0);
      if (out.empty()) a.ops.erase(chain);
    }
  }
  return a;
}

/// All composable chains of morphisms of length 1..max_len (word order).
inline std::vector<Chain> composable_chains(const AInfData& a, std::size_t max_len) {
  std::vector<Chain> out, frontier;
  for (GenId g : a.morphisms) frontier.push_back({g});
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Chain> next;
    for (auto& c : frontier) {
      if (len < max_len) {
        for (GenId g : a.morphisms) {
          if (a.source(g) != a.target(c.back())) continue;
          Chain d = c;
          d.push_back(g);
          next.push_back(std::move(d));
        }
      }
      out.push_back(std::move(c));
    }
    frontier = std::move(next);
  }
  return out;
}

struct AInfRelationFailure {
  Chain chain;
  std::set<GenId> residual;
};

/// Exhaustive check of sum mu(..., mu(...), ...) = 0 on composable chains.
inline std::vector<AInfRelationFailure> check_ainf_relations(const AInfData& a) {
  std::vector<AInfRelationFailure> failures;
  const std::size_t n = a.objects.size();
  for (const auto& chain : composable_chains(a, n ? n - 1 : 0)) {
    std::set<GenId> total;
    const std::size_t d = chain.size();
    for (std::size_t s = 0; s < d; ++s) {
      for (std::size_t len = 1; s + len <= d; ++len) {
        Chain inner(chain.begin() + static_cast<std::ptrdiff_t>(s), chain.begin() + static_cast<std::ptrdiff_t>(s + len));
        for (GenId r : a.mu(inner)) {
          Chain outer(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(s));
          outer.push_back(r);
          outer.insert(outer.end(), chain.begin() + static_cast<std::ptrdiff_t>(s + len), chain.end());
          for (GenId o : a.mu(outer))
            if (!total.insert(o).second) total.erase(o);
        }
      }
    }
    if (!total.empty()) failures.push_back({chain, std::move(total)});
  }
  return failures;
}

/// Objects (a subsequence of the A-infinity objects) and the strictly upper triangular
/// matrix X, stored as the set of chords with coefficient 1.
struct TwistedComplex {
  std::vector<std::string> objects;
  std::set<GenId> entries;
  bool operator==(const TwistedComplex&) const = default;
};

namespace detail {

inline std::vector<int> tw_ranks(const AInfData& a, const TwistedComplex& tw) {
  std::vector<int> ranks;
  std::set<std::string> seen;
  for (const auto& o : tw.objects) {
    if (!seen.insert(o).second) throw Error(ErrorKind::ShapeMismatch, "object '" + o + "' appears twice in the twisted complex");
    auto c = a.dga.find_component(o);
    if (!c || a.rank[*c] < 0) throw Error(ErrorKind::ShapeMismatch, "'" + o + "' is not an object");
    ranks.push_back(a.rank[*c]);
  }
  if (!std::is_sorted(ranks.begin(), ranks.end()))
    throw Error(ErrorKind::ShapeMismatch, "twisted complex objects must follow the object order");
  return ranks;
}

inline void check_entries(const AInfData& a, const TwistedComplex& tw) {
  auto ranks = tw_ranks(a, tw);
  std::set<int> allowed(ranks.begin(), ranks.end());
  for (GenId g : tw.entries) {
    if (!a.is_morphism(g) || !allowed.count(a.source(g)) || !allowed.count(a.target(g)))
      throw Error(ErrorKind::ShapeMismatch, "entry '" + a.dga.name(g) + "' is not strictly upper triangular on the objects");
  }
}

/// Visits `chain` extended by every composable sequence of X entries.
template <class Visit>
void x_chains(const AInfData& a, const TwistedComplex& tw, Chain& chain, std::size_t max_len, Visit&& visit) {
  if (chain.size() > max_len) return;
  visit(chain);
  for (GenId x : tw.entries) {
    if (!chain.empty() && a.source(x) != a.target(chain.back())) continue;
    chain.push_back(x);
    x_chains(a, tw, chain, max_len, visit);
    chain.pop_back();
  }
}

}  // namespace detail

struct MaurerCartanReport {
  bool holds = true;
  std::set<GenId> residual;
};

/// Evaluates sum_d mu^d(X, ..., X). Chains longer than (#objects - 1) cannot be
/// composable, so the sum is finite.
inline MaurerCartanReport check_maurer_cartan(const AInfData& a, const TwistedComplex& tw) {
  detail::check_entries(a, tw);
  MaurerCartanReport r;
  Chain chain;
  detail::x_chains(a, tw, chain, a.objects.size(), [&](const Chain& c) {
    if (c.empty()) return;
    for (GenId o : a.mu(c))
      if (!r.residual.insert(o).second) r.residual.erase(o);
  });
  r.holds = r.residual.empty();
  return r;
}

/// X with x_ij = sum of the chords from L_j up to L_i with eps = 1.
inline TwistedComplex build_mc_from_aug(const AInfData& a, const std::vector<std::string>& objects, const Augmentation& eps) {
  TwistedComplex tw;
  tw.objects = objects;
  auto ranks = detail::tw_ranks(a, tw);
  std::set<std::size_t> comps;
  for (const auto& o : objects) comps.insert(a.dga.component(o));
  for (GenId g : a.dga.ids()) {
    const auto& gen = a.dga.generator(g);
    if (!comps.count(gen.from_component) || !comps.count(gen.to_component)) continue;
    if (gen.is_pure()) {
      if (eps(g) != a.eps(g))
        throw Error(ErrorKind::NotAnAugmentation, "eps differs from the object augmentation on '" + gen.name + "'");
      continue;
    }
    if (!eps(g)) continue;
    if (a.is_reversing(g)) throw Error(ErrorKind::OrderReversingNonzero, "eps is nonzero on order-reversing chord '" + gen.name + "'");
    tw.entries.insert(g);
  }
  if (auto chk = is_augmentation_on(a.dga, eps, comps); !chk) throw Error(ErrorKind::NotAnAugmentation, chk.reason);
  (void)ranks;
  return tw;
}

/// hom(T, twisted complex): the module spanned by morphisms from T to the twisted
/// complex's objects, with mu^1_Tw(q) = sum_k mu^{k+1}(X, ..., X, q).
inline F2Complex tw_hom_complex(const AInfData& a, const std::string& test, const TwistedComplex& tw) {
  if (auto mc = check_maurer_cartan(a, tw); !mc.holds)
    throw Error(ErrorKind::MaurerCartanViolated, "X does not satisfy the Maurer-Cartan equation");
  auto tc = a.dga.find_component(test);
  if (!tc || a.rank[*tc] < 0) throw Error(ErrorKind::ShapeMismatch, "test object '" + test + "' is not an object");
  const int t = a.rank[*tc];
  auto ranks = detail::tw_ranks(a, tw);
  std::set<int> members(ranks.begin(), ranks.end());
  if (members.count(t)) throw Error(ErrorKind::ShapeMismatch, "test object must not be part of the twisted complex");

  F2Complex c;
  std::map<GenId, std::size_t> index;
  for (const auto& o : tw.objects) {
    const int r = a.rank[a.dga.component(o)];
    for (GenId g : a.morphisms) {
      if (a.source(g) == t && a.target(g) == r) {
        index.emplace(g, c.generators.size());
        c.generators.emplace_back(a.dga.name(g), a.dga.generator(g).degree);
      }
    }
  }
  c.differential.resize(c.generators.size());
  for (const auto& [q, col] : index) {
    std::set<std::size_t> image;
    Chain chain{q};
    detail::x_chains(a, tw, chain, a.objects.size(), [&](const Chain& ch) {
      for (GenId o : a.mu(ch)) {
        auto it = index.find(o);
        if (it == index.end()) continue;
        if (!image.insert(it->second).second) image.erase(it->second);
      }
    });
    c.differential[col].assign(image.begin(), image.end());
  }
  return c;
}

struct ChopReport {
  HomologyRanks whole;
  HomologyRanks first;  // hom(T, L_0)
  HomologyRanks rest;   // hom_Tw(T, twisted complex on L_1..L_k)
  bool acyclic = false;
  /// The connecting map of the cone is odd, so H_0 and H_1 swap.
  bool equal() const noexcept { return first.h0 == rest.h1 && first.h1 == rest.h0; }
  bool total_equal() const noexcept { return first.total() == rest.total(); }
};

inline ChopReport chop_rank_check(const AInfData& a, const std::string& test, const TwistedComplex& tw) {
  if (tw.objects.empty()) throw Error(ErrorKind::ShapeMismatch, "twisted complex has no objects");
  ChopReport r;
  r.whole = homology_f2(tw_hom_complex(a, test, tw));
  r.acyclic = r.whole.total() == 0;
  TwistedComplex first{{tw.objects.front()}, {}};
  TwistedComplex rest{{tw.objects.begin() + 1, tw.objects.end()}, {}};
  std::set<int> rest_ranks;
  for (const auto& o : rest.objects) rest_ranks.insert(a.rank[a.dga.component(o)]);
  for (GenId x : tw.entries)
    if (rest_ranks.count(a.source(x)) && rest_ranks.count(a.target(x))) rest.entries.insert(x);
  r.first = homology_f2(tw_hom_complex(a, test, first));
  r.rest = rest.objects.empty() ? HomologyRanks{} : homology_f2(tw_hom_complex(a, test, rest));
  return r;
}

}  // namespace lch
