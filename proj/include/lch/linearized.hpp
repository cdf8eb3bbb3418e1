#pragma once

// Bilinearized complexes on mixed chords and their homology over F2.

#include "lch/augment.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lch {

/// Z/2-graded complex over F2. Column j lists the (sorted) targets of generator j.
struct F2Complex {
  std::vector<std::pair<std::string, int>> generators;
  std::vector<std::vector<std::size_t>> differential;

  std::size_t size() const noexcept { return generators.size(); }
  bool operator==(const F2Complex&) const = default;
};

struct HomologyRanks {
  std::size_t h0 = 0;
  std::size_t h1 = 0;
  std::size_t total() const noexcept { return h0 + h1; }
  bool operator==(const HomologyRanks&) const = default;
};

namespace detail {

/// Column reduction; each column is reduced until its lowest entry is unclaimed.
inline std::vector<std::vector<std::size_t>> reduce_columns(std::vector<std::vector<std::size_t>> cols) {
  std::map<std::size_t, std::size_t> owner;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto& c = cols[j];
    while (!c.empty()) {
      auto it = owner.find(c.front());
      if (it == owner.end()) {
        owner.emplace(c.front(), j);
        break;
      }
      std::vector<std::size_t> sum;
      std::set_symmetric_difference(c.begin(), c.end(), cols[it->second].begin(), cols[it->second].end(),
                                    std::back_inserter(sum));
      c = std::move(sum);
    }
  }
  return cols;
}

inline std::vector<std::size_t> apply(const F2Complex& c, const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (std::size_t j : v) {
    std::vector<std::size_t> sum;
    std::set_symmetric_difference(out.begin(), out.end(), c.differential[j].begin(), c.differential[j].end(),
                                  std::back_inserter(sum));
    out = std::move(sum);
  }
  return out;
}

}  // namespace detail

/// Throws NotAComplex unless the differential is odd and squares to zero.
inline void validate_complex(const F2Complex& c) {
  if (c.differential.size() != c.size()) throw Error(ErrorKind::NotAComplex, "differential has the wrong number of columns");
  for (std::size_t j = 0; j < c.size(); ++j) {
    const auto& col = c.differential[j];
    if (!std::is_sorted(col.begin(), col.end()) || std::adjacent_find(col.begin(), col.end()) != col.end())
      throw Error(ErrorKind::NotAComplex, "column of '" + c.generators[j].first + "' is not a sorted set");
    for (std::size_t i : col) {
      if (i >= c.size()) throw Error(ErrorKind::NotAComplex, "differential refers to a missing generator");
      if (c.generators[i].second % 2 == c.generators[j].second % 2)
        throw Error(ErrorKind::NotAComplex, "differential of '" + c.generators[j].first + "' preserves degree");
    }
    if (!detail::apply(c, col).empty())
      throw Error(ErrorKind::NotAComplex, "d^2 is nonzero on '" + c.generators[j].first + "'");
  }
}

inline HomologyRanks homology_f2(const F2Complex& c) {
  validate_complex(c);
  std::size_t n[2] = {0, 0}, r[2] = {0, 0};
  for (const auto& g : c.generators) ++n[g.second % 2];
  for (int deg = 0; deg < 2; ++deg) {
    std::vector<std::vector<std::size_t>> cols;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c.generators[j].second % 2 == deg) cols.push_back(c.differential[j]);
    for (const auto& col : detail::reduce_columns(std::move(cols)))
      if (!col.empty()) ++r[deg];
  }
  // H_d = ker(d on degree d) / im(d into degree d)
  return {n[0] - r[0] - r[1], n[1] - r[1] - r[0]};
}

/// Does the augmentation vanish on d(g) for every generator inside `comps`? Generators
/// with an endpoint outside `comps` are evaluated as 0.
inline AugmentationCheck is_augmentation_on(const FreeDGA& dga, const Augmentation& eps, const std::set<std::size_t>& comps) {
  auto inside = [&](GenId g) {
    const auto& gen = dga.generator(g);
    return comps.count(gen.from_component) && comps.count(gen.to_component);
  };
  Augmentation restricted(dga.size());
  for (GenId g : dga.ids()) {
    if (!inside(g)) continue;
    if (eps(g) && dga.generator(g).degree != 0) return {false, g, "nonzero value on odd generator " + dga.name(g)};
    restricted.set(g, eps(g));
  }
  for (GenId g : dga.ids()) {
    if (inside(g) && restricted.eval(dga.differential(g))) return {false, g, "eps(d " + dga.name(g) + ") = 1"};
  }
  return {};
}

/// Bilinearized complex of chords from group1 up to group0. For a chord q+ each word of
/// d(q+) of the form p0 * q- * p1, with p0 inside group0 and p1 inside group1,
/// contributes eps0(p0) eps1(p1) to the coefficient of q+ in the differential of q-.
/// Words through chords running from group0 up to group1, or through components in
/// neither group, are discarded (they lie in a differential ideal).
inline F2Complex bilinearized_complex(const FreeDGA& dga, const std::vector<std::string>& group0,
                                      const std::vector<std::string>& group1, const Augmentation& eps0,
                                      const Augmentation& eps1) {
  std::set<std::size_t> g0, g1;
  for (const auto& c : group0) g0.insert(dga.component(c));
  for (const auto& c : group1) {
    if (g0.count(dga.component(c))) throw Error(ErrorKind::Malformed, "component '" + c + "' is in both groups");
    g1.insert(dga.component(c));
  }
  if (g0.empty() || g1.empty()) throw Error(ErrorKind::Malformed, "both component groups must be nonempty");
  if (auto chk = is_augmentation_on(dga, eps0, g0); !chk) throw Error(ErrorKind::NotAnAugmentation, "eps0: " + chk.reason);
  if (auto chk = is_augmentation_on(dga, eps1, g1); !chk) throw Error(ErrorKind::NotAnAugmentation, "eps1: " + chk.reason);

  enum class Kind { Block0, Block1, Forward, Backward, Outside };
  auto kind = [&](GenId g) {
    const auto& gen = dga.generator(g);
    const bool t0 = g0.count(gen.to_component), t1 = g1.count(gen.to_component);
    const bool f0 = g0.count(gen.from_component), f1 = g1.count(gen.from_component);
    if (t0 && f0) return Kind::Block0;
    if (t1 && f1) return Kind::Block1;
    if (t0 && f1) return Kind::Forward;
    if (t1 && f0) return Kind::Backward;
    return Kind::Outside;
  };

  F2Complex c;
  std::map<GenId, std::size_t> index;
  for (GenId g : dga.ids()) {
    if (kind(g) != Kind::Forward) continue;
    index.emplace(g, c.generators.size());
    c.generators.emplace_back(dga.name(g), dga.generator(g).degree);
  }
  c.differential.resize(c.generators.size());
  std::vector<std::set<std::size_t>> cols(c.generators.size());
  for (const auto& [qp, row] : index) {
    for (const auto& w : dga.differential(qp)) {
      bool skip = false;
      std::vector<std::size_t> forward;
      for (std::size_t i = 0; i < w.size(); ++i) {
        Kind k = kind(w[i]);
        if (k == Kind::Backward || k == Kind::Outside) skip = true;
        if (k == Kind::Forward) forward.push_back(i);
      }
      if (skip) continue;
      if (forward.size() != 1)
        throw Error(ErrorKind::MixedWordViolation, "word " + dga.render(w) + " of d(" + dga.name(qp) + ") has " +
                                                       std::to_string(forward.size()) + " chords between the groups");
      const std::size_t m = forward.front();
      bool weight = true;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i == m) continue;
        Kind k = kind(w[i]);
        if ((i < m && k != Kind::Block0) || (i > m && k != Kind::Block1))
          throw Error(ErrorKind::MixedWordViolation, "word " + dga.render(w) + " of d(" + dga.name(qp) + ") is not composable");
        weight = weight && (i < m ? eps0(w[i]) : eps1(w[i]));
      }
      if (!weight) continue;
      auto& col = cols[index.at(w[m])];
      if (!col.insert(row).second) col.erase(row);
    }
  }
  for (std::size_t j = 0; j < cols.size(); ++j) c.differential[j].assign(cols[j].begin(), cols[j].end());
  return c;
}

/// DGA of the sublink on `comps`: generators with both ends inside, and words through any
/// other chord dropped. Such words lie in a differential ideal, since a word starting and
/// ending inside can only leave through a chord that is not inside.
inline FreeDGA sub_dga(const FreeDGA& dga, const std::vector<std::string>& comps) {
  std::set<std::size_t> keep;
  for (const auto& c : comps) keep.insert(dga.component(c));
  auto inside = [&](GenId g) {
    const auto& gen = dga.generator(g);
    return keep.count(gen.from_component) && keep.count(gen.to_component);
  };
  std::vector<GeneratorSpec> specs;
  DiffTable diff;
  for (GenId g : dga.ids()) {
    if (!inside(g)) continue;
    const auto& gen = dga.generator(g);
    specs.push_back({gen.name, gen.degree, gen.action, dga.components()[gen.from_component], dga.components()[gen.to_component]});
    auto& words = diff[gen.name];
    for (const auto& w : dga.differential(g)) {
      if (!std::all_of(w.begin(), w.end(), inside)) continue;
      WordSpec ws;
      for (GenId f : w) ws.push_back(dga.name(f));
      words.push_back(std::move(ws));
    }
  }
  std::vector<std::string> names;
  for (std::size_t c = 0; c < dga.components().size(); ++c)
    if (keep.count(c)) names.push_back(dga.components()[c]);
  return make_dga(specs, diff, names);
}

}  // namespace lch
