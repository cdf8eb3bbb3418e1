#pragma once

// End-to-end comparison of the twisted-complex side and the surgered side.
//
//   twisted : hom_Tw(T, (L_1, ..., L_k; X)) with X built from eps
//   quotient: bilinearized homology of (T, surgered DGA) for eps restricted to the quotient
//   resolved: the same, with the surgered DGA re-derived from the diagram after smoothing
//             the surgery crossings

#include "lch/diagram.hpp"
#include "lch/twisted.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lch {

struct SurgeryFixture {
  std::string comment;
  LinkDiagram diagram;
  std::string test;
  std::vector<std::string> objects;
  std::vector<std::string> surgery;
  std::map<std::string, int> augmentation;
};

struct SurgeryFormulaReport {
  HomologyRanks twisted;
  HomologyRanks quotient;
  std::optional<HomologyRanks> resolved;
  std::size_t twisted_generators = 0;
  std::size_t quotient_generators = 0;
  std::size_t resolved_generators = 0;
  /// Chords of the surgered link on which the resolved augmentation differs from eps-bar.
  std::vector<std::string> corrected;
  /// Why the resolved pipeline could not be evaluated, if it could not.
  std::string note;

  bool pass() const noexcept { return resolved && twisted == quotient && quotient == *resolved; }
};

namespace detail {

// The smoothed diagram's DGA receives a map c -> c + (lower action terms) from the
// quotient, not a chord-for-chord identity, so eps-bar need not transfer by name. Keep
// eps-bar on every chord touching the test object and look for the augmentations that
// differ from it only on chords of the surgered link.
inline std::vector<Augmentation> corrected_augmentations(const FreeDGA& rdga, const Augmentation& base,
                                                         std::size_t test, std::size_t cap) {
  std::vector<GenId> free;
  for (GenId g : rdga.ids()) {
    const auto& gen = rdga.generator(g);
    if (gen.degree == 0 && gen.from_component != test && gen.to_component != test) free.push_back(g);
  }
  if (free.size() > cap)
    throw Error(ErrorKind::BudgetExceeded, std::to_string(free.size()) + " free degree-0 chords exceed the cap");
  std::vector<Augmentation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    Augmentation e = base;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1) e.set(free[i], !base(free[i]));
    if (is_augmentation(rdga, e)) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

inline SurgeryFormulaReport surgery_formula(const SurgeryFixture& f, DiscSearchOptions options = {}) {
  SurgeryFormulaReport r;
  const FreeDGA dga = diagram_to_dga(f.diagram, options);
  const Augmentation eps = augmentation_from_map(dga, f.augmentation);

  std::vector<std::string> order{f.test};
  order.insert(order.end(), f.objects.begin(), f.objects.end());
  const AInfData ainf = ainf_from_link(dga, order, eps);
  const TwistedComplex tw = build_mc_from_aug(ainf, f.objects, eps);
  const F2Complex twc = tw_hom_complex(ainf, f.test, tw);
  r.twisted = homology_f2(twc);
  r.twisted_generators = twc.size();

  const SurgeryQuotient q = surgery_quotient(dga, f.surgery, eps);
  const F2Complex qc = bilinearized_complex(q.dga, {f.test}, f.objects, q.eps, q.eps);
  r.quotient = homology_f2(qc);
  r.quotient_generators = qc.size();

  LinkDiagram resolved = f.diagram;
  for (const auto& chord : f.surgery) resolved = resolve_crossing(resolved, chord);
  const FreeDGA rdga = diagram_to_dga(resolved, options);
  Augmentation reps(rdga.size());
  for (GenId g : rdga.ids()) {
    auto src = q.dga.find(rdga.name(g));
    if (!src) {
      r.note = "resolved diagram has a chord '" + rdga.name(g) + "' unknown to the quotient";
      return r;
    }
    reps.set(g, q.eps(*src));
  }
  if (!is_augmentation(rdga, reps)) {
    auto found = detail::corrected_augmentations(rdga, reps, rdga.component(f.test), EnumerationOptions{}.cap);
    if (found.size() != 1) {
      r.note = "eps-bar does not transfer to the resolved DGA and " + std::to_string(found.size()) +
               " corrections on the surgered link exist";
      return r;
    }
    for (GenId g : rdga.ids())
      if (found.front()(g) != reps(g)) r.corrected.push_back(rdga.name(g));
    reps = found.front();
  }
  std::vector<std::string> rest;
  for (const auto& c : rdga.components())
    if (c != f.test) rest.push_back(c);
  const F2Complex rc = bilinearized_complex(rdga, {f.test}, rest, reps, reps);
  r.resolved = homology_f2(rc);
  r.resolved_generators = rc.size();
  return r;
}

}  // namespace lch
