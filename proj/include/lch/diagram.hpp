#pragma once

// Combinatorial Lagrangian projections of Legendrian links in standard contact R^3.
//
// A crossing has four ports 0..3 in counterclockwise order; ports p and p+2 lie on the
// same strand. Quadrant k is the sector between ports k and k+1. A quadrant is
// Reeb-positive when port k lies on the upper (over) branch. Edges are oriented strand
// segments leaving one port and arriving at another. Faces are traced with the face on
// the left; the area of a face is the signed sum of the heights at its corners, which
// must be positive for bounded faces and negative for the unbounded one.

#include "lch/algebra.hpp"

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lch {

struct PortRef {
  std::string crossing;
  int port = 0;
  bool operator==(const PortRef&) const = default;
};

struct CrossingData {
  std::string id;
  Rational height{1};
  /// quadrants[k] is true when quadrant k is Reeb-positive.
  std::array<bool, 4> positive{true, false, true, false};
  std::optional<int> degree_data;
  bool operator==(const CrossingData&) const = default;
};

struct EdgeData {
  PortRef from;
  PortRef to;
  std::string component;
  bool operator==(const EdgeData&) const = default;
};

struct DiagramData {
  std::string comment;
  std::vector<CrossingData> crossings;
  std::vector<EdgeData> edges;
  std::vector<std::string> contractible;
  std::map<std::string, int> component_shifts;
  /// Components without crossings (only produced by resolving crossings).
  std::vector<std::string> free_loops;
  bool operator==(const DiagramData&) const = default;
};

/// A directed traversal of an edge: index 2*e for the edge direction, 2*e+1 against it.
using Traversal = std::size_t;

struct Face {
  /// (crossing index, quadrant) in boundary order.
  std::vector<std::pair<std::size_t, int>> corners;
  std::vector<Traversal> boundary;
  Rational area{0};
  bool outer = false;
  std::size_t graph_component = 0;

  /// Combinatorial Euler measure of a polygon with right-angled corners.
  Rational euler_measure() const { return Rational(1) - Rational(static_cast<std::int64_t>(corners.size()), 4); }
};

class LinkDiagram {
 public:
  static LinkDiagram build(DiagramData data) {
    LinkDiagram d;
    d.data_ = std::move(data);
    d.analyze();
    return d;
  }

  const DiagramData& data() const noexcept { return data_; }
  std::size_t crossing_count() const noexcept { return data_.crossings.size(); }
  std::size_t edge_count() const noexcept { return data_.edges.size(); }
  const CrossingData& crossing(std::size_t x) const { return data_.crossings.at(x); }
  std::optional<std::size_t> find_crossing(std::string_view id) const {
    for (std::size_t i = 0; i < data_.crossings.size(); ++i)
      if (data_.crossings[i].id == id) return i;
    return std::nullopt;
  }
  const Rational& height(std::size_t x) const { return data_.crossings.at(x).height; }
  bool positive_quadrant(std::size_t x, int k) const { return data_.crossings.at(x).positive[static_cast<std::size_t>(mod4(k))]; }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  std::size_t face_of(Traversal t) const { return traversal_face_.at(t); }
  std::size_t quadrant_face(std::size_t x, int k) const { return face_of(departure(x, k)); }
  std::size_t left_face(std::size_t e) const { return face_of(2 * e); }
  std::size_t right_face(std::size_t e) const { return face_of(2 * e + 1); }

  /// Component labels: edge labels in order of first appearance, then free loops.
  const std::vector<std::string>& components() const noexcept { return components_; }
  std::size_t graph_component_of_crossing(std::size_t x) const { return crossing_graph_component_.at(x); }
  std::size_t graph_component_count() const noexcept { return graph_components_; }
  bool degenerate() const noexcept { return !data_.free_loops.empty(); }

  /// Traversal leaving crossing x through port p.
  Traversal departure(std::size_t x, int p) const {
    const auto& [e, departs] = port_edge_.at(x)[static_cast<std::size_t>(mod4(p))];
    return 2 * e + (departs ? 0 : 1);
  }
  /// Crossing and port at which traversal t arrives.
  std::pair<std::size_t, int> arrival(Traversal t) const {
    const auto& e = edges_.at(t / 2);
    return (t % 2 == 0) ? e.to : e.from;
  }
  std::pair<std::size_t, int> start(Traversal t) const {
    const auto& e = edges_.at(t / 2);
    return (t % 2 == 0) ? e.from : e.to;
  }

  int over_port_parity(std::size_t x) const { return data_.crossings.at(x).positive[0] ? 0 : 1; }
  bool is_over_port(std::size_t x, int p) const { return mod4(p) % 2 == over_port_parity(x); }
  /// Port through which the strand of port p leaves the crossing.
  int outgoing_port(std::size_t x, int p) const {
    p = mod4(p);
    return port_edge_.at(x)[static_cast<std::size_t>(p)].second ? p : mod4(p + 2);
  }
  bool positive_crossing(std::size_t x) const {
    int o = outgoing_port(x, over_port_parity(x));
    int u = outgoing_port(x, over_port_parity(x) + 1);
    return u == mod4(o + 1);
  }
  std::size_t over_component(std::size_t x) const { return port_component(x, over_port_parity(x)); }
  std::size_t under_component(std::size_t x) const { return port_component(x, over_port_parity(x) + 1); }
  std::size_t port_component(std::size_t x, int p) const {
    return edge_component_.at(port_edge_.at(x)[static_cast<std::size_t>(mod4(p))].first);
  }
  std::size_t edge_component(std::size_t e) const { return edge_component_.at(e); }

  /// Z/2 degree: 0 for positive crossings, 1 for negative ones, shifted on mixed
  /// crossings by the parities attached to both components.
  int degree(std::size_t x) const {
    int deg = positive_crossing(x) ? 0 : 1;
    std::size_t from = under_component(x), to = over_component(x);
    if (from != to) deg += shift(from) + shift(to);
    return deg % 2;
  }
  int shift(std::size_t component) const {
    auto it = data_.component_shifts.find(components_.at(component));
    return it == data_.component_shifts.end() ? 0 : ((it->second % 2) + 2) % 2;
  }
  bool contractible(std::size_t x) const {
    const auto& id = data_.crossings.at(x).id;
    return std::find(data_.contractible.begin(), data_.contractible.end(), id) != data_.contractible.end();
  }

  static int mod4(int p) { return ((p % 4) + 4) % 4; }

 private:
  struct IndexedEdge {
    std::pair<std::size_t, int> from;
    std::pair<std::size_t, int> to;
  };

  void analyze() {
    const auto& xs = data_.crossings;
    if (xs.empty() && data_.free_loops.empty())
      throw Error(ErrorKind::BadValence, "empty diagram: a Legendrian diagram needs at least one crossing");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i].id.empty()) throw Error(ErrorKind::Malformed, "crossing with empty id");
      if (!index.emplace(xs[i].id, i).second) throw Error(ErrorKind::Malformed, "duplicate crossing '" + xs[i].id + "'");
      if (xs[i].height <= Rational(0))
        throw Error(ErrorKind::NonpositiveAction, "crossing '" + xs[i].id + "' has nonpositive height");
      const auto& q = xs[i].positive;
      if (q[0] != q[2] || q[1] != q[3] || q[0] == q[1])
        throw Error(ErrorKind::Malformed, "quadrant signs at '" + xs[i].id + "' must alternate");
    }
    auto resolve = [&](const PortRef& ref) -> std::pair<std::size_t, int> {
      auto it = index.find(ref.crossing);
      if (it == index.end()) throw Error(ErrorKind::UnknownCrossing, "edge references unknown crossing '" + ref.crossing + "'");
      if (ref.port < 0 || ref.port > 3) throw Error(ErrorKind::BadValence, "port out of range at '" + ref.crossing + "'");
      return {it->second, ref.port};
    };

    port_edge_.assign(xs.size(), {});
    std::vector<std::array<bool, 4>> used(xs.size(), {false, false, false, false});
    for (std::size_t e = 0; e < data_.edges.size(); ++e) {
      IndexedEdge ie{resolve(data_.edges[e].from), resolve(data_.edges[e].to)};
      for (auto [end, departs] : {std::pair{ie.from, true}, std::pair{ie.to, false}}) {
        auto& slot = used[end.first][static_cast<std::size_t>(end.second)];
        if (slot)
          throw Error(ErrorKind::BadValence, "port " + std::to_string(end.second) + " of '" + xs[end.first].id + "' used twice");
        slot = true;
        port_edge_[end.first][static_cast<std::size_t>(end.second)] = {e, departs};
      }
      edges_.push_back(ie);
    }
    for (std::size_t x = 0; x < xs.size(); ++x) {
      for (int p = 0; p < 4; ++p) {
        if (!used[x][static_cast<std::size_t>(p)])
          throw Error(ErrorKind::BadValence, "crossing '" + xs[x].id + "' is missing port " + std::to_string(p));
      }
      for (int p = 0; p < 2; ++p) {
        bool a = port_edge_[x][static_cast<std::size_t>(p)].second;
        bool b = port_edge_[x][static_cast<std::size_t>(p + 2)].second;
        if (a == b) throw Error(ErrorKind::Malformed, "strand through ports " + std::to_string(p) + "/" + std::to_string(p + 2) + " of '" + xs[x].id + "' is not consistently oriented");
        const auto& in = data_.edges[port_edge_[x][static_cast<std::size_t>(a ? p + 2 : p)].first];
        const auto& out = data_.edges[port_edge_[x][static_cast<std::size_t>(a ? p : p + 2)].first];
        if (in.component != out.component)
          throw Error(ErrorKind::Malformed, "component label changes along a strand at '" + xs[x].id + "'");
      }
    }

    // Component labels and closed-curve check.
    for (const auto& e : data_.edges) {
      if (e.component.empty()) throw Error(ErrorKind::Malformed, "edge without component label");
      if (std::find(components_.begin(), components_.end(), e.component) == components_.end())
        components_.push_back(e.component);
    }
    for (const auto& loop : data_.free_loops) {
      if (std::find(components_.begin(), components_.end(), loop) != components_.end())
        throw Error(ErrorKind::Malformed, "free loop '" + loop + "' reuses a component label");
      components_.push_back(loop);
    }
    for (const auto& [name, s] : data_.component_shifts) {
      if (std::find(components_.begin(), components_.end(), name) == components_.end())
        throw Error(ErrorKind::UnknownComponent, "shift given for unknown component '" + name + "'");
    }
    edge_component_.resize(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e)
      edge_component_[e] = static_cast<std::size_t>(
          std::find(components_.begin(), components_.end(), data_.edges[e].component) - components_.begin());
    {
      std::vector<bool> seen(edges_.size(), false);
      std::vector<bool> label_done(components_.size(), false);
      for (std::size_t e0 = 0; e0 < edges_.size(); ++e0) {
        if (seen[e0]) continue;
        std::size_t label = edge_component_[e0];
        if (label_done[label])
          throw Error(ErrorKind::Malformed, "component '" + components_[label] + "' is not a single closed curve");
        label_done[label] = true;
        std::size_t e = e0;
        do {
          seen[e] = true;
          auto [y, p] = edges_[e].to;
          e = port_edge_[y][static_cast<std::size_t>(mod4(p + 2))].first;
        } while (e != e0);
      }
    }
    for (const auto& id : data_.contractible) {
      if (!index.count(id)) throw Error(ErrorKind::UnknownCrossing, "contractible flag on unknown crossing '" + id + "'");
    }

    // Graph components over crossings.
    std::vector<std::size_t> parent(xs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& e : edges_) parent[root(e.from.first)] = root(e.to.first);
    std::map<std::size_t, std::size_t> comp_index;
    crossing_graph_component_.resize(xs.size());
    for (std::size_t x = 0; x < xs.size(); ++x) {
      auto [it, _] = comp_index.emplace(root(x), comp_index.size());
      crossing_graph_component_[x] = it->second;
    }
    graph_components_ = comp_index.size();

    // Faces: follow each traversal, turning left at every crossing.
    traversal_face_.assign(2 * edges_.size(), SIZE_MAX);
    for (Traversal t0 = 0; t0 < 2 * edges_.size(); ++t0) {
      if (traversal_face_[t0] != SIZE_MAX) continue;
      Face f;
      f.graph_component = crossing_graph_component_[start(t0).first];
      Traversal t = t0;
      do {
        traversal_face_[t] = faces_.size();
        f.boundary.push_back(t);
        auto [y, p] = arrival(t);
        int k = mod4(p - 1);
        f.corners.emplace_back(y, k);
        f.area += positive_quadrant(y, k) ? height(y) : -height(y);
        t = departure(y, k);
      } while (t != t0);
      faces_.push_back(std::move(f));
    }
    std::vector<std::size_t> face_count(graph_components_, 0), vertex_count(graph_components_, 0);
    for (const auto& f : faces_) ++face_count[f.graph_component];
    for (std::size_t x = 0; x < xs.size(); ++x) ++vertex_count[crossing_graph_component_[x]];
    for (std::size_t c = 0; c < graph_components_; ++c) {
      // V - E + F = 2 with E = 2V.
      if (face_count[c] != vertex_count[c] + 2)
        throw Error(ErrorKind::NonPlanar, "face count " + std::to_string(face_count[c]) + " violates Euler's formula for " +
                                              std::to_string(vertex_count[c]) + " crossings");
    }
    for (std::size_t c = 0; c < graph_components_; ++c) {
      std::optional<std::size_t> outer;
      for (std::size_t i = 0; i < faces_.size(); ++i) {
        if (faces_[i].graph_component != c || faces_[i].area > Rational(0)) continue;
        if (outer || faces_[i].area == Rational(0))
          throw Error(ErrorKind::Malformed, "crossing heights are not realisable: more than one face has nonpositive area");
        outer = i;
      }
      if (!outer) throw Error(ErrorKind::Malformed, "crossing heights are not realisable: no unbounded face");
      faces_[*outer].outer = true;
    }

    for (std::size_t x = 0; x < xs.size(); ++x) {
      if (xs[x].degree_data && ((*xs[x].degree_data % 2) + 2) % 2 != degree(x))
        throw Error(ErrorKind::Malformed, "degree_data of '" + xs[x].id + "' disagrees with the rotation rule");
    }
  }

  DiagramData data_;
  std::vector<IndexedEdge> edges_;
  std::vector<std::array<std::pair<std::size_t, bool>, 4>> port_edge_;
  std::vector<std::size_t> edge_component_;
  std::vector<std::string> components_;
  std::vector<std::size_t> crossing_graph_component_;
  std::size_t graph_components_ = 0;
  std::vector<Face> faces_;
  std::vector<std::size_t> traversal_face_;
};

/// Immersed polygon with one positive convex corner and the rest negative.
struct AdmissibleDisc {
  std::size_t positive_crossing = 0;
  int positive_quadrant = 0;
  /// Negative corners in counterclockwise order after the positive corner.
  std::vector<std::size_t> negative_corners;
  std::vector<int> negative_quadrants;
  std::vector<int> face_multiplicities;
  std::vector<Traversal> walk;

  auto key() const { return std::tie(positive_crossing, negative_corners, face_multiplicities, walk); }
  bool operator==(const AdmissibleDisc& o) const { return key() == o.key() && positive_quadrant == o.positive_quadrant; }
  bool operator<(const AdmissibleDisc& o) const { return key() < o.key(); }
};

struct DiscSearchOptions {
  /// Maximum number of boundary-walk steps explored across the whole search.
  std::uint64_t budget = 50'000'000;
};

namespace detail {

/// Winding numbers of a closed boundary walk around every face. Faces of other graph
/// components and the unbounded face get zero.
inline std::vector<int> winding_numbers(const LinkDiagram& d, const std::vector<Traversal>& walk, std::size_t graph_component) {
  std::vector<int> flux(d.edge_count(), 0);
  for (Traversal t : walk) flux[t / 2] += (t % 2 == 0) ? 1 : -1;
  const auto& faces = d.faces();
  std::vector<std::optional<int>> n(faces.size());
  std::vector<std::size_t> queue;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (faces[f].graph_component != graph_component) n[f] = 0;
    else if (faces[f].outer) {
      n[f] = 0;
      queue.push_back(f);
    }
  }
  while (!queue.empty()) {
    std::size_t f = queue.back();
    queue.pop_back();
    for (Traversal t : faces[f].boundary) {
      // Face f lies to the left of t; the face across lies to the left of the reverse.
      std::size_t e = t / 2;
      int across_minus_here = (t % 2 == 0) ? -flux[e] : flux[e];
      std::size_t g = d.face_of(t ^ 1);
      if (!n[g]) {
        n[g] = *n[f] + across_minus_here;
        queue.push_back(g);
      }
    }
  }
  std::vector<int> out(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) out[f] = n[f].value_or(0);
  return out;
}

/// Checks that a closed boundary walk with the given corners bounds an immersed disc:
/// nonnegative multiplicities, immersion at every crossing, Euler measure of a disc.
/// `corner_at_step[i]` is true when the walk turns (takes a corner) after step i.
inline std::optional<std::vector<int>> disc_multiplicities(const LinkDiagram& d, const std::vector<Traversal>& walk,
                                                           const std::vector<bool>& corner_at_step, std::size_t corners,
                                                           std::size_t graph_component) {
  auto n = winding_numbers(d, walk, graph_component);
  for (int v : n)
    if (v < 0) return std::nullopt;
  std::vector<std::array<int, 4>> pieces(d.crossing_count(), {0, 0, 0, 0});
  for (std::size_t i = 0; i < walk.size(); ++i) {
    auto [y, p] = d.arrival(walk[i]);
    auto& q = pieces[y];
    if (corner_at_step[i]) {
      ++q[static_cast<std::size_t>(LinkDiagram::mod4(p - 1))];
    } else {
      ++q[static_cast<std::size_t>(LinkDiagram::mod4(p + 2))];
      ++q[static_cast<std::size_t>(LinkDiagram::mod4(p + 3))];
    }
  }
  for (std::size_t x = 0; x < d.crossing_count(); ++x) {
    std::array<int, 4> r{};
    for (int k = 0; k < 4; ++k) r[static_cast<std::size_t>(k)] = n[d.quadrant_face(x, k)] - pieces[x][static_cast<std::size_t>(k)];
    if (r[0] < 0 || r[0] != r[1] || r[1] != r[2] || r[2] != r[3]) return std::nullopt;
  }
  Rational euler{0};
  for (std::size_t f = 0; f < d.faces().size(); ++f) euler += d.faces()[f].euler_measure() * n[f];
  if (euler != Rational(1) - Rational(static_cast<std::int64_t>(corners), 4)) return std::nullopt;
  return n;
}

}  // namespace detail

/// Enumerates admissible discs by walking their boundaries counterclockwise from the
/// positive corner. Each closed walk is accepted when its face-multiplicity vector
/// describes an immersed disc. The search is bounded by the energy of the positive
/// corner: the area of every face times its multiplicity cannot exceed it.
inline std::vector<AdmissibleDisc> enumerate_admissible_discs(const LinkDiagram& d, DiscSearchOptions options = {}) {
  std::vector<AdmissibleDisc> out;
  if (d.crossing_count() > 0 && options.budget == 0)
    throw Error(ErrorKind::SearchBudgetExceeded, "disc search budget is zero");
  std::uint64_t steps = 0;
  const auto& faces = d.faces();

  for (std::size_t a = 0; a < d.crossing_count(); ++a) {
    const Rational top = d.height(a);
    const std::size_t gc = d.graph_component_of_crossing(a);
    for (int k = 0; k < 4; ++k) {
      if (!d.positive_quadrant(a, k)) continue;
      const int closing_port = LinkDiagram::mod4(k + 1);
      std::vector<int> uses(2 * d.edge_count(), 0);
      std::vector<Traversal> walk;
      std::vector<bool> corner_after;
      std::vector<std::size_t> negs;
      std::vector<int> neg_quadrants;
      Rational negsum{0};

      std::function<void(Traversal)> step = [&](Traversal t) {
        const auto& face = faces[d.face_of(t)];
        if (face.outer) return;
        // Each pass along an edge side needs its own sheet of the face on the left.
        Rational remaining = top - negsum;
        if (Rational(uses[t] + 1) * face.area > remaining) return;
        if (++steps > options.budget)
          throw Error(ErrorKind::SearchBudgetExceeded, "disc search exceeded " + std::to_string(options.budget) + " steps");
        ++uses[t];
        walk.push_back(t);
        corner_after.push_back(false);
        auto [y, p] = d.arrival(t);
        if (y == a && p == closing_port) {
          corner_after.back() = true;
          if (auto n = detail::disc_multiplicities(d, walk, corner_after, negs.size() + 1, gc)) {
            Rational area{0};
            for (std::size_t f = 0; f < faces.size(); ++f) area += faces[f].area * (*n)[f];
            if (area != top - negsum) throw Error(ErrorKind::Inconsistent, "disc area disagrees with corner energies");
            out.push_back(AdmissibleDisc{a, k, negs, neg_quadrants, *n, walk});
          }
          corner_after.back() = false;
        }
        step(d.departure(y, p + 2));
        const int q = LinkDiagram::mod4(p - 1);
        if (!d.positive_quadrant(y, q) && negsum + d.height(y) < top) {
          corner_after.back() = true;
          negs.push_back(y);
          neg_quadrants.push_back(q);
          negsum += d.height(y);
          step(d.departure(y, q));
          negsum -= d.height(y);
          neg_quadrants.pop_back();
          negs.pop_back();
          corner_after.back() = false;
        }
        walk.pop_back();
        corner_after.pop_back();
        --uses[t];
      };
      step(d.departure(a, k));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Chekanov-Eliashberg DGA of the diagram: one generator per crossing, differential
/// summing the negative-corner words of the admissible discs at each crossing.
inline FreeDGA diagram_to_dga(const LinkDiagram& d, DiscSearchOptions options = {}) {
  std::vector<Generator> gens;
  for (std::size_t x = 0; x < d.crossing_count(); ++x) {
    gens.push_back(Generator{d.crossing(x).id, d.degree(x), d.height(x), d.under_component(x), d.over_component(x)});
  }
  std::vector<Element> diff(gens.size());
  for (const auto& disc : enumerate_admissible_discs(d, options)) {
    Word w;
    for (std::size_t x : disc.negative_corners) w.push_back(GenId{static_cast<std::uint32_t>(x)});
    diff[disc.positive_crossing].toggle(std::move(w));
  }
  return FreeDGA(d.components(), std::move(gens), std::move(diff));
}

/// Replaces a contractible crossing by its orientation-compatible smoothing. Heights of
/// the other crossings are kept. Component labels: a merged component keeps the label
/// that comes first; when a component splits, the part through the earliest edge keeps
/// the label and the other part gets the label with a trailing apostrophe.
inline LinkDiagram resolve_crossing(const LinkDiagram& d, std::string_view crossing_id) {
  auto xo = d.find_crossing(crossing_id);
  if (!xo) throw Error(ErrorKind::UnknownCrossing, "no crossing named '" + std::string(crossing_id) + "'");
  const std::size_t x = *xo;
  if (!d.contractible(x)) throw Error(ErrorKind::NotContractible, "crossing '" + std::string(crossing_id) + "' is not flagged contractible");

  const auto& data = d.data();
  const int over_out = d.outgoing_port(x, d.over_port_parity(x));
  const int under_out = d.outgoing_port(x, d.over_port_parity(x) + 1);
  const int over_in = LinkDiagram::mod4(over_out + 2);
  const int under_in = LinkDiagram::mod4(under_out + 2);
  // Arrival port at x -> departure port at x after smoothing.
  std::array<int, 4> join{};
  join[static_cast<std::size_t>(over_in)] = under_out;
  join[static_cast<std::size_t>(under_in)] = over_out;

  // Quadrants cut off by the two smoothing arcs; the other two get joined.
  auto cut_quadrant = [](int in, int out) { return LinkDiagram::mod4(out) == LinkDiagram::mod4(in - 1) ? LinkDiagram::mod4(in - 1) : in; };
  std::set<int> cut{cut_quadrant(over_in, under_out), cut_quadrant(under_in, over_out)};
  std::vector<int> joined;
  for (int k = 0; k < 4; ++k)
    if (!cut.count(k)) joined.push_back(k);
  const bool shares_bounded_face = d.quadrant_face(x, joined[0]) == d.quadrant_face(x, joined[1]) &&
                                   !d.faces()[d.quadrant_face(x, joined[0])].outer;

  const std::string& xid = data.crossings[x].id;
  auto at_x = [&](const PortRef& r) { return r.crossing == xid; };
  auto edge_departing = [&](int port) {
    for (std::size_t e = 0; e < data.edges.size(); ++e)
      if (at_x(data.edges[e].from) && data.edges[e].from.port == port) return e;
    throw Error(ErrorKind::Malformed, "missing edge at resolved crossing");
  };

  struct NewEdge {
    EdgeData edge;
    std::size_t first_old;
  };
  std::vector<NewEdge> merged;
  std::vector<bool> absorbed(data.edges.size(), false);
  for (std::size_t e = 0; e < data.edges.size(); ++e) {
    if (at_x(data.edges[e].from)) continue;
    EdgeData ne = data.edges[e];
    absorbed[e] = true;
    std::size_t cur = e;
    while (at_x(data.edges[cur].to)) {
      cur = edge_departing(join[static_cast<std::size_t>(data.edges[cur].to.port)]);
      absorbed[cur] = true;
    }
    ne.to = data.edges[cur].to;
    merged.push_back({ne, e});
  }
  // Cycles through x alone become crossingless loops.
  std::vector<std::pair<std::string, std::size_t>> loops;
  for (std::size_t e = 0; e < data.edges.size(); ++e) {
    if (absorbed[e]) continue;
    std::size_t cur = e;
    do {
      absorbed[cur] = true;
      cur = edge_departing(join[static_cast<std::size_t>(data.edges[cur].to.port)]);
    } while (cur != e);
    loops.emplace_back(data.edges[e].component, e);
  }

  // Trace the new closed curves to relabel components.
  DiagramData out;
  out.comment = data.comment;
  for (const auto& c : data.crossings)
    if (c.id != xid) out.crossings.push_back(c);
  for (const auto& c : data.contractible)
    if (c != xid) out.contractible.push_back(c);

  const auto& old_labels = d.components();
  auto label_rank = [&](const std::string& l) { return std::find(old_labels.begin(), old_labels.end(), l) - old_labels.begin(); };

  struct Curve {
    std::vector<std::size_t> edges;  // indices into merged; empty for loops
    std::set<std::string> labels;
    std::size_t first_old;
    bool loop;
  };
  std::vector<Curve> curves;
  std::vector<bool> visited(merged.size(), false);
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (visited[i]) continue;
    Curve c{{}, {}, SIZE_MAX, false};
    std::size_t cur = i;
    do {
      visited[cur] = true;
      c.edges.push_back(cur);
      c.labels.insert(merged[cur].edge.component);
      c.first_old = std::min(c.first_old, merged[cur].first_old);
      const auto& to = merged[cur].edge.to;
      PortRef next{to.crossing, LinkDiagram::mod4(to.port + 2)};
      std::size_t nxt = SIZE_MAX;
      for (std::size_t j = 0; j < merged.size(); ++j)
        if (merged[j].edge.from == next) nxt = j;
      if (nxt == SIZE_MAX) throw Error(ErrorKind::Malformed, "broken strand after resolution");
      cur = nxt;
    } while (cur != i);
    curves.push_back(std::move(c));
  }
  for (const auto& [label, first] : loops) curves.push_back(Curve{{}, {label}, first, true});

  std::sort(curves.begin(), curves.end(), [](const Curve& a, const Curve& b) { return a.first_old < b.first_old; });
  std::set<std::string> taken;
  std::vector<std::string> names(curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::string best = *std::min_element(curves[i].labels.begin(), curves[i].labels.end(),
                                         [&](const std::string& a, const std::string& b) { return label_rank(a) < label_rank(b); });
    std::string name = best;
    while (taken.count(name)) name += "'";
    for (const auto& l : old_labels) {
      // Fresh names must not collide with labels kept by later curves.
      (void)l;
    }
    taken.insert(name);
    names[i] = name;
    auto it = data.component_shifts.find(best);
    if (it != data.component_shifts.end()) out.component_shifts[name] = it->second;
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].loop) {
      out.free_loops.push_back(names[i]);
      continue;
    }
    for (std::size_t m : curves[i].edges) merged[m].edge.component = names[i];
  }
  for (const auto& m : merged) out.edges.push_back(m.edge);
  for (const auto& l : data.free_loops) out.free_loops.push_back(l);

  LinkDiagram result = LinkDiagram::build(std::move(out));
  if (shares_bounded_face) {
    std::size_t before = 0, after = 0;
    std::set<std::size_t> seen_before;
    for (std::size_t y = 0; y < d.crossing_count(); ++y)
      if (y != x) seen_before.insert(d.graph_component_of_crossing(y));
    before = seen_before.size();
    after = result.graph_component_count();
    if (after > before)
      throw Error(ErrorKind::Malformed, "resolving '" + xid + "' nests one part of the diagram inside a face of another");
  }
  return result;
}

}  // namespace lch
