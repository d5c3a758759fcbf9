#pragma once

// Parabolic subsystems of face Levis and the restriction diagram over the
// face poset of the fundamental alcove.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affinelie/alcove.hpp"
#include "affinelie/centralizer.hpp"
#include "affinelie/weylaff.hpp"

namespace affinelie {

/// The parabolic of Phi_J relative to J' (an arrow J -> J'). The parabolic
/// root set is levi + nilradical; ambient = levi + nilradical + (-nilradical).
struct ParabolicData {
  std::vector<AffineRoot> ambient;
  std::vector<AffineRoot> levi;
  std::vector<AffineRoot> nilradical;

  std::vector<AffineRoot> roots() const {
    std::vector<AffineRoot> r = levi;
    r.insert(r.end(), nilradical.begin(), nilradical.end());
    std::sort(r.begin(), r.end());
    return r;
  }
};

inline ParabolicData parabolic(const AffineSystem& sys, const Face& j, const Face& jp) {
  const FaceCategory& cat = sys.faces();
  if (!cat.has_arrow(cat.index_of_mask(j.mask), cat.index_of_mask(jp.mask)))
    throw std::invalid_argument("parabolic: no arrow " + j.label() + " -> " + jp.label());
  ParabolicData p;
  p.ambient = centralizer_face(sys, j).phi;
  for (const auto& a : p.ambient) {
    int s = eval_affine_root(sys.rs(), a, jp.witness).sign();
    if (s == 0) p.levi.push_back(a);
    if (s > 0) p.nilradical.push_back(a);
  }
  return p;
}

/// Transitivity of parabolic restriction along J -> J' -> J''.
inline bool compose_parabolics(const AffineSystem& sys, const Face& j, const Face& jp, const Face& jpp) {
  ParabolicData outer = parabolic(sys, jp, jpp);
  ParabolicData inner = parabolic(sys, j, jp);
  std::set<AffineRoot> composed;
  for (const auto& a : outer.roots()) composed.insert(a);
  for (const auto& a : inner.nilradical) composed.insert(a);
  auto direct = parabolic(sys, j, jpp).roots();
  return composed == std::set<AffineRoot>(direct.begin(), direct.end());
}

/// "*" where the parabolic has a root space or the diagonal, "0" elsewhere.
inline std::string render_parabolic_shape(const RootSystem& rs, const ParabolicData& p) {
  const std::size_t n = rs.rank() + 1;
  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n, "0"));
  for (std::size_t i = 0; i < n; ++i) cells[i][i] = "*";
  for (const auto& a : p.roots()) {
    auto [i, j] = type_a_entry(rs, a.root);
    cells[i][j] = "*";
  }
  return render_grid(cells);
}

struct DiagramNode {
  Face face;
  CentralizerData data;
  std::optional<MatrixShape> shape;
};

struct DiagramEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  ParabolicData parabolic;
};

struct DiagramTriangle {
  std::size_t i = 0, j = 0, k = 0;
  bool verified = false;
};

struct RestrictionDiagram {
  std::string type;
  std::vector<DiagramNode> nodes;
  std::vector<DiagramEdge> edges;
  std::vector<DiagramTriangle> triangles;
};

inline constexpr std::size_t kDiagramRankGuard = 3;

/// Nodes are the faces of C with their Levi data; edges the non-identity
/// arrows with their parabolics; triangles the chains J -> J' -> J'' of
/// distinct faces, each checked for transitivity.
inline RestrictionDiagram restriction_diagram(const AffineSystem& sys, std::size_t rank_guard = kDiagramRankGuard) {
  const RootSystem& rs = sys.rs();
  if (!sys.simply_connected()) throw std::invalid_argument("restriction_diagram: needs the simply-connected isogeny");
  if (rs.rank() > rank_guard) throw std::length_error("restriction_diagram: rank exceeds guard");
  const FaceCategory& cat = sys.faces();
  RestrictionDiagram d;
  d.type = rs.cartan_type().name();
  for (const auto& f : cat.faces) {
    DiagramNode node{f, centralizer_face(sys, f), std::nullopt};
    if (rs.cartan_type().family == Family::A) node.shape = matrix_shape(rs, node.data.phi);
    d.nodes.push_back(std::move(node));
  }
  for (const auto& [i, j] : cat.arrows)
    if (i != j) d.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), parabolic(sys, cat.faces[i], cat.faces[j])});
  const std::size_t n = cat.faces.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && cat.has_arrow(i, j) && cat.has_arrow(j, k))
          d.triangles.push_back({i, j, k, compose_parabolics(sys, cat.faces[i], cat.faces[j], cat.faces[k])});
  return d;
}

/// Text form: one block per node and per edge. Type A blocks carry the bracket
/// grids; other types list the affine roots as (root index, level).
inline std::string render_diagram(const AffineSystem& sys, const RestrictionDiagram& d) {
  const RootSystem& rs = sys.rs();
  const bool type_a = rs.cartan_type().family == Family::A;
  auto roots_line = [](const std::vector<AffineRoot>& phi) {
    std::string s;
    for (const auto& a : phi) s += (s.empty() ? "" : " ") + ("(" + std::to_string(a.root) + "," + std::to_string(a.level) + ")");
    return s + "\n";
  };
  std::string out;
  for (const auto& node : d.nodes) {
    out += "node " + node.face.label() + "\n";
    out += type_a ? render_shape(*node.shape) : roots_line(node.data.phi);
    out += "\n";
  }
  for (const auto& e : d.edges) {
    out += "edge " + d.nodes[e.src].face.label() + " -> " + d.nodes[e.dst].face.label() + "\n";
    out += type_a ? render_parabolic_shape(rs, e.parabolic) : roots_line(e.parabolic.roots());
    out += "\n";
  }
  std::size_t ok = std::count_if(d.triangles.begin(), d.triangles.end(), [](const auto& t) { return t.verified; });
  out += "triangles " + std::to_string(d.triangles.size()) + " verified " + std::to_string(ok) + "\n";
  return out;
}

}  // namespace affinelie
