#pragma once

// JSON forms of the library's data. Rationals are strings "p" or "p/q".

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affinelie/alcove.hpp"
#include "affinelie/centralizer.hpp"
#include "affinelie/parabolic.hpp"
#include "affinelie/rational.hpp"
#include "affinelie/rootdata.hpp"
#include "affinelie/weylaff.hpp"

namespace affinelie {

using json = nlohmann::json;

inline json matrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

inline json vectors_json(const std::vector<QVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vector_json(v));
  return a;
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return Rational::parse(j.get<std::string>());
}

inline QVector vector_from_json(const json& j) {
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline QMatrix matrix_from_json(const json& j) {
  std::vector<QVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  if (rows.empty()) return QMatrix(0, 0);
  QMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw std::invalid_argument("ragged matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

inline std::vector<QVector> vectors_from_json(const json& j) {
  std::vector<QVector> out;
  for (const auto& v : j) out.push_back(vector_from_json(v));
  return out;
}

inline json cartan_type_json(const CartanType& t) {
  return {{"family", std::string(1, family_letter(t.family))}, {"rank", t.rank}, {"isogeny", isogeny_name(t.isogeny)}};
}

inline CartanType cartan_type_from_json(const json& j) {
  return CartanType::parse(j.at("family").get<std::string>(), j.at("rank").get<int>(), j.at("isogeny").get<std::string>());
}

inline json root_system_json(const RootSystem& rs) {
  json j;
  j["cartan_type"] = cartan_type_json(rs.cartan_type());
  j["name"] = rs.cartan_type().name();
  j["simple_roots"] = vectors_json(rs.simple_roots());
  j["simple_coroots"] = vectors_json(rs.simple_coroots());
  j["all_roots"] = vectors_json(rs.all_roots());
  j["inner_product_matrix"] = matrix_json(rs.inner_product_matrix());
  j["highest_root"] = vector_json(rs.highest_root());
  j["coweight_lattice_basis"] = vectors_json(rs.coweight_lattice_basis());
  j["cartan_matrix"] = matrix_json(rs.cartan_matrix());
  return j;
}

/// Rebuilds from the Cartan type and rejects documents whose data disagree
/// with the rebuilt system.
inline RootSystem root_system_from_json(const json& j) {
  RootSystem rs = build_root_system(cartan_type_from_json(j.at("cartan_type")));
  if (vectors_from_json(j.at("simple_roots")) != rs.simple_roots() ||
      vectors_from_json(j.at("simple_coroots")) != rs.simple_coroots() ||
      vectors_from_json(j.at("all_roots")) != rs.all_roots() ||
      matrix_from_json(j.at("inner_product_matrix")) != rs.inner_product_matrix() ||
      vector_from_json(j.at("highest_root")) != rs.highest_root() ||
      vectors_from_json(j.at("coweight_lattice_basis")) != rs.coweight_lattice_basis())
    throw std::invalid_argument("root system document does not match its Cartan type");
  return rs;
}

inline json affine_root_json(const AffineRoot& a) { return json::array({a.root, a.level}); }

inline json affine_roots_json(const std::vector<AffineRoot>& phi) {
  json a = json::array();
  for (const auto& r : phi) a.push_back(affine_root_json(r));
  return a;
}

inline std::vector<AffineRoot> affine_roots_from_json(const json& j) {
  std::vector<AffineRoot> out;
  for (const auto& r : j) out.push_back({r.at(0).get<std::size_t>(), r.at(1).get<std::int64_t>()});
  return out;
}

inline AffineWeylElement affine_element_from_json(const json& j) {
  return {matrix_from_json(j.at("linear")), vector_from_json(j.at("translation"))};
}

inline json face_json(const Face& f) {
  return {{"label", f.label()},
          {"vanishing_walls", f.vanishing_walls},
          {"vertices", f.vertices},
          {"dimension", f.dimension()},
          {"witness", vector_json(f.witness)}};
}

inline json face_category_json(const RootSystem& rs, const Alcove& c, const FaceCategory& cat) {
  json walls = json::array();
  for (const auto& w : c.walls) walls.push_back(affine_root_json(w));
  json objects = json::array();
  for (const auto& f : cat.faces) objects.push_back(face_json(f));
  json arrows = json::array();
  for (const auto& [i, j] : cat.arrows) arrows.push_back(json::array({i, j}));
  return {{"type", rs.cartan_type().name()},
          {"isogeny", isogeny_name(rs.cartan_type().isogeny)},
          {"walls", walls},
          {"vertices", vectors_json(c.vertices)},
          {"objects", objects},
          {"arrows", arrows}};
}

inline json shape_json(const MatrixShape& s) {
  json rows = json::array();
  for (const auto& r : s.entries) {
    json row = json::array();
    for (const auto& e : r) row.push_back(e ? json(*e) : json(nullptr));
    rows.push_back(row);
  }
  return rows;
}

inline MatrixShape shape_from_json(const json& j) {
  MatrixShape s;
  s.n = j.size();
  for (const auto& r : j) {
    std::vector<std::optional<std::int64_t>> row;
    for (const auto& e : r) row.push_back(e.is_null() ? std::nullopt : std::optional<std::int64_t>(e.get<std::int64_t>()));
    if (row.size() != s.n) throw std::invalid_argument("matrix shape must be square");
    s.entries.push_back(std::move(row));
  }
  return s;
}

inline json centralizer_json(const RootSystem& rs, const CentralizerData& d) {
  json reps = json::array();
  for (const auto& e : d.pi0_representatives) reps.push_back(element_json(e));
  json j = {{"phi", affine_roots_json(d.phi)},
            {"dim", d.dim},
            {"w_order", d.w.order()},
            {"w0_order", d.w0.order()},
            {"pi0", d.pi0_order},
            {"connected", d.connected},
            {"subsystem_type", d.subsystem_type},
            {"pi0_representatives", reps}};
  if (rs.cartan_type().family == Family::A) j["shape"] = shape_json(matrix_shape(rs, d.phi));
  return j;
}

inline json parabolic_json(const ParabolicData& p) {
  return {{"ambient", affine_roots_json(p.ambient)},
          {"levi", affine_roots_json(p.levi)},
          {"nilradical", affine_roots_json(p.nilradical)}};
}

inline json diagram_json(const RestrictionDiagram& d) {
  json nodes = json::array(), edges = json::array(), triangles = json::array();
  for (const auto& n : d.nodes) {
    json node = {{"face", n.face.label()},
                 {"phi", affine_roots_json(n.data.phi)},
                 {"dim", n.data.dim},
                 {"subsystem_type", n.data.subsystem_type}};
    if (n.shape) node["shape"] = shape_json(*n.shape);
    nodes.push_back(node);
  }
  for (const auto& e : d.edges) {
    json edge = parabolic_json(e.parabolic);
    edge["src"] = e.src;
    edge["dst"] = e.dst;
    edges.push_back(edge);
  }
  for (const auto& t : d.triangles) triangles.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"verified", t.verified}});
  return {{"type", d.type}, {"nodes", nodes}, {"edges", edges}, {"triangles", triangles}};
}

inline json double_affine_json(const RootSystem& rs, const DoubleAffineData& d) {
  json phi = json::array();
  for (const auto& r : d.phi) phi.push_back(json::array({r.n1, r.n2, r.root}));
  return {{"phi", phi},
          {"w_order", d.w.size()},
          {"first", centralizer_json(rs, d.first)},
          {"second", centralizer_json(rs, d.second)},
          {"roots_injective", d.roots_injective},
          {"roots_cartesian", d.roots_cartesian},
          {"groups_injective", d.groups_injective},
          {"groups_cartesian", d.groups_cartesian}};
}

inline json overlap_json(const std::vector<OverlapComponent>& comps) {
  json a = json::array();
  for (const auto& c : comps)
    a.push_back({{"representative", element_json(c.representative)},
                 {"stabilizer_order", c.stabilizer.order()},
                 {"coset_size", c.coset_size}});
  return a;
}

}  // namespace affinelie
