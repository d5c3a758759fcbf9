#pragma once

// Affine roots, the fundamental alcove, its faces, and facets of the affine
// hyperplane arrangement.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "affinelie/check.hpp"
#include "affinelie/rational.hpp"
#include "affinelie/rootdata.hpp"

namespace affinelie {

/// The affine function x -> root(x) - level, with root an index into
/// RootSystem::all_roots().
struct AffineRoot {
  std::size_t root = 0;
  std::int64_t level = 0;

  friend auto operator<=>(const AffineRoot&, const AffineRoot&) = default;
};

inline AffineRoot negate(const RootSystem& rs, const AffineRoot& a) { return {rs.negative(a.root), -a.level}; }

/// alpha_0(x) - n. Throws std::invalid_argument on a dimension mismatch.
inline Rational eval_affine_root(const RootSystem& rs, const AffineRoot& a, const QVector& x) {
  if (x.size() != rs.dim()) throw std::invalid_argument("eval_affine_root: dimension mismatch");
  if (a.root >= rs.size()) throw std::invalid_argument("eval_affine_root: root index out of range");
  return rs.pairing(a.root, x) - Rational(a.level);
}

/// The fundamental alcove C = {alpha_i > 0, theta < 1}.
///
/// Wall 0 is the affine wall, stored as the affine root (-theta, -1) so that
/// every wall is positive on C; walls 1..l are the simple roots at level 0.
/// Vertex k is the vertex of the closed alcove opposite wall k, so vertex 0
/// is the origin.
struct Alcove {
  std::vector<AffineRoot> walls;
  std::vector<QVector> vertices;
  QVector barycenter;

  std::size_t wall_count() const { return walls.size(); }
};

inline Alcove fundamental_alcove(const RootSystem& rs) {
  if (rs.cartan_type().isogeny == Isogeny::GL || rs.dim() != rs.rank())
    throw std::invalid_argument("fundamental_alcove: needs an irreducible semisimple realization (sc or ad)");
  const std::size_t l = rs.rank();
  Alcove c;
  c.walls.push_back({rs.negative(rs.highest_root_index()), -1});
  for (std::size_t i = 0; i < l; ++i) c.walls.push_back({i, 0});

  for (std::size_t k = 0; k <= l; ++k) {
    QMatrix m(l, l);
    QVector rhs(l);
    std::size_t row = 0;
    for (std::size_t j = 0; j <= l; ++j) {
      if (j == k) continue;
      const auto& cov = rs.covector(c.walls[j].root);
      for (std::size_t col = 0; col < l; ++col) m(row, col) = cov[col];
      rhs[row] = Rational(c.walls[j].level);
      ++row;
    }
    c.vertices.push_back(m.solve(rhs));
  }
  QVector sum = zero_vector(l);
  for (const auto& v : c.vertices) sum = sum + v;
  c.barycenter = Rational(1, static_cast<std::int64_t>(l + 1)) * sum;
  return c;
}

/// A face of the fundamental alcove, identified by the walls vanishing on it.
struct Face {
  std::uint32_t mask = 0;
  std::vector<int> vanishing_walls;
  /// Indices of the alcove vertices lying in the closure of the face.
  std::vector<int> vertices;
  /// Barycenter of those vertices, an interior point of the face.
  QVector witness;

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }
  bool is_vertex() const { return vertices.size() == 1; }

  std::string label() const {
    std::string s = "{";
    for (std::size_t i = 0; i < vanishing_walls.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(vanishing_walls[i]);
    }
    return s + "}";
  }
};

inline Face make_face(const Alcove& c, std::uint32_t mask) {
  const std::size_t walls = c.wall_count();
  if (mask >= (1u << walls) || mask == (1u << walls) - 1)
    throw std::invalid_argument("make_face: vanishing walls must form a proper subset");
  Face f;
  f.mask = mask;
  QVector sum = zero_vector(c.barycenter.size());
  for (std::size_t k = 0; k < walls; ++k) {
    if (mask & (1u << k))
      f.vanishing_walls.push_back(static_cast<int>(k));
    else {
      f.vertices.push_back(static_cast<int>(k));
      sum = sum + c.vertices[k];
    }
  }
  f.witness = Rational(1, static_cast<std::int64_t>(f.vertices.size())) * sum;
  return f;
}

/// The poset of nonempty faces of C; J -> J' iff J lies in the closure of J',
/// i.e. the vanishing walls of J contain those of J'.
struct FaceCategory {
  std::vector<Face> faces;
  /// All arrows (i, j) including identities, ordered lexicographically.
  std::vector<std::pair<int, int>> arrows;

  bool has_arrow(std::size_t i, std::size_t j) const {
    return (faces.at(i).mask & faces.at(j).mask) == faces.at(j).mask;
  }
  std::size_t index_of_mask(std::uint32_t mask) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i].mask == mask) return i;
    throw std::out_of_range("no face with the given vanishing walls");
  }
  std::size_t index_of_walls(const std::vector<int>& walls) const {
    std::uint32_t m = 0;
    for (int w : walls) {
      if (w < 0 || w >= 32) throw std::out_of_range("wall index out of range");
      m |= 1u << w;
    }
    return index_of_mask(m);
  }
  const Face& interior() const { return faces.back(); }
};

/// Enumerates all 2^(l+1) - 1 faces: vertices first, then by increasing
/// dimension, ties broken by the sorted vanishing-wall list.
inline FaceCategory faces_of_alcove(const Alcove& c) {
  const std::size_t walls = c.wall_count();
  if (walls > 16) throw std::length_error("faces_of_alcove: too many walls");
  FaceCategory cat;
  for (std::uint32_t m = 0; m + 1 < (1u << walls); ++m) cat.faces.push_back(make_face(c, m));
  std::sort(cat.faces.begin(), cat.faces.end(), [](const Face& a, const Face& b) {
    if (a.vanishing_walls.size() != b.vanishing_walls.size())
      return a.vanishing_walls.size() > b.vanishing_walls.size();
    return a.vanishing_walls < b.vanishing_walls;
  });
  for (std::size_t i = 0; i < cat.faces.size(); ++i)
    for (std::size_t j = 0; j < cat.faces.size(); ++j)
      if (cat.has_arrow(i, j)) cat.arrows.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return cat;
}

inline FaceCategory faces_of_alcove(const RootSystem& rs) { return faces_of_alcove(fundamental_alcove(rs)); }

/// Position of a rational number relative to the integers: 2k when the
/// value is the integer k, 2k+1 when it lies strictly between k and k+1.
inline std::int64_t integer_cell(const Rational& v) {
  return v.is_integer() ? 2 * v.num() : 2 * v.floor() + 1;
}

/// A facet of the affine arrangement, keyed exactly: two points lie in the same
/// facet iff every positive root puts them in the same integer cell.
struct FacetKey {
  std::vector<std::int64_t> cells;
  /// Affine roots vanishing on the facet, sorted.
  std::vector<AffineRoot> vanishing_set;
  QVector witness;
  /// Signs of affine roots whose level lies within one of the values taken
  /// on the facet; all other levels have a constant sign given by the cell.
  std::vector<std::pair<AffineRoot, int>> sign_vector;

  friend bool operator==(const FacetKey& a, const FacetKey& b) { return a.cells == b.cells; }
  friend bool operator<(const FacetKey& a, const FacetKey& b) { return a.cells < b.cells; }
};

inline std::vector<std::int64_t> facet_cells(const RootSystem& rs, const QVector& x) {
  std::vector<std::int64_t> cells(rs.positive_count());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = integer_cell(rs.pairing(i, x));
  return cells;
}

inline FacetKey facet_of(const RootSystem& rs, const QVector& x) {
  if (x.size() != rs.dim()) throw std::invalid_argument("facet_of: dimension mismatch");
  FacetKey key;
  key.witness = x;
  key.cells = facet_cells(rs, x);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Rational v = rs.pairing(i, x);
    if (v.is_integer()) key.vanishing_set.push_back({i, v.num()});
    for (std::int64_t n = v.floor() - 1; n <= v.ceil() + 1; ++n) key.sign_vector.emplace_back(AffineRoot{i, n}, (v - Rational(n)).sign());
  }
  std::sort(key.vanishing_set.begin(), key.vanishing_set.end());
  return key;
}

/// True iff p lies in the closure of the facet containing x: for every affine
/// root, vanishing at x forces vanishing at p, and the signs never oppose.
inline bool point_in_facet_closure(const RootSystem& rs, const QVector& p, const QVector& x) {
  for (std::size_t i = 0; i < rs.positive_count(); ++i) {
    Rational a = rs.pairing(i, x);
    Rational b = rs.pairing(i, p);
    if (a.is_integer()) {
      if (b != a) return false;
    } else if (b < Rational(a.floor()) || b > Rational(a.ceil())) {
      return false;
    }
  }
  return true;
}

/// Checks that Face -> {vertices in its closure} is an isomorphism from the
/// face poset onto the nonempty subsets of the vertex set, computing vertex
/// incidence geometrically from the wall equations.
inline CheckOutcome verify_ver_isomorphism(const RootSystem& rs, const Alcove& c, const FaceCategory& cat) {
  const std::size_t walls = c.wall_count();
  const std::size_t nverts = c.vertices.size();
  // Vertices are distinct points, each on exactly the walls but one.
  for (std::size_t k = 0; k < nverts; ++k)
    for (std::size_t j = 0; j < walls; ++j) {
      Rational v = eval_affine_root(rs, c.walls[j], c.vertices[k]);
      if ((j == k) != (v > Rational(0)) || v < Rational(0))
        return CheckOutcome::fail("vertex/wall incidence broken", {{"vertex", k}, {"wall", j}, {"value", v.str()}});
    }
  std::set<std::uint32_t> images;
  std::vector<std::uint32_t> ver(cat.faces.size());
  for (std::size_t f = 0; f < cat.faces.size(); ++f) {
    const Face& face = cat.faces[f];
    // The witness lies on exactly the vanishing walls and strictly inside the rest.
    for (std::size_t j = 0; j < walls; ++j) {
      Rational v = eval_affine_root(rs, c.walls[j], face.witness);
      bool vanishes = (face.mask >> j) & 1u;
      if (vanishes ? !v.is_zero() : v <= Rational(0))
        return CheckOutcome::fail("face witness not interior", {{"face", face.label()}, {"wall", j}});
    }
    std::uint32_t vs = 0;
    for (std::size_t k = 0; k < nverts; ++k) {
      bool on_all = true;
      for (int j : face.vanishing_walls)
        if (!eval_affine_root(rs, c.walls[j], c.vertices[k]).is_zero()) on_all = false;
      if (on_all) vs |= 1u << k;
    }
    if (vs == 0) return CheckOutcome::fail("face with no vertices", {{"face", face.label()}});
    ver[f] = vs;
    images.insert(vs);
  }
  if (images.size() != cat.faces.size() || images.size() != (1u << nverts) - 1)
    return CheckOutcome::fail("Ver is not a bijection onto nonempty vertex subsets",
                              {{"faces", cat.faces.size()}, {"distinct_images", images.size()}});
  for (std::size_t i = 0; i < cat.faces.size(); ++i)
    for (std::size_t j = 0; j < cat.faces.size(); ++j) {
      bool arrow = cat.has_arrow(i, j);
      bool subset = (ver[i] & ver[j]) == ver[i];
      bool geometric = point_in_facet_closure(rs, cat.faces[i].witness, cat.faces[j].witness);
      if (arrow != subset || arrow != geometric)
        return CheckOutcome::fail("arrow test disagrees with vertex inclusion or closure",
                                  {{"from", cat.faces[i].label()}, {"to", cat.faces[j].label()}});
    }
  return CheckOutcome::ok(cat.faces.size());
}

}  // namespace affinelie
