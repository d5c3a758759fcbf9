#pragma once

// The affine Weyl group W x| X_*(T) acting on t_R, stabilizers of points and
// faces, stars of faces, descent into the fundamental alcove, and the finite
// enumerations behind chart overlaps.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "affinelie/alcove.hpp"
#include "affinelie/check.hpp"
#include "affinelie/rational.hpp"
#include "affinelie/rootdata.hpp"

namespace affinelie {

/// x -> linear(x) + translation, with linear in W and translation in X_*(T).
struct AffineWeylElement {
  QMatrix linear;
  QVector translation;

  static AffineWeylElement identity(std::size_t dim) { return {QMatrix::identity(dim), zero_vector(dim)}; }

  QVector operator()(const QVector& x) const { return linear * x + translation; }

  /// (w, l)(w', l') = (w w', w(l') + l).
  friend AffineWeylElement operator*(const AffineWeylElement& a, const AffineWeylElement& b) {
    return {a.linear * b.linear, a.linear * b.translation + a.translation};
  }

  AffineWeylElement inverse() const {
    QMatrix inv = linear.inverse();
    return {inv, -(inv * translation)};
  }

  bool is_identity() const { return linear == QMatrix::identity(linear.rows()) && is_zero(translation); }

  friend bool operator==(const AffineWeylElement&, const AffineWeylElement&) = default;
  friend auto operator<=>(const AffineWeylElement&, const AffineWeylElement&) = default;
};

/// r_{alpha,n} = (s_alpha, n alpha^vee); fixes {alpha = n} pointwise.
inline AffineWeylElement affine_reflection(const RootSystem& rs, const AffineRoot& a) {
  return {rs.reflection_matrix(a.root), Rational(a.level) * rs.coroot(a.root)};
}

/// A finite subgroup of the affine Weyl group, stored as a sorted element list.
class FiniteSubgroup {
 public:
  FiniteSubgroup() = default;

  /// Closure of the generators under composition. Throws std::length_error
  /// once more than `guard` elements have been produced.
  static FiniteSubgroup generated_by(std::vector<AffineWeylElement> generators, std::size_t dim,
                                     std::size_t guard = 200000) {
    FiniteSubgroup g;
    std::set<AffineWeylElement> seen;
    std::vector<AffineWeylElement> queue{AffineWeylElement::identity(dim)};
    seen.insert(queue[0]);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& s : generators) {
        AffineWeylElement e = queue[head] * s;
        if (seen.insert(e).second) {
          if (seen.size() > guard) throw std::length_error("subgroup closure exceeded guard");
          queue.push_back(std::move(e));
        }
      }
    }
    g.elements_.assign(seen.begin(), seen.end());
    g.generators_ = std::move(generators);
    return g;
  }

  static FiniteSubgroup from_elements(std::vector<AffineWeylElement> elements,
                                      std::vector<AffineWeylElement> generators = {}) {
    FiniteSubgroup g;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    g.elements_ = std::move(elements);
    g.generators_ = std::move(generators);
    return g;
  }

  const std::vector<AffineWeylElement>& elements() const { return elements_; }
  const std::vector<AffineWeylElement>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }

  bool contains(const AffineWeylElement& e) const { return std::binary_search(elements_.begin(), elements_.end(), e); }

  bool is_subset_of(const FiniteSubgroup& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
  }

  /// Closed under products and inverses, containing the identity.
  bool is_group() const {
    if (elements_.empty()) return false;
    if (!contains(AffineWeylElement::identity(elements_[0].linear.rows()))) return false;
    for (const auto& a : elements_) {
      if (!contains(a.inverse())) return false;
      for (const auto& b : elements_)
        if (!contains(a * b)) return false;
    }
    return true;
  }

  friend bool operator==(const FiniteSubgroup& a, const FiniteSubgroup& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<AffineWeylElement> elements_;
  std::vector<AffineWeylElement> generators_;
};

inline FiniteSubgroup intersect(const FiniteSubgroup& a, const FiniteSubgroup& b) {
  std::vector<AffineWeylElement> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return FiniteSubgroup::from_elements(std::move(out));
}

/// Root system together with the data every affine computation needs: the
/// finite Weyl group and, for sc/ad isogenies, the fundamental alcove and its
/// face poset. Immutable after construction.
class AffineSystem {
 public:
  explicit AffineSystem(const CartanType& type, int weyl_rank_guard = kDefaultWeylRankGuard)
      : AffineSystem(build_root_system(type), weyl_rank_guard) {}

  explicit AffineSystem(RootSystem rs, int weyl_rank_guard = kDefaultWeylRankGuard) : rs_(std::move(rs)) {
    if (static_cast<int>(rs_.rank()) <= weyl_rank_guard) {
      weyl_ = weyl_group(rs_, weyl_rank_guard);
      for (const auto& w : weyl_) weyl_inverse_.push_back(w.matrix.inverse());
    }
    for (std::size_t i = 0; i < rs_.positive_count(); ++i) reflection_roots_.emplace(rs_.reflection_matrix(i), i);
    if (rs_.cartan_type().isogeny != Isogeny::GL) {
      alcove_ = fundamental_alcove(rs_);
      faces_ = faces_of_alcove(*alcove_);
      const std::size_t l = rs_.rank();
      QMatrix p(l, l);
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t k = 0; k < l; ++k) p(i, k) = rs_.pairing(i, rs_.coweight_lattice_basis()[k]);
      root_to_lattice_ = p.inverse();
    }
  }

  const RootSystem& rs() const { return rs_; }
  /// Throws std::length_error when the rank exceeded the guard at construction.
  const std::vector<WeylElement>& weyl() const {
    if (weyl_.empty()) throw std::length_error("finite Weyl group not enumerated above the rank guard");
    return weyl_;
  }
  const QMatrix& weyl_inverse(std::size_t i) const { return weyl_inverse_.at(i); }
  bool has_alcove() const { return alcove_.has_value(); }
  bool simply_connected() const { return rs_.cartan_type().isogeny == Isogeny::SimplyConnected; }

  const Alcove& alcove() const {
    if (!alcove_) throw std::invalid_argument("no fundamental alcove for the gl realization");
    return *alcove_;
  }
  const FaceCategory& faces() const {
    if (!alcove_) throw std::invalid_argument("no face category for the gl realization");
    return faces_;
  }
  const Face& face(const std::vector<int>& walls) const { return faces().faces.at(faces().index_of_walls(walls)); }

  /// The positive root alpha with (linear, translation) = r_{alpha,n}, if any.
  std::optional<AffineRoot> as_reflection(const AffineWeylElement& e) const {
    auto it = reflection_roots_.find(e.linear);
    if (it == reflection_roots_.end()) return std::nullopt;
    const std::size_t i = it->second;
    Rational n = rs_.pairing(i, e.translation) / Rational(2);
    if (!n.is_integer() || e.translation != n * rs_.coroot(i)) return std::nullopt;
    return AffineRoot{i, n.num()};
  }

  /// Matrix taking simple-root values (alpha_1(x), ..., alpha_l(x)) to lattice coordinates.
  const QMatrix& root_to_lattice() const { return root_to_lattice_; }

 private:
  RootSystem rs_;
  std::vector<WeylElement> weyl_;
  std::vector<QMatrix> weyl_inverse_;
  std::map<QMatrix, std::size_t> reflection_roots_;
  std::optional<Alcove> alcove_;
  FaceCategory faces_;
  QMatrix root_to_lattice_;
};

/// All lattice vectors l with lo_i <= alpha_i(l) <= hi_i for every simple root.
inline std::vector<QVector> lattice_points_in_root_box(const AffineSystem& sys, const QVector& lo, const QVector& hi,
                                                       std::size_t guard = 1000000) {
  const RootSystem& rs = sys.rs();
  const std::size_t l = rs.rank();
  const QMatrix& m = sys.root_to_lattice();
  std::vector<std::int64_t> cmin(l), cmax(l);
  for (std::size_t k = 0; k < l; ++k) {
    Rational mn, mx;
    for (std::size_t i = 0; i < l; ++i) {
      Rational a = m(k, i) * lo[i], b = m(k, i) * hi[i];
      mn += std::min(a, b);
      mx += std::max(a, b);
    }
    cmin[k] = mn.ceil();
    cmax[k] = mx.floor();
    if (cmin[k] > cmax[k]) return {};
  }
  std::size_t total = 1;
  for (std::size_t k = 0; k < l; ++k) {
    total *= static_cast<std::size_t>(cmax[k] - cmin[k] + 1);
    if (total > guard) throw std::length_error("lattice window exceeds enumeration guard");
  }
  std::vector<QVector> out;
  std::vector<std::int64_t> c = cmin;
  while (true) {
    QVector coords(l);
    for (std::size_t k = 0; k < l; ++k) coords[k] = Rational(c[k]);
    QVector lambda = rs.from_lattice_coordinates(coords);
    bool inside = true;
    for (std::size_t i = 0; i < l && inside; ++i) {
      Rational v = rs.pairing(i, lambda);
      inside = v >= lo[i] && v <= hi[i];
    }
    if (inside) out.push_back(std::move(lambda));
    std::size_t k = 0;
    while (k < l && c[k] == cmax[k]) c[k] = cmin[k], ++k;
    if (k == l) break;
    ++c[k];
  }
  return out;
}

/// True iff x lies in the closed fundamental alcove.
inline bool in_closed_alcove(const AffineSystem& sys, const QVector& x) {
  for (const auto& w : sys.alcove().walls)
    if (eval_affine_root(sys.rs(), w, x) < Rational(0)) return false;
  return true;
}

/// All w in W x| X_* with p in w(closure C). The translation window is exact:
/// alpha_i(lambda) = alpha_i(p) - alpha_i(w0 c) for some c in the closed
/// simplex, whose extreme values occur at its vertices.
inline std::vector<AffineWeylElement> alcoves_containing(const AffineSystem& sys, const QVector& p) {
  const RootSystem& rs = sys.rs();
  const Alcove& c = sys.alcove();
  const std::size_t l = rs.rank();
  std::vector<AffineWeylElement> out;
  for (std::size_t wi = 0; wi < sys.weyl().size(); ++wi) {
    const QMatrix& w0 = sys.weyl()[wi].matrix;
    QVector lo(l), hi(l);
    std::vector<QVector> images;
    for (const auto& v : c.vertices) images.push_back(w0 * v);
    for (std::size_t i = 0; i < l; ++i) {
      Rational mn = rs.pairing(i, images[0]), mx = mn;
      for (const auto& y : images) {
        Rational v = rs.pairing(i, y);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      Rational pi = rs.pairing(i, p);
      lo[i] = pi - mx;
      hi[i] = pi - mn;
    }
    for (auto& lambda : lattice_points_in_root_box(sys, lo, hi)) {
      QVector back = sys.weyl_inverse(wi) * (p - lambda);
      if (in_closed_alcove(sys, back)) out.push_back({w0, std::move(lambda)});
    }
  }
  return out;
}

/// Facets of all closed alcoves through any of the given points, deduplicated
/// by facet key. Each value is an interior witness of the facet.
inline std::map<std::vector<std::int64_t>, QVector> facets_near(const AffineSystem& sys,
                                                                const std::vector<QVector>& points) {
  std::map<std::vector<std::int64_t>, QVector> out;
  std::set<AffineWeylElement> done;
  for (const auto& p : points)
    for (const auto& w : alcoves_containing(sys, p)) {
      if (!done.insert(w).second) continue;
      for (const auto& f : sys.faces().faces) {
        QVector x = w(f.witness);
        out.emplace(facet_cells(sys.rs(), x), std::move(x));
      }
    }
  return out;
}

struct Reduction {
  AffineWeylElement element;
  QVector image;
  /// Walls reflected in, in order of application.
  std::vector<int> walls;
};

/// Moves x into the closed fundamental alcove by repeatedly reflecting in the
/// first violated wall. Each step removes one hyperplane separating x from C,
/// so the number of steps is bounded by the count of such hyperplanes.
inline Reduction reduce_to_alcove(const AffineSystem& sys, const QVector& x) {
  const RootSystem& rs = sys.rs();
  const Alcove& c = sys.alcove();
  if (x.size() != rs.dim()) throw std::invalid_argument("reduce_to_alcove: dimension mismatch");
  std::int64_t cap = 1;
  for (std::size_t i = 0; i < rs.positive_count(); ++i) cap += abs(rs.pairing(i, x)).ceil() + 1;
  Reduction r{AffineWeylElement::identity(rs.dim()), x, {}};
  for (std::int64_t step = 0;; ++step) {
    std::optional<std::size_t> violated;
    for (std::size_t j = 0; j < c.walls.size(); ++j)
      if (eval_affine_root(rs, c.walls[j], r.image) < Rational(0)) {
        violated = j;
        break;
      }
    if (!violated) return r;
    if (step >= cap) throw std::logic_error("reduce_to_alcove: iteration cap exceeded");
    AffineWeylElement s = affine_reflection(rs, c.walls[*violated]);
    r.image = s(r.image);
    r.element = s * r.element;
    r.walls.push_back(static_cast<int>(*violated));
  }
}

/// Reflections r_{alpha,n} in all hyperplanes containing the point p.
inline std::vector<AffineWeylElement> reflections_through(const RootSystem& rs, const QVector& p) {
  std::vector<AffineWeylElement> gens;
  for (std::size_t i = 0; i < rs.positive_count(); ++i) {
    Rational v = rs.pairing(i, p);
    if (v.is_integer()) gens.push_back(affine_reflection(rs, {i, v.num()}));
  }
  return gens;
}

/// W_J, generated by the reflections in hyperplanes containing J.
/// Simply-connected isogeny only.
inline FiniteSubgroup stabilizer_of_face(const AffineSystem& sys, const Face& face) {
  if (!sys.simply_connected())
    throw std::invalid_argument("stabilizer_of_face: reflection generation needs the simply-connected isogeny");
  return FiniteSubgroup::generated_by(reflections_through(sys.rs(), face.witness), sys.rs().dim());
}

/// {(w0, x - w0 x) : x - w0 x in X_*}, the full stabilizer of x.
inline FiniteSubgroup stabilizer_of_point(const AffineSystem& sys, const QVector& x) {
  const RootSystem& rs = sys.rs();
  if (x.size() != rs.dim()) throw std::invalid_argument("stabilizer_of_point: dimension mismatch");
  std::vector<AffineWeylElement> elems, gens;
  for (const auto& w : sys.weyl()) {
    QVector lambda = x - w.matrix * x;
    if (!rs.in_lattice(lambda)) continue;
    AffineWeylElement e{w.matrix, std::move(lambda)};
    if (sys.as_reflection(e)) gens.push_back(e);
    elems.push_back(std::move(e));
  }
  return FiniteSubgroup::from_elements(std::move(elems), std::move(gens));
}

/// x lies in the star of the facet through p (p in the closure of facet(x)).
inline bool star_contains(const AffineSystem& sys, const QVector& p, const QVector& x) {
  return point_in_facet_closure(sys.rs(), p, x);
}

inline bool star_contains(const AffineSystem& sys, const Face& face, const QVector& x) {
  return star_contains(sys, face.witness, x);
}

struct PointPair {
  QVector x;
  QVector y;
};

inline nlohmann::json element_json(const AffineWeylElement& e) {
  nlohmann::json lin = nlohmann::json::array();
  for (std::size_t r = 0; r < e.linear.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < e.linear.cols(); ++c) row.push_back(e.linear(r, c).str());
    lin.push_back(row);
  }
  nlohmann::json t = nlohmann::json::array();
  for (const auto& v : e.translation) t.push_back(v.str());
  return {{"linear", lin}, {"translation", t}};
}

inline nlohmann::json vector_json(const QVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

/// For each pair (x, y) of points in St_J, every w with w(x) = y lies in W_J.
inline CheckOutcome verify_open_embedding(const AffineSystem& sys, const Face& face,
                                          const std::vector<PointPair>& samples) {
  const RootSystem& rs = sys.rs();
  FiniteSubgroup wj = stabilizer_of_face(sys, face);
  std::size_t mapped = 0;
  for (const auto& [x, y] : samples) {
    if (!star_contains(sys, face, x) || !star_contains(sys, face, y))
      return CheckOutcome::fail("sample outside the star", {{"face", face.label()}, {"x", vector_json(x)}, {"y", vector_json(y)}});
    for (const auto& w : sys.weyl()) {
      QVector lambda = y - w.matrix * x;
      if (!rs.in_lattice(lambda)) continue;
      AffineWeylElement e{w.matrix, std::move(lambda)};
      ++mapped;
      if (!wj.contains(e))
        return CheckOutcome::fail("element outside W_J maps a star point into the star",
                                  {{"face", face.label()}, {"x", vector_json(x)}, {"y", vector_json(y)}, {"w", element_json(e)}});
    }
  }
  return CheckOutcome::ok(mapped);
}

/// St_J equals the intersection of the stars of the vertices of J, compared on
/// every facet of every closed alcove through a vertex of J.
inline CheckOutcome verify_star_intersection(const AffineSystem& sys, const Face& face) {
  const Alcove& c = sys.alcove();
  std::vector<QVector> verts;
  for (int k : face.vertices) verts.push_back(c.vertices[k]);
  auto facets = facets_near(sys, verts);
  std::size_t inside = 0;
  for (const auto& [key, x] : facets) {
    bool lhs = star_contains(sys, face, x);
    bool rhs = true;
    for (const auto& v : verts) rhs = rhs && star_contains(sys, v, x);
    if (lhs != rhs)
      return CheckOutcome::fail("star of face differs from intersection of vertex stars",
                                {{"face", face.label()}, {"facet_witness", vector_json(x)}, {"in_star", lhs}});
    inside += lhs;
  }
  if (inside == 0) return CheckOutcome::fail("empty star", {{"face", face.label()}});
  return CheckOutcome::ok(facets.size());
}

/// After reduction into the closed alcove, every point lies in the star of
/// some vertex of C.
inline CheckOutcome verify_cover(const AffineSystem& sys, const std::vector<QVector>& samples) {
  const Alcove& c = sys.alcove();
  for (const auto& x : samples) {
    Reduction r = reduce_to_alcove(sys, x);
    if (r.element(x) != r.image || !in_closed_alcove(sys, r.image))
      return CheckOutcome::fail("reduction did not land in the closed alcove", {{"x", vector_json(x)}});
    bool covered = false;
    for (const auto& v : c.vertices) covered = covered || star_contains(sys, v, r.image);
    if (!covered) return CheckOutcome::fail("point not covered by any vertex star", {{"x", vector_json(x)}, {"reduced", vector_json(r.image)}});
  }
  return CheckOutcome::ok(samples.size());
}

struct OverlapComponent {
  AffineWeylElement representative;
  /// W_{w(J1)} intersected with W_{J2}.
  FiniteSubgroup stabilizer;
  std::size_t coset_size = 0;
};

/// Witnesses of all facets in St_J.
inline std::vector<QVector> star_facets(const AffineSystem& sys, const Face& face) {
  std::vector<QVector> verts;
  for (int k : face.vertices) verts.push_back(sys.alcove().vertices[k]);
  std::vector<QVector> out;
  for (auto& [key, x] : facets_near(sys, {verts.front()}))
    if (star_contains(sys, face, x)) out.push_back(x);
  return out;
}

/// All w with w(St_J1) meeting St_J2, partitioned into W_J2 \ . / W_J1 double
/// cosets. A point y of St_J2 shares a closed alcove with a vertex v of J2,
/// so |beta(y) - beta(v)| <= 1 for every root; that bounds the translations.
inline std::vector<OverlapComponent> chart_overlap(const AffineSystem& sys, const Face& j1, const Face& j2,
                                                   std::size_t guard = 1000000) {
  const RootSystem& rs = sys.rs();
  const std::size_t l = rs.rank();
  const QVector& v2 = sys.alcove().vertices.at(j2.vertices.front());
  std::set<AffineWeylElement> hits;
  for (const auto& f : star_facets(sys, j1)) {
    for (const auto& w : sys.weyl()) {
      QVector y0 = w.matrix * f;
      QVector lo(l), hi(l);
      for (std::size_t i = 0; i < l; ++i) {
        Rational centre = rs.pairing(i, v2) - rs.pairing(i, y0);
        lo[i] = centre - Rational(1);
        hi[i] = centre + Rational(1);
      }
      for (auto& lambda : lattice_points_in_root_box(sys, lo, hi)) {
        if (!star_contains(sys, j2, y0 + lambda)) continue;
        hits.insert({w.matrix, std::move(lambda)});
        if (hits.size() > guard) throw std::length_error("chart_overlap: enumeration guard exceeded");
      }
    }
  }
  FiniteSubgroup w1 = stabilizer_of_face(sys, j1);
  FiniteSubgroup w2 = stabilizer_of_face(sys, j2);
  std::vector<OverlapComponent> out;
  std::set<AffineWeylElement> assigned;
  for (const auto& w : hits) {
    if (assigned.count(w)) continue;
    std::size_t size = 0;
    for (const auto& a : w2.elements())
      for (const auto& b : w1.elements())
        if (assigned.insert(a * w * b).second) ++size;
    AffineWeylElement winv = w.inverse();
    std::vector<AffineWeylElement> conj;
    for (const auto& b : w1.elements()) conj.push_back(w * b * winv);
    out.push_back({w, intersect(FiniteSubgroup::from_elements(std::move(conj)), w2), size});
  }
  for (const auto& w : assigned)
    if (!hits.count(w)) throw std::logic_error("chart_overlap: hit set is not a union of double cosets");
  return out;
}

}  // namespace affinelie
