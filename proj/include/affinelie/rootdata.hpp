#pragma once

// Finite root systems over exact rationals.
//
// For simply-connected and adjoint isogenies the ambient space is written in
// simple-root coordinates: simple root i is the unit vector e_i and the inner
// product is the symmetrized Cartan matrix, normalized so long roots have
// squared length 2. Points of t_R and roots live in the same space; a root
// acts on a point by the inner product, so alpha(alpha^vee) = 2.
//
// The gl isogeny (family A only) realizes GL_{n} on Q^n with the standard
// inner product, roots e_i - e_j and cocharacter lattice Z^n.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affinelie/rational.hpp"

namespace affinelie {

enum class Family { A, B, C, D, E, F, G };
enum class Isogeny { SimplyConnected, Adjoint, GL };

inline char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

inline std::string isogeny_name(Isogeny i) {
  switch (i) {
    case Isogeny::SimplyConnected: return "sc";
    case Isogeny::Adjoint: return "ad";
    case Isogeny::GL: return "gl";
  }
  return "?";
}

struct CartanType {
  Family family = Family::A;
  int rank = 1;
  Isogeny isogeny = Isogeny::SimplyConnected;

  /// Throws std::invalid_argument for an impossible family/rank/isogeny.
  void validate() const {
    auto bad = [&](const std::string& why) {
      throw std::invalid_argument("invalid Cartan type " + name() + " (" + isogeny_name(isogeny) + "): " + why);
    };
    if (rank < 1) bad("rank must be positive");
    switch (family) {
      case Family::A: break;
      case Family::B:
      case Family::C:
        if (rank < 2) bad("rank must be at least 2");
        break;
      case Family::D:
        if (rank < 3) bad("rank must be at least 3");
        break;
      case Family::E:
        if (rank < 6 || rank > 8) bad("rank must be 6, 7 or 8");
        break;
      case Family::F:
        if (rank != 4) bad("rank must be 4");
        break;
      case Family::G:
        if (rank != 2) bad("rank must be 2");
        break;
    }
    if (isogeny == Isogeny::GL && family != Family::A) bad("gl isogeny exists only for family A");
    // Rationals are int64; keep enumeration sizes sane.
    if (rank > 8) bad("rank above 8 is not supported");
  }

  std::string name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }

  /// Parses family letter ("A".."G", case-insensitive) and isogeny ("sc", "ad", "gl").
  static CartanType parse(const std::string& family, int rank, const std::string& isogeny = "sc") {
    if (family.size() != 1) throw std::invalid_argument("family must be a single letter A-G, got '" + family + "'");
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(family[0])));
    if (c < 'A' || c > 'G') throw std::invalid_argument("family must be a single letter A-G, got '" + family + "'");
    CartanType t;
    t.family = static_cast<Family>(c - 'A');
    t.rank = rank;
    if (isogeny == "sc" || isogeny == "simply-connected")
      t.isogeny = Isogeny::SimplyConnected;
    else if (isogeny == "ad" || isogeny == "adjoint")
      t.isogeny = Isogeny::Adjoint;
    else if (isogeny == "gl")
      t.isogeny = Isogeny::GL;
    else
      throw std::invalid_argument("isogeny must be sc, ad or gl, got '" + isogeny + "'");
    t.validate();
    return t;
  }

  friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// A finite Weyl group element: its matrix on the ambient space and one
/// reduced word in the simple reflections (0-based indices).
struct WeylElement {
  QMatrix matrix;
  std::vector<int> word;

  QVector operator()(const QVector& x) const { return matrix * x; }
};

class RootSystem;
RootSystem build_root_system(const CartanType& type);

class RootSystem {
 public:
  const CartanType& cartan_type() const { return type_; }
  /// Semisimple rank (number of simple roots).
  std::size_t rank() const { return simple_count_; }
  /// Dimension of the ambient space, i.e. the rank of the maximal torus.
  std::size_t dim() const { return gram_.rows(); }
  const QMatrix& inner_product_matrix() const { return gram_; }

  std::size_t size() const { return roots_.size(); }
  std::size_t positive_count() const { return roots_.size() / 2; }
  /// Roots are ordered: positive roots by height (ties lexicographically by
  /// decreasing coefficients), then their negatives in the same order.
  /// Simple root i has index i.
  const QVector& root(std::size_t i) const { return roots_.at(i); }
  const std::vector<QVector>& all_roots() const { return roots_; }
  const QVector& coroot(std::size_t i) const { return coroots_.at(i); }
  /// Coefficients of root i in the simple-root basis.
  const std::vector<int>& coefficients(std::size_t i) const { return coeffs_.at(i); }
  bool is_positive(std::size_t i) const { return i < positive_count(); }
  std::size_t negative(std::size_t i) const {
    return i < positive_count() ? i + positive_count() : i - positive_count();
  }
  int height(std::size_t i) const {
    int h = 0;
    for (int c : coeffs_.at(i)) h += c;
    return h;
  }

  std::vector<QVector> simple_roots() const { return {roots_.begin(), roots_.begin() + simple_count_}; }
  std::vector<QVector> simple_coroots() const { return {coroots_.begin(), coroots_.begin() + simple_count_}; }
  std::size_t highest_root_index() const { return highest_; }
  const QVector& highest_root() const { return roots_.at(highest_); }

  /// (x, y) for the invariant inner product.
  Rational inner(const QVector& x, const QVector& y) const { return dot(x, gram_ * y); }

  /// alpha_i(x).
  Rational pairing(std::size_t i, const QVector& x) const { return dot(covectors_.at(i), x); }
  /// Row vector c with alpha_i(x) = c . x.
  const QVector& covector(std::size_t i) const { return covectors_.at(i); }

  std::optional<std::size_t> find_root(const QVector& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// s_alpha(x) = x - alpha(x) alpha^vee.
  QVector reflect(std::size_t i, const QVector& x) const { return x - pairing(i, x) * coroots_.at(i); }

  /// Matrix of s_alpha on the ambient space.
  QMatrix reflection_matrix(std::size_t i) const {
    const std::size_t d = dim();
    QMatrix m = QMatrix::identity(d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r, c) -= coroots_[i][r] * covectors_[i][c];
    return m;
  }

  /// Cartan matrix A_ij = alpha_j(alpha_i^vee).
  QMatrix cartan_matrix() const {
    QMatrix a(simple_count_, simple_count_);
    for (std::size_t i = 0; i < simple_count_; ++i)
      for (std::size_t j = 0; j < simple_count_; ++j) a(i, j) = pairing(j, coroots_[i]);
    return a;
  }

  /// Basis of the cocharacter lattice X_*(T), as ambient vectors.
  const std::vector<QVector>& coweight_lattice_basis() const { return lattice_basis_; }

  /// Coordinates of x in the lattice basis.
  QVector lattice_coordinates(const QVector& x) const { return lattice_inverse_ * x; }
  QVector from_lattice_coordinates(const QVector& c) const { return lattice_matrix_ * c; }
  bool in_lattice(const QVector& x) const { return is_integral(lattice_coordinates(x)); }

 private:
  friend RootSystem build_root_system(const CartanType& type);

  CartanType type_;
  std::size_t simple_count_ = 0;
  QMatrix gram_;
  std::vector<QVector> roots_;
  std::vector<QVector> coroots_;
  std::vector<QVector> covectors_;
  std::vector<std::vector<int>> coeffs_;
  std::map<QVector, std::size_t> index_;
  std::size_t highest_ = 0;
  std::vector<QVector> lattice_basis_;
  QMatrix lattice_matrix_;
  QMatrix lattice_inverse_;
};

namespace detail {

/// Dynkin diagram in Bourbaki numbering (0-based): bonds and squared lengths
/// of simple roots with long roots normalized to 2.
struct Dynkin {
  std::vector<std::pair<int, int>> bonds;
  std::vector<Rational> lengths;
};

inline Dynkin dynkin(const CartanType& t) {
  const int n = t.rank;
  Dynkin d;
  d.lengths.assign(n, Rational(2));
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) d.bonds.emplace_back(i, i + 1);
  };
  switch (t.family) {
    case Family::A: chain(n); break;
    case Family::B:
      chain(n);
      d.lengths[n - 1] = 1;
      break;
    case Family::C:
      chain(n);
      for (int i = 0; i + 1 < n; ++i) d.lengths[i] = 1;
      break;
    case Family::D:
      chain(n - 1);
      d.bonds.emplace_back(n - 3, n - 1);
      break;
    case Family::E:
      // 1-3-4-5-6(-7-8), 2 attached to 4.
      d.bonds.emplace_back(0, 2);
      d.bonds.emplace_back(1, 3);
      d.bonds.emplace_back(2, 3);
      for (int i = 3; i + 1 < n; ++i) d.bonds.emplace_back(i, i + 1);
      break;
    case Family::F:
      chain(4);
      d.lengths[2] = 1;
      d.lengths[3] = 1;
      break;
    case Family::G:
      chain(2);
      d.lengths[0] = Rational(2, 3);
      break;
  }
  return d;
}

}  // namespace detail

/// Builds the root system of the given type by reflection closure of the
/// simple roots. Throws std::invalid_argument on an invalid type.
inline RootSystem build_root_system(const CartanType& type) {
  type.validate();
  const auto dyn = detail::dynkin(type);
  const std::size_t l = static_cast<std::size_t>(type.rank);

  RootSystem rs;
  rs.type_ = type;
  rs.simple_count_ = l;

  std::vector<QVector> simple(l);
  if (type.isogeny == Isogeny::GL) {
    const std::size_t n = l + 1;
    rs.gram_ = QMatrix::identity(n);
    for (std::size_t i = 0; i < l; ++i) simple[i] = unit_vector(n, i) - unit_vector(n, i + 1);
  } else {
    QMatrix b(l, l);
    for (std::size_t i = 0; i < l; ++i) b(i, i) = dyn.lengths[i];
    for (auto [i, j] : dyn.bonds) {
      // Adjacent simple roots: (a_i, a_j) = -max(|a_i|^2, |a_j|^2) / 2.
      Rational v = -std::max(dyn.lengths[i], dyn.lengths[j]) / Rational(2);
      b(i, j) = v;
      b(j, i) = v;
    }
    rs.gram_ = b;
    for (std::size_t i = 0; i < l; ++i) simple[i] = unit_vector(l, i);
  }

  auto coroot_of = [&](const QVector& a) { return (Rational(2) / dot(a, rs.gram_ * a)) * a; };

  // Reflection closure, tracking simple-root coefficients alongside vectors.
  std::map<QVector, std::vector<int>> found;
  std::vector<QVector> queue;
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<int> c(l, 0);
    c[i] = 1;
    found.emplace(simple[i], c);
    queue.push_back(simple[i]);
  }
  std::vector<QVector> simple_co(l);
  std::vector<QVector> simple_cov(l);
  for (std::size_t i = 0; i < l; ++i) {
    simple_co[i] = coroot_of(simple[i]);
    simple_cov[i] = rs.gram_ * simple[i];
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const QVector v = queue[head];
    const std::vector<int> cv = found.at(v);
    for (std::size_t i = 0; i < l; ++i) {
      Rational p = dot(simple_cov[i], v);
      QVector w = v - p * simple_co[i];
      if (found.count(w)) continue;
      // s_i(v) = v - <v, a_i^vee> a_i with <v, a_i^vee> = 2 (v, a_i) / (a_i, a_i).
      Rational q = Rational(2) * p / dot(simple_cov[i], simple[i]);
      if (!q.is_integer()) throw std::logic_error("non-integral root pairing during closure");
      std::vector<int> cw = cv;
      cw[i] -= static_cast<int>(q.num());
      found.emplace(w, cw);
      queue.push_back(w);
    }
  }

  std::vector<std::pair<std::vector<int>, QVector>> pos;
  for (auto& [v, c] : found) {
    bool positive = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
    bool negative = std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
    if (!positive && !negative) throw std::logic_error("root with mixed-sign coefficients");
    if (positive) pos.emplace_back(c, v);
  }
  auto height = [](const std::vector<int>& c) {
    int h = 0;
    for (int x : c) h += x;
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](const auto& a, const auto& b) {
    int ha = height(a.first), hb = height(b.first);
    if (ha != hb) return ha < hb;
    return a.first > b.first;
  });
  for (auto& [c, v] : pos) {
    rs.roots_.push_back(v);
    rs.coeffs_.push_back(c);
  }
  for (auto& [c, v] : pos) {
    rs.roots_.push_back(-v);
    std::vector<int> nc = c;
    for (int& x : nc) x = -x;
    rs.coeffs_.push_back(nc);
  }
  if (rs.roots_.size() != found.size()) throw std::logic_error("root closure is not symmetric");
  for (std::size_t i = 0; i < rs.roots_.size(); ++i) {
    rs.coroots_.push_back(coroot_of(rs.roots_[i]));
    rs.covectors_.push_back(rs.gram_ * rs.roots_[i]);
    rs.index_.emplace(rs.roots_[i], i);
  }
  rs.highest_ = pos.size() - 1;

  const std::size_t d = rs.gram_.rows();
  switch (type.isogeny) {
    case Isogeny::SimplyConnected:
      rs.lattice_basis_ = simple_co;
      break;
    case Isogeny::Adjoint: {
      // Fundamental coweights: alpha_j(omega_i) = delta_ij.
      QMatrix rows(l, d);
      for (std::size_t j = 0; j < l; ++j)
        for (std::size_t c = 0; c < d; ++c) rows(j, c) = simple_cov[j][c];
      QMatrix inv = rows.inverse();
      for (std::size_t i = 0; i < l; ++i) rs.lattice_basis_.push_back(inv.column(i));
      break;
    }
    case Isogeny::GL:
      for (std::size_t i = 0; i < d; ++i) rs.lattice_basis_.push_back(unit_vector(d, i));
      break;
  }
  rs.lattice_matrix_ = QMatrix::from_columns(rs.lattice_basis_);
  rs.lattice_inverse_ = rs.lattice_matrix_.inverse();
  return rs;
}

/// Default enumeration guard for the finite Weyl group.
inline constexpr int kDefaultWeylRankGuard = 4;

/// All elements of the finite Weyl group, identity first, in breadth-first
/// order over the simple reflections (so each stored word is reduced).
/// Throws std::length_error if the semisimple rank exceeds max_rank.
inline std::vector<WeylElement> weyl_group(const RootSystem& rs, int max_rank = kDefaultWeylRankGuard) {
  if (static_cast<int>(rs.rank()) > max_rank)
    throw std::length_error("Weyl group enumeration guard: rank " + std::to_string(rs.rank()) + " exceeds " +
                            std::to_string(max_rank));
  std::vector<QMatrix> gens;
  for (std::size_t i = 0; i < rs.rank(); ++i) gens.push_back(rs.reflection_matrix(i));
  std::vector<WeylElement> out;
  std::map<QMatrix, std::size_t> seen;
  out.push_back({QMatrix::identity(rs.dim()), {}});
  seen.emplace(out[0].matrix, 0);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      QMatrix m = out[head].matrix * gens[i];
      if (seen.count(m)) continue;
      std::vector<int> w = out[head].word;
      w.push_back(static_cast<int>(i));
      seen.emplace(m, out.size());
      out.push_back({std::move(m), std::move(w)});
    }
  }
  return out;
}

/// Reflects x in the hyperplane of the given root vector.
/// Throws std::invalid_argument if the vector is not a root of rs.
inline QVector reflect(const RootSystem& rs, const QVector& root, const QVector& x) {
  auto i = rs.find_root(root);
  if (!i) throw std::invalid_argument("reflect: " + to_string(root) + " is not a root");
  if (x.size() != rs.dim()) throw std::invalid_argument("reflect: dimension mismatch");
  return rs.reflect(*i, x);
}

}  // namespace affinelie
