#pragma once

// Combinatorial shadows of centralizers in the loop group: the affine roots
// vanishing at a torus point, the stabilizer in the affine Weyl group, its
// reflection subgroup, and the component group order. Also the circle-gauge
// and double-affine variants and type-A matrix shapes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "affinelie/alcove.hpp"
#include "affinelie/rational.hpp"
#include "affinelie/rootdata.hpp"
#include "affinelie/weylaff.hpp"

namespace affinelie {

/// s = Exp(theta, a tau). theta is in lattice-basis coordinates, reduced to
/// [0,1); a is an ambient vector.
struct ExpPoint {
  QVector theta;
  QVector a;

  static ExpPoint make(QVector theta, QVector a) {
    for (auto& t : theta) t = t.frac();
    return {std::move(theta), std::move(a)};
  }
};

struct CentralizerData {
  std::vector<AffineRoot> phi;
  /// Dimension of the centralizer: dim t + |phi|.
  std::size_t dim = 0;
  FiniteSubgroup w;
  FiniteSubgroup w0;
  std::size_t pi0_order = 1;
  bool connected = true;
  std::string subsystem_type;
  /// One element of each coset of w0 in w, the identity first.
  std::vector<AffineWeylElement> pi0_representatives;
};

/// A = re + i im.
struct GaugePoint {
  QVector re;
  QVector im;
};

/// The double-affine root with linear part `root`, vanishing at (A1, A2) when
/// root(A1) + n1 = 0 and root(A2) + n2 = 0.
struct DoubleAffineRoot {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::size_t root = 0;

  friend auto operator<=>(const DoubleAffineRoot&, const DoubleAffineRoot&) = default;
};

/// (w0, (l1, l2)) acting on pairs by (x1, x2) -> (w0 x1 + l1, w0 x2 + l2).
struct DoubleAffineWeylElement {
  QMatrix linear;
  QVector t1;
  QVector t2;

  friend auto operator<=>(const DoubleAffineWeylElement&, const DoubleAffineWeylElement&) = default;
  friend bool operator==(const DoubleAffineWeylElement&, const DoubleAffineWeylElement&) = default;
};

struct DoubleAffineData {
  std::vector<DoubleAffineRoot> phi;
  std::vector<DoubleAffineWeylElement> w;
  CentralizerData first;
  CentralizerData second;
  /// phi -> phi of each circle factor is injective.
  bool roots_injective = false;
  /// phi equals the fiber product of the two circle root sets over the finite roots.
  bool roots_cartesian = false;
  bool groups_injective = false;
  bool groups_cartesian = false;
};

// ---------------------------------------------------------------------------
// Dynkin classification of root subsystems

namespace detail {

inline std::string classify_component(const RootSystem& rs, const std::vector<std::size_t>& simple,
                                      const std::vector<std::vector<int>>& bond) {
  const std::size_t r = simple.size();
  if (r == 1) return "A1";
  std::vector<int> degree(r, 0);
  int max_bond = 1;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (i != j && bond[i][j]) {
        ++degree[i];
        max_bond = std::max(max_bond, bond[i][j]);
        if (i < j) ++edges;
      }
  if (edges != r - 1) throw std::logic_error("subsystem Dynkin graph is not a tree");
  if (max_bond == 3) return "G2";
  if (max_bond == 2) {
    if (r == 2) return "B2";
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        if (bond[i][j] == 2) a = i, b = j;
    if (degree[a] == 2 && degree[b] == 2) return "F4";
    Rational longest;
    for (auto s : simple) longest = std::max(longest, rs.inner(rs.root(s), rs.root(s)));
    std::size_t shorts = 0;
    for (auto s : simple) shorts += rs.inner(rs.root(s), rs.root(s)) < longest;
    return (shorts == 1 ? "B" : "C") + std::to_string(r);
  }
  auto branch = std::find_if(degree.begin(), degree.end(), [](int d) { return d >= 3; });
  if (branch == degree.end()) return "A" + std::to_string(r);
  const std::size_t centre = static_cast<std::size_t>(branch - degree.begin());
  std::vector<std::size_t> arms;
  for (std::size_t start = 0; start < r; ++start) {
    if (start == centre || !bond[centre][start]) continue;
    std::size_t len = 1, prev = centre, cur = start;
    while (true) {
      std::optional<std::size_t> next;
      for (std::size_t k = 0; k < r; ++k)
        if (k != prev && k != cur && bond[cur][k]) next = k;
      if (!next) break;
      prev = cur, cur = *next, ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3) throw std::logic_error("unexpected branch in simply-laced subsystem");
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(r);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return "E" + std::to_string(r);
  throw std::logic_error("unclassifiable subsystem Dynkin graph");
}

}  // namespace detail

/// Dynkin type of the root subsystem formed by the given roots (indices into
/// all_roots, closed under negation). Components are joined with "+" in sorted
/// order; the empty subsystem has type "".
inline std::string subsystem_type(const RootSystem& rs, const std::vector<std::size_t>& roots) {
  std::set<std::size_t> pos;
  for (auto i : roots)
    if (rs.is_positive(i)) pos.insert(i);
  std::vector<std::size_t> simple;
  for (auto a : pos) {
    bool decomposable = false;
    for (auto b : pos) {
      if (b == a) continue;
      auto c = rs.find_root(rs.root(a) - rs.root(b));
      if (c && pos.count(*c)) decomposable = true;
    }
    if (!decomposable) simple.push_back(a);
  }
  const std::size_t r = simple.size();
  std::vector<std::vector<int>> bond(r, std::vector<int>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (i != j) {
        Rational aij = rs.pairing(simple[j], rs.coroot(simple[i]));
        Rational aji = rs.pairing(simple[i], rs.coroot(simple[j]));
        bond[i][j] = static_cast<int>((aij * aji).num());
      }
  std::vector<int> comp(r, -1);
  std::vector<std::string> names;
  for (std::size_t s = 0; s < r; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(names.size());
    std::vector<std::size_t> members, stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (std::size_t v = 0; v < r; ++v)
        if (bond[u][v] && comp[v] < 0) comp[v] = id, stack.push_back(v);
    }
    std::sort(members.begin(), members.end());
    std::vector<std::size_t> sub;
    std::vector<std::vector<int>> sub_bond(members.size(), std::vector<int>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
      sub.push_back(simple[members[i]]);
      for (std::size_t j = 0; j < members.size(); ++j) sub_bond[i][j] = bond[members[i]][members[j]];
    }
    names.push_back(detail::classify_component(rs, sub, sub_bond));
  }
  std::sort(names.begin(), names.end());
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : "+") + n;
  return out;
}

// ---------------------------------------------------------------------------
// Centralizers

namespace detail {

inline CentralizerData finish_centralizer(const AffineSystem& sys, std::vector<AffineRoot> phi, FiniteSubgroup w) {
  const RootSystem& rs = sys.rs();
  std::sort(phi.begin(), phi.end());
  CentralizerData d;
  std::vector<AffineWeylElement> gens;
  std::vector<std::size_t> linear;
  for (const auto& a : phi) {
    linear.push_back(a.root);
    if (rs.is_positive(a.root)) gens.push_back(affine_reflection(rs, a));
  }
  d.w0 = FiniteSubgroup::generated_by(std::move(gens), rs.dim());
  d.w = std::move(w);
  if (d.w.order() % d.w0.order() != 0 || !d.w0.is_subset_of(d.w))
    throw std::logic_error("reflection subgroup is not contained in the stabilizer");
  d.pi0_order = d.w.order() / d.w0.order();
  d.connected = d.pi0_order == 1;
  std::set<AffineWeylElement> covered;
  d.pi0_representatives.push_back(AffineWeylElement::identity(rs.dim()));
  for (const auto& h : d.w0.elements()) covered.insert(h);
  for (const auto& e : d.w.elements()) {
    if (covered.count(e)) continue;
    d.pi0_representatives.push_back(e);
    for (const auto& h : d.w0.elements()) covered.insert(e * h);
  }
  d.dim = rs.dim() + phi.size();
  d.subsystem_type = subsystem_type(rs, linear);
  d.phi = std::move(phi);
  return d;
}

inline void require_dim(const RootSystem& rs, const QVector& v, const char* what) {
  if (v.size() != rs.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace detail

/// Phi_s = {(alpha, n) : alpha(theta) in Z, alpha(a) = n}, W_s = {(w0, l) :
/// w0 theta = theta mod X_*, w0 a + l = a}.
inline CentralizerData centralizer_elliptic(const AffineSystem& sys, const ExpPoint& s) {
  const RootSystem& rs = sys.rs();
  if (s.theta.size() != rs.dim()) throw std::invalid_argument("centralizer_elliptic: theta dimension mismatch");
  detail::require_dim(rs, s.a, "centralizer_elliptic");
  const QVector theta = rs.from_lattice_coordinates(s.theta);
  std::vector<AffineRoot> phi;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Rational va = rs.pairing(i, s.a);
    if (rs.pairing(i, theta).is_integer() && va.is_integer()) phi.push_back({i, va.num()});
  }
  std::vector<AffineWeylElement> elems;
  for (const auto& w : sys.weyl()) {
    if (!rs.in_lattice(w.matrix * theta - theta)) continue;
    QVector lambda = s.a - w.matrix * s.a;
    if (rs.in_lattice(lambda)) elems.push_back({w.matrix, std::move(lambda)});
  }
  return detail::finish_centralizer(sys, std::move(phi), FiniteSubgroup::from_elements(std::move(elems)));
}

/// Phi_J = affine roots vanishing at every vertex of J, W_J its reflection
/// group. Simply-connected isogeny only.
inline CentralizerData centralizer_face(const AffineSystem& sys, const Face& face) {
  const RootSystem& rs = sys.rs();
  if (!sys.simply_connected()) throw std::invalid_argument("centralizer_face: needs the simply-connected isogeny");
  std::vector<AffineRoot> phi;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Rational v = rs.pairing(i, sys.alcove().vertices[face.vertices.front()]);
    if (!v.is_integer()) continue;
    bool all = true;
    for (int k : face.vertices) all = all && rs.pairing(i, sys.alcove().vertices[k]) == v;
    if (all) phi.push_back({i, v.num()});
  }
  return detail::finish_centralizer(sys, std::move(phi), stabilizer_of_face(sys, face));
}

/// Phi_A = {(alpha, n) : alpha(im) = 0, alpha(re) = n}; W_A is the
/// simultaneous stabilizer (w0 re + l = re, w0 im = im).
inline CentralizerData gauge_centralizer_circle(const AffineSystem& sys, const GaugePoint& a) {
  const RootSystem& rs = sys.rs();
  detail::require_dim(rs, a.re, "gauge_centralizer_circle");
  detail::require_dim(rs, a.im, "gauge_centralizer_circle");
  std::vector<AffineRoot> phi;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Rational v = rs.pairing(i, a.re);
    if (rs.pairing(i, a.im).is_zero() && v.is_integer()) phi.push_back({i, v.num()});
  }
  std::vector<AffineWeylElement> elems;
  for (const auto& w : sys.weyl()) {
    if (w.matrix * a.im != a.im) continue;
    QVector lambda = a.re - w.matrix * a.re;
    if (rs.in_lattice(lambda)) elems.push_back({w.matrix, std::move(lambda)});
  }
  return detail::finish_centralizer(sys, std::move(phi), FiniteSubgroup::from_elements(std::move(elems)));
}

/// Centralizer data of B = (A1, A2) on the double loop group, with the two
/// circle projections and the injectivity and fiber-product checks.
inline DoubleAffineData double_affine_centralizer(const AffineSystem& sys, const QVector& a1, const QVector& a2) {
  const RootSystem& rs = sys.rs();
  detail::require_dim(rs, a1, "double_affine_centralizer");
  detail::require_dim(rs, a2, "double_affine_centralizer");
  DoubleAffineData d;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Rational v1 = rs.pairing(i, a1), v2 = rs.pairing(i, a2);
    if (v1.is_integer() && v2.is_integer()) d.phi.push_back({-v1.num(), -v2.num(), i});
  }
  for (const auto& w : sys.weyl()) {
    QVector l1 = a1 - w.matrix * a1, l2 = a2 - w.matrix * a2;
    if (rs.in_lattice(l1) && rs.in_lattice(l2)) d.w.push_back({w.matrix, std::move(l1), std::move(l2)});
  }
  std::sort(d.w.begin(), d.w.end());
  const QVector zero = zero_vector(rs.dim());
  d.first = gauge_centralizer_circle(sys, {a1, zero});
  d.second = gauge_centralizer_circle(sys, {a2, zero});

  // Roots: the circle-i image of (n1, n2, alpha) is (alpha, -n_i).
  std::set<AffineRoot> p1(d.first.phi.begin(), d.first.phi.end()), p2(d.second.phi.begin(), d.second.phi.end());
  std::set<AffineRoot> img1, img2;
  bool into = true;
  for (const auto& r : d.phi) {
    AffineRoot x{r.root, -r.n1}, y{r.root, -r.n2};
    into = into && p1.count(x) && p2.count(y);
    img1.insert(x);
    img2.insert(y);
  }
  d.roots_injective = into && img1.size() == d.phi.size() && img2.size() == d.phi.size();
  std::set<DoubleAffineRoot> fiber;
  for (const auto& x : p1)
    for (const auto& y : p2)
      if (x.root == y.root) fiber.insert({-x.level, -y.level, x.root});
  d.roots_cartesian = d.roots_injective && fiber == std::set<DoubleAffineRoot>(d.phi.begin(), d.phi.end());

  // Groups: the circle-i image of (w0, (l1, l2)) is (w0, l_i).
  std::set<AffineWeylElement> g1, g2;
  into = true;
  for (const auto& e : d.w) {
    AffineWeylElement x{e.linear, e.t1}, y{e.linear, e.t2};
    into = into && d.first.w.contains(x) && d.second.w.contains(y);
    g1.insert(x);
    g2.insert(y);
  }
  d.groups_injective = into && g1.size() == d.w.size() && g2.size() == d.w.size();
  std::set<DoubleAffineWeylElement> gfiber;
  for (const auto& x : d.first.w.elements())
    for (const auto& y : d.second.w.elements())
      if (x.linear == y.linear) gfiber.insert({x.linear, x.translation, y.translation});
  d.groups_cartesian =
      d.groups_injective && gfiber == std::set<DoubleAffineWeylElement>(d.w.begin(), d.w.end());
  return d;
}

inline bool is_subset(const std::vector<AffineRoot>& a, const std::vector<AffineRoot>& b) {
  std::set<AffineRoot> sb(b.begin(), b.end());
  return std::all_of(a.begin(), a.end(), [&](const AffineRoot& r) { return sb.count(r) > 0; });
}

/// t lies in the etale region of s: G_t is contained in G_s.
inline bool et_contains(const AffineSystem& sys, const ExpPoint& s, const ExpPoint& t) {
  CentralizerData ds = centralizer_elliptic(sys, s), dt = centralizer_elliptic(sys, t);
  return is_subset(dt.phi, ds.phi) && dt.w.is_subset_of(ds.w);
}

/// s lies in the small-eigenvalue region of J; theta is unconstrained.
inline bool se_contains(const AffineSystem& sys, const Face& face, const ExpPoint& s) {
  return star_contains(sys, face, s.a);
}

// ---------------------------------------------------------------------------
// Type-A matrix shapes

/// n x n grid; entry (i, j) holds the z-power of the root space e_i - e_j.
struct MatrixShape {
  std::size_t n = 0;
  std::vector<std::vector<std::optional<std::int64_t>>> entries;

  friend bool operator==(const MatrixShape&, const MatrixShape&) = default;
};

/// (i, j) with root = e_i - e_j, for a type-A root system of matrix size n.
inline std::pair<std::size_t, std::size_t> type_a_entry(const RootSystem& rs, std::size_t root) {
  if (rs.cartan_type().family != Family::A) throw std::invalid_argument("matrix shapes need type A");
  const QVector& v = rs.root(root);
  const std::size_t n = rs.rank() + 1;
  if (rs.cartan_type().isogeny == Isogeny::GL) {
    std::optional<std::size_t> i, j;
    for (std::size_t k = 0; k < n; ++k) {
      if (v[k] == Rational(1)) i = k;
      if (v[k] == Rational(-1)) j = k;
    }
    return {*i, *j};
  }
  // Simple-root coordinates: e_i - e_j (i < j) has coefficient 1 on simple roots i..j-1.
  const auto& c = rs.coefficients(root);
  std::size_t first = 0;
  while (c[first] == 0) ++first;
  std::size_t last = first;
  while (last < c.size() && c[last] != 0) ++last;
  return c[first] > 0 ? std::pair{first, last} : std::pair{last, first};
}

inline MatrixShape matrix_shape(const RootSystem& rs, const std::vector<AffineRoot>& phi) {
  if (rs.cartan_type().family != Family::A) throw std::invalid_argument("matrix_shape: type A only");
  MatrixShape s;
  s.n = rs.rank() + 1;
  s.entries.assign(s.n, std::vector<std::optional<std::int64_t>>(s.n));
  for (std::size_t i = 0; i < s.n; ++i) s.entries[i][i] = 0;
  for (const auto& a : phi) {
    auto [i, j] = type_a_entry(rs, a.root);
    s.entries[i][j] = a.level;
  }
  return s;
}

/// Bracket grid with one row per line, cells right-aligned to a common width.
inline std::string render_grid(const std::vector<std::vector<std::string>>& cells) {
  std::size_t width = 0;
  for (const auto& row : cells)
    for (const auto& c : row) width = std::max(width, c.size());
  std::string out;
  for (const auto& row : cells) {
    out += "[";
    for (const auto& c : row) out += " " + std::string(width - c.size(), ' ') + c;
    out += " ]\n";
  }
  return out;
}

/// C for power 0, Cz^k otherwise, 0 for an absent entry.
inline std::string render_shape(const MatrixShape& s) {
  std::vector<std::vector<std::string>> cells(s.n, std::vector<std::string>(s.n));
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) {
      const auto& e = s.entries[i][j];
      if (!e) cells[i][j] = "0";
      else if (*e == 0) cells[i][j] = "C";
      else if (*e == 1) cells[i][j] = "Cz";
      else cells[i][j] = "Cz^" + std::to_string(*e);
    }
  return render_grid(cells);
}

}  // namespace affinelie
