#pragma once

// Randomized and exhaustive structural checks, grouped into named suites.
// Every check returns a CheckOutcome; suites wrap them in timed reports.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affinelie/alcove.hpp"
#include "affinelie/centralizer.hpp"
#include "affinelie/check.hpp"
#include "affinelie/parabolic.hpp"
#include "affinelie/random.hpp"
#include "affinelie/serialize.hpp"
#include "affinelie/weierstrass.hpp"
#include "affinelie/weylaff.hpp"

namespace affinelie {

// ---------------------------------------------------------------------------
// Checks over the affine Weyl group

/// W_J generated by reflections equals the full stabilizer of its witness.
inline CheckOutcome check_face_stabilizers(const AffineSystem& sys) {
  for (const auto& f : sys.faces().faces) {
    FiniteSubgroup gen = stabilizer_of_face(sys, f);
    FiniteSubgroup full = stabilizer_of_point(sys, f.witness);
    if (!(gen == full))
      return CheckOutcome::fail("reflection subgroup differs from the full stabilizer",
                                {{"face", f.label()}, {"generated", gen.order()}, {"stabilizer", full.order()}});
    if (!gen.is_group()) return CheckOutcome::fail("stabilizer is not a group", {{"face", f.label()}});
  }
  return CheckOutcome::ok(sys.faces().faces.size());
}

/// Each wall reflection of C fixes every vertex on that wall, and descent
/// words rebuilt from those vertex-stabilizer generators give the same element.
inline CheckOutcome check_vertex_generation(const AffineSystem& sys, Rng rng, std::size_t samples) {
  const Alcove& c = sys.alcove();
  std::vector<AffineWeylElement> wall_refl;
  for (std::size_t j = 0; j < c.walls.size(); ++j) {
    AffineWeylElement r = affine_reflection(sys.rs(), c.walls[j]);
    for (std::size_t k = 0; k < c.vertices.size(); ++k) {
      if (k == j) continue;
      const std::uint32_t all = (1u << c.walls.size()) - 1;
      const Face& v = sys.faces().faces[sys.faces().index_of_mask(all ^ (1u << k))];
      if (!stabilizer_of_face(sys, v).contains(r))
        return CheckOutcome::fail("wall reflection missing from vertex stabilizer", {{"wall", j}, {"vertex", v.label()}});
    }
    wall_refl.push_back(r);
  }
  for (std::size_t s = 0; s < samples; ++s) {
    QVector x = rng.rational_vector(sys.rs().dim(), Rational(-3), Rational(3), 12);
    Reduction r = reduce_to_alcove(sys, x);
    AffineWeylElement w = AffineWeylElement::identity(sys.rs().dim());
    for (int j : r.walls) w = wall_refl[j] * w;
    if (!(w == r.element)) return CheckOutcome::fail("descent word does not rebuild the element", {{"x", vector_json(x)}});
  }
  return CheckOutcome::ok(samples);
}

inline CheckOutcome check_group_law(const AffineSystem& sys, Rng rng, std::size_t samples) {
  const std::size_t d = sys.rs().dim();
  for (std::size_t s = 0; s < samples; ++s) {
    AffineWeylElement a = random_affine_element(sys, rng), b = random_affine_element(sys, rng),
                      c = random_affine_element(sys, rng);
    QVector x = rng.rational_vector(d, Rational(-2), Rational(2), 8);
    if (!(a * a.inverse()).is_identity() || !(a.inverse() * a).is_identity())
      return CheckOutcome::fail("inverse law fails", {{"a", element_json(a)}});
    if (!((a * b) * c == a * (b * c))) return CheckOutcome::fail("associativity fails", {{"a", element_json(a)}});
    if ((a * b)(x) != a(b(x))) return CheckOutcome::fail("action is not compatible with the product", {{"a", element_json(a)}, {"x", vector_json(x)}});
  }
  return CheckOutcome::ok(samples);
}

/// Reducing w(x) lands on the same point of the closed alcove as reducing x,
/// for w in the reflection subgroup (coroot translations).
inline CheckOutcome check_reduce_equivariance(const AffineSystem& sys, Rng rng, std::size_t samples) {
  for (std::size_t s = 0; s < samples; ++s) {
    QVector x = rng.rational_vector(sys.rs().dim(), Rational(-3), Rational(3), 12);
    AffineWeylElement w = random_affine_element(sys, rng, 3, true);
    QVector a = reduce_to_alcove(sys, x).image, b = reduce_to_alcove(sys, w(x)).image;
    if (a != b) return CheckOutcome::fail("reduction is not constant on orbits", {{"x", vector_json(x)}, {"w", element_json(w)}});
  }
  return CheckOutcome::ok(samples);
}

inline std::vector<PointPair> random_star_pairs(const AffineSystem& sys, const Face& face, Rng& rng, std::size_t samples) {
  FiniteSubgroup wj = stabilizer_of_face(sys, face);
  std::vector<PointPair> pairs;
  for (std::size_t s = 0; s < samples; ++s) {
    QVector x = random_star_point(sys, face, wj, rng);
    switch (s % 3) {
      case 0: pairs.push_back({x, rng.pick(wj.elements())(x)}); break;
      case 1: pairs.push_back({x, random_star_point(sys, face, wj, rng)}); break;
      default: pairs.push_back({x, x}); break;
    }
  }
  return pairs;
}

inline CheckOutcome check_open_embedding(const AffineSystem& sys, Rng rng, std::size_t samples) {
  std::size_t cases = 0;
  for (const auto& f : sys.faces().faces) {
    auto pairs = random_star_pairs(sys, f, rng, samples);
    CheckOutcome r = verify_open_embedding(sys, f, pairs);
    if (!r) return r;
    cases += r.cases;
  }
  return CheckOutcome::ok(cases);
}

inline CheckOutcome check_star_intersection(const AffineSystem& sys) {
  std::size_t cases = 0;
  for (const auto& f : sys.faces().faces) {
    CheckOutcome r = verify_star_intersection(sys, f);
    if (!r) return r;
    cases += r.cases;
  }
  return CheckOutcome::ok(cases);
}

inline CheckOutcome check_cover(const AffineSystem& sys, Rng rng, std::size_t samples) {
  std::vector<QVector> pts;
  for (std::size_t s = 0; s < samples; ++s) {
    if (s % 4 == 3)
      pts.push_back(random_affine_element(sys, rng, 3)(rng.pick(sys.alcove().vertices)));
    else
      pts.push_back(rng.rational_vector(sys.rs().dim(), Rational(-3), Rational(3), 12));
  }
  return verify_cover(sys, pts);
}

// ---------------------------------------------------------------------------
// Parabolics

/// ambient = levi + nilradical + (-nilradical) disjointly, levi = Phi_{J'},
/// and the nilradical is closed under root addition inside ambient.
inline CheckOutcome check_parabolic_structure(const AffineSystem& sys) {
  const RootSystem& rs = sys.rs();
  const auto& faces = sys.faces().faces;
  std::size_t cases = 0;
  for (const auto& [i, j] : sys.faces().arrows) {
    ParabolicData p = parabolic(sys, faces[i], faces[j]);
    std::set<AffineRoot> amb(p.ambient.begin(), p.ambient.end()), nil(p.nilradical.begin(), p.nilradical.end());
    std::set<AffineRoot> parts(p.levi.begin(), p.levi.end());
    json where = {{"from", faces[i].label()}, {"to", faces[j].label()}};
    for (const auto& a : p.nilradical) {
      AffineRoot neg = negate(rs, a);
      if (nil.count(neg)) return CheckOutcome::fail("nilradical meets its negative", where);
      if (!parts.insert(a).second || !parts.insert(neg).second) return CheckOutcome::fail("decomposition is not disjoint", where);
    }
    if (parts != amb) return CheckOutcome::fail("levi and nilradicals do not exhaust the ambient roots", where);
    auto levi_expected = centralizer_face(sys, faces[j]).phi;
    if (p.levi != levi_expected) return CheckOutcome::fail("levi differs from the target face roots", where);
    for (const auto& a : p.nilradical)
      for (const auto& b : p.nilradical) {
        auto sum = rs.find_root(rs.root(a.root) + rs.root(b.root));
        if (!sum) continue;
        AffineRoot s{*sum, a.level + b.level};
        if (amb.count(s) && !nil.count(s)) return CheckOutcome::fail("nilradical not closed under addition", where);
      }
    ++cases;
  }
  return CheckOutcome::ok(cases);
}

inline CheckOutcome check_parabolic_chains(const AffineSystem& sys) {
  const auto& cat = sys.faces();
  const std::size_t n = cat.faces.size();
  std::size_t chains = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!cat.has_arrow(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!cat.has_arrow(j, k)) continue;
        ++chains;
        if (!compose_parabolics(sys, cat.faces[i], cat.faces[j], cat.faces[k]))
          return CheckOutcome::fail("parabolic composition fails",
                                    {{"chain", {cat.faces[i].label(), cat.faces[j].label(), cat.faces[k].label()}}});
      }
    }
  return CheckOutcome::ok(chains);
}

// ---------------------------------------------------------------------------
// Centralizers

/// Phi is closed under negation and its linear parts under their own reflections.
inline CheckOutcome check_phi_closure(const RootSystem& rs, const std::vector<AffineRoot>& phi, const json& where) {
  std::set<AffineRoot> set(phi.begin(), phi.end());
  std::set<std::size_t> linear;
  for (const auto& a : phi) {
    if (!set.count(negate(rs, a))) return CheckOutcome::fail("phi not closed under negation", where);
    linear.insert(a.root);
  }
  for (auto a : linear)
    for (auto b : linear) {
      auto r = rs.find_root(rs.reflect(a, rs.root(b)));
      if (!r || !linear.count(*r)) return CheckOutcome::fail("linear parts of phi are not a root subsystem", where);
    }
  return CheckOutcome::ok(1);
}

inline CheckOutcome check_face_centralizers(const AffineSystem& sys) {
  const std::size_t d = sys.rs().dim();
  for (const auto& f : sys.faces().faces) {
    CentralizerData cf = centralizer_face(sys, f);
    json where = {{"face", f.label()}};
    if (auto r = check_phi_closure(sys.rs(), cf.phi, where); !r) return r;
    CentralizerData ce = centralizer_elliptic(sys, ExpPoint::make(zero_vector(d), f.witness));
    if (cf.phi != ce.phi || !(cf.w == ce.w)) return CheckOutcome::fail("face and elliptic centralizers disagree", where);
    if (!cf.connected) return CheckOutcome::fail("face centralizer not connected", where);
    if (cf.dim != d + cf.phi.size()) return CheckOutcome::fail("dimension mismatch", where);
  }
  return CheckOutcome::ok(sys.faces().faces.size());
}

/// Points in the small-eigenvalue region of J have centralizers inside G_J.
inline CheckOutcome check_se_in_et(const AffineSystem& sys, Rng rng, std::size_t samples) {
  const auto& faces = sys.faces().faces;
  std::vector<CentralizerData> face_data;
  std::vector<FiniteSubgroup> wj;
  for (const auto& f : faces) {
    face_data.push_back(centralizer_face(sys, f));
    wj.push_back(face_data.back().w);
  }
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t fi = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(faces.size()) - 1));
    QVector theta = rng.coin(0.5) ? zero_vector(sys.rs().dim()) : rng.rational_vector(sys.rs().dim(), Rational(0), Rational(1), 6);
    ExpPoint p = ExpPoint::make(theta, random_star_point(sys, faces[fi], wj[fi], rng));
    if (!se_contains(sys, faces[fi], p)) return CheckOutcome::fail("sampled point outside the star", {{"face", faces[fi].label()}});
    CentralizerData cs = centralizer_elliptic(sys, p);
    if (!is_subset(cs.phi, face_data[fi].phi) || !cs.w.is_subset_of(face_data[fi].w))
      return CheckOutcome::fail("centralizer of a star point escapes G_J",
                                {{"face", faces[fi].label()}, {"theta", vector_json(p.theta)}, {"a", vector_json(p.a)}});
  }
  return CheckOutcome::ok(samples);
}

/// theta = 0 and simply connected: the component group is trivial.
inline CheckOutcome check_connected(const AffineSystem& sys, Rng rng, std::size_t samples) {
  const std::size_t d = sys.rs().dim();
  for (std::size_t s = 0; s < samples; ++s) {
    QVector a = rng.rational_vector(d, Rational(-2), Rational(2), s % 2 ? 12 : 4);
    CentralizerData c = centralizer_elliptic(sys, ExpPoint::make(zero_vector(d), a));
    if (c.pi0_order != 1) return CheckOutcome::fail("disconnected centralizer at theta = 0", {{"a", vector_json(a)}, {"pi0", c.pi0_order}});
  }
  return CheckOutcome::ok(samples);
}

/// Data at w(s) are the w-transport of the data at s.
inline CheckOutcome check_w_equivariance(const AffineSystem& sys, Rng rng, std::size_t samples) {
  const RootSystem& rs = sys.rs();
  const std::size_t d = rs.dim();
  for (std::size_t s = 0; s < samples; ++s) {
    QVector theta = rng.coin(0.5) ? zero_vector(d) : rng.rational_vector(d, Rational(0), Rational(1), 4);
    QVector a = rng.rational_vector(d, Rational(-2), Rational(2), 4);
    AffineWeylElement w = random_affine_element(sys, rng);
    ExpPoint p = ExpPoint::make(theta, a);
    QVector moved_theta = rs.lattice_coordinates(w.linear * rs.from_lattice_coordinates(p.theta));
    ExpPoint q = ExpPoint::make(moved_theta, w(a));
    CentralizerData cp = centralizer_elliptic(sys, p), cq = centralizer_elliptic(sys, q);
    std::set<AffineRoot> moved;
    for (const auto& r : cp.phi) {
      std::size_t b = rs.find_root(w.linear * rs.root(r.root)).value();
      moved.insert({b, r.level + rs.pairing(b, w.translation).num()});
    }
    if (moved != std::set<AffineRoot>(cq.phi.begin(), cq.phi.end()) || cp.w.order() != cq.w.order() ||
        cp.w0.order() != cq.w0.order())
      return CheckOutcome::fail("centralizer data not W-equivariant", {{"a", vector_json(a)}, {"w", element_json(w)}});
  }
  return CheckOutcome::ok(samples);
}

inline CheckOutcome check_double_affine(const AffineSystem& sys, Rng rng, std::size_t samples) {
  const std::size_t d = sys.rs().dim();
  for (std::size_t s = 0; s < samples; ++s) {
    QVector a1 = rng.rational_vector(d, Rational(-2), Rational(2), 4);
    QVector a2 = rng.rational_vector(d, Rational(-2), Rational(2), 4);
    DoubleAffineData b = double_affine_centralizer(sys, a1, a2);
    if (!b.roots_injective || !b.roots_cartesian || !b.groups_injective || !b.groups_cartesian)
      return CheckOutcome::fail("double-affine square fails",
                                {{"a1", vector_json(a1)}, {"a2", vector_json(a2)}, {"data", double_affine_json(sys.rs(), b)}});
  }
  return CheckOutcome::ok(samples);
}

// ---------------------------------------------------------------------------
// Weierstrass

inline ComplexMatrix random_cell_matrix(const Lattice& lat, Rng& rng, bool jordan, std::size_t n = 3) {
  auto cell_point = [&] { return rng.uniform_real(0.2, 0.8) * lat.omega1 + rng.uniform_real(0.2, 0.8) * lat.omega2; };
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = cell_point();
  if (jordan && n >= 2) d(1, 1) = d(0, 0), d(0, 1) = 1.0;
  ComplexMatrix p = ComplexMatrix::Identity(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) += Complex(rng.uniform_real(-0.3, 0.3), rng.uniform_real(-0.3, 0.3));
  return p * d * p.inverse();
}

struct WeierstrassTolerances {
  double cubic = 1e-5;
  double commutator = 1e-9;
  double half_period = 1e-7;
  double symmetric_invariant = 1e-7;
};

inline CheckOutcome check_weierstrass(Rng rng, std::size_t matrices, const WpOptions& opt = {},
                                      const WeierstrassTolerances& tol = {}) {
  const Lattice lat{1.0, Complex(0, 2)};
  double worst_cubic = 0, worst_comm = 0;
  for (std::size_t s = 0; s < matrices; ++s) {
    ComplexMatrix z = random_cell_matrix(lat, rng, s == 0);
    CubicResidual r = verify_cubic(z, lat, opt);
    worst_cubic = std::max(worst_cubic, r.cubic);
    worst_comm = std::max(worst_comm, r.commutator);
    if (r.cubic >= tol.cubic || r.commutator >= tol.commutator)
      return CheckOutcome::fail("cubic identity residual too large",
                                {{"matrix", s}, {"jordan", s == 0}, {"cubic", r.cubic}, {"commutator", r.commutator}});
  }
  Complex e = wp_scalar(lat.omega1 / 2.0, lat, opt) + wp_scalar(lat.omega2 / 2.0, lat, opt) +
              wp_scalar((lat.omega1 + lat.omega2) / 2.0, lat, opt);
  if (std::abs(e) >= tol.half_period) return CheckOutcome::fail("half-period values do not sum to zero", {{"sum", std::abs(e)}});
  double sq = std::abs(g3({1.0, Complex(0, 1)}));
  double hex = std::abs(g2({1.0, std::polar(1.0, std::numbers::pi / 3)}));
  if (sq >= tol.symmetric_invariant || hex >= tol.symmetric_invariant)
    return CheckOutcome::fail("symmetric lattice invariant not zero", {{"square_g3", sq}, {"hexagonal_g2", hex}});
  return CheckOutcome::ok(matrices);
}

// ---------------------------------------------------------------------------
// Suites and reports

struct VerificationReport {
  std::string check_name;
  std::string cartan_type;
  json parameters = json::object();
  bool passed = true;
  json counterexample;
  std::int64_t elapsed_ms = 0;

  json to_json() const {
    json j = {{"check", check_name}, {"type", cartan_type}, {"parameters", parameters}, {"passed", passed}, {"elapsed_ms", elapsed_ms}};
    if (!passed) j["counterexample"] = counterexample;
    return j;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"faces", "stabilizers", "stars", "cover", "parabolic",
                                              "centralizer", "double-affine", "weierstrass", "all"};
  return names;
}

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 100;
};

/// Runs one suite (or "all") and returns a report per check. Checks that need
/// the fundamental alcove or the simply-connected isogeny are reported as
/// skipped elsewhere. Throws std::invalid_argument for an unknown suite.
inline std::vector<VerificationReport> run_suite(const std::string& suite, const AffineSystem& sys, const SuiteOptions& opt) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw std::invalid_argument("unknown suite '" + suite + "'");
  const RootSystem& rs = sys.rs();
  const std::string type = rs.cartan_type().name() + " " + isogeny_name(rs.cartan_type().isogeny);
  const Rng root(opt.seed);
  std::vector<VerificationReport> out;
  std::uint64_t stream = 0;

  auto run = [&](const std::string& name, bool applicable, const std::function<CheckOutcome(Rng)>& fn) {
    VerificationReport r;
    r.check_name = name;
    r.cartan_type = type;
    r.parameters = {{"seed", opt.seed}, {"samples", opt.samples}, {"rank", rs.rank()}};
    Rng rng = root.split(++stream);
    if (!applicable) {
      r.parameters["skipped"] = "not applicable to this isogeny";
      out.push_back(std::move(r));
      return;
    }
    auto t0 = std::chrono::steady_clock::now();
    CheckOutcome c;
    try {
      c = fn(rng);
    } catch (const std::exception& e) {
      c = CheckOutcome::fail("exception", {{"what", e.what()}});
    }
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    r.passed = c.passed;
    r.parameters["cases"] = c.cases;
    if (!c.passed) r.counterexample = {{"message", c.message}, {"data", c.counterexample}};
    out.push_back(std::move(r));
  };
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  const bool alcove = sys.has_alcove();
  const bool sc = sys.simply_connected();
  const std::size_t n = opt.samples;

  if (want("faces")) {
    run("faces.ver_isomorphism", alcove, [&](Rng) { return verify_ver_isomorphism(rs, sys.alcove(), sys.faces()); });
    run("faces.count", alcove, [&](Rng) {
      std::size_t expected = (std::size_t{1} << (rs.rank() + 1)) - 1;
      return sys.faces().faces.size() == expected ? CheckOutcome::ok(expected)
                                                  : CheckOutcome::fail("wrong face count", {{"faces", sys.faces().faces.size()}});
    });
  }
  if (want("stabilizers")) {
    run("stabilizers.reflection_generation", sc, [&](Rng) { return check_face_stabilizers(sys); });
    run("stabilizers.vertex_generation", sc, [&](Rng g) { return check_vertex_generation(sys, g, n); });
    run("stabilizers.group_law", true, [&](Rng g) { return check_group_law(sys, g, n); });
  }
  if (want("stars")) {
    run("stars.open_embedding", sc, [&](Rng g) { return check_open_embedding(sys, g, n); });
    run("stars.intersection", alcove, [&](Rng) { return check_star_intersection(sys); });
  }
  if (want("cover")) {
    run("cover.vertex_stars", alcove, [&](Rng g) { return check_cover(sys, g, n); });
    run("cover.reduce_equivariance", alcove, [&](Rng g) { return check_reduce_equivariance(sys, g, n); });
  }
  if (want("parabolic")) {
    run("parabolic.structure", sc, [&](Rng) { return check_parabolic_structure(sys); });
    run("parabolic.composition", sc, [&](Rng) { return check_parabolic_chains(sys); });
  }
  if (want("centralizer")) {
    run("centralizer.faces", sc, [&](Rng) { return check_face_centralizers(sys); });
    run("centralizer.se_in_et", sc, [&](Rng g) { return check_se_in_et(sys, g, n); });
    run("centralizer.connected", sc, [&](Rng g) { return check_connected(sys, g, n); });
    run("centralizer.equivariance", true, [&](Rng g) { return check_w_equivariance(sys, g, n); });
  }
  if (want("double-affine")) run("double-affine.squares", true, [&](Rng g) { return check_double_affine(sys, g, n); });
  if (want("weierstrass"))
    run("weierstrass.cubic", true, [&](Rng g) { return check_weierstrass(g, std::min<std::size_t>(n, 10)); });
  return out;
}

}  // namespace affinelie
