#include <catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "affinelie/centralizer.hpp"
#include "affinelie/random.hpp"
#include "affinelie/verify.hpp"

using namespace affinelie;

namespace {

AffineSystem make(const char* f, int n, const char* iso = "sc") { return AffineSystem(CartanType::parse(f, n, iso)); }

const Face& vertex(const AffineSystem& sys, std::size_t k) {
  const auto& cat = sys.faces();
  std::uint32_t all = (1u << sys.alcove().wall_count()) - 1;
  return cat.faces[cat.index_of_mask(all ^ (1u << k))];
}

std::vector<std::string> vertex_types(const AffineSystem& sys) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < sys.alcove().vertices.size(); ++k) out.push_back(centralizer_face(sys, vertex(sys, k)).subsystem_type);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("SL2 at half the coroot", "[centralizer]") {
  AffineSystem sl2 = make("A", 1);
  CentralizerData d = centralizer_elliptic(sl2, ExpPoint::make(parse_vector("0"), parse_vector("1/2")));
  CHECK(d.phi == std::vector<AffineRoot>{{0, 1}, {1, -1}});
  CHECK(d.dim == 3);
  CHECK(d.connected);
  CHECK(d.pi0_order == 1);
  CHECK(d.subsystem_type == "A1");
  CHECK(render_shape(matrix_shape(sl2.rs(), d.phi)) == "[     C    Cz ]\n[ Cz^-1     C ]\n");
  CHECK(matrix_shape(sl2.rs(), d.phi).entries[0][1] == 1);
  CHECK(matrix_shape(sl2.rs(), d.phi).entries[1][0] == -1);
}

TEST_CASE("PGL2 at half the fundamental coweight", "[centralizer]") {
  AffineSystem pgl2 = make("A", 1, "ad");
  CentralizerData d = centralizer_elliptic(pgl2, ExpPoint::make(parse_vector("0"), parse_vector("1/4")));
  CHECK(d.phi.empty());
  CHECK(d.w0.order() == 1);
  CHECK(d.w.order() == 2);
  CHECK(d.pi0_order == 2);
  CHECK_FALSE(d.connected);
  CHECK(d.dim == 1);
  REQUIRE(d.pi0_representatives.size() == 2);
  CHECK(d.pi0_representatives[0].is_identity());
  CHECK(d.pi0_representatives[1](parse_vector("1/4")) == parse_vector("1/4"));
}

TEST_CASE("generic points have trivial centralizer data", "[centralizer]") {
  for (auto [f, n] : std::vector<std::pair<const char*, int>>{{"A", 2}, {"B", 2}, {"G", 2}, {"A", 3}}) {
    AffineSystem sys = make(f, n);
    QVector theta(n), a(n);
    for (int i = 0; i < n; ++i) theta[i] = Rational(1, 7 + 4 * i), a[i] = Rational(3, 11 + 6 * i);
    CentralizerData d = centralizer_elliptic(sys, ExpPoint::make(theta, a));
    CHECK(d.phi.empty());
    CHECK(d.w.order() == 1);
    CHECK(d.dim == static_cast<std::size_t>(n));
    CHECK(d.subsystem_type.empty());
  }
}

TEST_CASE("theta is reduced modulo one", "[centralizer]") {
  ExpPoint s = ExpPoint::make(parse_vector("5/4,-1/3"), parse_vector("0,0"));
  CHECK(s.theta == parse_vector("1/4,2/3"));
}

TEST_CASE("face centralizers", "[centralizer]") {
  AffineSystem sl2 = make("A", 1);
  CHECK(centralizer_face(sl2, sl2.faces().interior()).phi.empty());
  CHECK(centralizer_face(sl2, vertex(sl2, 1)).phi == std::vector<AffineRoot>{{0, 1}, {1, -1}});

  AffineSystem a2 = make("A", 2);
  CentralizerData v0 = centralizer_face(a2, vertex(a2, 0));
  CHECK(v0.phi.size() == 6);
  for (const auto& r : v0.phi) CHECK(r.level == 0);
  CHECK(v0.subsystem_type == "A2");
  CHECK_THROWS_AS(centralizer_face(make("A", 2, "ad"), vertex(a2, 0)), std::invalid_argument);
}

TEST_CASE("face centralizers agree with the elliptic centralizer at the witness", "[centralizer][property]") {
  for (auto [f, n] : std::vector<std::pair<const char*, int>>{{"A", 2}, {"B", 2}, {"G", 2}, {"A", 3}, {"B", 3}, {"C", 3}}) {
    CAPTURE(f, n);
    AffineSystem sys = make(f, n);
    for (const auto& face : sys.faces().faces) {
      CentralizerData a = centralizer_face(sys, face);
      CentralizerData b = centralizer_elliptic(sys, ExpPoint::make(zero_vector(n), face.witness));
      CHECK(a.phi == b.phi);
      CHECK(a.w == b.w);
      CHECK(a.connected);
      CHECK(a.dim == static_cast<std::size_t>(n) + a.phi.size());
    }
  }
}

TEST_CASE("vertex Levis follow the extended Dynkin diagram", "[centralizer]") {
  using V = std::vector<std::string>;
  CHECK(vertex_types(make("A", 2)) == V{"A2", "A2", "A2"});
  CHECK(vertex_types(make("A", 3)) == V{"A3", "A3", "A3", "A3"});
  CHECK(vertex_types(make("B", 2)) == V{"A1+A1", "B2", "B2"});
  CHECK(vertex_types(make("G", 2)) == V{"A1+A1", "A2", "G2"});
  CHECK(vertex_types(make("B", 3)) == V{"A1+A1+A1", "A3", "B3", "B3"});
  CHECK(vertex_types(make("C", 3)) == V{"A1+B2", "A1+B2", "C3", "C3"});
}

TEST_CASE("subsystem classification", "[centralizer]") {
  RootSystem d4 = build_root_system(CartanType::parse("D", 4));
  std::vector<std::size_t> all(d4.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(subsystem_type(d4, all) == "D4");
  RootSystem e6 = build_root_system(CartanType::parse("E", 6));
  all.resize(e6.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(subsystem_type(e6, all) == "E6");
  RootSystem f4 = build_root_system(CartanType::parse("F", 4));
  all.resize(f4.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(subsystem_type(f4, all) == "F4");
  RootSystem b3 = build_root_system(CartanType::parse("B", 3));
  all.resize(b3.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(subsystem_type(b3, all) == "B3");
  CHECK(subsystem_type(b3, {}) == "");
}

TEST_CASE("circle gauge centralizers", "[centralizer]") {
  AffineSystem a2 = make("A", 2);
  CentralizerData zero = gauge_centralizer_circle(a2, {zero_vector(2), zero_vector(2)});
  CHECK(zero.phi.size() == 6);
  CHECK(zero.w.order() == 6);
  AffineSystem sl2 = make("A", 1);
  CHECK(gauge_centralizer_circle(sl2, {parse_vector("1/2"), parse_vector("0")}).phi ==
        std::vector<AffineRoot>{{0, 1}, {1, -1}});
  CentralizerData im = gauge_centralizer_circle(sl2, {parse_vector("0"), parse_vector("1/2")});
  CHECK(im.phi.empty());
  CHECK(im.w.order() == 1);
  CHECK_THROWS_AS(gauge_centralizer_circle(sl2, {parse_vector("0,0"), parse_vector("0")}), std::invalid_argument);
}

TEST_CASE("double affine centralizers", "[centralizer]") {
  AffineSystem sl2 = make("A", 1);
  DoubleAffineData zero = double_affine_centralizer(sl2, parse_vector("0"), parse_vector("0"));
  CHECK(zero.phi.size() == 2);
  for (const auto& r : zero.phi) CHECK((r.n1 == 0 && r.n2 == 0));
  DoubleAffineData d = double_affine_centralizer(sl2, parse_vector("1/2"), parse_vector("0"));
  CHECK(d.phi == std::vector<DoubleAffineRoot>{{-1, 0, 0}, {1, 0, 1}});
  CHECK(d.first.phi == gauge_centralizer_circle(sl2, {parse_vector("1/2"), parse_vector("0")}).phi);
  CHECK(d.second.phi == gauge_centralizer_circle(sl2, {parse_vector("0"), parse_vector("0")}).phi);
  CHECK(d.roots_injective);
  CHECK(d.roots_cartesian);
  CHECK(d.groups_injective);
  CHECK(d.groups_cartesian);
}

TEST_CASE("double affine squares for random rational pairs", "[centralizer][property]") {
  for (auto [f, n, iso] : std::vector<std::tuple<const char*, int, const char*>>{
           {"A", 1, "sc"}, {"A", 1, "ad"}, {"A", 2, "sc"}, {"A", 2, "ad"}, {"B", 2, "sc"}, {"G", 2, "sc"}, {"A", 1, "gl"}}) {
    CAPTURE(f, n, iso);
    AffineSystem sys = make(f, n, iso);
    Rng rng(77);
    const std::size_t dim = sys.rs().dim();
    for (int i = 0; i < 50; ++i) {
      QVector a1 = rng.rational_vector(dim, Rational(-2), Rational(2), 4);
      QVector a2 = rng.rational_vector(dim, Rational(-2), Rational(2), 4);
      DoubleAffineData d = double_affine_centralizer(sys, a1, a2);
      CHECK(d.roots_injective);
      CHECK(d.roots_cartesian);
      CHECK(d.groups_injective);
      CHECK(d.groups_cartesian);
    }
  }
}

TEST_CASE("etale and small-eigenvalue regions", "[centralizer]") {
  AffineSystem sl2 = make("A", 1);
  ExpPoint s = ExpPoint::make(parse_vector("0"), parse_vector("1/2"));
  ExpPoint t = ExpPoint::make(parse_vector("0"), parse_vector("0"));
  ExpPoint generic = ExpPoint::make(parse_vector("1/7"), parse_vector("2/9"));
  CHECK(et_contains(sl2, s, s));
  CHECK(et_contains(sl2, s, generic));
  CHECK(et_contains(sl2, t, generic));
  CHECK_FALSE(et_contains(sl2, s, t));
  const Face& v0 = vertex(sl2, 0);
  CHECK(se_contains(sl2, v0, ExpPoint::make(parse_vector("1/3"), v0.witness)));
  CHECK_FALSE(se_contains(sl2, v0, ExpPoint::make(parse_vector("0"), parse_vector("1/2"))));
}

TEST_CASE("centralizer properties", "[centralizer][property]") {
  for (auto [f, n] : std::vector<std::pair<const char*, int>>{{"A", 1}, {"A", 2}, {"B", 2}, {"G", 2}, {"A", 3}}) {
    CAPTURE(f, n);
    AffineSystem sys = make(f, n);
    Rng rng(8);
    CHECK(check_face_centralizers(sys).passed);
    CHECK(check_se_in_et(sys, rng.split(1), 100).passed);
    CHECK(check_connected(sys, rng.split(2), 200).passed);
    CHECK(check_w_equivariance(sys, rng.split(3), 100).passed);
  }
  AffineSystem pgl3 = make("A", 2, "ad");
  CHECK(check_w_equivariance(pgl3, Rng(4), 100).passed);
}

TEST_CASE("negation closure of phi", "[centralizer][property]") {
  AffineSystem sys = make("B", 2, "ad");
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    ExpPoint s = ExpPoint::make(rng.rational_vector(2, Rational(0), Rational(1), 4), rng.rational_vector(2, Rational(-1), Rational(1), 4));
    CentralizerData d = centralizer_elliptic(sys, s);
    for (const auto& a : d.phi) CHECK(std::binary_search(d.phi.begin(), d.phi.end(), negate(sys.rs(), a)));
    CHECK(d.w0.is_subset_of(d.w));
    CHECK(d.w.is_group());
    CHECK(d.pi0_order * d.w0.order() == d.w.order());
    CHECK(d.pi0_representatives.size() == d.pi0_order);
  }
}

TEST_CASE("SL3 face shapes", "[centralizer]") {
  AffineSystem a2 = make("A", 2);
  auto shape = [&](std::vector<int> walls) { return render_shape(matrix_shape(a2.rs(), centralizer_face(a2, a2.face(walls)).phi)); };
  CHECK(shape({1, 2}) == "[ C C C ]\n[ C C C ]\n[ C C C ]\n");
  CHECK(shape({0, 2}) == "[     C    Cz    Cz ]\n[ Cz^-1     C     C ]\n[ Cz^-1     C     C ]\n");
  CHECK(shape({0, 1}) == "[     C     C    Cz ]\n[     C     C    Cz ]\n[ Cz^-1 Cz^-1     C ]\n");
  CHECK(shape({0}) == "[     C     0    Cz ]\n[     0     C     0 ]\n[ Cz^-1     0     C ]\n");
  CHECK(shape({}) == "[ C 0 0 ]\n[ 0 C 0 ]\n[ 0 0 C ]\n");
  CHECK_THROWS_AS(matrix_shape(build_root_system(CartanType::parse("B", 2)), {}), std::invalid_argument);
}

TEST_CASE("gl shapes use the standard basis", "[centralizer]") {
  AffineSystem gl2 = make("A", 1, "gl");
  CentralizerData d = centralizer_elliptic(gl2, ExpPoint::make(parse_vector("0,0"), parse_vector("1,0")));
  CHECK(d.dim == 4);
  CHECK(render_shape(matrix_shape(gl2.rs(), d.phi)) == "[     C    Cz ]\n[ Cz^-1     C ]\n");
}
