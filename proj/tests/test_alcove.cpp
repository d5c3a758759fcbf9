#include <catch_amalgamated.hpp>

#include <set>
#include <string>

#include "affinelie/alcove.hpp"

using namespace affinelie;

namespace {

RootSystem sys(const char* f, int n, const char* iso = "sc") { return build_root_system(CartanType::parse(f, n, iso)); }

const std::vector<std::pair<const char*, int>> kTypes{{"A", 1}, {"A", 2}, {"A", 3}, {"B", 2}, {"C", 2},
                                                      {"G", 2}, {"B", 3}, {"C", 3}, {"D", 4}};

}  // namespace

TEST_CASE("evaluating affine roots", "[alcove]") {
  RootSystem a1 = sys("A", 1);
  CHECK(eval_affine_root(a1, {0, 0}, zero_vector(1)) == Rational(0));
  CHECK(eval_affine_root(a1, {0, 1}, Rational(1, 2) * a1.coroot(0)) == Rational(0));
  RootSystem a2 = sys("A", 2);
  Alcove c = fundamental_alcove(a2);
  CHECK(eval_affine_root(a2, {a2.highest_root_index(), 1}, c.barycenter) < Rational(0));
  CHECK_THROWS_AS(eval_affine_root(a2, {0, 0}, zero_vector(3)), std::invalid_argument);
}

TEST_CASE("fundamental alcoves", "[alcove]") {
  RootSystem a1 = sys("A", 1);
  Alcove c1 = fundamental_alcove(a1);
  REQUIRE(c1.vertices.size() == 2);
  CHECK(c1.vertices[0] == zero_vector(1));
  CHECK(c1.vertices[1] == Rational(1, 2) * a1.coroot(0));

  RootSystem a2 = sys("A", 2);
  Alcove c2 = fundamental_alcove(a2);
  CHECK(c2.walls.size() == 3);
  REQUIRE(c2.vertices.size() == 3);
  CHECK(c2.vertices[0] == parse_vector("0,0"));
  CHECK(c2.vertices[1] == parse_vector("2/3,1/3"));
  CHECK(c2.vertices[2] == parse_vector("1/3,2/3"));

  // G2: vertex k (k > 0) is omega_k^vee / m_k with m the highest-root coefficients.
  RootSystem g2 = sys("G", 2);
  Alcove cg = fundamental_alcove(g2);
  CHECK(cg.walls.size() == 3);
  const auto& m = g2.coefficients(g2.highest_root_index());
  for (std::size_t k = 1; k <= 2; ++k) {
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(g2.pairing(i, cg.vertices[k]) == (i + 1 == k ? Rational(1, m[i]) : Rational(0)));
    CHECK_FALSE(g2.in_lattice(cg.vertices[k]));
  }
  CHECK_THROWS_AS(fundamental_alcove(sys("A", 2, "gl")), std::invalid_argument);
}

TEST_CASE("every vertex lies on all walls but the opposite one", "[alcove][property]") {
  for (auto [f, n] : kTypes) {
    for (const char* iso : {"sc", "ad"}) {
      CAPTURE(f, n, iso);
      RootSystem rs = sys(f, n, iso);
      Alcove c = fundamental_alcove(rs);
      for (std::size_t k = 0; k < c.vertices.size(); ++k)
        for (std::size_t j = 0; j < c.walls.size(); ++j) {
          Rational v = eval_affine_root(rs, c.walls[j], c.vertices[k]);
          if (j == k) CHECK(v > Rational(0));
          else CHECK(v == Rational(0));
        }
      for (const auto& w : c.walls) CHECK(eval_affine_root(rs, w, c.barycenter) > Rational(0));
    }
  }
}

TEST_CASE("face counts and orderings", "[alcove]") {
  for (auto [f, n] : kTypes) {
    CAPTURE(f, n);
    FaceCategory cat = faces_of_alcove(sys(f, n));
    CHECK(cat.faces.size() == (std::size_t{1} << (n + 1)) - 1);
    std::size_t vertices = 0;
    for (const auto& face : cat.faces) vertices += face.is_vertex();
    CHECK(vertices == static_cast<std::size_t>(n + 1));
    CHECK(cat.interior().vanishing_walls.empty());
    CHECK(cat.interior().dimension() == n);
  }
  FaceCategory a2 = faces_of_alcove(sys("A", 2));
  std::vector<std::string> labels;
  for (const auto& f : a2.faces) labels.push_back(f.label());
  CHECK(labels == std::vector<std::string>{"{0,1}", "{0,2}", "{1,2}", "{0}", "{1}", "{2}", "{}"});
  CHECK(a2.arrows.size() == 19);
  FaceCategory a1 = faces_of_alcove(sys("A", 1));
  CHECK(a1.faces.size() == 3);
  CHECK(a1.arrows.size() == 5);
}

TEST_CASE("arrows agree with geometric closure", "[alcove][property]") {
  for (auto [f, n] : kTypes) {
    if (n > 3) continue;
    CAPTURE(f, n);
    RootSystem rs = sys(f, n);
    Alcove c = fundamental_alcove(rs);
    FaceCategory cat = faces_of_alcove(c);
    // Oracle: count arrows as pairs (i, j) whose vertex sets nest.
    std::size_t nested = 0;
    for (const auto& a : cat.faces)
      for (const auto& b : cat.faces) {
        std::set<int> va(a.vertices.begin(), a.vertices.end()), vb(b.vertices.begin(), b.vertices.end());
        bool sub = std::includes(vb.begin(), vb.end(), va.begin(), va.end());
        nested += sub;
        CHECK(sub == point_in_facet_closure(rs, a.witness, b.witness));
      }
    CHECK(cat.arrows.size() == nested);
    CHECK(verify_ver_isomorphism(rs, c, cat).passed);
  }
}

TEST_CASE("vanishing at a witness matches vanishing at the vertices", "[alcove][property]") {
  for (auto [f, n] : kTypes) {
    if (n > 3) continue;
    CAPTURE(f, n);
    RootSystem rs = sys(f, n);
    Alcove c = fundamental_alcove(rs);
    for (const auto& face : faces_of_alcove(c).faces) {
      std::vector<AffineRoot> expected;
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::int64_t level = -3; level <= 3; ++level) {
          AffineRoot a{i, level};
          bool all = true;
          for (int k : face.vertices) all = all && eval_affine_root(rs, a, c.vertices[k]).is_zero();
          CHECK(all == eval_affine_root(rs, a, face.witness).is_zero());
          if (all) expected.push_back(a);
        }
      std::sort(expected.begin(), expected.end());
      CHECK(facet_of(rs, face.witness).vanishing_set == expected);
    }
  }
}

TEST_CASE("facet keys", "[alcove]") {
  RootSystem a2 = sys("A", 2);
  Alcove c = fundamental_alcove(a2);
  CHECK(facet_of(a2, c.barycenter).vanishing_set.empty());
  FacetKey origin = facet_of(a2, zero_vector(2));
  CHECK(origin.vanishing_set.size() == a2.size());
  for (const auto& r : origin.vanishing_set) CHECK(r.level == 0);

  RootSystem a1 = sys("A", 1);
  FacetKey half = facet_of(a1, parse_vector("1/2"));
  CHECK(half.vanishing_set == std::vector<AffineRoot>{{0, 1}, {1, -1}});

  // Same facet iff same key: points of the open alcove share one key.
  CHECK(facet_of(a2, parse_vector("1/10,1/10")) == facet_of(a2, c.barycenter));
  CHECK_FALSE(facet_of(a2, parse_vector("1/10,0")) == facet_of(a2, c.barycenter));
  CHECK_THROWS_AS(facet_of(a2, zero_vector(1)), std::invalid_argument);
}

TEST_CASE("face lookups", "[alcove]") {
  FaceCategory cat = faces_of_alcove(sys("A", 2));
  CHECK(cat.faces[cat.index_of_walls({0, 2})].label() == "{0,2}");
  CHECK_THROWS_AS(cat.index_of_walls({0, 1, 2}), std::out_of_range);
  CHECK_THROWS_AS(cat.index_of_walls({5}), std::out_of_range);
  Alcove c = fundamental_alcove(sys("A", 2));
  CHECK_THROWS_AS(make_face(c, 7), std::invalid_argument);
}
