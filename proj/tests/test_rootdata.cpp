#include <catch_amalgamated.hpp>

#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "affinelie/rootdata.hpp"

using namespace affinelie;

namespace {

struct Known {
  std::string family;
  int rank;
  std::vector<int> degrees;   // fundamental invariant degrees
  std::vector<int> highest;   // highest root in simple-root coefficients
};

// Degrees d_i give |W| = prod d_i and |Phi| = 2 sum (d_i - 1).
const std::vector<Known>& known_types() {
  static const std::vector<Known> k{
      {"A", 1, {2}, {1}},
      {"A", 2, {2, 3}, {1, 1}},
      {"A", 3, {2, 3, 4}, {1, 1, 1}},
      {"A", 4, {2, 3, 4, 5}, {1, 1, 1, 1}},
      {"B", 2, {2, 4}, {1, 2}},
      {"B", 3, {2, 4, 6}, {1, 2, 2}},
      {"B", 4, {2, 4, 6, 8}, {1, 2, 2, 2}},
      {"C", 2, {2, 4}, {2, 1}},
      {"C", 3, {2, 4, 6}, {2, 2, 1}},
      {"C", 4, {2, 4, 6, 8}, {2, 2, 2, 1}},
      {"D", 4, {2, 4, 6, 4}, {1, 2, 1, 1}},
      {"D", 5, {2, 4, 6, 8, 5}, {1, 2, 2, 1, 1}},
      {"G", 2, {2, 6}, {3, 2}},
      {"F", 4, {2, 6, 8, 12}, {2, 3, 4, 2}},
      {"E", 6, {2, 5, 6, 8, 9, 12}, {1, 2, 2, 3, 2, 1}},
      {"E", 7, {2, 6, 8, 10, 12, 14, 18}, {2, 2, 3, 4, 3, 2, 1}},
      {"E", 8, {2, 8, 12, 14, 18, 20, 24, 30}, {2, 3, 4, 6, 5, 4, 3, 2}},
  };
  return k;
}

std::size_t root_count_formula(const std::string& f, int n) {
  if (f == "A") return n * (n + 1);
  if (f == "B" || f == "C") return 2 * n * n;
  if (f == "D") return 2 * n * (n - 1);
  if (f == "E") return n == 6 ? 72 : n == 7 ? 126 : 240;
  if (f == "F") return 48;
  return 12;
}

}  // namespace

TEST_CASE("root counts and highest roots", "[rootdata]") {
  for (const auto& k : known_types()) {
    CAPTURE(k.family, k.rank);
    RootSystem rs = build_root_system(CartanType::parse(k.family, k.rank));
    std::size_t from_degrees = 0;
    for (int d : k.degrees) from_degrees += 2 * (d - 1);
    CHECK(rs.size() == from_degrees);
    CHECK(rs.size() == root_count_formula(k.family, k.rank));
    CHECK(rs.coefficients(rs.highest_root_index()) == k.highest);
    CHECK(rs.rank() == static_cast<std::size_t>(k.rank));
  }
}

TEST_CASE("Weyl group orders", "[rootdata]") {
  for (const auto& k : known_types()) {
    if (k.rank > 4) continue;
    CAPTURE(k.family, k.rank);
    RootSystem rs = build_root_system(CartanType::parse(k.family, k.rank));
    std::size_t order = std::accumulate(k.degrees.begin(), k.degrees.end(), std::size_t{1}, std::multiplies<>());
    CHECK(weyl_group(rs).size() == order);
  }
  CHECK_THROWS_AS(weyl_group(build_root_system(CartanType::parse("E", 6))), std::length_error);
}

TEST_CASE("every root pairs to 2 with its coroot and the Cartan matrix is integral", "[rootdata]") {
  for (const auto& k : known_types()) {
    CAPTURE(k.family, k.rank);
    RootSystem rs = build_root_system(CartanType::parse(k.family, k.rank));
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(rs.pairing(i, rs.coroot(i)) == Rational(2));
      CHECK(rs.reflect(i, rs.root(i)) == -rs.root(i));
      CHECK(rs.find_root(-rs.root(i)) == rs.negative(i));
    }
    QMatrix c = rs.cartan_matrix();
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      CHECK(c(i, i) == Rational(2));
      for (std::size_t j = 0; j < rs.rank(); ++j) {
        CHECK(c(i, j).is_integer());
        if (i != j) CHECK(c(i, j) <= Rational(0));
      }
    }
  }
}

TEST_CASE("Weyl group preserves the form and permutes the roots", "[rootdata][property]") {
  for (const char* f : {"A", "B", "C", "G"}) {
    for (int n : {2, 3}) {
      if (std::string(f) == "G" && n != 2) continue;
      RootSystem rs = build_root_system(CartanType::parse(f, n));
      std::set<QVector> roots(rs.all_roots().begin(), rs.all_roots().end());
      for (const auto& w : weyl_group(rs)) {
        CHECK(w.matrix.transpose() * rs.inner_product_matrix() * w.matrix == rs.inner_product_matrix());
        std::set<QVector> image;
        for (const auto& r : rs.all_roots()) image.insert(w(r));
        CHECK(image == roots);
      }
    }
  }
}

TEST_CASE("reduced words have length equal to the number of inverted positive roots", "[rootdata][property]") {
  RootSystem rs = build_root_system(CartanType::parse("B", 3));
  for (const auto& w : weyl_group(rs)) {
    std::size_t inverted = 0;
    for (std::size_t i = 0; i < rs.positive_count(); ++i) {
      auto j = rs.find_root(w(rs.root(i)));
      REQUIRE(j);
      if (!rs.is_positive(*j)) ++inverted;
    }
    // w sends `inverted` positive roots to negatives iff w^-1 does; length is symmetric.
    CHECK(w.word.size() == inverted);
  }
}

TEST_CASE("lattices for each isogeny", "[rootdata]") {
  RootSystem sc = build_root_system(CartanType::parse("A", 2, "sc"));
  RootSystem ad = build_root_system(CartanType::parse("A", 2, "ad"));
  RootSystem gl = build_root_system(CartanType::parse("A", 2, "gl"));
  for (const auto& c : sc.simple_coroots()) CHECK(sc.in_lattice(c));
  CHECK_FALSE(sc.in_lattice(parse_vector("2/3,1/3")));
  CHECK(ad.in_lattice(parse_vector("2/3,1/3")));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(ad.pairing(j, ad.coweight_lattice_basis()[i]) == Rational(i == j ? 1 : 0));
  CHECK(gl.dim() == 3);
  CHECK(gl.size() == 6);
  CHECK(gl.in_lattice(parse_vector("1,0,0")));
  CHECK_FALSE(gl.in_lattice(parse_vector("1/2,1/2,0")));
  // Coroots lie in the coweight lattice but not conversely.
  RootSystem ad3 = build_root_system(CartanType::parse("A", 3, "ad"));
  for (const auto& c : ad3.simple_coroots()) CHECK(ad3.in_lattice(c));
  RootSystem sc3 = build_root_system(CartanType::parse("A", 3, "sc"));
  for (const auto& w : ad3.coweight_lattice_basis()) CHECK_FALSE(sc3.in_lattice(w));
}

TEST_CASE("invalid types are rejected", "[rootdata]") {
  CHECK_THROWS_AS(CartanType::parse("H", 3), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("B", 1), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("D", 2), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("E", 9), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("F", 3), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("G", 3), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("A", 0), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("B", 2, "gl"), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("A", 2, "xx"), std::invalid_argument);
  CHECK_THROWS_AS(CartanType::parse("AB", 2), std::invalid_argument);
  CHECK(CartanType::parse("a", 2, "adjoint").isogeny == Isogeny::Adjoint);
  RootSystem rs = build_root_system(CartanType::parse("A", 2));
  CHECK_THROWS_AS(reflect(rs, parse_vector("1,-1"), parse_vector("0,0")), std::invalid_argument);
  CHECK_THROWS_AS(reflect(rs, parse_vector("1,0"), parse_vector("0,0,0")), std::invalid_argument);
}

TEST_CASE("small examples", "[rootdata]") {
  RootSystem a1 = build_root_system(CartanType::parse("A", 1));
  CHECK(a1.size() == 2);
  CHECK(a1.coweight_lattice_basis() == std::vector<QVector>{a1.coroot(0)});
  CHECK(reflect(a1, a1.root(0), a1.coroot(0)) == -a1.coroot(0));

  RootSystem a2 = build_root_system(CartanType::parse("A", 2));
  const QVector a1v = a2.root(0), a2v = a2.root(1);
  QVector x = reflect(a2, a1v, reflect(a2, a2v, reflect(a2, a1v, a1v)));
  CHECK(x == -a2v);
  QVector orth = parse_vector("1,2");  // (alpha_1, x) = 2 - 2 = 0
  CHECK(a2.pairing(0, orth) == Rational(0));
  CHECK(reflect(a2, a1v, orth) == orth);

  RootSystem g2 = build_root_system(CartanType::parse("G", 2));
  std::set<Rational> lengths;
  for (const auto& r : g2.all_roots()) lengths.insert(g2.inner(r, r));
  REQUIRE(lengths.size() == 2);
  CHECK(*lengths.rbegin() / *lengths.begin() == Rational(3));
  CHECK(weyl_group(build_root_system(CartanType::parse("B", 2))).size() == 8);
}
