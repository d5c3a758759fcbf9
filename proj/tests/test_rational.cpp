#include <catch_amalgamated.hpp>

#include <cstdint>
#include <limits>
#include <random>

#include "affinelie/rational.hpp"

using affinelie::QMatrix;
using affinelie::QVector;
using affinelie::Rational;

namespace {

// Exact comparison a/b == c/d by cross multiplication in 128 bits.
bool same(const Rational& r, __int128 num, __int128 den) {
  return static_cast<__int128>(r.num()) * den == num * static_cast<__int128>(r.den());
}

}  // namespace

TEST_CASE("rational normal form", "[rational]") {
  Rational r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational(7).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic agrees with a 128-bit oracle", "[rational][property]") {
  std::mt19937_64 gen(20240611);
  std::uniform_int_distribution<std::int64_t> num(-100000, 100000), den(1, 5000);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t a = num(gen), b = den(gen), c = num(gen), d = den(gen);
    const Rational x(a, b), y(c, d);
    const __int128 A = a, B = b, C = c, D = d;
    CHECK(same(x + y, A * D + C * B, B * D));
    CHECK(same(x - y, A * D - C * B, B * D));
    CHECK(same(x * y, A * C, B * D));
    if (c != 0) CHECK(same(x / y, A * D, B * C));
    CHECK((x < y) == (A * D < C * B));
    CHECK(x.floor() <= x);
    CHECK(x < Rational(x.floor() + 1));
    CHECK(Rational(x.ceil()) >= x);
    CHECK(x.frac() >= Rational(0));
    CHECK(x.frac() < Rational(1));
  }
}

TEST_CASE("rational parse and print round-trip", "[rational]") {
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational(-7, 3).str() == "-7/3");
  CHECK(Rational(4).str() == "4");
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000), den(1, 100000);
  for (int i = 0; i < 500; ++i) {
    Rational r(num(gen), den(gen));
    CHECK(Rational::parse(r.str()) == r);
  }
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("1/"));
  CHECK_THROWS(Rational::parse("a"));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("0.5"));
}

TEST_CASE("rational overflow is reported", "[rational]") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  CHECK_THROWS_AS(Rational(big) + Rational(1), std::overflow_error);
  CHECK_THROWS_AS(Rational(big) * Rational(2), std::overflow_error);
  CHECK_THROWS_AS(Rational(1, big) * Rational(1, big - 1), std::overflow_error);
  CHECK_NOTHROW(Rational(big) * Rational(1, big));
}

TEST_CASE("vector helpers", "[rational]") {
  QVector v = affinelie::parse_vector("1/2,-1,0");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == Rational(1, 2));
  CHECK(affinelie::dot(v, v) == Rational(5, 4));
  CHECK(affinelie::is_integral(Rational(2) * v));
  CHECK_FALSE(affinelie::is_integral(v));
  CHECK_THROWS(v + affinelie::zero_vector(2));
}

TEST_CASE("matrix inverse", "[rational]") {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<std::int64_t> e(-4, 4);
  int inverted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    QMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = Rational(e(gen));
    QMatrix inv;
    try {
      inv = m.inverse();
    } catch (const std::domain_error&) {
      continue;
    }
    ++inverted;
    CHECK(m * inv == QMatrix::identity(3));
    CHECK(inv * m == QMatrix::identity(3));
  }
  CHECK(inverted > 100);
  QMatrix singular(2, 2);
  singular(0, 0) = 1, singular(0, 1) = 2, singular(1, 0) = 2, singular(1, 1) = 4;
  CHECK_THROWS(singular.inverse());
}
