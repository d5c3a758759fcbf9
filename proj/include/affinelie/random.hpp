#pragma once

// Seeded, splittable sampling of rational points and affine Weyl elements.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "affinelie/rational.hpp"
#include "affinelie/weylaff.hpp"

namespace affinelie {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// mt19937_64 keyed by (seed, stream); split() derives independent streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(splitmix64(seed ^ splitmix64(stream + 1))) {}

  Rng split(std::uint64_t stream) const { return Rng(seed_, splitmix64(stream_ ^ splitmix64(stream))); }

  std::uint64_t seed() const { return seed_; }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

  /// A rational in [lo, hi] with denominator at most max_den.
  Rational uniform_rational(const Rational& lo, const Rational& hi, std::int64_t max_den) {
    const std::int64_t den = uniform_int(1, max_den);
    const std::int64_t a = (lo * Rational(den)).ceil(), b = (hi * Rational(den)).floor();
    if (a > b) return lo;
    return Rational(uniform_int(a, b), den);
  }

  QVector rational_vector(std::size_t dim, const Rational& lo, const Rational& hi, std::int64_t max_den) {
    QVector v(dim);
    for (auto& x : v) x = uniform_rational(lo, hi, max_den);
    return v;
  }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items.at(static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(items.size()) - 1)));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// (w0, lambda) with w0 uniform in W and lambda having coordinates in
/// [-radius, radius], either in the lattice basis or in the simple coroots.
inline AffineWeylElement random_affine_element(const AffineSystem& sys, Rng& rng, std::int64_t radius = 2,
                                               bool coroot_translations = false) {
  const RootSystem& rs = sys.rs();
  QVector lambda = zero_vector(rs.dim());
  if (coroot_translations) {
    for (const auto& c : rs.simple_coroots()) lambda = lambda + Rational(rng.uniform_int(-radius, radius)) * c;
  } else {
    QVector c(rs.dim());
    for (auto& x : c) x = Rational(rng.uniform_int(-radius, radius));
    lambda = rs.from_lattice_coordinates(c);
  }
  return {rng.pick(sys.weyl()).matrix, std::move(lambda)};
}

/// A point of the closed alcove with positive barycentric weight on the
/// vertices of J, moved by a random element of W_J. Such points fill St_J.
inline QVector random_star_point(const AffineSystem& sys, const Face& face, const FiniteSubgroup& wj, Rng& rng,
                                 std::int64_t max_weight = 12) {
  const Alcove& c = sys.alcove();
  QVector y = zero_vector(sys.rs().dim());
  std::int64_t total = 0;
  for (std::size_t k = 0; k < c.vertices.size(); ++k) {
    bool on_face = std::find(face.vertices.begin(), face.vertices.end(), static_cast<int>(k)) != face.vertices.end();
    std::int64_t t = on_face ? rng.uniform_int(1, max_weight) : (rng.coin(0.3) ? 0 : rng.uniform_int(0, max_weight));
    y = y + Rational(t) * c.vertices[k];
    total += t;
  }
  y = Rational(1, total) * y;
  return rng.pick(wj.elements())(y);
}

}  // namespace affinelie
