#pragma once

// Matrix-valued Weierstrass p-function on a lattice in C, its derivative,
// Eisenstein series, and the cubic identity p'^2 = 4p^3 - g2 p - g3.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace affinelie {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Z + Z omega1 + Z omega2 inside C.
struct Lattice {
  Complex omega1;
  Complex omega2;

  void validate() const {
    if (std::abs(omega1) == 0.0 || std::abs(std::imag(omega2 / omega1)) < 1e-12)
      throw std::invalid_argument("degenerate lattice: periods are R-linearly dependent");
  }
  Complex point(std::int64_t m, std::int64_t n) const {
    return static_cast<double>(m) * omega1 + static_cast<double>(n) * omega2;
  }
};

/// An eigenvalue of the argument lies within the pole threshold of a lattice point.
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

inline constexpr double kPoleThreshold = 1e-6;

/// Visits (m, n) with 0 < max(|m|, |n|) <= radius, shell by shell, each shell
/// in lexicographic order.
template <class F>
void for_each_lattice_index(int radius, F&& f) {
  for (int r = 1; r <= radius; ++r)
    for (int m = -r; m <= r; ++m) {
      if (m == -r || m == r) {
        for (int n = -r; n <= r; ++n) f(m, n);
      } else {
        f(m, -r);
        f(m, r);
      }
    }
}

/// Truncated sum of omega^{-k} over the window 0 < max(|m|, |n|) <= radius.
inline Complex eisenstein(const Lattice& lat, int k, int radius) {
  lat.validate();
  if (k < 3) throw std::invalid_argument("eisenstein: weight must be at least 3");
  if (radius < 10) throw std::invalid_argument("eisenstein: radius must be at least 10");
  Complex s = 0;
  for_each_lattice_index(radius, [&](int m, int n) { s += std::pow(lat.point(m, n), -k); });
  return s;
}

namespace detail {

/// A basis (w1, w2) of the same lattice with tau = w2/w1 in the standard
/// fundamental domain of SL2(Z).
inline Lattice reduce_basis(const Lattice& lat) {
  Lattice b = lat;
  if (std::imag(b.omega2 / b.omega1) < 0) b.omega2 = -b.omega2;
  for (int guard = 0; guard < 1000; ++guard) {
    Complex tau = b.omega2 / b.omega1;
    double shift = std::round(std::real(tau));
    if (shift != 0.0) {
      b.omega2 -= shift * b.omega1;
      continue;
    }
    if (std::norm(tau) < 1.0 - 1e-15) {
      b = {b.omega2, -b.omega1};
      continue;
    }
    return b;
  }
  throw std::runtime_error("lattice basis reduction did not converge");
}

inline double divisor_power_sum(int n, int p) {
  double s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s += std::pow(static_cast<double>(d), p);
  return s;
}

/// 1 + c * sum sigma_{k-1}(n) q^n.
inline Complex normalized_eisenstein(Complex q, int k, double c) {
  Complex s = 1, qn = 1;
  for (int n = 1; n <= 60; ++n) {
    qn *= q;
    Complex term = c * divisor_power_sum(n, k - 1) * qn;
    s += term;
    if (std::abs(term) < 1e-18 * std::abs(s)) break;
  }
  return s;
}

}  // namespace detail

/// The full lattice sum G_k = sum over nonzero omega of omega^{-k}, from the
/// q-expansion after reducing tau to the fundamental domain. k even, 4..12.
inline Complex eisenstein_limit(const Lattice& lat, int k) {
  lat.validate();
  if (k % 2 != 0) return 0;
  const Lattice b = detail::reduce_basis(lat);
  const double pi = std::numbers::pi;
  const Complex q = std::exp(Complex(0, 2 * pi) * (b.omega2 / b.omega1));
  const Complex e4 = detail::normalized_eisenstein(q, 4, 240);
  const Complex e6 = detail::normalized_eisenstein(q, 6, -504);
  Complex ek;
  double zeta;
  switch (k) {
    case 4: ek = e4, zeta = std::pow(pi, 4) / 90; break;
    case 6: ek = e6, zeta = std::pow(pi, 6) / 945; break;
    case 8: ek = e4 * e4, zeta = std::pow(pi, 8) / 9450; break;
    case 10: ek = e4 * e6, zeta = std::pow(pi, 10) / 93555; break;
    case 12: ek = (441.0 * e4 * e4 * e4 + 250.0 * e6 * e6) / 691.0, zeta = 691 * std::pow(pi, 12) / 638512875; break;
    default: throw std::invalid_argument("eisenstein_limit: weight must be 4, 6, 8, 10 or 12");
  }
  return 2.0 * zeta * ek * std::pow(b.omega1, -k);
}

inline Complex g2(const Lattice& lat) { return 60.0 * eisenstein_limit(lat, 4); }
inline Complex g3(const Lattice& lat) { return 140.0 * eisenstein_limit(lat, 6); }

struct WpOptions {
  int radius = 100;
  /// Add the Laurent tail sum_{m >= 4} (m-1) (G_m - G_m(radius)) Z^{m-2} for
  /// the lattice points outside the window, and use the limit g2, g3.
  bool tail_correction = true;
};

struct WpValues {
  ComplexMatrix wp;
  ComplexMatrix wp_prime;
};

namespace detail {

inline double inf_norm(const ComplexMatrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

inline void check_pole(const ComplexMatrix& shifted, double z_norm, Complex omega) {
  if (std::abs(omega) > z_norm + kPoleThreshold) return;
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
  if (svd.singularValues().minCoeff() < kPoleThreshold)
    throw PoleError("eigenvalue within pole threshold of lattice point " + std::to_string(std::real(omega)) + "+" +
                    std::to_string(std::imag(omega)) + "i");
}

}  // namespace detail

/// p(Z) = Z^{-2} + sum' ((Z + omega)^{-2} - omega^{-2}) and
/// p'(Z) = -2 sum (Z + omega)^{-3}, summed shell by shell.
inline WpValues wp_values(const ComplexMatrix& z, const Lattice& lat, const WpOptions& opt = {}) {
  lat.validate();
  if (z.rows() != z.cols() || z.rows() == 0) throw std::invalid_argument("wp: argument must be a nonempty square matrix");
  if (opt.radius < 1) throw std::invalid_argument("wp: radius must be positive");
  const Eigen::Index n = z.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double z_norm = z.norm();

  detail::check_pole(z, z_norm, 0);
  ComplexMatrix inv = Eigen::PartialPivLU<ComplexMatrix>(z).inverse();
  ComplexMatrix inv2 = inv * inv;
  WpValues v{inv2, -2.0 * inv2 * inv};
  Complex sub = 0;
  for_each_lattice_index(opt.radius, [&](int m, int k) {
    const Complex w = lat.point(m, k);
    ComplexMatrix shifted = z + w * id;
    detail::check_pole(shifted, z_norm, w);
    ComplexMatrix i1 = Eigen::PartialPivLU<ComplexMatrix>(shifted).inverse();
    ComplexMatrix i2 = i1 * i1;
    v.wp += i2;
    v.wp_prime -= 2.0 * i2 * i1;
    sub += 1.0 / (w * w);
  });
  v.wp -= sub * id;

  if (opt.tail_correction) {
    std::array<Complex, 5> partial{};
    for_each_lattice_index(opt.radius, [&](int a, int b) {
      const Complex inv_w2 = 1.0 / (lat.point(a, b) * lat.point(a, b));
      Complex t = inv_w2 * inv_w2;
      for (auto& s : partial) s += t, t *= inv_w2;
    });
    ComplexMatrix odd = z;  // Z^{m-3}
    for (int m = 4; m <= 12; m += 2) {
      const Complex tail = eisenstein_limit(lat, m) - partial[(m - 4) / 2];
      ComplexMatrix even = odd * z;
      v.wp += static_cast<double>(m - 1) * tail * even;
      v.wp_prime += static_cast<double>((m - 1) * (m - 2)) * tail * odd;
      odd = even * z;
    }
  }
  return v;
}

inline ComplexMatrix wp_matrix(const ComplexMatrix& z, const Lattice& lat, const WpOptions& opt = {}) {
  return wp_values(z, lat, opt).wp;
}

inline ComplexMatrix wp_prime_matrix(const ComplexMatrix& z, const Lattice& lat, const WpOptions& opt = {}) {
  return wp_values(z, lat, opt).wp_prime;
}

inline Complex wp_scalar(Complex z, const Lattice& lat, const WpOptions& opt = {}) {
  ComplexMatrix m(1, 1);
  m(0, 0) = z;
  return wp_matrix(m, lat, opt)(0, 0);
}

inline Complex wp_prime_scalar(Complex z, const Lattice& lat, const WpOptions& opt = {}) {
  ComplexMatrix m(1, 1);
  m(0, 0) = z;
  return wp_prime_matrix(m, lat, opt)(0, 0);
}

struct CubicResidual {
  /// ||p'^2 - (4 p^3 - g2 p - g3)||_inf
  double cubic = 0;
  /// ||[p, p']||_inf
  double commutator = 0;
  Complex g2;
  Complex g3;

  double max() const { return std::max(cubic, commutator); }
};

inline CubicResidual verify_cubic(const ComplexMatrix& z, const Lattice& lat, const WpOptions& opt = {}) {
  WpValues v = wp_values(z, lat, opt);
  CubicResidual r;
  if (opt.tail_correction) {
    r.g2 = g2(lat);
    r.g3 = g3(lat);
  } else {
    r.g2 = 60.0 * eisenstein(lat, 4, std::max(opt.radius, 10));
    r.g3 = 140.0 * eisenstein(lat, 6, std::max(opt.radius, 10));
  }
  const ComplexMatrix id = ComplexMatrix::Identity(z.rows(), z.cols());
  const ComplexMatrix& p = v.wp;
  ComplexMatrix lhs = v.wp_prime * v.wp_prime;
  ComplexMatrix rhs = 4.0 * p * p * p - r.g2 * p - r.g3 * id;
  r.cubic = detail::inf_norm(lhs - rhs);
  r.commutator = detail::inf_norm(p * v.wp_prime - v.wp_prime * p);
  return r;
}

}  // namespace affinelie
