#pragma once

// Gauss 2F1 and the four-variable series F_S, F_T.
//
//   F_S(z) = sum_n (1-a1)_{n1+n3} (1-a2)_{n2+n4} (a5)_{n1+n2} (a6)_{n3+n4}
//            / [(2-a1-a3)_{n1+n3} (2-a2-a4)_{n2+n4} n1! n2! n3! n4!] z^n
//   F_T(z) = same numerator / [(3-a1-a2-a3)_{|n|} n1! n2! n3! n4!] z^n
//
// Both converge absolutely for |z1|+|z2| < 1, |z3|+|z4| < 1. Terms are
// generated one total-degree slice at a time with running Pochhammer
// recurrences; no gamma function is evaluated on the series path.

#include <array>
#include <cstddef>
#include <vector>

#include "k3/types.hpp"

namespace k3 {

struct HGParams {
  std::array<Complex, 6> alpha{};

  /// alpha = (1/2, ..., 1/2), the case carrying the K3 periods.
  static HGParams half();

  /// Throws DomainError unless sum(alpha) == 3 within 1e-12.
  void validate() const;
};

struct SeriesCtrl {
  double tol = 1e-17;
  std::size_t max_degree = 3000;
  /// Work cap for F_S and F_T (terms evaluated); their cost grows like degree^4.
  std::size_t max_terms = 400'000'000;
  /// Inputs with row sums up to 1 - margin are accepted as inside the polydisc.
  double margin = 0.0;
};

struct SeriesResult {
  Complex value;
  std::size_t degree = 0;  ///< highest total degree summed
};

/// Rising factorial (a)_n by the product recurrence.
Complex pochhammer(Complex a, std::size_t n);

/// 2F1(a, b; c; x) for |x| < 1.
SeriesResult gauss2f1(Complex a, Complex b, Complex c, Complex x, const SeriesCtrl& ctrl = {});

SeriesResult fs(const HGParams& alpha, const ZMatrix& z, const SeriesCtrl& ctrl = {});
SeriesResult ft(const HGParams& alpha, const ZMatrix& z, const SeriesCtrl& ctrl = {});

/// Shorthand for the half-parameter series used throughout the period code.
inline Complex fs_half(const ZMatrix& z, const SeriesCtrl& ctrl = {}) { return fs(HGParams::half(), z, ctrl).value; }
inline Complex ft_half(const ZMatrix& z, const SeriesCtrl& ctrl = {}) { return ft(HGParams::half(), z, ctrl).value; }

/// K(1/2,1/2;1;x) series, the elliptic-period building block.
inline Complex f_half(Complex x, const SeriesCtrl& ctrl = {}) {
  return gauss2f1(0.5, 0.5, 1.0, x, ctrl).value;
}

enum class SeriesKind { S, T };

struct QuadCtrl {
  std::size_t nodes = 48;  ///< Gauss-Jacobi nodes per axis, at least 4
};

/// Euler-integral evaluation of F_S or F_T by tensor Gauss-Jacobi quadrature.
/// The endpoint powers s^{-a}(1-s)^{-b} are absorbed into the quadrature
/// weights; the simplex for F_T is mapped to the square by s2 = (1-s1) v.
/// Only real alpha is supported, and the linear kernel factors must stay
/// off the branch cut (-inf, 0] on the integration set.
Complex euler_oracle(SeriesKind kind, const HGParams& alpha, const ZMatrix& z, const QuadCtrl& quad = {});

/// Nodes and weights for int_0^1 s^p (1-s)^q f(s) ds, p, q > -1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_jacobi_unit(std::size_t n, double p, double q);

}  // namespace k3
