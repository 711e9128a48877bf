#pragma once

// Theta constants on the type I_22 domain, indexed by characteristics over
// Z[i]/(1+i), and Riemann theta constants of genus 1 and 2.
//
//   Theta_ab(tau) = sum_{n in Z[i]^2} e[ (n+a) tau (n+a)^* / 2 + Re((n+a) b^*) ]
//
// with row vectors n, a, b and e[x] = exp(2 pi i x).

#include <Eigen/Core>

#include <array>
#include <string>
#include <utility>

#include "k3/configuration.hpp"
#include "k3/periods.hpp"

namespace k3 {

using CVec2 = std::array<Complex, 2>;

struct LatticeCtrl {
  double tol = 1e-16;  ///< absolute bound on the discarded tail
  int max_radius = 30;
};

/// exp(2 pi i x) with the real part of x reduced mod 1 first.
Complex e_of(Complex x);

/// [a1 a2 b1 b2] with a = (a1, a2)/(1+i), b = (b1, b2)/(1+i).
struct Characteristic {
  int a1 = 0, a2 = 0, b1 = 0, b2 = 0;

  /// Parses "0110"-style bit strings.
  static Characteristic parse(const std::string& bits);
  std::string bits() const;
  bool even() const { return (a1 * b1 + a2 * b2) % 2 == 0; }
  CVec2 a() const;
  CVec2 b() const;

  /// All 16, in the order of their bit strings.
  static std::array<Characteristic, 16> all();
};

/// The even characteristic paired with each partition, canonical order.
Characteristic characteristic_of(const Partition33& p);

struct ThetaResult {
  Complex value;
  int radius = 0;  ///< sup-norm radius of the summed box
};

ThetaResult theta_ab(const CVec2& a, const CVec2& b, const Tau& tau, const LatticeCtrl& ctrl = {});
ThetaResult theta_char(const Characteristic& c, const Tau& tau, const LatticeCtrl& ctrl = {});

/// Theta^2 of the ten even characteristics, keyed by partition.
BracketVector theta_vector(const Tau& tau, const LatticeCtrl& ctrl = {});

/// Riemann theta constant of genus g = a.size() in {1, 2}:
/// sum_{n in Z^g} e[ (n+a) tau t(n+a) / 2 + (n+a) t(b) ].
ThetaResult riemann_theta(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::MatrixXcd& tau,
                          const LatticeCtrl& ctrl = {});

/// Jacobi theta constant theta_[ab](tau) for a, b in {0, 1}.
Complex jacobi_theta(int a, int b, Complex tau, const LatticeCtrl& ctrl = {});

/// Both sides of the duplication formula
/// 4 Theta_ab(2 tau) = sum_q e[-Re(a q^*)] Theta_{(1+i)a, (b+q)/(1-i)}(tau).
std::pair<Complex, Complex> two_tau_sides(const CVec2& a, const CVec2& b, const Tau& tau,
                                          const LatticeCtrl& ctrl = {});

}  // namespace k3
