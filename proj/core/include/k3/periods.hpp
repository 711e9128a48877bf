#pragma once

// Squared periods from F_S / F_T, sign resolution and the normalized period
// matrix tau in the type I_22 domain.

#include <Eigen/Core>

#include <array>
#include <vector>

#include "k3/configuration.hpp"
#include "k3/hypergeometric.hpp"
#include "k3/types.hpp"

namespace k3 {

using Vec6 = Eigen::Matrix<Complex, 6, 1>;
using Mat6 = Eigen::Matrix<Complex, 6, 6>;
using Tau = Eigen::Matrix<Complex, 2, 2>;

struct DomainConstants {
  Eigen::Matrix<double, 6, 6> H;       ///< intersection form of the six cycles
  Eigen::Matrix<double, 6, 6> Hprime;  ///< Pluecker pairing on 2x2 minors, equal to t(Q) H Q
  Mat6 Q;                              ///< unitary change of basis, Q* H Q = H

  static const DomainConstants& get();
};

struct PeriodSquares {
  std::array<Complex, 6> omega_sq{};  ///< indexed by PeriodIndex
  std::array<ZMatrix, 6> zeta{};      ///< normal-form coordinates per period
  std::array<std::size_t, 6> degrees{};
  std::size_t bracket_index = 0;  ///< partition used for the bracket ratio
  double ratio_spread = 0.0;      ///< max relative deviation across partitions
};

/// omega_ij^2 for the configuration nu_34(z).
PeriodSquares period_squares(const ZMatrix& z, const SeriesCtrl& ctrl = {});

struct SignResolution {
  Vec6 omega;                  ///< the chosen survivor
  std::vector<Vec6> survivors; ///< all admissible sign vectors, enumeration order
  std::size_t chosen = 0;
  bool matches_reference_pattern = false;
};

/// Choose square roots of the omega_ij^2 satisfying the domain conditions.
SignResolution resolve_signs(const std::array<Complex, 6>& omega_sq);

struct DhReport {
  bool in_dh = false;
  double quadric = 0.0;   ///< |t(w) H w| / |w|^2
  double positivity = 0.0; ///< w* H w / |w|^2
  double orientation = 0.0; ///< Im(w_14 / w_34)
};
DhReport dh_membership(const Vec6& w);

struct DReport {
  bool in_d = false;
  double min_eigenvalue = 0.0;  ///< of (tau - tau*)/2i
};
DReport d_membership(const Tau& tau);

/// Least eigenvalue of the Hermitian matrix (tau - tau*)/2i.
double hermitian_part_min_eig(const Tau& tau);

/// Normalized period matrix; throws NotInDomain unless it lies in the domain.
Tau tau_of(const Vec6& omega);
/// Same formula without the domain check.
Tau tau_unchecked(const Vec6& omega);

/// The six 2x2 minors of [tau; E2] in the order 12, 13, 14, 23, 24, 34.
Vec6 plucker_v(const Tau& tau);

/// Q v([tau; E2]): the image of tau in the type IV domain.
Vec6 jd(const Tau& tau);

}  // namespace k3
