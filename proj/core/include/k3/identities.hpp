#pragma once

// Executable checks of the identities relating F_S, periods, theta constants
// and the mean iterations. Each check returns a report; nothing here asserts.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "k3/agm.hpp"
#include "k3/configuration.hpp"
#include "k3/groups.hpp"
#include "k3/hypergeometric.hpp"
#include "k3/periods.hpp"
#include "k3/theta.hpp"

namespace k3 {

/// How a residual is compared with its tolerance.
enum class Basis {
  Absolute,    ///< |lhs - rhs|
  Relative,    ///< |lhs - rhs| / max(|lhs|, |rhs|)
  Scaled,      ///< |lhs - rhs| / max(1, |lhs|, |rhs|)
  LowerBound,  ///< passes when Re(lhs) >= tol; rhs unused
};

struct Residual {
  std::string label;
  Complex lhs;
  Complex rhs;
  double abs = 0.0;
  double rel = 0.0;  ///< the quantity compared with tol for the chosen basis
  double tol = 0.0;
  Basis basis = Basis::Scaled;
  bool pass = false;
};

struct VerifyReport {
  std::string name;
  std::vector<std::pair<std::string, std::vector<double>>> inputs;
  std::vector<Residual> residuals;
  std::vector<std::pair<std::string, double>> diagnostics;
  bool pass = true;

  void add(std::string label, Complex lhs, Complex rhs, double tol, Basis basis = Basis::Scaled);
  /// Exact yes/no check, recorded as a zero-tolerance residual.
  void require(std::string label, bool ok);
  void diag(std::string label, double value) { diagnostics.emplace_back(std::move(label), value); }
  void input(std::string label, std::vector<double> values) { inputs.emplace_back(std::move(label), std::move(values)); }
  /// Largest compared quantity over residuals that are not lower bounds.
  double worst() const;
};

struct Tolerances {
  double genus1 = 1e-10;
  double gauss = 1e-12;
  double lattice = 1e-9;
  double thomae = 1e-7;
  double survivors = 1e-9;
  double degeneration = 1e-5;
  double mean = 1e-8;
  double square_ratio = 1e-6;
  double rate_exponent = 1.9;
  double configuration = 1e-10;
  double round_trip = 1e-12;
};

struct VerifyCtrl {
  SeriesCtrl series;
  LatticeCtrl lattice;
  Tolerances tol;
};

// Genus one -----------------------------------------------------------------

VerifyReport verify_jacobi(double lambda, const VerifyCtrl& ctrl = {});
VerifyReport verify_gauss_transform(double z, const VerifyCtrl& ctrl = {});
VerifyReport verify_factorization(const ZMatrix& z, const VerifyCtrl& ctrl = {});
VerifyReport verify_series_integral(const ZMatrix& z, std::size_t nodes = 48, double tol = 1e-6,
                                    const VerifyCtrl& ctrl = {});

// Theta constants -----------------------------------------------------------

/// Odd vanishing, quasi-periodicity in b over |n| <= qp_radius for one
/// characteristic, transpose law and class invariance.
VerifyReport verify_theta_laws(const Tau& tau, std::size_t qp_char = 0, int qp_radius = 2,
                               const VerifyCtrl& ctrl = {});
VerifyReport verify_2tau(const Tau& tau, const VerifyCtrl& ctrl = {});
/// Theta_ab against products of genus-2 Riemann theta constants, tau symmetric.
VerifyReport verify_decomposition(const Tau& tau, const VerifyCtrl& ctrl = {});
VerifyReport verify_theta_transform(const GroupElem& g, const Tau& tau, const VerifyCtrl& ctrl = {});
/// Exact group checks and the automorphy-factor identity.
VerifyReport verify_group(const GroupElem& g, const Tau& tau, const VerifyCtrl& ctrl = {});

// Periods -------------------------------------------------------------------

VerifyReport verify_thomae(const ZMatrix& z, const VerifyCtrl& ctrl = {});
/// The constant 1/(4 pi^4) along z = (z1, eps, eps, z4), through the full
/// pipeline and through the genus-one product at eps = 0.
VerifyReport verify_degeneration(double z1, double z4, double eps, const VerifyCtrl& ctrl = {});

// Configurations ------------------------------------------------------------

VerifyReport verify_configuration(const Config36& x, const ZMatrix& z, const VerifyCtrl& ctrl = {});
VerifyReport verify_preimage_d4(const MeanState& c, const VerifyCtrl& ctrl = {});
VerifyReport verify_kummer(const MeanState& c, const VerifyCtrl& ctrl = {});

// Means ---------------------------------------------------------------------

enum class FeKind { FE1, FE2 };

/// m(z) and m(w) of the functional equations.
std::pair<ZMatrix, ZMatrix> fe_images(FeKind kind, const MeanState& c);

VerifyReport verify_fe(FeKind kind, const MeanState& c, const VerifyCtrl& ctrl = {});
VerifyReport verify_agm_limit(MeanKind kind, const MeanState& c, const VerifyCtrl& ctrl = {});

// Sampling ------------------------------------------------------------------

/// tau = S + i P with S Hermitian and P Hermitian, eigenvalues of P in [0.8, 1.6].
Tau random_domain_point(std::mt19937_64& rng);
/// Symmetric tau with positive definite imaginary part.
Tau random_siegel_point(std::mt19937_64& rng);
Config36 random_config(std::mt19937_64& rng);
/// Real point with row sums at most max_row_sum.
ZMatrix random_real_z(std::mt19937_64& rng, double max_row_sum);
/// Strictly decreasing positive state with c1 = 1.
MeanState random_state(std::mt19937_64& rng);
/// c1 - c2 - c3 + c4 > 0 and every closed-form and FE argument has row sums
/// at most kClosedFormRowSum.
bool fe_arguments_inside(const MeanState& c);
/// Random state advanced by Borchardt steps (redrawn if it degenerates) until
/// fe_arguments_inside holds; gives up after 64 draws and returns the first.
MeanState random_fe_state(std::mt19937_64& rng);

}  // namespace k3
