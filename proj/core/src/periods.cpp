#include "k3/periods.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "k3/error.hpp"

namespace k3 {

namespace {

constexpr double kQuadricTol = 1e-8;
constexpr double kRatioTol = 1e-8;

double prefactor(PeriodIndex ij) {
  return uses_ft(ij) ? 16.0 * kPi * kPi : 4.0 * kPi * kPi * kPi * kPi;
}

bool d_conditions(const Vec6& w) {
  const auto& dc = DomainConstants::get();
  const double norm2 = w.squaredNorm();
  const Complex quad = (w.transpose() * dc.H.cast<Complex>() * w)(0, 0);
  if (std::abs(quad) > kQuadricTol * norm2) return false;
  const double pos = (w.adjoint() * dc.H.cast<Complex>() * w)(0, 0).real();
  if (!(pos > 0.0)) return false;
  return (w(2) / w(5)).imag() > 0.0;
}

// Reference pattern of the periods at the base point: arg omega_ij is
// pi, pi/2, pi/2, -pi/2, -pi/2, 0 for 12, 13, 14, 23, 24, 34.
bool matches_pattern(const Vec6& w) {
  const std::array<Complex, 6> dir{Complex{-1, 0}, kI, kI, -kI, -kI, Complex{1, 0}};
  for (int k = 0; k < 6; ++k) {
    const double mag = std::abs(w(k));
    if (mag == 0.0) continue;
    const Complex u = w(k) * std::conj(dir[static_cast<std::size_t>(k)]) / mag;
    if (u.real() < 1.0 - 1e-8) return false;
  }
  return true;
}

}  // namespace

const DomainConstants& DomainConstants::get() {
  static const DomainConstants dc = [] {
    DomainConstants c;
    c.H.setZero();
    c.H(0, 5) = c.H(5, 0) = -1.0;
    c.H(1, 1) = -1.0;
    c.H(2, 3) = c.H(3, 2) = -1.0;
    c.H(4, 4) = -1.0;
    c.Hprime.setZero();
    // t(Q) H Q; t(v) H' v = -2 (v12 v34 - v13 v24 + v14 v23).
    c.Hprime(0, 5) = c.Hprime(5, 0) = -1.0;
    c.Hprime(1, 4) = c.Hprime(4, 1) = 1.0;
    c.Hprime(2, 3) = c.Hprime(3, 2) = -1.0;
    c.Q = Mat6::Identity();
    c.Q(1, 1) = c.Q(4, 4) = Complex{0.5, 0.5};
    c.Q(1, 4) = c.Q(4, 1) = Complex{-0.5, 0.5};
    return c;
  }();
  return dc;
}

PeriodSquares period_squares(const ZMatrix& z, const SeriesCtrl& ctrl) {
  const Config36 x = nu(PeriodIndex::P34, z);
  const BracketSet bx = brackets(x);
  PeriodSquares out;
  std::size_t best = 0;
  for (std::size_t k = 1; k < Partition33::kCount; ++k)
    if (std::abs(bx.pairs[k]) > std::abs(bx.pairs[best])) best = k;
  out.bracket_index = best;
  if (std::abs(bx.pairs[best]) == 0.0) fail(ErrorCode::FrameDegenerate, "all brackets vanish");

  // All six arguments are checked before any series is summed.
  for (PeriodIndex ij : kAllPeriods) {
    const auto k = static_cast<std::size_t>(ij);
    const ZMatrix zeta = ij == PeriodIndex::P34 ? z : normal_form_coords(x, ij);
    out.zeta[k] = zeta;
    if (!(zeta.first_sum() < 1.0 - ctrl.margin && zeta.second_sum() < 1.0 - ctrl.margin)) {
      fail(ErrorCode::CoordsOutOfDomain,
           std::string("normal-form coordinates for period ") + label(ij) + " leave the convergence polydisc");
    }
  }
  for (PeriodIndex ij : kAllPeriods) {
    const auto k = static_cast<std::size_t>(ij);
    const ZMatrix& zeta = out.zeta[k];
    const SeriesResult f = uses_ft(ij) ? ft(HGParams::half(), zeta, ctrl) : fs(HGParams::half(), zeta, ctrl);
    out.degrees[k] = f.degree;
    const BracketSet bn = brackets(nu(ij, zeta));
    const Complex ratio = bn.pairs[best] / bx.pairs[best];
    out.omega_sq[k] = prefactor(ij) * f.value * f.value * ratio;

    // The bracket ratio must not depend on the partition. Deviations are
    // measured against the largest bracket so that small ones are not amplified.
    for (std::size_t j = 0; j < Partition33::kCount; ++j) {
      const double dev = std::abs(bn.pairs[j] - ratio * bx.pairs[j]) / std::abs(ratio * bx.pairs[best]);
      out.ratio_spread = std::max(out.ratio_spread, dev);
    }
  }
  if (out.ratio_spread > kRatioTol) {
    fail(ErrorCode::InconsistentRatio, "bracket ratio differs between partitions");
  }
  return out;
}

SignResolution resolve_signs(const std::array<Complex, 6>& omega_sq) {
  Vec6 root;
  for (int k = 0; k < 6; ++k) root(k) = std::sqrt(omega_sq[static_cast<std::size_t>(k)]);
  SignResolution out;
  // omega_34 keeps its principal root; that removes the global sign.
  for (int mask = 0; mask < 32; ++mask) {
    Vec6 w = root;
    for (int k = 0; k < 5; ++k)
      if (mask & (1 << k)) w(k) = -w(k);
    if (!d_conditions(w)) continue;
    if (hermitian_part_min_eig(tau_unchecked(w)) <= 0.0) continue;
    out.survivors.push_back(w);
  }
  if (out.survivors.empty()) {
    fail(ErrorCode::NoAdmissibleSigns, "no sign choice satisfies the period domain conditions");
  }
  out.chosen = 0;
  for (std::size_t k = 0; k < out.survivors.size(); ++k) {
    if (matches_pattern(out.survivors[k])) {
      out.chosen = k;
      out.matches_reference_pattern = true;
      break;
    }
  }
  out.omega = out.survivors[out.chosen];
  return out;
}

DhReport dh_membership(const Vec6& w) {
  const auto& dc = DomainConstants::get();
  DhReport r;
  const double norm2 = w.squaredNorm();
  if (norm2 == 0.0) return r;
  r.quadric = std::abs((w.transpose() * dc.H.cast<Complex>() * w)(0, 0)) / norm2;
  r.positivity = (w.adjoint() * dc.H.cast<Complex>() * w)(0, 0).real() / norm2;
  r.orientation = w(5) == Complex{} ? 0.0 : (w(2) / w(5)).imag();
  r.in_dh = r.quadric <= kQuadricTol && r.positivity > 0.0 && r.orientation > 0.0;
  return r;
}

double hermitian_part_min_eig(const Tau& tau) {
  const Tau p = (tau - tau.adjoint()) / Complex{0.0, 2.0};
  Eigen::SelfAdjointEigenSolver<Tau> es(p, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

DReport d_membership(const Tau& tau) {
  DReport r;
  r.min_eigenvalue = hermitian_part_min_eig(tau);
  r.in_d = r.min_eigenvalue > 0.0;
  return r;
}

Tau tau_unchecked(const Vec6& w) {
  if (w(5) == Complex{}) fail(ErrorCode::NotInDomain, "omega_34 vanishes");
  const Complex w13 = w(1), w14 = w(2), w23 = w(3), w24 = w(4), w34 = w(5);
  Tau t;
  t(0, 0) = w14 / w34;
  t(0, 1) = -(w13 - kI * w24) / ((1.0 + kI) * w34);
  t(1, 0) = -(w13 + kI * w24) / ((1.0 - kI) * w34);
  t(1, 1) = -w23 / w34;
  return t;
}

Tau tau_of(const Vec6& w) {
  Tau t = tau_unchecked(w);
  if (!(hermitian_part_min_eig(t) > 0.0)) fail(ErrorCode::NotInDomain, "(tau - tau*)/2i is not positive definite");
  return t;
}

Vec6 plucker_v(const Tau& tau) {
  // Rows of [tau; E2]: r1 = tau row 1, r2 = tau row 2, r3 = (1,0), r4 = (0,1).
  Eigen::Matrix<Complex, 4, 2> m;
  m.topRows<2>() = tau;
  m.bottomRows<2>() = Tau::Identity();
  auto minor = [&](int i, int j) { return m(i, 0) * m(j, 1) - m(i, 1) * m(j, 0); };
  Vec6 v;
  v << minor(0, 1), minor(0, 2), minor(0, 3), minor(1, 2), minor(1, 3), minor(2, 3);
  return v;
}

Vec6 jd(const Tau& tau) { return DomainConstants::get().Q * plucker_v(tau); }

}  // namespace k3
