#include "k3/theta.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

#include "k3/error.hpp"

namespace k3 {

Complex e_of(Complex x) {
  const double re = x.real() - std::floor(x.real());
  const double mag = std::exp(-2.0 * kPi * x.imag());
  return mag * Complex{std::cos(2.0 * kPi * re), std::sin(2.0 * kPi * re)};
}

Characteristic Characteristic::parse(const std::string& bits) {
  if (bits.size() != 4) fail(ErrorCode::BadLabels, "characteristic needs four bits");
  std::array<int, 4> v{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (bits[k] != '0' && bits[k] != '1') fail(ErrorCode::BadLabels, "characteristic bits must be 0 or 1");
    v[k] = bits[k] - '0';
  }
  return {v[0], v[1], v[2], v[3]};
}

std::string Characteristic::bits() const {
  return std::string{static_cast<char>('0' + a1), static_cast<char>('0' + a2), static_cast<char>('0' + b1),
                     static_cast<char>('0' + b2)};
}

CVec2 Characteristic::a() const {
  const Complex d{1.0, 1.0};
  return {static_cast<double>(a1) / d, static_cast<double>(a2) / d};
}

CVec2 Characteristic::b() const {
  const Complex d{1.0, 1.0};
  return {static_cast<double>(b1) / d, static_cast<double>(b2) / d};
}

std::array<Characteristic, 16> Characteristic::all() {
  std::array<Characteristic, 16> out{};
  for (int k = 0; k < 16; ++k) out[static_cast<std::size_t>(k)] = {(k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1};
  return out;
}

Characteristic characteristic_of(const Partition33& p) {
  // 123 124 125 134 135 145 234 235 245 345
  static const std::array<const char*, 10> table{"1111", "0011", "0010", "0001", "0000",
                                                 "1100", "1001", "1000", "0100", "0110"};
  return Characteristic::parse(table[p.index()]);
}

namespace {

// Smallest R such that the lattice points with sup-norm beyond R contribute
// less than tol, given |term| <= exp(-pi lambda |m|^2), |m| >= r - shift for
// points on shell r, and at most (2r+1)^d - (2r-1)^d points per shell.
int truncation_radius(double lambda, double shift, int dim, const LatticeCtrl& ctrl) {
  auto shell_count = [dim](int r) { return std::pow(2.0 * r + 1.0, dim) - std::pow(2.0 * r - 1.0, dim); };
  for (int radius = 0; radius <= ctrl.max_radius; ++radius) {
    double tail = 0.0;
    for (int r = radius + 1;; ++r) {
      const double d = std::max(0.0, r - shift);
      const double term = shell_count(r) * std::exp(-kPi * lambda * d * d);
      tail += term;
      if (d > 0.0 && term < 1e-3 * ctrl.tol && r > radius + 2) break;
      if (r > radius + 10000) break;
    }
    if (tail < ctrl.tol) return radius;
  }
  fail(ErrorCode::RadiusExceeded, "theta truncation radius exceeds max_radius");
}

// Sum of f over an integer box of the given radius, accumulated per
// sup-norm shell and added in increasing shell order.
template <int Dim, class F>
Complex shell_sum(int radius, F&& f) {
  std::vector<Complex> shells(static_cast<std::size_t>(radius) + 1);
  std::array<int, Dim> n{};
  n.fill(-radius);
  while (true) {
    int sup = 0;
    for (int v : n) sup = std::max(sup, std::abs(v));
    shells[static_cast<std::size_t>(sup)] += f(n);
    int k = 0;
    while (k < Dim && n[static_cast<std::size_t>(k)] == radius) n[static_cast<std::size_t>(k++)] = -radius;
    if (k == Dim) break;
    ++n[static_cast<std::size_t>(k)];
  }
  Complex total{};
  for (const auto& s : shells) total += s;
  return total;
}

}  // namespace

ThetaResult theta_ab(const CVec2& a, const CVec2& b, const Tau& tau, const LatticeCtrl& ctrl) {
  const double lambda = hermitian_part_min_eig(tau);
  if (!(lambda > 0.0)) fail(ErrorCode::NotInDomain, "(tau - tau*)/2i is not positive definite");
  // Shift a by a lattice vector so that its coordinates lie in [-1/2, 1/2].
  const std::array<double, 4> ar{a[0].real(), a[0].imag(), a[1].real(), a[1].imag()};
  std::array<double, 4> frac{};
  double shift = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    frac[k] = ar[k] - std::round(ar[k]);
    shift = std::max(shift, std::abs(frac[k]));
  }
  const int radius = truncation_radius(lambda, shift, 4, ctrl);
  const Complex t11 = tau(0, 0), t12 = tau(0, 1), t21 = tau(1, 0), t22 = tau(1, 1);
  const Complex b1c = std::conj(b[0]), b2c = std::conj(b[1]);

  const Complex value = shell_sum<4>(radius, [&](const std::array<int, 4>& n) {
    // m = n + a; the lattice part of a is absorbed by re-indexing n.
    const Complex m1 = Complex{n[0] + frac[0], n[1] + frac[1]};
    const Complex m2 = Complex{n[2] + frac[2], n[3] + frac[3]};
    const Complex m1c = std::conj(m1), m2c = std::conj(m2);
    const Complex quad = m1 * t11 * m1c + m1 * t12 * m2c + m2 * t21 * m1c + m2 * t22 * m2c;
    const double lin = (m1 * b1c + m2 * b2c).real();
    return e_of(0.5 * quad + lin);
  });
  return {value, radius};
}

ThetaResult theta_char(const Characteristic& c, const Tau& tau, const LatticeCtrl& ctrl) {
  return theta_ab(c.a(), c.b(), tau, ctrl);
}

BracketVector theta_vector(const Tau& tau, const LatticeCtrl& ctrl) {
  BracketVector out{};
  for (const auto& p : Partition33::all()) {
    const Complex t = theta_char(characteristic_of(p), tau, ctrl).value;
    out[p.index()] = t * t;
  }
  return out;
}

ThetaResult riemann_theta(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::MatrixXcd& tau,
                          const LatticeCtrl& ctrl) {
  const auto g = a.size();
  if ((g != 1 && g != 2) || b.size() != g || tau.rows() != g || tau.cols() != g) {
    fail(ErrorCode::PreconditionError, "riemann_theta supports genus 1 and 2 with matching shapes");
  }
  const Eigen::MatrixXd im = tau.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((im + im.transpose()) / 2.0, Eigen::EigenvaluesOnly);
  const double lambda = es.eigenvalues()(0);
  if (!(lambda > 0.0) || (tau - tau.transpose()).cwiseAbs().maxCoeff() > 1e-14 * tau.cwiseAbs().maxCoeff()) {
    fail(ErrorCode::NotInSiegel, "tau must be symmetric with positive definite imaginary part");
  }
  Eigen::VectorXd frac(g);
  double shift = 0.0;
  for (Eigen::Index k = 0; k < g; ++k) {
    frac(k) = a(k) - std::round(a(k));
    shift = std::max(shift, std::abs(frac(k)));
  }
  const int radius = truncation_radius(lambda, shift, static_cast<int>(g), ctrl);
  Complex value;
  if (g == 1) {
    value = shell_sum<1>(radius, [&](const std::array<int, 1>& n) {
      const double m = n[0] + frac(0);
      return e_of(0.5 * m * m * tau(0, 0) + m * b(0));
    });
  } else {
    value = shell_sum<2>(radius, [&](const std::array<int, 2>& n) {
      const double m1 = n[0] + frac(0), m2 = n[1] + frac(1);
      const Complex quad = m1 * m1 * tau(0, 0) + m1 * m2 * (tau(0, 1) + tau(1, 0)) + m2 * m2 * tau(1, 1);
      return e_of(0.5 * quad + m1 * b(0) + m2 * b(1));
    });
  }
  return {value, radius};
}

Complex jacobi_theta(int a, int b, Complex tau, const LatticeCtrl& ctrl) {
  Eigen::VectorXd av(1), bv(1);
  av << 0.5 * a;
  bv << 0.5 * b;
  Eigen::MatrixXcd t(1, 1);
  t << tau;
  return riemann_theta(av, bv, t, ctrl).value;
}

std::pair<Complex, Complex> two_tau_sides(const CVec2& a, const CVec2& b, const Tau& tau, const LatticeCtrl& ctrl) {
  const Complex lhs = 4.0 * theta_ab(a, b, Tau(2.0 * tau), ctrl).value;
  const Complex one_pi{1.0, 1.0}, one_mi{1.0, -1.0};
  Complex rhs{};
  for (int q1 = 0; q1 <= 1; ++q1)
    for (int q2 = 0; q2 <= 1; ++q2) {
      const double re_aq = (a[0] * static_cast<double>(q1) + a[1] * static_cast<double>(q2)).real();
      const CVec2 a2{one_pi * a[0], one_pi * a[1]};
      const CVec2 b2{(b[0] + static_cast<double>(q1)) / one_mi, (b[1] + static_cast<double>(q2)) / one_mi};
      rhs += e_of(-re_aq) * theta_ab(a2, b2, tau, ctrl).value;
    }
  return {lhs, rhs};
}

}  // namespace k3
