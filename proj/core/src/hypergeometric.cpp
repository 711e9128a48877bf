#include "k3/hypergeometric.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "k3/error.hpp"

namespace k3 {

HGParams HGParams::half() {
  HGParams p;
  p.alpha.fill(Complex(0.5, 0.0));
  return p;
}

void HGParams::validate() const {
  Complex sum{};
  for (const auto& a : alpha) sum += a;
  if (std::abs(sum - Complex(3.0, 0.0)) > 1e-12) {
    fail(ErrorCode::DomainError, "parameters must sum to 3, got " + std::to_string(sum.real()));
  }
}

Complex pochhammer(Complex a, std::size_t n) {
  Complex out(1.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) out *= a + static_cast<double>(k);
  return out;
}

namespace {

bool is_nonpositive_integer(Complex c) {
  return c.imag() == 0.0 && c.real() <= 0.0 && c.real() == std::floor(c.real());
}

// 2F1 denominators must not hit zero: c - 2 not in N means c not in {0,-1,...}
// after the shift, which is the series-wide requirement on (c)_n.
void check_denominator(Complex c, const char* what) {
  if (is_nonpositive_integer(c)) fail(ErrorCode::DomainError, std::string(what) + " is a non-positive integer");
}

// Coefficients (alpha)_m x^i y^(m-i) / (i! (m-i)!) stored one degree at a time.
class BinomialSlices {
 public:
  BinomialSlices(Complex alpha, Complex x, Complex y) : alpha_(alpha), x_(x), y_(y) {
    rows_.push_back({Complex(1.0, 0.0)});
  }

  // Exponent range of x allowed at degree m (zero arguments pin their index at 0).
  std::size_t lo(std::size_t m) const { return y_ == Complex{} ? m : 0; }
  std::size_t hi(std::size_t m) const { return x_ == Complex{} ? 0 : m; }

  const std::vector<Complex>& row(std::size_t m) {
    while (rows_.size() <= m) extend();
    return rows_[m];
  }

 private:
  void extend() {
    const std::size_t m = rows_.size();
    const auto& prev = rows_.back();
    std::vector<Complex> next(m + 1);
    const Complex grow = alpha_ + static_cast<double>(m - 1);
    for (std::size_t i = lo(m); i <= hi(m) && i <= m; ++i) {
      if (i > 0) {
        next[i] = prev[i - 1] * grow * x_ / static_cast<double>(i);
      } else {
        next[i] = prev[0] * grow * y_ / static_cast<double>(m);
      }
    }
    rows_.push_back(std::move(next));
  }

  Complex alpha_, x_, y_;
  std::vector<std::vector<Complex>> rows_;
};

// Ratio (u)_p / (v)_p, extended on demand.
class RatioTable {
 public:
  RatioTable(Complex u, Complex v) : u_(u), v_(v) { vals_.push_back(Complex(1.0, 0.0)); }
  Complex operator()(std::size_t p) {
    while (vals_.size() <= p) {
      const double k = static_cast<double>(vals_.size() - 1);
      vals_.push_back(vals_.back() * (u_ + k) / (v_ + k));
    }
    return vals_[p];
  }

 private:
  Complex u_, v_;
  std::vector<Complex> vals_;
};

// (u)_p (w)_q / (v)_{p+q}, stored by total degree d = p + q, index p.
class JointRatioTable {
 public:
  JointRatioTable(Complex u, Complex w, Complex v) : u_(u), w_(w), v_(v) {
    rows_.push_back({Complex(1.0, 0.0)});
  }
  const std::vector<Complex>& row(std::size_t d) {
    while (rows_.size() <= d) {
      const std::size_t n = rows_.size();
      const auto& prev = rows_.back();
      std::vector<Complex> next(n + 1);
      const Complex den = v_ + static_cast<double>(n - 1);
      for (std::size_t p = 0; p <= n; ++p) {
        if (p > 0) {
          next[p] = prev[p - 1] * (u_ + static_cast<double>(p - 1)) / den;
        } else {
          next[p] = prev[0] * (w_ + static_cast<double>(n - 1)) / den;
        }
      }
      rows_.push_back(std::move(next));
    }
    return rows_[d];
  }

 private:
  Complex u_, w_, v_;
  std::vector<std::vector<Complex>> rows_;
};

void check_polydisc(const ZMatrix& z, const SeriesCtrl& ctrl) {
  const double bound = 1.0 - ctrl.margin;
  if (!(z.first_sum() < bound) || !(z.second_sum() < bound)) {
    fail(ErrorCode::DomainError, "argument outside the convergence polydisc (row sums " +
                                     std::to_string(z.first_sum()) + ", " + std::to_string(z.second_sum()) + ")");
  }
}

template <class Coef>
SeriesResult sum_by_slices(const HGParams& alpha, const ZMatrix& z, const SeriesCtrl& ctrl, Coef&& coef) {
  check_polydisc(z, ctrl);
  BinomialSlices first(alpha.alpha[4], z[0], z[1]);   // (a5)_{n1+n2} z1^n1 z2^n2 / n1! n2!
  BinomialSlices second(alpha.alpha[5], z[2], z[3]);  // (a6)_{n3+n4} z3^n3 z4^n4 / n3! n4!

  Complex total(1.0, 0.0);
  int quiet = 0;
  std::size_t work = 0;
  for (std::size_t d = 1; d <= ctrl.max_degree; ++d) {
    Complex slice{};
    double magnitude = 0.0;
    for (std::size_t m = 0; m <= d; ++m) {
      const std::size_t k = d - m;
      const auto& u = first.row(m);
      const auto& v = second.row(k);
      for (std::size_t n1 = first.lo(m); n1 <= std::min(first.hi(m), m); ++n1) {
        if (u[n1] == Complex{}) continue;
        for (std::size_t n3 = second.lo(k); n3 <= std::min(second.hi(k), k); ++n3) {
          const Complex term = coef(n1 + n3, d) * u[n1] * v[n3];
          slice += term;
          magnitude += std::abs(term);
        }
        work += 1 + (second.hi(k) > second.lo(k) ? second.hi(k) - second.lo(k) : 0);
      }
    }
    total += slice;
    quiet = magnitude < ctrl.tol ? quiet + 1 : 0;
    if (quiet >= 2) return {total, d};
    if (work > ctrl.max_terms) {
      fail(ErrorCode::NoConvergence, "series exceeded " + std::to_string(ctrl.max_terms) + " terms at degree " +
                                         std::to_string(d) + " (row sums " + std::to_string(z.first_sum()) + ", " +
                                         std::to_string(z.second_sum()) + ")");
    }
  }
  fail(ErrorCode::NoConvergence, "series did not reach tolerance by degree " + std::to_string(ctrl.max_degree));
}

}  // namespace

SeriesResult gauss2f1(Complex a, Complex b, Complex c, Complex x, const SeriesCtrl& ctrl) {
  if (!(std::abs(x) < 1.0)) fail(ErrorCode::DomainError, "2F1 series needs |x| < 1");
  check_denominator(c, "c");
  Complex total(1.0, 0.0);
  Complex term(1.0, 0.0);
  int quiet = 0;
  for (std::size_t n = 0; n < ctrl.max_degree; ++n) {
    const double k = static_cast<double>(n);
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    total += term;
    quiet = std::abs(term) < ctrl.tol ? quiet + 1 : 0;
    if (quiet >= 2) return {total, n + 1};
  }
  fail(ErrorCode::NoConvergence, "2F1 series did not reach tolerance");
}

SeriesResult fs(const HGParams& alpha, const ZMatrix& z, const SeriesCtrl& ctrl) {
  alpha.validate();
  const auto& a = alpha.alpha;
  check_denominator(2.0 - a[0] - a[2], "2-a1-a3");
  check_denominator(2.0 - a[1] - a[3], "2-a2-a4");
  RatioTable g(1.0 - a[0], 2.0 - a[0] - a[2]);
  RatioTable h(1.0 - a[1], 2.0 - a[1] - a[3]);
  return sum_by_slices(alpha, z, ctrl, [&](std::size_t p, std::size_t d) { return g(p) * h(d - p); });
}

SeriesResult ft(const HGParams& alpha, const ZMatrix& z, const SeriesCtrl& ctrl) {
  alpha.validate();
  const auto& a = alpha.alpha;
  check_denominator(3.0 - a[0] - a[1] - a[2], "3-a1-a2-a3");
  JointRatioTable w(1.0 - a[0], 1.0 - a[1], 3.0 - a[0] - a[1] - a[2]);
  return sum_by_slices(alpha, z, ctrl, [&](std::size_t p, std::size_t d) { return w.row(d)[p]; });
}

QuadratureRule gauss_jacobi_unit(std::size_t n, double p, double q) {
  if (n < 1) fail(ErrorCode::DomainError, "quadrature needs at least one node");
  if (!(p > -1.0) || !(q > -1.0)) fail(ErrorCode::DomainError, "Jacobi exponents must exceed -1");
  // Golub-Welsch on [-1, 1] with weight (1-x)^a (1+x)^b, then s = (1+x)/2.
  const double a = q;
  const double b = p;
  const double ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    diag(static_cast<Eigen::Index>(k)) = (k == 0 || std::abs(s) < 1e-300) ? (b - a) / (ab + 2.0)
                                                                          : (b * b - a * a) / (s * (s + 2.0));
  }
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    double beta2;
    if (k == 1) {
      beta2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta2 = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(static_cast<Eigen::Index>(k - 1)) = std::sqrt(beta2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (n == 1) {
    solver.compute(Eigen::MatrixXd::Constant(1, 1, diag(0)));
  } else {
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(ab + 2.0));
  const double scale = std::pow(2.0, -(ab + 1.0));
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    const double v0 = solver.eigenvectors()(0, idx);
    rule.nodes[k] = 0.5 * (1.0 + solver.eigenvalues()(idx));
    rule.weights[k] = mu0 * v0 * v0 * scale;
  }
  return rule;
}

namespace {

double real_param(Complex a) {
  if (a.imag() != 0.0) fail(ErrorCode::DomainError, "Euler quadrature supports real parameters only");
  return a.real();
}

// Principal power base^{-e}; the caller guarantees base stays off the cut.
Complex kernel_power(Complex base, double e) { return std::pow(base, -e); }

void check_corners(const ZMatrix& z, std::initializer_list<std::pair<double, double>> corners) {
  for (auto [s1, s2] : corners) {
    const Complex b1 = 1.0 - z[0] * s1 - z[1] * s2;
    const Complex b2 = 1.0 - z[2] * s1 - z[3] * s2;
    if (!(b1.real() > 0.0) || !(b2.real() > 0.0)) {
      fail(ErrorCode::DomainError, "Euler kernel factor may cross the branch cut");
    }
  }
}

}  // namespace

Complex euler_oracle(SeriesKind kind, const HGParams& alpha, const ZMatrix& z, const QuadCtrl& quad) {
  alpha.validate();
  if (quad.nodes < 4) fail(ErrorCode::DomainError, "quadrature needs at least 4 nodes per axis");
  std::array<double, 6> a{};
  for (std::size_t k = 0; k < 6; ++k) a[k] = real_param(alpha.alpha[k]);
  const std::size_t n = quad.nodes;

  if (kind == SeriesKind::S) {
    for (std::size_t k = 0; k < 4; ++k)
      if (!(a[k] < 1.0)) fail(ErrorCode::DomainError, "Euler representation of F_S needs a1..a4 < 1");
    check_corners(z, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const auto r1 = gauss_jacobi_unit(n, -a[0], -a[2]);
    const auto r2 = gauss_jacobi_unit(n, -a[1], -a[3]);
    Complex sum{};
    for (std::size_t i = 0; i < n; ++i) {
      const double s1 = r1.nodes[i];
      Complex row{};
      for (std::size_t j = 0; j < n; ++j) {
        const double s2 = r2.nodes[j];
        row += r2.weights[j] * kernel_power(1.0 - z[0] * s1 - z[1] * s2, a[4]) *
               kernel_power(1.0 - z[2] * s1 - z[3] * s2, a[5]);
      }
      sum += r1.weights[i] * row;
    }
    const double beta1 = std::exp(std::lgamma(1 - a[0]) + std::lgamma(1 - a[2]) - std::lgamma(2 - a[0] - a[2]));
    const double beta2 = std::exp(std::lgamma(1 - a[1]) + std::lgamma(1 - a[3]) - std::lgamma(2 - a[1] - a[3]));
    return sum / (beta1 * beta2);
  }

  for (std::size_t k = 0; k < 3; ++k)
    if (!(a[k] < 1.0)) fail(ErrorCode::DomainError, "Euler representation of F_T needs a1..a3 < 1");
  check_corners(z, {{0, 0}, {1, 0}, {0, 1}});
  // s1 = u, s2 = (1-u) v, ds1 ds2 = (1-u) du dv.
  const auto ru = gauss_jacobi_unit(n, -a[0], 1.0 - a[1] - a[2]);
  const auto rv = gauss_jacobi_unit(n, -a[1], -a[2]);
  Complex sum{};
  for (std::size_t i = 0; i < n; ++i) {
    const double u = ru.nodes[i];
    Complex row{};
    for (std::size_t j = 0; j < n; ++j) {
      const double s1 = u;
      const double s2 = (1.0 - u) * rv.nodes[j];
      row += rv.weights[j] * kernel_power(1.0 - z[0] * s1 - z[1] * s2, a[4]) *
             kernel_power(1.0 - z[2] * s1 - z[3] * s2, a[5]);
    }
    sum += ru.weights[i] * row;
  }
  const double log_pref = std::lgamma(3 - a[0] - a[1] - a[2]) - std::lgamma(1 - a[0]) - std::lgamma(1 - a[1]) -
                          std::lgamma(1 - a[2]);
  return sum * std::exp(log_pref);
}

}  // namespace k3
