#include <cmath>
#include <random>

#include "support.hpp"

using namespace k3;

TEST_SUITE("hypergeometric") {
  TEST_CASE("pochhammer") {
    CHECK(pochhammer(0.5, 0) == Complex(1.0));
    CHECK(std::abs(pochhammer(0.5, 3) - 1.875) < 1e-15);
    CHECK(std::abs(pochhammer(1.0, 10) - 3628800.0) < 1e-6);
  }

  TEST_CASE("gauss2f1 basics") {
    CHECK(f_half(0.0) == Complex(1.0));
    CHECK(std::abs(f_half(0.5) - f_half(1.0 - 0.5)) == 0.0);
    // K(1/2) / (pi/2), an independent closed form via the AGM.
    const double agm = classical_agm(1.0, std::sqrt(0.5)).limit;
    CHECK(std::abs(f_half(0.5) - 1.0 / agm) < 1e-14);
    CHECK(test::error_of([] { f_half(1.0); }) == ErrorCode::DomainError);
    SeriesCtrl tight;
    tight.max_degree = 5;
    CHECK(test::error_of([&] { f_half(0.9, tight); }) == ErrorCode::NoConvergence);
  }

  TEST_CASE("gauss transform at 0.3") {
    const double z = 0.3;
    const Complex lhs = f_half(1.0 - 4.0 * z / ((1 + z) * (1 + z)));
    const Complex rhs = (1 + z) / 2.0 * f_half(1.0 - z * z);
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }

  TEST_CASE("series at the origin are exactly one") {
    const ZMatrix z0{};
    CHECK(fs_half(z0) == Complex(1.0));
    CHECK(ft_half(z0) == Complex(1.0));
    HGParams a;
    a.alpha = {0.3, 0.6, 0.4, 0.2, 0.9, 0.6};
    CHECK(fs(a, z0).value == Complex(1.0));
    CHECK(ft(a, z0).value == Complex(1.0));
  }

  TEST_CASE("parameter validation") {
    HGParams a;
    a.alpha = {0.5, 0.5, 0.5, 0.5, 0.5, 0.6};
    CHECK(test::error_of([&] { a.validate(); }) == ErrorCode::DomainError);
    CHECK(test::error_of([] { fs_half(ZMatrix::real(0.6, 0.5, 0.0, 0.0)); }) == ErrorCode::DomainError);
  }

  TEST_CASE("factorization with general parameters") {
    HGParams a;
    a.alpha = {0.3, 0.6, 0.4, 0.2, 0.9, 0.6};
    const ZMatrix z = ZMatrix::real(0.4, 0.0, 0.0, -0.3);
    const Complex lhs = fs(a, z).value;
    const auto& al = a.alpha;
    const Complex rhs = gauss2f1(1.0 - al[0], al[4], 2.0 - al[0] - al[2], z[0]).value *
                        gauss2f1(1.0 - al[1], al[5], 2.0 - al[1] - al[3], z[3]).value;
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }

  TEST_CASE("ft is a positive series on nonnegative reals") {
    CHECK(ft_half(ZMatrix::real(0.1, 0.0, 0.0, 0.1)).real() > 1.0);
    CHECK(std::abs(ft_half(ZMatrix::real(0.1, 0.0, 0.0, 0.1)).imag()) == 0.0);
  }

  TEST_CASE("euler oracle") {
    const HGParams h = HGParams::half();
    CHECK(std::abs(euler_oracle(SeriesKind::S, h, ZMatrix{}, {32}) - 1.0) < 1e-10);
    CHECK(std::abs(euler_oracle(SeriesKind::T, h, ZMatrix{}, {32}) - 1.0) < 1e-8);
    const ZMatrix z = ZMatrix::real(0.1, 0.05, 0.02, 0.08);
    CHECK(std::abs(euler_oracle(SeriesKind::S, h, z, {48}) - fs_half(z)) < 1e-6);
    const ZMatrix zt = ZMatrix::real(0.2, 0.0, 0.0, 0.15);
    CHECK(std::abs(euler_oracle(SeriesKind::T, h, zt, {48}) - ft_half(zt)) < 1e-6);
  }

  TEST_CASE("gauss-jacobi rule integrates the weight") {
    // int_0^1 s^-1/2 (1-s)^-1/2 ds = pi, int s * w = pi/2.
    const auto rule = gauss_jacobi_unit(12, -0.5, -0.5);
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      m0 += rule.weights[k];
      m1 += rule.weights[k] * rule.nodes[k];
    }
    CHECK(std::abs(m0 - kPi) < 1e-13);
    CHECK(std::abs(m1 - kPi / 2) < 1e-13);
  }

  TEST_CASE("monotone truncation") {
    const ZMatrix z = ZMatrix::real(0.3, 0.2, 0.1, 0.4);
    SeriesCtrl base;
    SeriesCtrl more;
    more.max_degree = 6000;
    more.tol = 1e-20;
    const auto a = fs(HGParams::half(), z, base);
    const auto b = fs(HGParams::half(), z, more);
    CHECK(std::abs(a.value - b.value) < 1e-14);
  }

  TEST_CASE("complex arguments agree with the conjugate point") {
    const ZMatrix z{{Complex(0.1, 0.2), Complex(0.05, -0.1), Complex(-0.2, 0.1), Complex(0.1, 0.05)}};
    ZMatrix zc;
    for (std::size_t k = 0; k < 4; ++k) zc[k] = std::conj(z[k]);
    CHECK(std::abs(fs_half(zc) - std::conj(fs_half(z))) < 1e-14);
    CHECK(std::abs(ft_half(zc) - std::conj(ft_half(z))) < 1e-14);
  }
}
