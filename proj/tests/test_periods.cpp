#include <cmath>
#include <random>

#include "support.hpp"

using namespace k3;

namespace {

constexpr std::size_t k34 = static_cast<std::size_t>(PeriodIndex::P34);

Tau i_e2() {
  Tau t = Tau::Zero();
  t(0, 0) = t(1, 1) = kI;
  return t;
}

}  // namespace

TEST_SUITE("periods") {
  TEST_CASE("domain constants") {
    const auto& dc = DomainConstants::get();
    const Eigen::Matrix<Complex, 6, 6> h = dc.H.cast<Complex>();
    CHECK((dc.Q.adjoint() * h * dc.Q - h).norm() < 1e-14);
    const Eigen::Matrix<Complex, 6, 6> hp = dc.Hprime.cast<Complex>();
    CHECK((dc.Q.transpose() * h * dc.Q - hp).norm() < 1e-14);
    CHECK((dc.Q.transpose() * hp * dc.Q - h).norm() < 1e-14);
  }

  TEST_CASE("plucker vector of i E2") {
    Vec6 expect;
    expect << -1.0, 0.0, kI, -kI, 0.0, 1.0;
    CHECK((plucker_v(i_e2()) - expect).norm() == 0.0);
  }

  TEST_CASE("domain membership") {
    CHECK(d_membership(i_e2()).in_d);
    CHECK_FALSE(d_membership(Tau(-i_e2())).in_d);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
      const Tau t = random_domain_point(rng);
      const Vec6 v = plucker_v(t);
      CHECK(std::abs(v(0) * v(5) - v(1) * v(4) + v(2) * v(3)) < 1e-13);
      CHECK(dh_membership(jd(t)).in_dh);
      CHECK((tau_of(jd(t)) - t).norm() < 1e-12);
      CHECK((tau_of(Complex(0.3, -2.0) * jd(t)) - t).norm() < 1e-12);
    }
  }

  TEST_CASE("tau of a diagonal period vector") {
    Vec6 w = jd(i_e2());
    w(1) = w(4) = 0.0;
    const Tau t = tau_of(w);
    CHECK(std::abs(t(0, 1)) == 0.0);
    CHECK(std::abs(t(0, 0) - w(2) / w(5)) == 0.0);
    CHECK(std::abs(t(1, 1) + w(3) / w(5)) == 0.0);
  }

  TEST_CASE("period squares") {
    const ZMatrix z = ZMatrix::real(0.625, 0.0625, 0.0625, 0.625);
    const PeriodSquares ps = period_squares(z);
    const Complex f = fs_half(z);
    CHECK(std::abs(ps.omega_sq[k34] / (4.0 * std::pow(kPi, 4) * f * f) - 1.0) < 1e-14);
    CHECK(ps.ratio_spread < 1e-8);
    const Vec6 w = resolve_signs(ps.omega_sq).omega;
    const auto& h = DomainConstants::get().H;
    CHECK(std::abs((w.transpose() * h.cast<Complex>() * w)(0)) < 1e-8 * w.squaredNorm());
    CHECK(test::error_of([] { period_squares(ZMatrix::real(0.05, 0.02, 0.03, 0.04)); }) ==
          ErrorCode::CoordsOutOfDomain);
  }

  TEST_CASE("sign resolution") {
    const auto ps = period_squares(ZMatrix::real(0.625, 0.0625, 0.0625, 0.625));
    const SignResolution sr = resolve_signs(ps.omega_sq);
    CHECK(!sr.survivors.empty());
    CHECK(sr.survivors.size() <= 4);
    CHECK(dh_membership(sr.omega).in_dh);
    auto broken = ps.omega_sq;
    broken[0] *= 3.0;
    CHECK(test::error_of([&] { resolve_signs(broken); }) == ErrorCode::NoAdmissibleSigns);
  }

  TEST_CASE("degeneration toward the product locus") {
    // omega14/omega34 approaches omega_A/omega_B linearly in eps.
    const double z1 = 0.6, z4 = 0.6;
    const Complex wb = kPi * f_half(z1);
    const Complex tau1 = kI * kPi * f_half(1.0 - z1) / wb;
    auto deviation = [&](double eps) {
      const auto ps = period_squares(ZMatrix::real(z1, eps, eps, z4));
      const Vec6 w = resolve_signs(ps.omega_sq).omega;
      CHECK(std::abs(w(1) / w(5)) < 100 * std::sqrt(eps));
      CHECK(std::abs(w(4) / w(5)) < 100 * std::sqrt(eps));
      CHECK(std::abs(w(5) / (2.0 * wb * wb) - 1.0) < 10 * eps);
      return std::abs(w(2) / w(5) - tau1) / std::abs(tau1);
    };
    const double d4 = deviation(1e-4), d6 = deviation(1e-6);
    CHECK(d6 < 1e-6);
    CHECK(d4 / d6 == doctest::Approx(100.0).epsilon(0.01));
  }
}
