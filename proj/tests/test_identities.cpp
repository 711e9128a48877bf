#include <cmath>
#include <random>

#include "support.hpp"

using namespace k3;

TEST_SUITE("identities") {
  TEST_CASE("report bookkeeping") {
    VerifyReport r;
    r.add("exact", 1.0, 1.0, 0.0, Basis::Absolute);
    CHECK(r.pass);
    r.add("nan", Complex(std::nan("")), 0.0, 1.0, Basis::Absolute);
    CHECK_FALSE(r.pass);
    VerifyReport lb;
    lb.add("rate", 2.0, 0.0, 1.9, Basis::LowerBound);
    CHECK(lb.pass);
    lb.add("rate", 1.8, 0.0, 1.9, Basis::LowerBound);
    CHECK_FALSE(lb.pass);
    VerifyReport q;
    q.require("flag", false);
    CHECK_FALSE(q.pass);
  }

  TEST_CASE("jacobi") {
    for (double l : {0.1, 0.5, 0.9}) test::check_report(verify_jacobi(l));
    CHECK(std::abs(kI * f_half(0.5) / f_half(0.5) - kI) == 0.0);
  }

  TEST_CASE("gauss transform") {
    // At z = 0 the left argument is 1, where the series diverges.
    CHECK(test::error_of([] { verify_gauss_transform(0.0); }) == ErrorCode::DomainError);
    test::check_report(verify_gauss_transform(0.3));
    test::check_report(verify_gauss_transform(0.8));
  }

  TEST_CASE("factorization and series-integral") {
    test::check_report(verify_factorization(ZMatrix::real(0.4, 0.0, 0.0, 0.7)));
    test::check_report(verify_series_integral(ZMatrix::real(0.1, 0.05, 0.02, 0.08)));
  }

  TEST_CASE("thomae near the validated point") {
    const VerifyReport r = verify_thomae(ZMatrix::real(0.625, 0.0625, 0.0625, 0.625));
    test::check_report(r);
    CHECK(r.residuals.size() >= 20);
    CHECK(test::error_of([] { verify_thomae(ZMatrix::real(0.9, 0.2, 0.3, 0.5)); }) == ErrorCode::CoordsOutOfDomain);
  }

  TEST_CASE("degeneration") { test::check_report(verify_degeneration(0.6, 0.6, 1e-4)); }

  TEST_CASE("functional equations") {
    test::check_report(verify_fe(FeKind::FE1, MeanState{{8, 4, 2, 1}}));
    MeanState c{{16, 8, 4, 1}};
    while (!(c[0] - c[1] - c[2] + c[3] > 0.0)) c = mean_step(MeanKind::Borchardt, c);
    c = mean_step(MeanKind::Borchardt, c);
    test::check_report(verify_fe(FeKind::FE2, c));
    CHECK(test::error_of([] { verify_fe(FeKind::FE1, MeanState{{1, 1, 1, 1}}); }) == ErrorCode::OrderViolation);
  }

  TEST_CASE("reports are deterministic") {
    const MeanState c{{8, 4, 2, 1}};
    const VerifyReport a = verify_agm_limit(MeanKind::Borchardt, c), b = verify_agm_limit(MeanKind::Borchardt, c);
    REQUIRE(a.residuals.size() == b.residuals.size());
    for (std::size_t k = 0; k < a.residuals.size(); ++k) {
      CHECK(a.residuals[k].lhs == b.residuals[k].lhs);
      CHECK(a.residuals[k].rel == b.residuals[k].rel);
    }
  }

  TEST_CASE("samplers") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
      CHECK(d_membership(random_domain_point(rng)).in_d);
      const Tau s = random_siegel_point(rng);
      CHECK((s - s.transpose()).norm() == 0.0);
      const ZMatrix z = random_real_z(rng, 0.5);
      CHECK(z.first_sum() <= 0.5);
      CHECK(z.second_sum() <= 0.5);
      const MeanState c = random_state(rng);
      CHECK(c.strictly_ordered());
      CHECK(c[0] == 1.0);
    }
  }
}
