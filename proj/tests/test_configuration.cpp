#include <cmath>
#include <random>

#include <Eigen/LU>

#include "support.hpp"

using namespace k3;

namespace {

Config36 reference_point() {
  // Columns (1, p, p^2) with p = -3..3 minus 0: every minor is a Vandermonde determinant.
  const double p[] = {-3, -2, -1, 1, 2, 3};
  Config36 x;
  for (int j = 0; j < 6; ++j) x.col(j) << 1.0, p[j], p[j] * p[j];
  return x;
}

double max_diff(const ZMatrix& a, const ZMatrix& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace

TEST_SUITE("configuration") {
  TEST_CASE("partitions") {
    CHECK(Partition33::all().size() == 10);
    CHECK(Partition33::of(2, 4, 6) == Partition33::of(1, 3, 5));
    CHECK(Partition33::of(5, 3, 1).label() == "135");
    int standard = 0;
    for (const auto& p : Partition33::all()) standard += p.is_standard();
    CHECK(standard == 5);
  }

  TEST_CASE("repeated columns") {
    Config36 x = Config36::Zero();
    for (int j = 0; j < 6; ++j) x(j % 3, j) = 1.0;
    const BracketSet b = brackets(x);
    CHECK(b.minor(1, 2, 3) == Complex(1.0));
    CHECK(b.minor(1, 2, 4) == Complex(0.0));
    CHECK_FALSE(b.generic);
  }

  TEST_CASE("nu34 at zero") {
    const Config36 x = nu(PeriodIndex::P34, ZMatrix{});
    Eigen::Matrix<double, 3, 6> expect;
    expect << 1, 1, 0, 0, 1, 1, 0, -1, 1, 0, 0, 0, 0, 0, 0, 1, -1, 0;
    CHECK((x.real() - expect).norm() == 0.0);
    CHECK(brackets(x).pair(Partition33::of(1, 3, 5)) == Complex(1.0));
  }

  TEST_CASE("nu variable columns") {
    const ZMatrix z = ZMatrix::real(0.1, 0.2, 0.3, 0.4);
    for (PeriodIndex ij : kAllPeriods) {
      const Config36 a = nu(ij, z), b = nu(ij, ZMatrix{});
      int fixed = 0;
      for (int j = 0; j < 6; ++j) fixed += (a.col(j) - b.col(j)).norm() == 0.0;
      CHECK(fixed == 4);
      const auto [c1, c2] = nu_variable_columns(ij);
      CHECK(a(1, c1) == Complex(-0.1));
      CHECK(a(2, c2) == Complex(-0.4));
    }
  }

  TEST_CASE("reference point is generic and pairs are products") {
    const Config36 x = reference_point();
    const BracketSet b = brackets(x);
    CHECK(b.generic);
    CHECK(b.minor(1, 2, 3) == Complex(2.0));  // (-2+3)(-1+3)(-1+2)
    for (const auto& p : Partition33::all()) {
      const auto& j = p.key();
      const auto jc = p.complement_of_key();
      CHECK(b.pair(p) == b.minor(j[0], j[1], j[2]) * b.minor(jc[0], jc[1], jc[2]));
    }
    CHECK(b.minor(2, 1, 3) == -b.minor(1, 2, 3));
  }

  TEST_CASE("bracket vector is projectively invariant") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      const Config36 x = random_config(rng);
      const Config36 g = random_config(rng);
      const Mat3 m = g.leftCols<3>();
      Eigen::Matrix<Complex, 6, 1> lambda = random_config(rng).row(0).transpose();
      const Config36 y = m * x * lambda.asDiagonal();
      CHECK(projective_distance(brackets(y).pairs, brackets(x).pairs) < 1e-12);
    }
  }

  TEST_CASE("association") {
    Config36 e;
    e << Mat3::Identity(), Mat3::Identity();
    CHECK((association(e) - e).norm() == 0.0);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const Config36 x = random_config(rng);
      CHECK(projective_distance(brackets(association(x)).pairs, brackets(x).pairs) < 1e-10);
    }
    Config36 singular = e;
    singular.col(2) = singular.col(0);
    CHECK(test::error_of([&] { association(singular); }) == ErrorCode::SingularBlock);
  }

  TEST_CASE("normal form round trips") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const ZMatrix z = random_real_z(rng, 0.8);
      for (PeriodIndex ij : kAllPeriods) CHECK(max_diff(normal_form_coords(nu(ij, z), ij), z) < 1e-12);
      const Config36 x = nu(PeriodIndex::P34, z);
      const ZMatrix z12 = normal_form_coords(x, PeriodIndex::P12);
      CHECK(projective_distance(brackets(nu(PeriodIndex::P12, z12)).pairs, brackets(x).pairs) < 1e-10);
      // Invariance under the group action.
      const Mat3 g = random_config(rng).leftCols<3>();
      Eigen::Matrix<Complex, 6, 1> lambda;
      lambda << 2.0, -1.0, 0.5, Complex(1, 1), 3.0, -0.25;
      CHECK(max_diff(normal_form_coords(g * x * lambda.asDiagonal(), PeriodIndex::P34), z) < 1e-10);
    }
  }

  TEST_CASE("invariant labels") {
    const Config36 x = reference_point();
    CHECK(test::error_of([&] { t_invariant(x, {1, 2, 3, 4, 5, 5}); }) == ErrorCode::BadLabels);
    CHECK(test::error_of([&] { curly_invariant(x, {1, 1, 2, 3}); }) == ErrorCode::BadLabels);
    const std::array<int, 4> lab{1, 6, 2, 3};
    CHECK(std::abs(curly_from_pairs(brackets(x).pairs, lab) - curly_invariant(x, lab)) <
          1e-10 * std::abs(curly_invariant(x, lab)));
  }

  TEST_CASE("association identities and plucker inversion") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
      const Config36 x = random_config(rng);
      test::check_report(verify_configuration(x, random_real_z(rng, 0.8)));
    }
    test::check_report(verify_configuration(reference_point(), ZMatrix::real(0.1, 0.2, 0.3, 0.4)));
  }

  TEST_CASE("preimage d4") {
    const MeanState c{{8, 4, 2, 1}};
    const auto pre = preimage_d4(c);
    for (const auto& x : pre) CHECK(brackets(x).pair(Partition33::of(1, 2, 3)) == Complex(0.0));
    test::check_report(verify_preimage_d4(c));
    CHECK(test::error_of([] { preimage_d4(MeanState{{2, 2, 1, 0.5}}); }) == ErrorCode::OrderViolation);
    CHECK(test::error_of([] { preimage_d4(MeanState{{1, 1 - 1e-12, 0.5, 0.25}}); }) == ErrorCode::DegenerateInput);
  }

  TEST_CASE("kummer point") {
    const MeanState c{{8, 4, 2, 1}};
    const KummerPoint k = kummer_point(c);
    CHECK(k.q1 == 2025.0);  // 15 * 9 * 5 * 3
    test::check_report(verify_kummer(c));
    CHECK(test::error_of([] { kummer_point(MeanState{{4, 3, 2, 1}}); }) == ErrorCode::PreconditionError);
  }
}
