#include <random>

#include "support.hpp"

using namespace k3;

TEST_SUITE("domains_groups") {
  TEST_CASE("gaussian integers") {
    constexpr GaussInt a(1, 2), b(3, -1);
    static_assert(a * b == GaussInt(5, 5));
    static_assert(GaussInt(1, 1).divisible_by_1pi());
    static_assert(!GaussInt(1, 0).divisible_by_1pi());
    CHECK(exact_det(GaussMat4::identity()) == GaussInt(1));
  }

  TEST_CASE("unitarity is enforced") {
    GaussMat4 m = GaussMat4::identity();
    m(0, 0) = 2;
    CHECK(test::error_of([&] { GroupElem{m}; }) == ErrorCode::NotUnitary);
    const auto& j = i22();
    CHECK(j * j.adjoint() == GaussMat4::identity());
  }

  TEST_CASE("identity embedding") {
    const Embedding e = embed_group(GroupElem::identity());
    CHECK(e.wedge2 == GaussMat6::identity());
    CHECK(e.orthogonal);
    CHECK(e.integral);
  }

  TEST_CASE("scalar i flips the wedge square") {
    const GroupElem g = GroupElem::unit_diagonal(GaussInt(0, 1), GaussInt(0, 1));
    const Embedding e = embed_group(g);
    GaussMat6 minus;
    for (std::size_t k = 0; k < 6; ++k) minus(k, k) = -1;
    CHECK(e.wedge2 == minus);
    CHECK(e.det_wedge2 == e.detg * e.detg * e.detg);
  }

  TEST_CASE("translations") {
    const GroupElem g = GroupElem::translation(2, GaussInt(1, 1), -2);
    CHECK(g.in_level_1pi());
    const Embedding e = embed_group(g);
    CHECK(e.det_wedge2 == GaussInt(1));
    CHECK(e.orthogonal);
    std::mt19937_64 rng(12);
    const Tau t = random_domain_point(rng);
    const ActResult r = act(g, t);
    Tau b;
    b << 2.0, Complex(1, 1), Complex(1, -1), -2.0;
    CHECK((r.tau - (t + b)).norm() < 1e-14);
    CHECK(std::abs(r.cocycle - 1.0) == 0.0);
    CHECK((act(GroupElem::identity(), t).tau - t).norm() == 0.0);
  }

  TEST_CASE("sampled level elements") {
    const auto gs = sample_level_elements(20, 1);
    std::mt19937_64 rng(13);
    for (const auto& g : gs) {
      CHECK(g.in_level_1pi());
      CHECK(g.matrix() * i22() * g.matrix().adjoint() == i22());
      const Embedding e = embed_group(g);
      CHECK(e.det_wedge2 == e.detg * e.detg * e.detg);
      CHECK(e.orthogonal);
    }
    // act(gh, tau) = act(g, act(h, tau)).
    const Tau t = random_domain_point(rng);
    for (std::size_t k = 0; k + 1 < gs.size(); k += 4) {
      const Tau a = act(gs[k] * gs[k + 1], t).tau;
      const Tau b = act(gs[k], act(gs[k + 1], t).tau).tau;
      CHECK((a - b).norm() < 1e-12 * (1.0 + a.norm()));
    }
  }

  TEST_CASE("transpose compatibility") {
    std::mt19937_64 rng(14);
    const Tau t = random_domain_point(rng);
    for (const auto& g : sample_level_elements(5, 2)) {
      GaussMat4 bar;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) bar(i, j) = g.matrix()(i, j).conj();
      const Tau lhs = act(GroupElem(bar), t).tau.transpose();
      const Tau rhs = act(g, t.transpose()).tau;
      CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    }
  }

  TEST_CASE("theta transformation and automorphy factor") {
    std::mt19937_64 rng(15);
    const Tau t = random_domain_point(rng);
    test::check_report(verify_theta_transform(GroupElem::identity(), t));
    test::check_report(verify_theta_transform(GroupElem::translation(2, GaussInt(1, 1), 0), t));
    test::check_report(verify_theta_transform(GroupElem::lower_translation(0, GaussInt(1, -1), 2), t));
    for (const auto& g : sample_level_elements(3, 3)) test::check_report(verify_group(g, t));
  }
}
