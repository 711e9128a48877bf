#include "k3/groups.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <random>

#include "k3/error.hpp"

namespace k3 {

template <std::size_t N>
GaussInt exact_det(const GaussMatrix<N>& m) {
  std::array<std::size_t, N> perm{};
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  GaussInt total;
  do {
    // Parity by counting inversions.
    int inv = 0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) inv += perm[i] > perm[j];
    GaussInt term = 1;
    for (std::size_t i = 0; i < N && !term.is_zero(); ++i) term = term * m(i, perm[i]);
    if (inv % 2 == 0) total += term;
    else total -= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

template GaussInt exact_det<4>(const GaussMatrix<4>&);
template GaussInt exact_det<6>(const GaussMatrix<6>&);

const GaussMat4& i22() {
  static const GaussMat4 m = [] {
    GaussMat4 r;
    r(0, 2) = -1;
    r(1, 3) = -1;
    r(2, 0) = 1;
    r(3, 1) = 1;
    return r;
  }();
  return m;
}

GroupElem::GroupElem(const GaussMat4& g) : g_(g) {
  if (!(g_ * i22() * g_.adjoint() == i22())) fail(ErrorCode::NotUnitary, "g I22 g* != I22");
}

GroupElem GroupElem::identity() { return GroupElem(GaussMat4::identity()); }

GroupElem GroupElem::translation(GaussInt b11, GaussInt b12, GaussInt b22) {
  GaussMat4 m = GaussMat4::identity();
  m(0, 2) = b11;
  m(0, 3) = b12;
  m(1, 2) = b12.conj();
  m(1, 3) = b22;
  return GroupElem(m);
}

GroupElem GroupElem::lower_translation(GaussInt b11, GaussInt b12, GaussInt b22) {
  GaussMat4 m = GaussMat4::identity();
  m(2, 0) = -b11;
  m(2, 1) = -b12;
  m(3, 0) = -b12.conj();
  m(3, 1) = -b22;
  return GroupElem(m);
}

GroupElem GroupElem::unit_diagonal(GaussInt u1, GaussInt u2) {
  GaussMat4 m;
  m(0, 0) = m(2, 2) = u1;
  m(1, 1) = m(3, 3) = u2;
  return GroupElem(m);
}

GaussInt GroupElem::det() const { return exact_det(g_); }

bool GroupElem::in_level_1pi() const {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const GaussInt d = g_(i, j) - GaussInt(i == j ? 1 : 0);
      if (!d.divisible_by_1pi()) return false;
    }
  return true;
}

std::vector<GroupElem> sample_level_elements(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-1, 1);
  std::uniform_int_distribution<int> kind(0, 2);
  const std::array<GaussInt, 4> units{GaussInt(1), GaussInt(0, 1), GaussInt(-1), GaussInt(0, -1)};
  std::uniform_int_distribution<std::size_t> unit(0, 3);

  // Hermitian B = 0 mod (1+i): even real diagonal, off-diagonal (1+i) w.
  auto draw_b = [&] {
    const GaussInt b11 = 2 * small(rng);
    const GaussInt b22 = 2 * small(rng);
    const GaussInt b12 = GaussInt(1, 1) * GaussInt(small(rng), small(rng));
    return std::array<GaussInt, 3>{b11, b12, b22};
  };

  std::vector<GroupElem> out;
  out.reserve(count);
  while (out.size() < count) {
    GroupElem g = GroupElem::identity();
    const int factors = 1 + static_cast<int>(out.size() % 3);
    for (int f = 0; f < factors; ++f) {
      const auto b = draw_b();
      switch (kind(rng)) {
        case 0: g = g * GroupElem::translation(b[0], b[1], b[2]); break;
        case 1: g = g * GroupElem::lower_translation(b[0], b[1], b[2]); break;
        default: g = g * GroupElem::unit_diagonal(units[unit(rng)], units[unit(rng)]); break;
      }
    }
    out.push_back(g);
  }
  return out;
}

namespace {

constexpr std::array<std::array<std::size_t, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// 2Q, which has entries in Z[i]; Q^-1 = Q* since Q is unitary.
const GaussMat6& two_q() {
  static const GaussMat6 m = [] {
    GaussMat6 r;
    for (std::size_t k = 0; k < 6; ++k) r(k, k) = 2;
    r(1, 1) = r(4, 4) = GaussInt(1, 1);
    r(1, 4) = r(4, 1) = GaussInt(-1, 1);
    return r;
  }();
  return m;
}

}  // namespace

Embedding embed_group(const GroupElem& g) {
  Embedding e;
  e.detg = g.det();
  const GaussInt sqrt_det = e.detg == GaussInt(1) ? GaussInt(1) : e.detg == GaussInt(-1) ? GaussInt(0, 1) : GaussInt(0);
  if (sqrt_det.is_zero()) fail(ErrorCode::PreconditionError, "embed_group needs det g = +-1");

  const GaussMat4& m = g.matrix();
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) {
      const auto [i, j] = kPairs[r];
      const auto [k, l] = kPairs[c];
      e.wedge2(r, c) = m(i, k) * m(j, l) - m(i, l) * m(j, k);
    }
  e.det_wedge2 = exact_det(e.wedge2);

  // R = sqrt(det g) (2Q) wedge2 (2Q)* / 4, all in Z[i] before the division.
  const GaussMat6 scaled = two_q() * e.wedge2 * two_q().adjoint();
  e.integral = true;
  for (std::size_t k = 0; k < 36; ++k) {
    GaussInt v = sqrt_det * scaled.a[k];
    if (v.re % 4 != 0 || v.im % 4 != 0) {
      e.integral = false;
      fail(ErrorCode::NotUnitary, "R_g is not integral");
    }
    v = GaussInt(v.re / 4, v.im / 4);
    if (v.im != 0) e.integral = false;
    e.rg.a[k] = v;
  }

  GaussMat6 h;
  h(0, 5) = h(5, 0) = -1;
  h(1, 1) = -1;
  h(2, 3) = h(3, 2) = -1;
  h(4, 4) = -1;
  e.orthogonal = e.rg.transpose() * h * e.rg == h;
  return e;
}

ActResult act(const GroupElem& g, const Tau& tau) {
  const GaussMat4& m = g.matrix();
  Tau g11, g12, g21, g22;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      g11(ii, jj) = m(i, j).to_complex();
      g12(ii, jj) = m(i, j + 2).to_complex();
      g21(ii, jj) = m(i + 2, j).to_complex();
      g22(ii, jj) = m(i + 2, j + 2).to_complex();
    }
  const Tau num = g11 * tau + g12;
  const Tau den = g21 * tau + g22;
  ActResult r;
  r.cocycle = den.determinant();
  const double scale = std::max(1.0, den.cwiseAbs().maxCoeff());
  if (std::abs(r.cocycle) <= 1e-14 * scale * scale) fail(ErrorCode::SingularDenominator, "g21 tau + g22 is singular");
  r.tau = num * den.inverse();
  if (!(hermitian_part_min_eig(r.tau) > 0.0)) fail(ErrorCode::NotInDomain, "image of tau left the domain");
  return r;
}

}  // namespace k3
