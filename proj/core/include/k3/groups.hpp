#pragma once

// The unitary group U_22(Z[i]) acting on the type I_22 domain, its
// wedge-square image in the orthogonal group of H, and the automorphy factor.
// Group elements are exact; nothing here rounds.

#include <array>
#include <cstdint>
#include <vector>

#include "k3/periods.hpp"

namespace k3 {

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  constexpr GaussInt conj() const { return {re, -im}; }
  constexpr bool is_zero() const { return re == 0 && im == 0; }
  /// Divisible by 1 + i, i.e. re + im even.
  constexpr bool divisible_by_1pi() const { return ((re + im) & 1) == 0; }
  Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }

  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr bool operator==(GaussInt a, GaussInt b) { return a.re == b.re && a.im == b.im; }
  GaussInt& operator+=(GaussInt b) { return *this = *this + b; }
  GaussInt& operator-=(GaussInt b) { return *this = *this - b; }
};

/// Square matrix over Z[i], row-major.
template <std::size_t N>
struct GaussMatrix {
  std::array<GaussInt, N * N> a{};

  GaussInt& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
  const GaussInt& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

  static GaussMatrix identity() {
    GaussMatrix m;
    for (std::size_t k = 0; k < N; ++k) m(k, k) = 1;
    return m;
  }
  GaussMatrix adjoint() const {
    GaussMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = (*this)(j, i).conj();
    return m;
  }
  GaussMatrix transpose() const {
    GaussMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = (*this)(j, i);
    return m;
  }
  friend GaussMatrix operator*(const GaussMatrix& x, const GaussMatrix& y) {
    GaussMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < N; ++j) m(i, j) += x(i, k) * y(k, j);
    return m;
  }
  friend bool operator==(const GaussMatrix& x, const GaussMatrix& y) { return x.a == y.a; }
};

using GaussMat4 = GaussMatrix<4>;
using GaussMat6 = GaussMatrix<6>;

/// Exact determinant by permutation expansion.
template <std::size_t N>
GaussInt exact_det(const GaussMatrix<N>& m);

/// I22 = [[0, -E2], [E2, 0]].
const GaussMat4& i22();

class GroupElem {
 public:
  /// Throws NotUnitary unless g I22 g* = I22.
  explicit GroupElem(const GaussMat4& g);

  static GroupElem identity();
  /// [[E, B], [0, E]] with B Hermitian.
  static GroupElem translation(GaussInt b11, GaussInt b12, GaussInt b22);
  /// I22 [[E, B], [0, E]] I22^-1 = [[E, 0], [-B, E]].
  static GroupElem lower_translation(GaussInt b11, GaussInt b12, GaussInt b22);
  /// diag(u1, u2, u1, u2) with units u1, u2 in {1, i, -1, -i}.
  static GroupElem unit_diagonal(GaussInt u1, GaussInt u2);

  const GaussMat4& matrix() const { return g_; }
  GaussInt det() const;
  /// g = E4 mod (1 + i).
  bool in_level_1pi() const;

  friend GroupElem operator*(const GroupElem& a, const GroupElem& b) { return GroupElem(a.g_ * b.g_); }

 private:
  GaussMat4 g_;
};

/// Deterministic sample of level-(1+i) elements: products of translations,
/// lower translations and unit diagonals drawn from a seeded generator.
std::vector<GroupElem> sample_level_elements(std::size_t count, std::uint64_t seed);

struct Embedding {
  GaussMat6 wedge2;   ///< 2x2 minors, lexicographic row/column pairs
  GaussMat6 rg;       ///< sqrt(det g) Q (wedge2) Q^-1, integral; defined up to sign
  GaussInt detg;      ///< 1 or -1
  GaussInt det_wedge2;
  bool orthogonal = false;  ///< t(R) H R = H exactly
  bool integral = false;    ///< R has rational-integer entries
};

/// Throws PreconditionError unless det g = +-1 (the only determinants whose
/// square root keeps R_g integral).
Embedding embed_group(const GroupElem& g);

struct ActResult {
  Tau tau;
  Complex cocycle;  ///< det(g21 tau + g22)
};

/// (g11 tau + g12)(g21 tau + g22)^-1. SingularDenominator if not invertible,
/// NotInDomain if the image leaves the domain.
ActResult act(const GroupElem& g, const Tau& tau);

}  // namespace k3
