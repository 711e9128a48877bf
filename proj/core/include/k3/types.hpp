#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace k3 {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

/// Four complex arguments arranged as the 2x2 matrix [[z1, z3], [z2, z4]].
/// Index 0..3 holds z1..z4.
struct ZMatrix {
  std::array<Complex, 4> z{};

  constexpr Complex& operator[](std::size_t k) { return z[k]; }
  constexpr const Complex& operator[](std::size_t k) const { return z[k]; }

  /// |z1|+|z2| and |z3|+|z4|: the two row sums that bound the polydisc.
  double first_sum() const { return std::abs(z[0]) + std::abs(z[1]); }
  double second_sum() const { return std::abs(z[2]) + std::abs(z[3]); }

  bool in_series_domain() const { return first_sum() < 1.0 && second_sum() < 1.0; }

  static ZMatrix real(double z1, double z2, double z3, double z4) { return {{z1, z2, z3, z4}}; }
};

/// Four positive reals c1 > c2 > c3 > c4 > 0 fed to the mean iterations.
struct MeanState {
  std::array<double, 4> c{};

  constexpr double& operator[](std::size_t k) { return c[k]; }
  constexpr const double& operator[](std::size_t k) const { return c[k]; }

  bool strictly_ordered() const { return c[0] > c[1] && c[1] > c[2] && c[2] > c[3] && c[3] > 0.0; }
  bool weakly_ordered() const { return c[0] >= c[1] && c[1] >= c[2] && c[2] >= c[3] && c[3] > 0.0; }
};

}  // namespace k3

namespace k3 {

/// The six transcendental periods, in the order (12, 13, 14, 23, 24, 34).
enum class PeriodIndex { P12 = 0, P13, P14, P23, P24, P34 };

inline constexpr std::array<PeriodIndex, 6> kAllPeriods{PeriodIndex::P12, PeriodIndex::P13, PeriodIndex::P14,
                                                        PeriodIndex::P23, PeriodIndex::P24, PeriodIndex::P34};

constexpr const char* label(PeriodIndex ij) {
  constexpr const char* names[] = {"12", "13", "14", "23", "24", "34"};
  return names[static_cast<int>(ij)];
}

/// F_T carries the periods 13 and 24; the other four come from F_S.
constexpr bool uses_ft(PeriodIndex ij) { return ij == PeriodIndex::P13 || ij == PeriodIndex::P24; }

}  // namespace k3
