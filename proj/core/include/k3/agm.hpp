#pragma once

// Four-term mean iterations (the D4 mean and Borchardt's mean), their
// convergence diagnostics, and closed forms of the common limit through F_S.

#include <cstddef>
#include <vector>

#include "k3/hypergeometric.hpp"
#include "k3/types.hpp"

namespace k3 {

enum class MeanKind { D4, Borchardt };

const char* to_string(MeanKind kind);

struct DQuantities {
  double d1 = 0, d2 = 0, d3 = 0, d4 = 0;
  double q1 = 0;
  double c0sq = 0;  ///< (c1^2 - c2^2 - c3^2 + c4^2 - sqrt(Q1))/2, NaN if Q1 < 0

  static DQuantities of(const MeanState& c);
};

/// One application of the mean map. OrderViolation unless c1 >= c2 >= c3 >= c4 > 0.
MeanState mean_step(MeanKind kind, const MeanState& u);

struct IterTrace {
  std::vector<MeanState> states;  ///< states[0] is the input
  std::vector<double> gaps;       ///< c1 - c4 per state
  /// s_n = (m1^2 - m2^2)/(m3^2 - m4^2) and r_n = (m1^2 - m3^2)/(m2^2 - m4^2)
  /// for states 0..n, NaN where unresolved. For the D4 mean they follow the
  /// recurrences s_{n+1} - 1 = (s_n - t_n)^2/(4 s_n t_n), t_n = (c1+c2)/(c3+c4),
  /// and r_{n+1} - 1 = (r_n - u_n)^2/(4 r_n u_n), u_n = (c1+c3)/(c2+c4), which
  /// need no differences of nearly equal numbers.
  std::vector<double> ratio_a;
  std::vector<double> ratio_b;
  /// D4 only: the recurrences continued at the final state (where the states
  /// no longer change in floating point) until both ratios settle.
  double settled_ratio_a = 0.0;
  double settled_ratio_b = 0.0;
  std::size_t settle_steps = 0;
  double rate_constant = 0.0;  ///< max gap_{n+1} / gap_n^2 over resolved gaps
  double rate_exponent = 0.0;  ///< log(g2/g1)/log(g1/g0) over the last resolved triple, 0 if none
};

struct IterResult {
  double limit = 0.0;
  std::size_t iterations = 0;
  IterTrace trace;
};

/// Iterate until c1 - c4 < tol c1. NoConvergence after maxit steps.
IterResult iterate_mean(MeanKind kind, const MeanState& c, double tol = 1e-12, std::size_t maxit = 64);

/// Arguments of F_S in the closed forms (the z and w matrices).
ZMatrix d4_z(const MeanState& c);
ZMatrix d4_w(const MeanState& c);
ZMatrix borchardt_z(const MeanState& c);
ZMatrix borchardt_w(const MeanState& c);

struct LimitFormula {
  double value_z = 0.0;
  double value_w = 0.0;
  ZMatrix z;
  ZMatrix w;
  MeanState state;            ///< state the formula was evaluated at
  std::size_t pre_steps = 0;  ///< mean steps applied before evaluation
  std::size_t degree_z = 0;
  std::size_t degree_w = 0;
};

/// Row-sum bound for the closed-form arguments. Mean steps shrink z and w, so
/// pre-iterating to this bound costs little and keeps F_S cheap.
inline constexpr double kClosedFormRowSum = 0.9;

/// Closed forms of the common limit. The input is pre-iterated (fewest steps,
/// at most 20) until the Borchardt sign condition holds and z, w have row sums
/// at most kClosedFormRowSum; PreIterationExhausted otherwise.
LimitFormula limit_formula(MeanKind kind, const MeanState& c, const SeriesCtrl& ctrl = {});

struct ClassicalAgm {
  double limit = 0.0;
  double formula_value = 0.0;  ///< c1 / F(1/2,1/2,1; 1 - (c2/c1)^2)
  std::size_t iterations = 0;
};

ClassicalAgm classical_agm(double c1, double c2, double tol = 1e-15);

}  // namespace k3
