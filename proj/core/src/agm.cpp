#include "k3/agm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "k3/error.hpp"

namespace k3 {

namespace {

constexpr std::size_t kMaxPreSteps = 20;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_ordered(const MeanState& c) {
  if (!c.weakly_ordered()) fail(ErrorCode::OrderViolation, "mean state must satisfy c1 >= c2 >= c3 >= c4 > 0");
}

void require_strict(const MeanState& c) {
  if (!c.strictly_ordered()) fail(ErrorCode::OrderViolation, "mean state must satisfy c1 > c2 > c3 > c4 > 0");
}

bool inside(const ZMatrix& z, const SeriesCtrl& ctrl) {
  const double bound = std::min(kClosedFormRowSum, 1.0 - ctrl.margin);
  return z.first_sum() <= bound && z.second_sum() <= bound;
}

}  // namespace

const char* to_string(MeanKind kind) { return kind == MeanKind::D4 ? "d4" : "borchardt"; }

DQuantities DQuantities::of(const MeanState& c) {
  DQuantities d;
  d.d1 = c[0] + c[1] + c[2] + c[3];
  d.d2 = c[0] + c[1] - c[2] - c[3];
  d.d3 = c[0] - c[1] + c[2] - c[3];
  d.d4 = c[0] - c[1] - c[2] + c[3];
  d.q1 = d.d1 * d.d2 * d.d3 * d.d4;
  d.c0sq = d.q1 >= 0.0 ? (c[0] * c[0] - c[1] * c[1] - c[2] * c[2] + c[3] * c[3] - std::sqrt(d.q1)) / 2.0 : kNaN;
  return d;
}

MeanState mean_step(MeanKind kind, const MeanState& u) {
  require_ordered(u);
  const double u1 = u[0], u2 = u[1], u3 = u[2], u4 = u[3];
  MeanState m;
  m[0] = (u1 + u2 + u3 + u4) / 4.0;
  if (kind == MeanKind::D4) {
    m[1] = std::sqrt((u1 + u3) * (u2 + u4)) / 2.0;
    m[2] = std::sqrt((u1 + u2) * (u3 + u4)) / 2.0;
    m[3] = std::sqrt((u1 * u4 + u2 * u3) / 2.0);
  } else {
    m[1] = (std::sqrt(u1 * u2) + std::sqrt(u3 * u4)) / 2.0;
    m[2] = (std::sqrt(u1 * u3) + std::sqrt(u2 * u4)) / 2.0;
    m[3] = (std::sqrt(u1 * u4) + std::sqrt(u2 * u3)) / 2.0;
  }
  // The ordering is exact for both means; near the limit rounding can break it by an ulp.
  for (std::size_t k = 1; k < 4; ++k) m[k] = std::min(m[k], m[k - 1]);
  return m;
}

namespace {

// s = (c1^2 - c2^2)/(c3^2 - c4^2) and r = (c1^2 - c3^2)/(c2^2 - c4^2) from the
// state itself, NaN when a difference is at rounding level.
std::pair<double, double> direct_ratios(const MeanState& m) {
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * m[0];
  const double a = m[0] - m[1], b = m[2] - m[3], p = m[0] - m[2], q = m[1] - m[3];
  const double s = a > floor && b > floor ? a * (m[0] + m[1]) / (b * (m[2] + m[3])) : kNaN;
  const double r = p > floor && q > floor ? p * (m[0] + m[2]) / (q * (m[1] + m[3])) : kNaN;
  return {s, r};
}

// One step of the D4 ratio recurrence: f(x, y) = (x/y + 2 + y/x)/4.
double ratio_step(double x, double y) { return 1.0 + (x - y) * (x - y) / (4.0 * x * y); }

std::pair<double, double> d4_next_ratios(const std::pair<double, double>& cur, const MeanState& c) {
  const double t = (c[0] + c[1]) / (c[2] + c[3]);
  const double u = (c[0] + c[2]) / (c[1] + c[3]);
  return {std::isnan(cur.first) ? kNaN : ratio_step(cur.first, t), std::isnan(cur.second) ? kNaN : ratio_step(cur.second, u)};
}

}  // namespace

IterResult iterate_mean(MeanKind kind, const MeanState& c, double tol, std::size_t maxit) {
  if (!(tol > 0.0)) fail(ErrorCode::PreconditionError, "tol must be positive");
  require_ordered(c);
  IterResult r;
  MeanState cur = c;
  r.trace.states.push_back(cur);
  r.trace.gaps.push_back(cur[0] - cur[3]);
  auto ratios = direct_ratios(cur);
  r.trace.ratio_a.push_back(ratios.first);
  r.trace.ratio_b.push_back(ratios.second);
  while (!(cur[0] - cur[3] < tol * cur[0])) {
    if (r.iterations == maxit) fail(ErrorCode::NoConvergence, "mean iteration did not converge");
    const MeanState next = mean_step(kind, cur);
    ratios = kind == MeanKind::D4 ? d4_next_ratios(ratios, cur) : direct_ratios(next);
    r.trace.ratio_a.push_back(ratios.first);
    r.trace.ratio_b.push_back(ratios.second);
    cur = next;
    ++r.iterations;
    r.trace.states.push_back(cur);
    r.trace.gaps.push_back(cur[0] - cur[3]);
  }
  r.limit = cur[0];

  if (kind == MeanKind::D4) {
    constexpr std::size_t kMaxSettle = 16;
    const double settled = 4.0 * std::numeric_limits<double>::epsilon();
    while (r.trace.settle_steps < kMaxSettle &&
           (std::abs(ratios.first - 1.0) > settled || std::abs(ratios.second - 1.0) > settled)) {
      ratios = d4_next_ratios(ratios, cur);
      ++r.trace.settle_steps;
    }
    r.trace.settled_ratio_a = ratios.first;
    r.trace.settled_ratio_b = ratios.second;
  }

  // Rate diagnostics over gaps well above rounding.
  const auto& g = r.trace.gaps;
  const double noise = 1e-11 * c[0];
  for (std::size_t n = 0; n + 1 < g.size(); ++n) {
    if (g[n] > noise && g[n + 1] > noise) r.trace.rate_constant = std::max(r.trace.rate_constant, g[n + 1] / (g[n] * g[n]));
  }
  for (std::size_t n = 0; n + 2 < g.size(); ++n) {
    if (g[n] > noise && g[n + 1] > noise && g[n + 2] > noise && g[n + 1] < g[n]) {
      r.trace.rate_exponent = std::log(g[n + 2] / g[n + 1]) / std::log(g[n + 1] / g[n]);
    }
  }
  return r;
}

ZMatrix d4_z(const MeanState& c) {
  const double s1 = c[0] * c[0], s2 = c[1] * c[1], s3 = c[2] * c[2], s4 = c[3] * c[3];
  return ZMatrix::real(1.0 - (s3 - s4) / (s1 - s2), 0.0, 1.0 - s1 * (s3 - s4) / (s3 * (s1 - s2)), 1.0 - s4 / s3);
}

ZMatrix d4_w(const MeanState& c) {
  const double s1 = c[0] * c[0], s2 = c[1] * c[1], s3 = c[2] * c[2], s4 = c[3] * c[3];
  return ZMatrix::real(1.0 - s4 / s2, 1.0 - s1 * (s2 - s4) / (s2 * (s1 - s3)), 0.0, 1.0 - (s2 - s4) / (s1 - s3));
}

namespace {

struct BorchardtRatios {
  double r13;  ///< (sqrt(d1 d3) - sqrt(d2 d4)) / (sqrt(d1 d3) + sqrt(d2 d4))
  double r12;  ///< (sqrt(d1 d2) - sqrt(d3 d4)) / (sqrt(d1 d2) + sqrt(d3 d4))
};

BorchardtRatios borchardt_ratios(const MeanState& c) {
  const auto d = DQuantities::of(c);
  if (!(d.d4 >= 0.0)) fail(ErrorCode::PreconditionError, "Borchardt formula needs c1 - c2 - c3 + c4 >= 0");
  const double a13 = std::sqrt(d.d1 * d.d3), b24 = std::sqrt(d.d2 * d.d4);
  const double a12 = std::sqrt(d.d1 * d.d2), b34 = std::sqrt(d.d3 * d.d4);
  return {(a13 - b24) / (a13 + b24), (a12 - b34) / (a12 + b34)};
}

}  // namespace

ZMatrix borchardt_z(const MeanState& c) {
  const auto r = borchardt_ratios(c);
  return ZMatrix::real(1.0 - c[3] / c[1] * r.r13, 1.0 - c[0] / c[1] * r.r12, 1.0 - c[0] / c[2] * r.r13,
                       1.0 - c[3] / c[2] * r.r12);
}

ZMatrix borchardt_w(const MeanState& c) {
  const auto r = borchardt_ratios(c);
  return ZMatrix::real(1.0 - c[3] / c[1] / r.r13, 1.0 - c[0] / c[1] / r.r12, 1.0 - c[0] / c[2] / r.r13,
                       1.0 - c[3] / c[2] / r.r12);
}

LimitFormula limit_formula(MeanKind kind, const MeanState& c, const SeriesCtrl& ctrl) {
  require_strict(c);
  LimitFormula out;
  MeanState cur = c;
  for (std::size_t step = 0;; ++step) {
    bool ok = cur.strictly_ordered();
    if (ok && kind == MeanKind::Borchardt) ok = DQuantities::of(cur).d4 > 0.0;
    if (ok) {
      out.z = kind == MeanKind::D4 ? d4_z(cur) : borchardt_z(cur);
      out.w = kind == MeanKind::D4 ? d4_w(cur) : borchardt_w(cur);
      ok = inside(out.z, ctrl) && inside(out.w, ctrl);
    }
    if (ok) break;
    if (step == kMaxPreSteps) fail(ErrorCode::PreIterationExhausted, "closed-form arguments stay outside the polydisc");
    cur = mean_step(kind, cur);
    out.pre_steps = step + 1;
  }
  out.state = cur;

  const auto fz = fs(HGParams::half(), out.z, ctrl);
  const auto fw = fs(HGParams::half(), out.w, ctrl);
  out.degree_z = fz.degree;
  out.degree_w = fw.degree;
  const double c1 = cur[0], c2 = cur[1], c3 = cur[2], c4 = cur[3];
  if (kind == MeanKind::D4) {
    out.value_z = std::sqrt((c1 * c1 - c2 * c2) / (c3 * c3 - c4 * c4)) * c3 / fz.value.real();
    out.value_w = std::sqrt((c1 * c1 - c3 * c3) / (c2 * c2 - c4 * c4)) * c2 / fw.value.real();
  } else {
    const auto d = DQuantities::of(cur);
    const double num = 4.0 * std::sqrt(c2 * c3 * (c1 * c2 - c3 * c4) * (c1 * c3 - c2 * c4));
    const double a12 = std::sqrt(d.d1 * d.d2), b34 = std::sqrt(d.d3 * d.d4);
    const double a13 = std::sqrt(d.d1 * d.d3), b24 = std::sqrt(d.d2 * d.d4);
    out.value_z = num / ((a12 - b34) * (a13 - b24)) / fz.value.real();
    out.value_w = num / ((a12 + b34) * (a13 + b24)) / fw.value.real();
  }
  return out;
}

ClassicalAgm classical_agm(double c1, double c2, double tol) {
  if (!(c1 >= c2 && c2 > 0.0)) fail(ErrorCode::OrderViolation, "classical AGM needs c1 >= c2 > 0");
  ClassicalAgm r;
  double a = c1, b = c2;
  while (a - b > tol * a) {
    const double an = (a + b) / 2.0;
    b = std::sqrt(a * b);
    a = an;
    if (++r.iterations > 200) fail(ErrorCode::NoConvergence, "classical AGM did not converge");
  }
  r.limit = a;
  const double ratio = c2 / c1;
  r.formula_value = c1 / f_half(1.0 - ratio * ratio).real();
  return r;
}

}  // namespace k3
