#include "k3/configuration.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "k3/error.hpp"

namespace k3 {

namespace {

constexpr double kZeroRel = 1e-10;

// Keys (member containing 1) in canonical order of the 6-free display member.
constexpr std::array<std::array<int, 3>, 10> kKeys{{
    {1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5},
    {1, 4, 5}, {1, 5, 6}, {1, 4, 6}, {1, 3, 6}, {1, 2, 6},
}};

std::array<int, 3> complement(const std::array<int, 3>& j) {
  std::array<int, 3> out{};
  std::size_t n = 0;
  for (int k = 1; k <= 6; ++k)
    if (std::find(j.begin(), j.end(), k) == j.end()) out[n++] = k;
  return out;
}

// Sign of the permutation sorting three distinct values.
int sort_sign(int i, int j, int k) {
  int inversions = (i > j) + (i > k) + (j > k);
  return inversions % 2 == 0 ? 1 : -1;
}

std::size_t combo_index(int i, int j, int k) {
  // Lexicographic rank of a sorted triple in 1..6.
  std::size_t idx = 0;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 5; ++b)
      for (int c = b + 1; c <= 6; ++c) {
        if (a == i && b == j && c == k) return idx;
        ++idx;
      }
  fail(ErrorCode::BadLabels, "minor labels must be distinct values in 1..6");
}

Mat3 columns(const Config36& x, int i, int j, int k) {
  Mat3 m;
  m.col(0) = x.col(i - 1);
  m.col(1) = x.col(j - 1);
  m.col(2) = x.col(k - 1);
  return m;
}

void check_label(int v) {
  if (v < 1 || v > 6) fail(ErrorCode::BadLabels, "labels must lie in 1..6");
}

void check_distinct(std::initializer_list<int> labels) {
  std::array<bool, 7> seen{};
  for (int v : labels) {
    check_label(v);
    if (seen[static_cast<std::size_t>(v)]) fail(ErrorCode::BadLabels, "labels must be distinct");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace

Partition33 Partition33::at(std::size_t index) {
  if (index >= kCount) fail(ErrorCode::BadLabels, "partition index out of range");
  return Partition33(index, kKeys[index]);
}

Partition33 Partition33::of(int i, int j, int k) {
  check_distinct({i, j, k});
  std::array<int, 3> s{i, j, k};
  std::sort(s.begin(), s.end());
  if (s[0] != 1) s = complement(s);
  for (std::size_t n = 0; n < kCount; ++n)
    if (kKeys[n] == s) return Partition33(n, s);
  fail(ErrorCode::BadLabels, "not a (3,3)-partition");
}

const std::array<Partition33, Partition33::kCount>& Partition33::all() {
  static const auto table = [] {
    std::array<Partition33, kCount> out{at(0), at(1), at(2), at(3), at(4), at(5), at(6), at(7), at(8), at(9)};
    return out;
  }();
  return table;
}

std::array<int, 3> Partition33::display() const {
  return key_[2] == 6 ? complement(key_) : key_;
}

std::array<int, 3> Partition33::complement_of_key() const { return complement(key_); }

std::string Partition33::label() const {
  const auto d = display();
  return std::to_string(d[0]) + std::to_string(d[1]) + std::to_string(d[2]);
}

Complex minor_of(const Config36& x, int i, int j, int k) {
  check_distinct({i, j, k});
  return columns(x, i, j, k).determinant();
}

Complex BracketSet::minor(int i, int j, int k) const {
  check_distinct({i, j, k});
  std::array<int, 3> s{i, j, k};
  std::sort(s.begin(), s.end());
  return static_cast<double>(sort_sign(i, j, k)) * minors[combo_index(s[0], s[1], s[2])];
}

BracketSet brackets(const Config36& x) {
  BracketSet out;
  std::size_t n = 0;
  double largest = 0.0;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 5; ++b)
      for (int c = b + 1; c <= 6; ++c) {
        out.minors[n] = columns(x, a, b, c).determinant();
        largest = std::max(largest, std::abs(out.minors[n]));
        ++n;
      }
  out.generic = largest > 0.0;
  for (const auto& m : out.minors)
    if (std::abs(m) <= kZeroRel * largest) out.generic = false;
  for (const auto& p : Partition33::all()) {
    const auto& j = p.key();
    const auto jc = p.complement_of_key();
    out.pairs[p.index()] = out.minor(j[0], j[1], j[2]) * out.minor(jc[0], jc[1], jc[2]);
  }
  return out;
}

double projective_distance(const BracketVector& a, const BracketVector& b) {
  Complex ab{};
  double bb = 0.0;
  double aa = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ab += std::conj(b[k]) * a[k];
    bb += std::norm(b[k]);
    aa += std::norm(a[k]);
  }
  if (aa == 0.0) return bb == 0.0 ? 0.0 : 1.0;
  if (bb == 0.0) return 1.0;
  const Complex lambda = ab / bb;
  double rr = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) rr += std::norm(a[k] - lambda * b[k]);
  return std::sqrt(rr / aa);
}

BracketVector expand_standard(const std::array<Complex, 5>& s) {
  const Complex x123 = s[0], x124 = s[1], x125 = s[2], x134 = s[3], x135 = s[4];
  return {x123,
          x124,
          x125,
          x134,
          x135,
          -x123 + x124 - x125 - x134 + x135,  // 145
          x123 - x124 + x134,                 // 234 = 156
          -x123 - x125 + x135,                // 235 = 146
          -x123 - x134 + x135,                // 245 = 136
          x123 - x124 + x125};                // 345 = 126
}

// ---------------------------------------------------------------------------

Config36 nu(PeriodIndex ij, const ZMatrix& zm) {
  const Complex z1 = zm[0], z2 = zm[1], z3 = zm[2], z4 = zm[3];
  Config36 m;
  switch (ij) {
    case PeriodIndex::P12:
      m << 0.0, 1.0, 1.0, 1.0, 1.0, 0.0,
           1.0, -1.0, -z1, -z3, 0.0, 0.0,
           0.0, 0.0, -z2, -z4, -1.0, 1.0;
      break;
    case PeriodIndex::P13:
      m << 0.0, 0.0, 1.0, 1.0, 1.0, 1.0,
           0.0, 1.0, -1.0, -z1, -z3, 0.0,
           1.0, 0.0, -1.0, -z2, -z4, 0.0;
      break;
    case PeriodIndex::P14:
      m << 1.0, 0.0, 1.0, 0.0, 1.0, 1.0,
           -1.0, 1.0, -z1, 0.0, 0.0, -z3,
           0.0, 0.0, -z2, 1.0, -1.0, -z4;
      break;
    case PeriodIndex::P23:
      m << 1.0, 1.0, 0.0, 1.0, 1.0, 0.0,
           -z1, 0.0, 0.0, -z3, -1.0, 1.0,
           -z2, -1.0, 1.0, -z4, 0.0, 0.0;
      break;
    case PeriodIndex::P24:
      m << 1.0, 1.0, 1.0, 1.0, 0.0, 0.0,
           0.0, -z1, -z3, -1.0, 1.0, 0.0,
           0.0, -z2, -z4, -1.0, 0.0, 1.0;
      break;
    case PeriodIndex::P34:
      m << 1.0, 1.0, 0.0, 0.0, 1.0, 1.0,
           -z1, -1.0, 1.0, 0.0, 0.0, -z3,
           -z2, 0.0, 0.0, 1.0, -1.0, -z4;
      break;
  }
  return m;
}

std::pair<int, int> nu_variable_columns(PeriodIndex ij) {
  switch (ij) {
    case PeriodIndex::P12: return {2, 3};
    case PeriodIndex::P13: return {3, 4};
    case PeriodIndex::P14: return {2, 5};
    case PeriodIndex::P23: return {0, 3};
    case PeriodIndex::P24: return {1, 2};
    case PeriodIndex::P34: return {0, 5};
  }
  return {0, 5};
}

namespace {

// Matrix sending e1, e2, e3, (1,1,1) to multiples of the four given points.
Mat3 frame_basis(const Eigen::Matrix<Complex, 3, 4>& pts) {
  const Mat3 a = pts.leftCols<3>();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0 || std::abs(a.determinant()) <= kZeroRel * scale * scale * scale) {
    fail(ErrorCode::FrameDegenerate, "three frame columns are dependent");
  }
  const Eigen::Matrix<Complex, 3, 1> lambda = a.partialPivLu().solve(pts.col(3));
  for (int k = 0; k < 3; ++k) {
    if (std::abs(lambda(k)) <= kZeroRel * pts.col(3).norm() / a.col(k).norm()) {
      fail(ErrorCode::FrameDegenerate, "frame columns not in general position");
    }
  }
  return a * lambda.asDiagonal();
}

}  // namespace

ZMatrix normal_form_coords(const Config36& x, PeriodIndex ij) {
  const auto [ca, cb] = nu_variable_columns(ij);
  const Config36 ref = nu(ij, ZMatrix{});
  Eigen::Matrix<Complex, 3, 4> src, dst;
  int n = 0;
  for (int k = 0; k < 6; ++k) {
    if (k == ca || k == cb) continue;
    src.col(n) = x.col(k);
    dst.col(n) = ref.col(k);
    ++n;
  }
  const Mat3 g = frame_basis(dst) * frame_basis(src).inverse();
  const Eigen::Matrix<Complex, 3, 1> a = g * x.col(ca);
  const Eigen::Matrix<Complex, 3, 1> b = g * x.col(cb);
  if (std::abs(a(0)) <= kZeroRel * a.norm() || std::abs(b(0)) <= kZeroRel * b.norm()) {
    fail(ErrorCode::FrameDegenerate, "variable column has vanishing leading entry after normalization");
  }
  return ZMatrix{{-a(1) / a(0), -a(2) / a(0), -b(1) / b(0), -b(2) / b(0)}};
}

// ---------------------------------------------------------------------------

Config36 association(const Config36& x) {
  const Mat3 y1 = x.leftCols<3>();
  const Mat3 y2 = x.rightCols<3>();
  const double scale = y1.cwiseAbs().maxCoeff();
  if (scale == 0.0 || std::abs(y1.determinant()) <= kZeroRel * scale * scale * scale) {
    fail(ErrorCode::SingularBlock, "first 3x3 block is not invertible");
  }
  const Mat3 conj = y1.partialPivLu().solve(y2 * y1);
  Config36 out;
  out.leftCols<3>() = conj.transpose();
  out.rightCols<3>() = y1.transpose();
  return out;
}

Complex q_invariant(const Config36& x) {
  Eigen::Matrix<Complex, 6, 6> m;
  for (int i = 0; i < 6; ++i) {
    const Complex a = x(0, i), b = x(1, i), c = x(2, i);
    m.row(i) << a * a, b * b, c * c, b * c, c * a, a * b;
  }
  return m.determinant();
}

Complex t_invariant(const Config36& x, const std::array<int, 6>& l) {
  check_distinct({l[0], l[1], l[2], l[3], l[4], l[5]});
  const int i = l[0], j = l[1], k = l[2], ll = l[3], m = l[4], n = l[5];
  return minor_of(x, i, j, k) * minor_of(x, k, ll, m) * minor_of(x, m, n, i) * minor_of(x, n, ll, j);
}

namespace {

std::pair<int, int> remaining_two(const std::array<int, 4>& l) {
  check_distinct({l[0], l[1], l[2], l[3]});
  std::array<int, 2> rest{};
  std::size_t n = 0;
  for (int v = 1; v <= 6; ++v)
    if (std::find(l.begin(), l.end(), v) == l.end()) rest[n++] = v;
  return {rest[0], rest[1]};
}

}  // namespace

Complex curly_invariant(const Config36& x, const std::array<int, 4>& l) {
  const auto [m, n] = remaining_two(l);
  const int i = l[0], j = l[1], k = l[2], ll = l[3];
  return minor_of(x, i, j, m) * minor_of(x, i, j, n) * minor_of(x, m, k, ll) * minor_of(x, n, k, ll);
}

AssocInvariants assoc_invariants(const Config36& x, const std::array<int, 6>& t_labels,
                                 const std::array<int, 4>& curly_labels) {
  return {q_invariant(x), t_invariant(x, t_labels), curly_invariant(x, curly_labels)};
}

Complex curly_from_pairs(const BracketVector& pairs, const std::array<int, 4>& l) {
  const auto [m, n] = remaining_two(l);
  const int i = l[0], j = l[1], k = l[2], ll = l[3];
  // D(ijm) D(nkl) = +-x<ijm> and D(ijn) D(mkl) = +-x<ijn>; the signs come from
  // sorting each triple (the sorted pair of a partition is exactly x<J>).
  const int sign = sort_sign(i, j, m) * sort_sign(n, k, ll) * sort_sign(i, j, n) * sort_sign(m, k, ll);
  return static_cast<double>(sign) * pairs[Partition33::of(i, j, m).index()] *
         pairs[Partition33::of(i, j, n).index()];
}

namespace {

// Relabel 2<->3 and/or 5<->6.
int relabel(int v, bool swap23, bool swap56) {
  if (swap23 && (v == 2 || v == 3)) return 5 - v;
  if (swap56 && (v == 5 || v == 6)) return 11 - v;
  return v;
}

std::array<int, 4> relabel(std::array<int, 4> l, bool s23, bool s56) {
  for (auto& v : l) v = relabel(v, s23, s56);
  return l;
}

struct CoordinateRoots {
  std::array<Complex, 2> t;
  std::array<Complex, 2> value;
};

// Roots of t^2 - S t + P with T = T(125364) relabeled, and the coordinate
// T / {35;14} (relabeled) for each root.
CoordinateRoots coordinate_roots(const BracketVector& pairs, bool s23, bool s56) {
  auto c = [&](std::array<int, 4> l) { return curly_from_pairs(pairs, relabel(l, s23, s56)); };
  const Complex sum = c({1, 4, 5, 3}) - c({5, 2, 1, 6}) + c({6, 3, 5, 4}) - c({2, 3, 1, 5}) + c({2, 4, 5, 6});
  const Complex prod = c({1, 6, 2, 3}) * c({1, 2, 3, 6});
  const Complex den = c({3, 5, 1, 4});
  double scale = 0.0;
  for (const auto& p : pairs) scale = std::max(scale, std::abs(p));
  if (std::abs(den) <= kZeroRel * scale * scale) {
    fail(ErrorCode::DegenerateQuadratic, "denominator bracket vanishes");
  }
  CoordinateRoots out;
  if (prod == Complex{}) {
    // One root is exactly zero, the other exactly the sum: both rational in the brackets.
    out.t = {Complex{}, sum};
  } else {
    const Complex disc = std::sqrt(sum * sum - 4.0 * prod);
    // Stable pair: the larger root from the sum, the other from the product.
    const Complex big = (std::abs(sum + disc) >= std::abs(sum - disc)) ? (sum + disc) / 2.0 : (sum - disc) / 2.0;
    out.t = {big, prod / big};
  }
  std::sort(out.t.begin(), out.t.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  out.value = {out.t[0] / den, out.t[1] / den};
  return out;
}

Config36 frame_form(Complex x1, Complex x2, Complex y1, Complex y2) {
  Config36 m;
  m << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0,
       0.0, 1.0, 0.0, 1.0, x1, y1,
       0.0, 0.0, 1.0, 1.0, x2, y2;
  return m;
}

}  // namespace

std::array<Complex, 4> standard_frame_coords(const Config36& x) {
  Eigen::Matrix<Complex, 3, 4> src, dst;
  src = x.leftCols<4>();
  dst << 1.0, 0.0, 0.0, 1.0,
         0.0, 1.0, 0.0, 1.0,
         0.0, 0.0, 1.0, 1.0;
  const Mat3 g = frame_basis(dst) * frame_basis(src).inverse();
  const Eigen::Matrix<Complex, 3, 1> a = g * x.col(4);
  const Eigen::Matrix<Complex, 3, 1> b = g * x.col(5);
  if (std::abs(a(0)) <= kZeroRel * a.norm() || std::abs(b(0)) <= kZeroRel * b.norm()) {
    fail(ErrorCode::FrameDegenerate, "column has vanishing leading entry in the standard frame");
  }
  return {a(1) / a(0), a(2) / a(0), b(1) / b(0), b(2) / b(0)};
}

PluckerInverse invert_plucker(const std::array<Complex, 5>& standard) {
  const BracketVector target = expand_standard(standard);
  const auto rx2 = coordinate_roots(target, false, false);
  const auto rx1 = coordinate_roots(target, true, false);
  const auto ry2 = coordinate_roots(target, false, true);
  const auto ry1 = coordinate_roots(target, true, true);

  PluckerInverse out;
  out.t_roots = rx2.t;
  for (std::size_t r = 0; r < 2; ++r) {
    // The other three coordinates each have two candidate roots; the branch
    // belonging to this x2 is the one reproducing the target brackets.
    double best = 1e300;
    for (int mask = 0; mask < 8; ++mask) {
      const Config36 cand =
          frame_form(rx1.value[mask & 1], rx2.value[r], ry1.value[(mask >> 1) & 1], ry2.value[(mask >> 2) & 1]);
      const double d = projective_distance(brackets(cand).pairs, target);
      if (d < best) {
        best = d;
        out.forms[r] = cand;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::array<Config36, 2> preimage_d4(const MeanState& c) {
  if (!c.strictly_ordered()) fail(ErrorCode::OrderViolation, "preimage_d4 needs c1 > c2 > c3 > c4 > 0");
  const double x124 = c[3] * c[3];
  const double x125 = c[2] * c[2];
  const double x134 = c[1] * c[1];
  const double x135 = c[0] * c[0];
  const double d1 = x135 - x134;
  const double d2 = x135 - x125;
  for (double den : {d1, d2, x125, x134}) {
    if (std::abs(den) <= kZeroRel * x135) fail(ErrorCode::DegenerateInput, "vanishing denominator");
  }
  const double num = x124 - x125 - x134 + x135;
  const double cross = x124 * x135 - x125 * x134;

  Config36 first;
  first << 1.0, 1.0, 0.0, 0.0, 1.0, 1.0,
           -num / d1, -1.0, 1.0, 0.0, 0.0, -cross / (d1 * x125),
           0.0, 0.0, 0.0, 1.0, -1.0, -(x125 - x124) / x125;
  Config36 second;
  second << 1.0, 1.0, 0.0, 0.0, 1.0, 1.0,
            -(x134 - x124) / x134, -1.0, 1.0, 0.0, 0.0, 0.0,
            -cross / (d2 * x134), 0.0, 0.0, 1.0, -1.0, -num / d2;
  return {first, second};
}

KummerPoint kummer_point(const MeanState& c) {
  if (!c.strictly_ordered()) fail(ErrorCode::PreconditionError, "kummer_point needs c1 > c2 > c3 > c4 > 0");
  const double c1 = c[0], c2 = c[1], c3 = c[2], c4 = c[3];
  const double d4 = c1 - c2 - c3 + c4;
  if (!(d4 > 0.0)) fail(ErrorCode::PreconditionError, "kummer_point needs c1 - c2 - c3 + c4 > 0");
  const double q1 = (c1 + c2 + c3 + c4) * (c1 + c2 - c3 - c4) * (c1 - c2 + c3 - c4) * d4;
  const double root = std::sqrt(q1);
  const double e13 = (c1 * c1 - c2 * c2 + c3 * c3 - c4 * c4 - root) / (2.0 * (c1 * c3 - c2 * c4));
  const double e12 = (c1 * c1 + c2 * c2 - c3 * c3 - c4 * c4 - root) / (2.0 * (c1 * c2 - c3 * c4));
  KummerPoint out;
  out.q1 = q1;
  out.z = ZMatrix::real(1.0 - c4 / c2 * e13, 1.0 - c1 / c2 * e12, 1.0 - c1 / c3 * e13, 1.0 - c4 / c3 * e12);
  out.x = nu(PeriodIndex::P34, out.z);
  // The z above is built on the -sqrt(Q1) branch; c0^2 must use the same branch.
  out.c0sq = (c1 * c1 - c2 * c2 - c3 * c3 + c4 * c4 - root) / 2.0;
  return out;
}

}  // namespace k3
