#include "k3/identities.hpp"

#include <algorithm>
#include <cmath>

#include "k3/error.hpp"

namespace k3 {

// Report plumbing -------------------------------------------------------------

void VerifyReport::add(std::string label, Complex lhs, Complex rhs, double tol, Basis basis) {
  Residual r;
  r.label = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  r.basis = basis;
  r.abs = std::abs(lhs - rhs);
  switch (basis) {
    case Basis::Absolute: r.rel = r.abs; break;
    case Basis::Relative: {
      const double scale = std::max(std::abs(lhs), std::abs(rhs));
      r.rel = scale == 0.0 ? 0.0 : r.abs / scale;
      break;
    }
    case Basis::Scaled: r.rel = r.abs / std::max({1.0, std::abs(lhs), std::abs(rhs)}); break;
    case Basis::LowerBound: r.rel = lhs.real(); break;
  }
  r.pass = basis == Basis::LowerBound ? lhs.real() >= tol : r.rel <= tol;
  // NaN never passes.
  if (std::isnan(r.rel)) r.pass = false;
  pass = pass && r.pass;
  residuals.push_back(std::move(r));
}

void VerifyReport::require(std::string label, bool ok) {
  add(std::move(label), ok ? 0.0 : 1.0, 0.0, 0.0, Basis::Absolute);
}

double VerifyReport::worst() const {
  double w = 0.0;
  for (const auto& r : residuals)
    if (r.basis != Basis::LowerBound) w = std::max(w, r.rel);
  return w;
}

namespace {

std::vector<double> flat(const ZMatrix& z) {
  std::vector<double> v;
  for (std::size_t k = 0; k < 4; ++k) {
    v.push_back(z[k].real());
    if (z[k].imag() != 0.0) v.push_back(z[k].imag());
  }
  return v;
}

std::vector<double> flat(const Tau& t) {
  std::vector<double> v;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      v.push_back(t(i, j).real());
      v.push_back(t(i, j).imag());
    }
  return v;
}

std::vector<double> flat(const MeanState& c) { return {c[0], c[1], c[2], c[3]}; }

std::string char_label(const Characteristic& c) { return "[" + c.bits() + "]"; }

Complex omega_b(double lambda, const SeriesCtrl& ctrl) { return kPi * f_half(lambda, ctrl); }
Complex omega_a(double lambda, const SeriesCtrl& ctrl) { return kI * kPi * f_half(1.0 - lambda, ctrl); }

// Series control for one-variable Gauss sums close to x = 1.
SeriesCtrl long_series(SeriesCtrl ctrl) {
  ctrl.max_degree = std::max<std::size_t>(ctrl.max_degree, 400000);
  return ctrl;
}

std::array<Complex, 5> standard_of(const BracketVector& pairs) {
  return {pairs[0], pairs[1], pairs[2], pairs[3], pairs[4]};
}

double coord_distance(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  return d;
}

Complex cdet(GaussInt g) { return g.to_complex(); }

}  // namespace

// Genus one -------------------------------------------------------------------

VerifyReport verify_jacobi(double lambda, const VerifyCtrl& ctrl) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorCode::DomainError, "lambda must lie in (0, 1)");
  VerifyReport r;
  r.name = "jacobi";
  r.input("lambda", {lambda});
  const SeriesCtrl sc = long_series(ctrl.series);
  const Complex wa = omega_a(lambda, sc), wb = omega_b(lambda, sc);
  const Complex tau = wa / wb;
  r.diag("tau_re", tau.real());
  r.diag("tau_im", tau.imag());
  const Complex t00 = jacobi_theta(0, 0, tau, ctrl.lattice);
  const Complex t01 = jacobi_theta(0, 1, tau, ctrl.lattice);
  const Complex t10 = jacobi_theta(1, 0, tau, ctrl.lattice);
  const Complex base = wb * wb / (kPi * kPi);
  const double tol = ctrl.tol.genus1;
  r.add("theta00^4", std::pow(t00, 4), base, tol, Basis::Relative);
  r.add("theta01^4", std::pow(t01, 4), (1.0 - lambda) * base, tol, Basis::Relative);
  r.add("theta10^4", std::pow(t10, 4), lambda * base, tol, Basis::Relative);
  r.add("lambda", std::pow(t10 / t00, 4), lambda, tol, Basis::Relative);
  const Complex s00 = jacobi_theta(0, 0, 2.0 * tau, ctrl.lattice);
  const Complex s01 = jacobi_theta(0, 1, 2.0 * tau, ctrl.lattice);
  r.add("theta00^2(2tau)", s00 * s00, (t00 * t00 + t01 * t01) / 2.0, tol, Basis::Relative);
  r.add("theta01^2(2tau)", s01 * s01, t00 * t01, tol, Basis::Relative);
  return r;
}

VerifyReport verify_gauss_transform(double z, const VerifyCtrl& ctrl) {
  if (!(z >= 0.0 && z < 1.0)) fail(ErrorCode::DomainError, "z must lie in [0, 1)");
  VerifyReport r;
  r.name = "gauss";
  r.input("z", {z});
  const SeriesCtrl sc = long_series(ctrl.series);
  const auto lhs = gauss2f1(0.5, 0.5, 1.0, 1.0 - 4.0 * z / ((1.0 + z) * (1.0 + z)), sc);
  const auto rhs = gauss2f1(0.5, 0.5, 1.0, 1.0 - z * z, sc);
  r.diag("degree_lhs", static_cast<double>(lhs.degree));
  r.diag("degree_rhs", static_cast<double>(rhs.degree));
  r.add("gauss_transform", lhs.value, (1.0 + z) / 2.0 * rhs.value, ctrl.tol.gauss, Basis::Absolute);
  return r;
}

VerifyReport verify_factorization(const ZMatrix& z, const VerifyCtrl& ctrl) {
  if (z[1] != Complex{} || z[2] != Complex{}) fail(ErrorCode::PreconditionError, "factorization needs z2 = z3 = 0");
  VerifyReport r;
  r.name = "factorization";
  r.input("z", flat(z));
  const auto s = fs(HGParams::half(), z, ctrl.series);
  const Complex prod = gauss2f1(0.5, 0.5, 1.0, z[0], ctrl.series).value * gauss2f1(0.5, 0.5, 1.0, z[3], ctrl.series).value;
  r.diag("degree", static_cast<double>(s.degree));
  r.add("fs=2F1*2F1", s.value, prod, ctrl.tol.genus1, Basis::Relative);
  return r;
}

VerifyReport verify_series_integral(const ZMatrix& z, std::size_t nodes, double tol, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "series-integral";
  r.input("z", flat(z));
  r.input("nodes", {static_cast<double>(nodes)});
  const HGParams half = HGParams::half();
  const QuadCtrl q{nodes};
  r.add("fs", fs(half, z, ctrl.series).value, euler_oracle(SeriesKind::S, half, z, q), tol, Basis::Absolute);
  r.add("ft", ft(half, z, ctrl.series).value, euler_oracle(SeriesKind::T, half, z, q), tol, Basis::Absolute);
  return r;
}

// Theta constants ---------------------------------------------------------------

VerifyReport verify_theta_laws(const Tau& tau, std::size_t qp_char, int qp_radius, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "theta-laws";
  r.input("tau", flat(tau));
  const double tol = ctrl.tol.lattice;
  const auto& lc = ctrl.lattice;
  const Tau tt = tau.transpose();
  int radius = 0;

  for (const auto& c : Characteristic::all()) {
    const auto th = theta_char(c, tau, lc);
    radius = std::max(radius, th.radius);
    if (!c.even()) r.add("odd" + char_label(c), th.value, 0.0, tol, Basis::Absolute);
    // Theta_ab(t tau) = Theta_{conj a, conj b}(tau).
    const CVec2 a = c.a(), b = c.b();
    const CVec2 ac{std::conj(a[0]), std::conj(a[1])}, bc{std::conj(b[0]), std::conj(b[1])};
    r.add("transpose" + char_label(c), theta_ab(a, b, tt, lc).value, theta_ab(ac, bc, tau, lc).value, tol);
  }

  // Quasi-periodicity in b for one even characteristic.
  std::vector<Characteristic> even;
  for (const auto& c : Characteristic::all())
    if (c.even()) even.push_back(c);
  const Characteristic qc = even[qp_char % even.size()];
  const CVec2 a = qc.a(), b = qc.b();
  const Complex base = theta_ab(a, b, tau, lc).value;
  for (int n0 = -qp_radius; n0 <= qp_radius; ++n0)
    for (int n1 = -qp_radius; n1 <= qp_radius; ++n1)
      for (int n2 = -qp_radius; n2 <= qp_radius; ++n2)
        for (int n3 = -qp_radius; n3 <= qp_radius; ++n3) {
          if (n0 == 0 && n1 == 0 && n2 == 0 && n3 == 0) continue;
          const Complex m1{static_cast<double>(n0), static_cast<double>(n1)};
          const Complex m2{static_cast<double>(n2), static_cast<double>(n3)};
          const CVec2 bn{b[0] + m1, b[1] + m2};
          const double phase = (a[0] * std::conj(m1) + a[1] * std::conj(m2)).real();
          r.add("quasi-periodic" + char_label(qc) + "(" + std::to_string(n0) + "," + std::to_string(n1) + "," +
                    std::to_string(n2) + "," + std::to_string(n3) + ")",
                theta_ab(a, bn, tau, lc).value, e_of(phase) * base, tol);
        }

  // Squares depend only on the classes of a and b mod (1+i).
  const std::array<std::array<Complex, 2>, 3> shifts{{{Complex{1, 0}, Complex{0, 0}},
                                                      {Complex{0, 0}, Complex{0, 1}},
                                                      {Complex{1, 1}, Complex{-1, 0}}}};
  for (const auto& c : even) {
    const CVec2 ca = c.a(), cb = c.b();
    const Complex t0 = theta_ab(ca, cb, tau, lc).value;
    for (std::size_t s = 0; s < shifts.size(); ++s) {
      const CVec2 as{ca[0] + shifts[s][0], ca[1] + shifts[s][1]};
      const CVec2 bs{cb[0] + shifts[s][0], cb[1] + shifts[s][1]};
      const Complex ta = theta_ab(as, cb, tau, lc).value;
      const Complex tb = theta_ab(ca, bs, tau, lc).value;
      r.add("class-a" + char_label(c) + "#" + std::to_string(s), ta * ta, t0 * t0, tol);
      r.add("class-b" + char_label(c) + "#" + std::to_string(s), tb * tb, t0 * t0, tol);
    }
  }
  r.diag("radius", radius);
  r.diag("lambda_min", hermitian_part_min_eig(tau));
  return r;
}

VerifyReport verify_2tau(const Tau& tau, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "2tau";
  r.input("tau", flat(tau));
  const double tol = ctrl.tol.lattice;
  const auto& lc = ctrl.lattice;
  for (const auto& c : Characteristic::all()) {
    if (!c.even()) continue;
    const auto [lhs, rhs] = two_tau_sides(c.a(), c.b(), tau, lc);
    r.add("duplication" + char_label(c), lhs, rhs, tol);
  }
  const Tau t2 = 2.0 * tau;
  auto th = [&](const char* bits, const Tau& t) { return theta_char(Characteristic::parse(bits), t, lc).value; };
  const Complex a0 = th("0000", tau), a1 = th("0001", tau), a2 = th("0010", tau), a3 = th("0011", tau);
  r.add("average[0000]", th("0000", t2), (a0 + a1 + a2 + a3) / 4.0, tol);
  r.add("average[0100]", th("0100", t2), (a0 - a1 + a2 - a3) / 4.0, tol);
  r.add("average[1000]", th("1000", t2), (a0 + a1 - a2 - a3) / 4.0, tol);
  r.add("average[1100]", th("1100", t2), (a0 - a1 - a2 + a3) / 4.0, tol);
  const Complex s1111 = std::pow(th("1111", t2), 2);
  r.add("product[0001]", std::pow(th("0001", t2), 2) + s1111, (a0 + a2) / 2.0 * (a1 + a3) / 2.0, tol);
  r.add("product[0010]", std::pow(th("0010", t2), 2) + s1111, (a0 + a1) / 2.0 * (a2 + a3) / 2.0, tol);
  r.add("product[0011]", std::pow(th("0011", t2), 2) + s1111, (a0 * a3 + a1 * a2) / 2.0, tol);
  return r;
}

VerifyReport verify_decomposition(const Tau& tau, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "decomposition";
  r.input("tau", flat(tau));
  const Eigen::MatrixXcd t = tau;
  for (const auto& c : Characteristic::all()) {
    const CVec2 a = c.a(), b = c.b();
    Eigen::VectorXd ar(2), br(2), ai(2), bi(2);
    ar << a[0].real(), a[1].real();
    br << b[0].real(), b[1].real();
    ai << a[0].imag(), a[1].imag();
    bi << b[0].imag(), b[1].imag();
    const Complex prod = riemann_theta(ar, br, t, ctrl.lattice).value * riemann_theta(ai, bi, t, ctrl.lattice).value;
    r.add("decompose" + char_label(c), theta_ab(a, b, tau, ctrl.lattice).value, prod, ctrl.tol.lattice);
  }
  return r;
}

VerifyReport verify_theta_transform(const GroupElem& g, const Tau& tau, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "transform";
  r.input("tau", flat(tau));
  const auto moved = act(g, tau);
  const Complex factor = cdet(g.det()) * moved.cocycle * moved.cocycle;
  r.diag("lambda_min_image", hermitian_part_min_eig(moved.tau));
  const BracketVector before = theta_vector(tau, ctrl.lattice);
  const BracketVector after = theta_vector(moved.tau, ctrl.lattice);
  const BracketVector transposed = theta_vector(tau.transpose(), ctrl.lattice);
  for (const auto& p : Partition33::all()) {
    const auto c = characteristic_of(p);
    r.add("automorphy" + char_label(c), after[p.index()], factor * before[p.index()], ctrl.tol.lattice);
    r.add("transpose" + char_label(c), transposed[p.index()], before[p.index()], ctrl.tol.lattice);
  }
  return r;
}

VerifyReport verify_group(const GroupElem& g, const Tau& tau, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "group";
  r.input("tau", flat(tau));
  const GaussMat4& m = g.matrix();
  r.require("unitary", m * i22() * m.adjoint() == i22());
  r.require("level(1+i)", g.in_level_1pi());
  const Embedding e = embed_group(g);
  const GaussInt d = e.detg;
  r.require("det(wedge2)=det(g)^3", e.det_wedge2 == d * d * d);
  r.require("tR H R = H", e.orthogonal);
  r.require("R integral", e.integral);

  const auto moved = act(g, tau);
  Mat6 rg;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) rg(i, j) = e.rg(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).to_complex();
  const Vec6 image = rg * jd(tau);
  r.add("cocycle", cdet(d) * moved.cocycle * moved.cocycle, image(5) * image(5), ctrl.tol.lattice);
  // The image point itself: jd(g tau) = [R jd(tau)] / [R jd(tau)]_34.
  const Vec6 direct = jd(moved.tau);
  const Vec6 scaled = image / image(5);
  r.add("jd(g tau)", (direct - scaled).norm(), 0.0, ctrl.tol.lattice);
  return r;
}

// Periods -------------------------------------------------------------------------

VerifyReport verify_thomae(const ZMatrix& z, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "thomae";
  r.input("z", flat(z));
  const Config36 x = nu(PeriodIndex::P34, z);
  const BracketSet bx = brackets(x);
  const PeriodSquares ps = period_squares(z, ctrl.series);
  const SignResolution sr = resolve_signs(ps.omega_sq);
  const Complex f = fs(HGParams::half(), z, ctrl.series).value;
  const Complex w34sq = ps.omega_sq[static_cast<std::size_t>(PeriodIndex::P34)];
  const double four_pi4 = 4.0 * std::pow(kPi, 4);

  std::vector<BracketVector> per_survivor;
  int radius = 0;
  for (const auto& w : sr.survivors) {
    const Tau t = tau_of(w);
    per_survivor.push_back(theta_vector(t, ctrl.lattice));
    for (const auto& p : Partition33::all())
      radius = std::max(radius, theta_char(characteristic_of(p), t, ctrl.lattice).radius);
  }
  const BracketVector& th = per_survivor[sr.chosen];
  for (const auto& p : Partition33::all()) {
    const std::size_t k = p.index();
    r.add("theta^2<" + p.label() + ">", th[k], bx.pairs[k] * w34sq / four_pi4, ctrl.tol.thomae, Basis::Relative);
  }
  for (const auto& p : Partition33::all()) {
    const std::size_t k = p.index();
    r.add("nuF^2<" + p.label() + ">", th[k], bx.pairs[k] * f * f, ctrl.tol.thomae, Basis::Relative);
  }
  for (std::size_t s = 0; s < per_survivor.size(); ++s) {
    if (s == sr.chosen) continue;
    for (const auto& p : Partition33::all()) {
      r.add("survivor" + std::to_string(s) + "<" + p.label() + ">", per_survivor[s][p.index()], th[p.index()],
            ctrl.tol.survivors, Basis::Relative);
    }
  }
  r.diag("survivors", static_cast<double>(sr.survivors.size()));
  r.diag("chosen", static_cast<double>(sr.chosen));
  r.diag("reference_pattern", sr.matches_reference_pattern ? 1.0 : 0.0);
  r.diag("ratio_spread", ps.ratio_spread);
  r.diag("lattice_radius", radius);
  for (PeriodIndex ij : kAllPeriods) {
    const auto k = static_cast<std::size_t>(ij);
    r.diag(std::string("degree_") + label(ij), static_cast<double>(ps.degrees[k]));
    r.diag(std::string("row_sum_") + label(ij),
           std::max(ps.zeta[k].first_sum(), ps.zeta[k].second_sum()));
  }
  return r;
}

VerifyReport verify_degeneration(double z1, double z4, double eps, const VerifyCtrl& ctrl) {
  if (!(z1 > 0.0 && z1 < 1.0 && z4 > 0.0 && z4 < 1.0)) fail(ErrorCode::DomainError, "z1, z4 must lie in (0, 1)");
  VerifyReport r;
  r.name = "degeneration";
  r.input("z1", {z1});
  r.input("z4", {z4});
  r.input("eps", {eps});
  const double target = 1.0 / (4.0 * std::pow(kPi, 4));
  const ZMatrix z = ZMatrix::real(z1, eps, eps, z4);
  const Config36 x = nu(PeriodIndex::P34, z);
  const BracketSet bx = brackets(x);
  const PeriodSquares ps = period_squares(z, ctrl.series);
  const SignResolution sr = resolve_signs(ps.omega_sq);
  const Tau t = tau_of(sr.omega);
  const std::size_t k135 = Partition33::of(1, 3, 5).index();
  const Complex th = std::pow(theta_char(Characteristic::parse("0000"), t, ctrl.lattice).value, 2);
  const Complex w34sq = ps.omega_sq[static_cast<std::size_t>(PeriodIndex::P34)];
  r.add("f<135>", th / (bx.pairs[k135] * w34sq), target, ctrl.tol.degeneration, Basis::Relative);

  // The limiting value from Jacobi's formula at eps = 0.
  const SeriesCtrl sc = long_series(ctrl.series);
  const Complex wb1 = omega_b(z1, sc), wb4 = omega_b(z4, sc);
  const Complex t1 = omega_a(z1, sc) / wb1, t4 = omega_a(z4, sc) / wb4;
  const Complex g1 = std::pow(jacobi_theta(0, 0, t1, ctrl.lattice), 4) * std::pow(jacobi_theta(0, 0, t4, ctrl.lattice), 4) /
                     (4.0 * wb1 * wb1 * wb4 * wb4);
  r.add("genus1_product", g1, target, ctrl.tol.genus1, Basis::Relative);

  Tau lim = Tau::Zero();
  lim(0, 0) = t1;
  lim(1, 1) = t4;
  const Vec6& w = sr.omega;
  r.diag("tau_minus_limit", (t - lim).cwiseAbs().maxCoeff());
  r.diag("omega13_over_omega34", std::abs(w(1) / w(5)));
  r.diag("omega24_over_omega34", std::abs(w(4) / w(5)));
  r.diag("omega34_vs_2wBwB", std::abs(w(5) / (2.0 * wb1 * wb4) - 1.0));
  r.diag("omega14_ratio_vs_tau1", std::abs(w(2) / w(5) - t1) / std::abs(t1));
  return r;
}

// Configurations --------------------------------------------------------------------

VerifyReport verify_configuration(const Config36& x, const ZMatrix& z, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "configuration";
  r.input("z", flat(z));
  const double tol = ctrl.tol.configuration;
  const BracketSet bx = brackets(x);
  r.require("generic", bx.generic);

  for (const auto& p : Partition33::all()) {
    const auto& j = p.key();
    const auto jc = p.complement_of_key();
    r.add("pair<" + p.label() + ">", bx.pairs[p.index()],
          minor_of(x, j[0], j[1], j[2]) * minor_of(x, jc[0], jc[1], jc[2]), 0.0, Basis::Absolute);
  }
  const BracketVector lin = expand_standard(standard_of(bx.pairs));
  r.add("linear_relations", projective_distance(lin, bx.pairs), 0.0, tol, Basis::Absolute);

  const Config36 ax = association(x);
  r.add("as:brackets", projective_distance(brackets(ax).pairs, bx.pairs), 0.0, tol, Basis::Absolute);
  r.add("as:involution", coord_distance(standard_frame_coords(association(ax)), standard_frame_coords(x)), 0.0, tol,
        Basis::Absolute);

  for (PeriodIndex ij : kAllPeriods) {
    const ZMatrix back = normal_form_coords(nu(ij, z), ij);
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(back[k] - z[k]));
    r.add(std::string("nu-round-trip:") + label(ij), d, 0.0, ctrl.tol.round_trip, Basis::Absolute);
    const ZMatrix zeta = normal_form_coords(x, ij);
    r.add(std::string("nu-brackets:") + label(ij), projective_distance(brackets(nu(ij, zeta)).pairs, bx.pairs), 0.0,
          tol, Basis::Absolute);
  }

  const auto inv = invert_plucker(standard_of(bx.pairs));
  const auto fx = standard_frame_coords(x);
  const double d0 = coord_distance(standard_frame_coords(inv.forms[0]), fx);
  const double d1 = coord_distance(standard_frame_coords(inv.forms[1]), fx);
  r.add("invert:round-trip", std::min(d0, d1), 0.0, tol, Basis::Absolute);
  r.add("invert:same-brackets", projective_distance(brackets(inv.forms[0]).pairs, brackets(inv.forms[1]).pairs), 0.0,
        tol, Basis::Absolute);
  r.add("invert:partners",
        coord_distance(standard_frame_coords(association(inv.forms[0])), standard_frame_coords(inv.forms[1])), 0.0, tol,
        Basis::Absolute);

  const Complex t = t_invariant(x, {1, 2, 5, 3, 6, 4});
  const Complex t_partner = t_invariant(x, {3, 6, 4, 1, 2, 5});
  const Complex sum = curly_invariant(x, {1, 4, 5, 3}) - curly_invariant(x, {5, 2, 1, 6}) +
                      curly_invariant(x, {6, 3, 5, 4}) - curly_invariant(x, {2, 3, 1, 5}) +
                      curly_invariant(x, {2, 4, 5, 6});
  r.add("T+partner", t + t_partner, sum, tol, Basis::Relative);
  r.add("T*partner", t * t_partner, curly_invariant(x, {1, 6, 2, 3}) * curly_invariant(x, {1, 2, 3, 6}), tol,
        Basis::Relative);
  r.add("T-partner=Q", t - t_partner, q_invariant(x), tol, Basis::Relative);
  return r;
}

VerifyReport verify_preimage_d4(const MeanState& c, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "preimage-d4";
  r.input("c", flat(c));
  const auto pre = preimage_d4(c);
  const BracketVector expected =
      expand_standard({0.0, c[3] * c[3], c[2] * c[2], c[1] * c[1], c[0] * c[0]});
  for (std::size_t k = 0; k < 2; ++k) {
    const std::string tag = "preimage" + std::to_string(k);
    const BracketSet b = brackets(pre[k]);
    r.require(tag + ":x<123>=0", b.pairs[0] == Complex{});
    r.add(tag + ":brackets", projective_distance(b.pairs, expected), 0.0, ctrl.tol.configuration, Basis::Absolute);
  }
  const ZMatrix z = normal_form_coords(pre[0], PeriodIndex::P34);
  const ZMatrix w = normal_form_coords(pre[1], PeriodIndex::P34);
  const ZMatrix zt = d4_z(c), wt = d4_w(c);
  for (std::size_t k = 0; k < 4; ++k) {
    r.add("z" + std::to_string(k + 1), z[k], zt[k], ctrl.tol.configuration);
    r.add("w" + std::to_string(k + 1), w[k], wt[k], ctrl.tol.configuration);
  }
  return r;
}

VerifyReport verify_kummer(const MeanState& c, const VerifyCtrl& ctrl) {
  VerifyReport r;
  r.name = "kummer";
  r.input("c", flat(c));
  const KummerPoint kp = kummer_point(c);
  r.diag("q1", kp.q1);
  const BracketVector expected =
      expand_standard({kp.c0sq, c[3] * c[3], c[2] * c[2], c[1] * c[1], c[0] * c[0]});
  r.add("brackets", projective_distance(brackets(kp.x).pairs, expected), 0.0, ctrl.tol.configuration, Basis::Absolute);
  const ZMatrix zb = borchardt_z(c);
  for (std::size_t k = 0; k < 4; ++k) r.add("z" + std::to_string(k + 1), kp.z[k], zb[k], ctrl.tol.configuration);
  return r;
}

// Means -------------------------------------------------------------------------------

std::pair<ZMatrix, ZMatrix> fe_images(FeKind kind, const MeanState& c) {
  const double c1 = c[0], c2 = c[1], c3 = c[2], c4 = c[3];
  const auto d = DQuantities::of(c);
  if (kind == FeKind::FE1) {
    const double s = c1 * c1 - c2 * c2 - c3 * c3 + c4 * c4;
    const double cross = 2.0 * (c1 * c4 - c2 * c3) * s;
    const ZMatrix mz = ZMatrix::real(d.d4 * d.d4 / (d.d3 * d.d3), 0.0,
                                     cross / ((c1 + c2) * (c3 + c4) * d.d3 * d.d3),
                                     (c1 - c2) * (c3 - c4) / ((c1 + c2) * (c3 + c4)));
    const ZMatrix mw = ZMatrix::real((c1 - c3) * (c2 - c4) / ((c1 + c3) * (c2 + c4)),
                                     cross / ((c1 + c3) * (c2 + c4) * d.d2 * d.d2), 0.0,
                                     d.d4 * d.d4 / (d.d2 * d.d2));
    return {mz, mw};
  }
  const double r12 = std::sqrt(c1 * c2), r34 = std::sqrt(c3 * c4);
  const double r13 = std::sqrt(c1 * c3), r24 = std::sqrt(c2 * c4);
  const double r14 = std::sqrt(c1 * c4), r23 = std::sqrt(c2 * c3);
  const ZMatrix mz = ZMatrix::real(1.0 - 2.0 * (r14 + r23) * (r13 - r24) / ((r12 + r34) * d.d3),
                                   1.0 - (r12 - r34) * d.d1 / ((r12 + r34) * d.d2),
                                   1.0 - (r13 - r24) * d.d1 / ((r13 + r24) * d.d3),
                                   1.0 - 2.0 * (r14 + r23) * (r12 - r34) / ((r13 + r24) * d.d2));
  const ZMatrix mw = ZMatrix::real(1.0 - (r14 + r23) * d.d3 / (2.0 * (r12 + r34) * (r13 - r24)),
                                   1.0 - d.d1 * d.d2 / (4.0 * (c1 * c2 - c3 * c4)),
                                   1.0 - d.d1 * d.d3 / (4.0 * (c1 * c3 - c2 * c4)),
                                   1.0 - (r14 + r23) * d.d2 / (2.0 * (r13 + r24) * (r12 - r34)));
  return {mz, mw};
}

VerifyReport verify_fe(FeKind kind, const MeanState& c, const VerifyCtrl& ctrl) {
  if (!c.strictly_ordered()) fail(ErrorCode::OrderViolation, "functional equations need c1 > c2 > c3 > c4 > 0");
  const double c1 = c[0], c2 = c[1], c3 = c[2], c4 = c[3];
  const auto d = DQuantities::of(c);
  if (kind == FeKind::FE2 && !(d.d4 > 0.0)) {
    fail(ErrorCode::DomainError, "FE2 needs c1 - c2 - c3 + c4 > 0");
  }
  VerifyReport r;
  r.name = kind == FeKind::FE1 ? "fe1" : "fe2";
  r.input("c", flat(c));
  const ZMatrix z = kind == FeKind::FE1 ? d4_z(c) : borchardt_z(c);
  const ZMatrix w = kind == FeKind::FE1 ? d4_w(c) : borchardt_w(c);
  const auto [mz, mw] = fe_images(kind, c);
  std::string escaped;
  const std::array<std::pair<const char*, const ZMatrix*>, 4> args{
      {{"z", &z}, {"w", &w}, {"m(z)", &mz}, {"m(w)", &mw}}};
  for (const auto& [name, zm] : args) {
    if (!zm->in_series_domain()) escaped += escaped.empty() ? name : std::string(", ") + name;
  }
  if (!escaped.empty()) fail(ErrorCode::DomainError, "arguments outside the polydisc: " + escaped);

  double kz = 0.0, kw = 0.0;
  if (kind == FeKind::FE1) {
    kz = d.d3 * (c3 + c4) / (4.0 * (c1 - c2) * c3);
    kw = d.d2 * (c2 + c4) / (4.0 * (c1 - c3) * c2);
  } else {
    const double a12 = std::sqrt(d.d1 * d.d2), b34 = std::sqrt(d.d3 * d.d4);
    const double a13 = std::sqrt(d.d1 * d.d3), b24 = std::sqrt(d.d2 * d.d4);
    const double r12 = std::sqrt(c1 * c2), r34 = std::sqrt(c3 * c4);
    const double r13 = std::sqrt(c1 * c3), r24 = std::sqrt(c2 * c4);
    kz = std::sqrt(d.d2 * d.d3) * (a12 - b34) * (a13 - b24) / (16.0 * std::sqrt(c2 * c3) * (r12 - r34) * (r13 - r24));
    kw = (a12 + b34) * (a13 + b24) / (4.0 * std::sqrt(c2 * c3 * d.d2 * d.d3));
  }
  const auto fz = fs(HGParams::half(), z, ctrl.series), fw = fs(HGParams::half(), w, ctrl.series);
  const auto fmz = fs(HGParams::half(), mz, ctrl.series), fmw = fs(HGParams::half(), mw, ctrl.series);
  r.add("F(m(z))", fmz.value, kz * fz.value, ctrl.tol.mean, Basis::Relative);
  r.add("F(m(w))", fmw.value, kw * fw.value, ctrl.tol.mean, Basis::Relative);

  // The images are the closed-form arguments at the next mean state.
  const MeanKind mk = kind == FeKind::FE1 ? MeanKind::D4 : MeanKind::Borchardt;
  const MeanState next = mean_step(mk, c);
  const ZMatrix zn = kind == FeKind::FE1 ? d4_z(next) : borchardt_z(next);
  const ZMatrix wn = kind == FeKind::FE1 ? d4_w(next) : borchardt_w(next);
  double dz = 0.0, dw = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    dz = std::max(dz, std::abs(mz[k] - zn[k]));
    dw = std::max(dw, std::abs(mw[k] - wn[k]));
  }
  r.diag("m(z)_vs_z(m(c))", dz);
  r.diag("m(w)_vs_w(m(c))", dw);
  r.diag("degree_max", static_cast<double>(std::max({fz.degree, fw.degree, fmz.degree, fmw.degree})));
  return r;
}

VerifyReport verify_agm_limit(MeanKind kind, const MeanState& c, const VerifyCtrl& ctrl) {
  if (!c.strictly_ordered()) fail(ErrorCode::OrderViolation, "mean state must satisfy c1 > c2 > c3 > c4 > 0");
  VerifyReport r;
  r.name = std::string("agm-") + to_string(kind);
  r.input("c", flat(c));
  const IterResult it = iterate_mean(kind, c);
  const LimitFormula lf = limit_formula(kind, c, ctrl.series);
  r.add("value_z", lf.value_z, it.limit, ctrl.tol.mean, Basis::Relative);
  r.add("value_w", lf.value_w, it.limit, ctrl.tol.mean, Basis::Relative);
  r.add("rate_exponent", it.trace.rate_exponent, 0.0, ctrl.tol.rate_exponent, Basis::LowerBound);
  if (kind == MeanKind::D4) {
    r.add("square_ratio_a", it.trace.settled_ratio_a, 1.0, ctrl.tol.square_ratio, Basis::Absolute);
    r.add("square_ratio_b", it.trace.settled_ratio_b, 1.0, ctrl.tol.square_ratio, Basis::Absolute);
    r.diag("square_ratio_a_at_stop", it.trace.ratio_a.back());
    r.diag("square_ratio_b_at_stop", it.trace.ratio_b.back());
    r.diag("square_ratio_settle_steps", static_cast<double>(it.trace.settle_steps));
    // The proportionality holds at every strict state; the input is the best-conditioned one.
    const auto pre = verify_preimage_d4(c, ctrl);
    r.add("preimage_brackets", pre.worst(), 0.0, ctrl.tol.configuration, Basis::Absolute);
  } else {
    // Borchardt states reach d4 > 0 after at most a step or two.
    MeanState k = c;
    for (int n = 0; n < 4 && !(k[0] - k[1] - k[2] + k[3] > 0.0); ++n) k = mean_step(kind, k);
    const auto kum = verify_kummer(k, ctrl);
    r.add("kummer_brackets", kum.worst(), 0.0, ctrl.tol.configuration, Basis::Absolute);
  }
  r.diag("limit", it.limit);
  r.diag("iterations", static_cast<double>(it.iterations));
  r.diag("pre_steps", static_cast<double>(lf.pre_steps));
  r.diag("rate_constant", it.trace.rate_constant);
  r.diag("degree_z", static_cast<double>(lf.degree_z));
  r.diag("degree_w", static_cast<double>(lf.degree_w));
  return r;
}

// Sampling ----------------------------------------------------------------------------

Tau random_domain_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5), ev(0.8, 1.6), ang(0.0, 2.0 * kPi);
  Tau s;
  const Complex off{u(rng), u(rng)};
  s << u(rng), off, std::conj(off), u(rng);
  const double theta = ang(rng), phi = ang(rng);
  Tau rot;
  rot << std::cos(theta), -std::sin(theta) * std::exp(Complex{0.0, phi}), std::sin(theta) * std::exp(Complex{0.0, -phi}),
      std::cos(theta);
  Tau diag = Tau::Zero();
  diag(0, 0) = ev(rng);
  diag(1, 1) = ev(rng);
  const Tau p = rot * diag * rot.adjoint();
  return s + kI * p;
}

Tau random_siegel_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5), ev(0.8, 1.6), ang(0.0, 2.0 * kPi);
  const double x12 = u(rng);
  Eigen::Matrix2d x;
  x << u(rng), x12, x12, u(rng);
  const double theta = ang(rng);
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
  d(0, 0) = ev(rng);
  d(1, 1) = ev(rng);
  Eigen::Matrix2d y = rot * d * rot.transpose();
  y(1, 0) = y(0, 1);  // exact symmetry
  return x.cast<Complex>() + kI * y.cast<Complex>();
}

Config36 random_config(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Config36 x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) x(i, j) = Complex{n(rng), n(rng)};
  return x;
}

ZMatrix random_real_z(std::mt19937_64& rng, double max_row_sum) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double t1 = max_row_sum * u(rng), s1 = u(rng);
  const double t2 = max_row_sum * u(rng), s2 = u(rng);
  return ZMatrix::real(t1 * s1, t1 * (1.0 - s1), t2 * s2, t2 * (1.0 - s2));
}

MeanState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::array<double, 3> v{u(rng), u(rng), u(rng)};
  std::sort(v.begin(), v.end(), std::greater<>());
  if (v[0] == v[1] || v[1] == v[2]) return MeanState{{1.0, 0.7, 0.4, 0.1}};
  return MeanState{{1.0, v[0], v[1], v[2]}};
}

namespace {

bool separated(const MeanState& c) {
  if (!c.strictly_ordered()) return false;
  for (std::size_t i = 0; i < 3; ++i)
    if (c[i] - c[i + 1] <= 1e-6 * c[0]) return false;
  return true;
}

}  // namespace

bool fe_arguments_inside(const MeanState& c) {
  if (!(c[0] - c[1] - c[2] + c[3] > 0.0)) return false;
  auto cheap = [](const ZMatrix& z) {
    return z.first_sum() <= kClosedFormRowSum && z.second_sum() <= kClosedFormRowSum;
  };
  for (FeKind kind : {FeKind::FE1, FeKind::FE2}) {
    const auto [mz, mw] = fe_images(kind, c);
    if (!cheap(mz) || !cheap(mw)) return false;
  }
  return cheap(d4_z(c)) && cheap(d4_w(c)) && cheap(borchardt_z(c)) && cheap(borchardt_w(c));
}

MeanState random_fe_state(std::mt19937_64& rng) {
  MeanState first{};
  for (int attempt = 0; attempt < 64; ++attempt) {
    MeanState c = mean_step(MeanKind::Borchardt, random_state(rng));
    for (int k = 0; k < 3 && !fe_arguments_inside(c); ++k) {
      const MeanState next = mean_step(MeanKind::Borchardt, c);
      if (!separated(next)) break;
      c = next;
    }
    if (separated(c) && fe_arguments_inside(c)) return c;
    if (attempt == 0) first = c;
  }
  return first;
}

}  // namespace k3
