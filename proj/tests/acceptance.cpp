// Acceptance runner: `k3_acceptance N` checks criterion N (1..13) at its
// stated tolerance and time budget and prints one PASS/FAIL line.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "k3/error.hpp"
#include "k3/identities.hpp"

using namespace k3;

namespace {

struct Outcome {
  bool pass = true;
  double worst = 0.0;
  int reports = 0;
  std::string note;

  void take(const VerifyReport& r) {
    ++reports;
    worst = std::max(worst, r.worst());
    if (!r.pass) {
      pass = false;
      for (const auto& res : r.residuals)
        if (!res.pass && note.size() < 200) note += r.name + ":" + res.label + " ";
    }
  }
  // Runs one check; a library error counts as a failure of the criterion.
  void attempt(const std::function<VerifyReport()>& fn) {
    try {
      take(fn());
    } catch (const Error& e) {
      ++reports;
      pass = false;
      if (note.size() < 200) note += std::string(e.what()) + "; ";
    }
  }
};

struct Criterion {
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

VerifyCtrl ctrl() { return VerifyCtrl{}; }

Outcome c1() {
  Outcome o;
  for (int k = 1; k <= 9; ++k) o.attempt([&] { return verify_jacobi(0.1 * k, ctrl()); });
  return o;
}

Outcome c2() {
  Outcome o;
  for (int k = 1; k <= 10; ++k) o.attempt([&] { return verify_gauss_transform(0.075 * k, ctrl()); });
  return o;
}

Outcome c3() {
  Outcome o;
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const ZMatrix z = random_real_z(rng, 0.5);
    o.attempt([&] { return verify_series_integral(z, 48, 1e-6, ctrl()); });
  }
  return o;
}

Outcome c4() {
  Outcome o;
  VerifyCtrl vc = ctrl();
  vc.tol.genus1 = 1e-10;
  for (int k = 0; k < 10; ++k) {
    const ZMatrix z = ZMatrix::real(0.08 * (k + 1), 0.0, 0.0, 0.85 - 0.07 * k);
    o.attempt([&] { return verify_factorization(z, vc); });
  }
  return o;
}

Outcome c5() {
  Outcome o;
  std::mt19937_64 rng(5);
  for (std::size_t k = 0; k < 10; ++k) {
    const Tau t = random_domain_point(rng);
    o.attempt([&] { return verify_theta_laws(t, k, 2, ctrl()); });
  }
  return o;
}

Outcome c6() {
  Outcome o;
  std::mt19937_64 rng(6);
  for (int k = 0; k < 10; ++k) {
    const Tau t = random_domain_point(rng);
    o.attempt([&] { return verify_2tau(t, ctrl()); });
  }
  return o;
}

Outcome c7() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (int k = 0; k < 5; ++k) {
    const Tau t = random_siegel_point(rng);
    o.attempt([&] { return verify_decomposition(t, ctrl()); });
  }
  return o;
}

Outcome c8() {
  Outcome o;
  std::mt19937_64 rng(8);
  for (const auto& g : sample_level_elements(20, 8)) {
    const Tau t = random_domain_point(rng);
    o.attempt([&] { return verify_group(g, t, ctrl()); });
  }
  return o;
}

Outcome c9() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 0.1);
  for (int k = 0; k < 5; ++k) {
    const ZMatrix z = ZMatrix::real(u(rng), u(rng), u(rng), u(rng));
    o.attempt([&] { return verify_thomae(z, ctrl()); });
  }
  return o;
}

Outcome c10() {
  Outcome o;
  o.attempt([] { return verify_degeneration(0.6, 0.6, 1e-4, ctrl()); });
  o.attempt([] { return verify_degeneration(0.55, 0.65, 1e-4, ctrl()); });
  return o;
}

Outcome c11() {
  Outcome o;
  std::mt19937_64 rng(11);
  for (MeanKind kind : {MeanKind::D4, MeanKind::Borchardt})
    for (int k = 0; k < 5; ++k) {
      const MeanState c = random_state(rng);
      o.attempt([&] { return verify_agm_limit(kind, c, ctrl()); });
    }
  return o;
}

Outcome c12() {
  Outcome o;
  std::mt19937_64 rng(12);
  for (FeKind kind : {FeKind::FE1, FeKind::FE2})
    for (int k = 0; k < 5; ++k) {
      const MeanState c = random_fe_state(rng);
      o.attempt([&] { return verify_fe(kind, c, ctrl()); });
    }
  return o;
}

Outcome c13() {
  Outcome o;
  std::mt19937_64 rng(13);
  for (int k = 0; k < 5; ++k) {
    const Config36 x = random_config(rng);
    const ZMatrix z = random_real_z(rng, 0.8);
    o.attempt([&] { return verify_configuration(x, z, ctrl()); });
  }
  for (int k = 0; k < 5; ++k) {
    const MeanState c = random_fe_state(rng);
    o.attempt([&] { return verify_preimage_d4(c, ctrl()); });
    o.attempt([&] { return verify_kummer(c, ctrl()); });
  }
  return o;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"Jacobi formula, nine lambdas, 1e-10", 1, c1},
      {"Gauss transform, ten points, 1e-12", 1, c2},
      {"series against Euler integrals, 20 points, 1e-6", 30, c3},
      {"factorization oracle, ten points, 1e-10", 1, c4},
      {"theta structural laws, ten tau, 1e-9", 20, c5},
      {"2tau formulas and products, ten tau, 1e-9", 20, c6},
      {"genus-2 decomposition, five tau, 1e-9", 10, c7},
      {"group embedding and automorphy factor, 20 elements, 1e-9", 5, c8},
      {"Thomae formula at five points in (0, 0.1), 1e-7", 60, c9},
      {"degeneration constant at eps = 1e-4, 1e-5", 10, c10},
      {"mean limits against closed forms, 1e-8", 30, c11},
      {"functional equations FE1 and FE2, 1e-8", 30, c12},
      {"configuration algebra, 1e-10 and 1e-12", 10, c13},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc == 2 ? std::atoi(argv[1]) : 0;
  if (n < 1 || n > static_cast<int>(criteria().size())) {
    std::fprintf(stderr, "usage: k3_acceptance N   (1 <= N <= %zu)\n", criteria().size());
    return 2;
  }
  const Criterion& c = criteria()[static_cast<std::size_t>(n - 1)];
  const auto t0 = std::chrono::steady_clock::now();
  const Outcome o = c.run();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= c.budget_s;
  const bool pass = o.pass && in_time;
  std::printf("criterion %2d %s: %s | reports %d, worst %.3e, %.2f s of %.0f s%s%s\n", n, pass ? "PASS" : "FAIL",
              c.title, o.reports, o.worst, secs, c.budget_s, in_time ? "" : " (over budget)",
              o.note.empty() ? "" : (" | " + o.note).c_str());
  return pass ? 0 : 1;
}
