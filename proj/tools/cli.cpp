#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "k3/error.hpp"
#include "k3/identities.hpp"

namespace k3::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kDefaultPrecision = 16;
constexpr const char* kPrecisionEnv = "K3_PRECISION";

// Output formatting ---------------------------------------------------------------

struct Writer {
  int precision = kDefaultPrecision;

  // Rounds to precision significant digits; the JSON dump then prints the
  // shortest decimal of the rounded double.
  Json num(double x) const {
    if (!std::isfinite(x)) return nullptr;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision - 1, x);
    return std::strtod(buf, nullptr);
  }
  Json cnum(Complex z) const { return Json{{"re", num(z.real())}, {"im", num(z.imag())}}; }
  Json zmat(const ZMatrix& z) const {
    Json a = Json::array();
    for (std::size_t k = 0; k < 4; ++k) a.push_back(cnum(z[k]));
    return a;
  }
  Json tau(const Tau& t) const {
    return Json::array({Json::array({cnum(t(0, 0)), cnum(t(0, 1))}), Json::array({cnum(t(1, 0)), cnum(t(1, 1))})});
  }
  Json vec(const std::vector<double>& v) const {
    Json a = Json::array();
    for (double x : v) a.push_back(num(x));
    return a;
  }
};

const char* basis_name(Basis b) {
  switch (b) {
    case Basis::Absolute: return "absolute";
    case Basis::Relative: return "relative";
    case Basis::Scaled: return "scaled";
    case Basis::LowerBound: return "lower_bound";
  }
  return "scaled";
}

Json report_json(const std::string& op, const VerifyReport& r, const Writer& w) {
  Json input = Json::object();
  for (const auto& [k, v] : r.inputs) input[k] = w.vec(v);
  Json residuals = Json::array();
  for (const auto& x : r.residuals) {
    residuals.push_back(Json{{"label", x.label},
                             {"lhs", w.cnum(x.lhs)},
                             {"rhs", w.cnum(x.rhs)},
                             {"abs", w.num(x.abs)},
                             {"rel", w.num(x.rel)},
                             {"tol", w.num(x.tol)},
                             {"basis", basis_name(x.basis)},
                             {"pass", x.pass}});
  }
  Json diags = Json::object();
  for (const auto& [k, v] : r.diagnostics) diags[k] = w.num(v);
  return Json{{"op", op},
              {"input", input},
              {"result", Json{{"worst", w.num(r.worst())}, {"residuals", residuals}}},
              {"diagnostics", diags},
              {"pass", r.pass}};
}

Json error_json(const std::string& op, const std::string& code, const std::string& message) {
  return Json{{"op", op}, {"error", Json{{"code", code}, {"message", message}}}, {"pass", false}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string scalar_text(const Json& j) {
  if (j.is_null()) return "nan";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_complex(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("re") && j.contains("im"); }

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, Json>>& rows) {
  if (is_complex(j) || !j.is_structured()) {
    rows.emplace_back(path, j);
    return;
  }
  if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], path + "[" + std::to_string(k) + "]", rows);
    return;
  }
  for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
}

constexpr const char* kCsvHeader = "op,kind,key,value_re,value_im,ref_re,ref_im,abs,rel,tol,pass";

// One stable column layout for every document: residual rows, then result
// rows for non-report operations, then diagnostics.
void write_csv(const Json& doc, std::ostream& os) {
  const std::string op = csv_field(doc.value("op", ""));
  const std::string pass = doc.value("pass", false) ? "true" : "false";
  if (doc.contains("error")) {
    os << op << ",error," << csv_field(doc["error"]["code"].get<std::string>()) << ","
       << csv_field(doc["error"]["message"].get<std::string>()) << ",,,,,,," << pass << "\n";
    return;
  }
  const Json& result = doc["result"];
  if (result.contains("residuals")) {
    for (const auto& r : result["residuals"]) {
      os << op << ",residual," << csv_field(r["label"].get<std::string>()) << "," << scalar_text(r["lhs"]["re"]) << ","
         << scalar_text(r["lhs"]["im"]) << "," << scalar_text(r["rhs"]["re"]) << "," << scalar_text(r["rhs"]["im"])
         << "," << scalar_text(r["abs"]) << "," << scalar_text(r["rel"]) << "," << scalar_text(r["tol"]) << ","
         << (r["pass"].get<bool>() ? "true" : "false") << "\n";
    }
  } else {
    std::vector<std::pair<std::string, Json>> rows;
    flatten(result, "", rows);
    for (const auto& [key, v] : rows) {
      os << op << ",result," << csv_field(key) << ",";
      if (is_complex(v)) os << scalar_text(v["re"]) << "," << scalar_text(v["im"]);
      else os << csv_field(scalar_text(v)) << ",";
      os << ",,,,,," << pass << "\n";
    }
  }
  if (doc.contains("diagnostics")) {
    for (const auto& [k, v] : doc["diagnostics"].items())
      os << op << ",diagnostic," << csv_field(k) << "," << scalar_text(v) << ",,,,,,," << pass << "\n";
  }
}

// Input helpers ---------------------------------------------------------------------

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(const std::vector<double>& v, std::size_t n, const char* flag) {
  if (v.size() != n) throw UsageError(std::string(flag) + " expects " + std::to_string(n) + " comma-separated numbers");
}

ZMatrix zmatrix_of(const std::vector<double>& v) {
  need(v, 4, "--z");
  return ZMatrix::real(v[0], v[1], v[2], v[3]);
}

MeanState state_of(const std::vector<double>& v) {
  need(v, 4, "--c");
  return MeanState{{v[0], v[1], v[2], v[3]}};
}

Tau tau_of_args(const std::vector<double>& v) {
  need(v, 8, "--tau");
  Tau t;
  t << Complex{v[0], v[1]}, Complex{v[2], v[3]}, Complex{v[4], v[5]}, Complex{v[6], v[7]};
  return t;
}

void apply_tolerance(Tolerances& tol, const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) throw UsageError("--tol expects name=value");
  const std::string name = arg.substr(0, eq);
  double value = 0.0;
  try {
    value = std::stod(arg.substr(eq + 1));
  } catch (const std::exception&) {
    throw UsageError("--tol value is not a number: " + arg);
  }
  const std::map<std::string, double*> fields{
      {"genus1", &tol.genus1},         {"gauss", &tol.gauss},
      {"lattice", &tol.lattice},       {"thomae", &tol.thomae},
      {"survivors", &tol.survivors},   {"degeneration", &tol.degeneration},
      {"mean", &tol.mean},             {"square_ratio", &tol.square_ratio},
      {"rate_exponent", &tol.rate_exponent}, {"configuration", &tol.configuration},
      {"round_trip", &tol.round_trip}};
  const auto it = fields.find(name);
  if (it == fields.end()) throw UsageError("unknown tolerance name: " + name);
  *it->second = value;
}

// Parameters shared by the verify subcommands; each subcommand registers the
// flags it reads.
struct Params {
  std::vector<double> z, c, tau;
  double lambda = 0.5, x = 0.5, z1 = 0.6, z4 = 0.6, eps = 1e-4;
  std::size_t nodes = 48, element = 0, qp_char = 0, pre_steps = 0;
  int qp_radius = 2;
};

// Inputs drawn for sweeps and for verify calls that omit them.
struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  Tau domain() { return random_domain_point(rng); }
  Tau siegel() { return random_siegel_point(rng); }
  GroupElem element() { return sample_level_elements(1, rng())[0]; }
  // A neighbourhood of (5/8, 1/16, 1/16, 5/8) keeps every normal form in the polydisc.
  ZMatrix thomae_point() {
    return ZMatrix::real(0.625 + uniform(-0.02, 0.02), 0.0625 + uniform(-0.02, 0.02), 0.0625 + uniform(-0.02, 0.02),
                         0.625 + uniform(-0.02, 0.02));
  }
  MeanState pre_stepped_state() { return random_fe_state(rng); }
};

using VerifyFn = std::function<VerifyReport(const Params&, Sampler&, const VerifyCtrl&)>;

struct VerifyOp {
  std::string name;
  std::string help;
  std::vector<std::string> flags;
  VerifyFn fn;
};

Tau tau_or(const Params& p, Sampler& s, bool symmetric) {
  if (!p.tau.empty()) return tau_of_args(p.tau);
  return symmetric ? s.siegel() : s.domain();
}

GroupElem element_of(const Params& p, Sampler& s) {
  if (p.element == 0) return s.element();
  return sample_level_elements(p.element, s.rng())[p.element - 1];
}

ZMatrix z_or(const Params& p, ZMatrix fallback) { return p.z.empty() ? fallback : zmatrix_of(p.z); }
MeanState c_or(const Params& p, MeanState fallback) { return p.c.empty() ? fallback : state_of(p.c); }

// FE states given on the command line may need Borchardt steps to bring z, w inside the polydisc.
MeanState fe_state(const Params& p, Sampler& s) {
  MeanState c = c_or(p, s.pre_stepped_state());
  for (std::size_t k = 0; k < p.pre_steps; ++k) c = mean_step(MeanKind::Borchardt, c);
  return c;
}

std::vector<VerifyOp> verify_ops() {
  return {
      {"jacobi", "Jacobi's formula and the genus-one 2tau formulas", {"lambda"},
       [](const Params& p, Sampler&, const VerifyCtrl& c) { return verify_jacobi(p.lambda, c); }},
      {"gauss", "Gauss quadratic transformation of 2F1", {"x"},
       [](const Params& p, Sampler&, const VerifyCtrl& c) { return verify_gauss_transform(p.x, c); }},
      {"factorization", "F_S at z2 = z3 = 0 against a product of 2F1", {"z"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) {
         const ZMatrix z = z_or(p, ZMatrix::real(s.uniform(0.05, 0.9), 0, 0, s.uniform(0.05, 0.9)));
         return verify_factorization(z, c);
       }},
      {"series-integral", "F_S and F_T against Euler-integral quadrature", {"z", "nodes"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) {
         return verify_series_integral(z_or(p, random_real_z(s.rng, 0.5)), p.nodes, 1e-6, c);
       }},
      {"laws", "odd vanishing, quasi-periodicity, transpose and class invariance", {"tau", "qp_char", "qp_radius"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) {
         return verify_theta_laws(tau_or(p, s, false), p.qp_char, p.qp_radius, c);
       }},
      {"2tau", "duplication formula with its averaged and product forms", {"tau"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) { return verify_2tau(tau_or(p, s, false), c); }},
      {"decomposition", "Theta_ab as a product of genus-2 Riemann thetas", {"tau"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) { return verify_decomposition(tau_or(p, s, true), c); }},
      {"transform", "theta transformation law under a level-(1+i) element", {"tau", "element"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) {
         const Tau t = tau_or(p, s, false);
         return verify_theta_transform(element_of(p, s), t, c);
       }},
      {"group", "exact group checks and the automorphy factor", {"tau", "element"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) {
         const Tau t = tau_or(p, s, false);
         return verify_group(element_of(p, s), t, c);
       }},
      {"thomae", "Theta^2 against brackets times omega_34^2", {"z"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) { return verify_thomae(z_or(p, s.thomae_point()), c); }},
      {"degeneration", "the constant 1/(4 pi^4) as z2 = z3 -> 0", {"z1", "z4", "eps"},
       [](const Params& p, Sampler&, const VerifyCtrl& c) { return verify_degeneration(p.z1, p.z4, p.eps, c); }},
      {"configuration", "brackets, association, normal forms and Pluecker inversion", {"z"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) {
         const Config36 x = random_config(s.rng);
         return verify_configuration(x, z_or(p, random_real_z(s.rng, 0.8)), c);
       }},
      {"preimage-d4", "the two preimages with x<123> = 0", {"c"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) { return verify_preimage_d4(c_or(p, random_state(s.rng)), c); }},
      {"kummer", "the Kummer-locus configuration", {"c"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) { return verify_kummer(c_or(p, s.pre_stepped_state()), c); }},
      {"fe1", "functional equations from the D4 mean", {"c", "pre_steps"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) { return verify_fe(FeKind::FE1, fe_state(p, s), c); }},
      {"fe2", "functional equations from the Borchardt mean", {"c", "pre_steps"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) { return verify_fe(FeKind::FE2, fe_state(p, s), c); }},
      {"agm-d4", "D4 mean limit against its closed forms", {"c"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) {
         return verify_agm_limit(MeanKind::D4, c_or(p, random_state(s.rng)), c);
       }},
      {"agm-borchardt", "Borchardt mean limit against its closed forms", {"c"},
       [](const Params& p, Sampler& s, const VerifyCtrl& c) {
         return verify_agm_limit(MeanKind::Borchardt, c_or(p, random_state(s.rng)), c);
       }},
  };
}

void add_param_flag(CLI::App* sub, Params& p, const std::string& flag) {
  if (flag == "z") sub->add_option("--z", p.z, "z1,z2,z3,z4")->delimiter(',');
  else if (flag == "c") sub->add_option("--c", p.c, "c1,c2,c3,c4")->delimiter(',');
  else if (flag == "tau") sub->add_option("--tau", p.tau, "re,im of tau11,tau12,tau21,tau22")->delimiter(',');
  else if (flag == "lambda") sub->add_option("--lambda", p.lambda, "modulus in (0, 1)");
  else if (flag == "x") sub->add_option("--x", p.x, "argument in [0, 1)");
  else if (flag == "nodes") sub->add_option("--nodes", p.nodes, "Gauss-Jacobi nodes per axis");
  else if (flag == "element") sub->add_option("--element", p.element, "index k >= 1 into the seeded sample; 0 draws one");
  else if (flag == "qp_char") sub->add_option("--qp-char", p.qp_char, "even characteristic index for quasi-periodicity");
  else if (flag == "qp_radius") sub->add_option("--qp-radius", p.qp_radius, "sup-norm radius of the shifts n");
  else if (flag == "z1") sub->add_option("--z1", p.z1, "z1 in (0, 1)");
  else if (flag == "z4") sub->add_option("--z4", p.z4, "z4 in (0, 1)");
  else if (flag == "pre_steps") sub->add_option("--pre-steps", p.pre_steps, "Borchardt steps applied to --c first");
  else if (flag == "eps") sub->add_option("--eps", p.eps, "common value of z2 and z3");
}

// Non-verify operations --------------------------------------------------------------

struct EvalArgs {
  std::vector<double> z, alpha, x{0.0};
  double a = 0.5, b = 0.5, c = 1.0;
};

Json eval_json(const std::string& which, const EvalArgs& e, const SeriesCtrl& sc, const Writer& w) {
  Json input = Json::object();
  SeriesResult r;
  if (which == "2f1") {
    if (e.x.empty() || e.x.size() > 2) throw UsageError("--x expects re[,im]");
    const Complex x{e.x[0], e.x.size() > 1 ? e.x[1] : 0.0};
    input = Json{{"a", w.num(e.a)}, {"b", w.num(e.b)}, {"c", w.num(e.c)}, {"x", w.cnum(x)}};
    r = gauss2f1(e.a, e.b, e.c, x, sc);
  } else {
    const ZMatrix z = zmatrix_of(e.z);
    HGParams alpha = HGParams::half();
    if (!e.alpha.empty()) {
      need(e.alpha, 6, "--alpha");
      for (std::size_t k = 0; k < 6; ++k) alpha.alpha[k] = e.alpha[k];
    }
    input = Json{{"z", w.vec(e.z)}};
    if (!e.alpha.empty()) input["alpha"] = w.vec(e.alpha);
    r = which == "fs" ? fs(alpha, z, sc) : ft(alpha, z, sc);
  }
  return Json{{"op", "eval " + which},
              {"input", input},
              {"result", Json{{"value", w.cnum(r.value)}}},
              {"diagnostics", Json{{"degree", r.degree}}},
              {"pass", true}};
}

Json theta_json(const std::vector<double>& tau_args, const std::string& chr, const LatticeCtrl& lc, const Writer& w) {
  const Tau t = tau_of_args(tau_args);
  Json input{{"tau", w.tau(t)}};
  Json result = Json::object();
  int radius = 0;
  if (!chr.empty()) {
    if (chr.size() != 4 || chr.find_first_not_of("01") != std::string::npos)
      throw UsageError("--char expects four bits, e.g. 0110");
    input["char"] = chr;
    const auto th = theta_char(Characteristic::parse(chr), t, lc);
    result["value"] = w.cnum(th.value);
    radius = th.radius;
  } else {
    Json values = Json::object();
    for (const auto& c : Characteristic::all()) {
      const auto th = theta_char(c, t, lc);
      values[c.bits()] = w.cnum(th.value);
      radius = std::max(radius, th.radius);
    }
    result["theta"] = values;
    Json squares = Json::object();
    const BracketVector sq = theta_vector(t, lc);
    for (const auto& p : Partition33::all()) squares[p.label()] = w.cnum(sq[p.index()]);
    result["theta_squared_by_partition"] = squares;
  }
  return Json{{"op", "theta"},
              {"input", input},
              {"result", result},
              {"diagnostics", Json{{"radius", radius}, {"lambda_min", w.num(hermitian_part_min_eig(t))}}},
              {"pass", true}};
}

Json periods_json(const std::vector<double>& zv, const SeriesCtrl& sc, const Writer& w) {
  const ZMatrix z = zmatrix_of(zv);
  const PeriodSquares ps = period_squares(z, sc);
  const SignResolution sr = resolve_signs(ps.omega_sq);
  const Tau t = tau_of(sr.omega);
  Json sq = Json::object(), om = Json::object(), zeta = Json::object(), diag = Json::object();
  for (PeriodIndex ij : kAllPeriods) {
    const auto k = static_cast<std::size_t>(ij);
    sq[label(ij)] = w.cnum(ps.omega_sq[k]);
    om[label(ij)] = w.cnum(sr.omega(static_cast<Eigen::Index>(k)));
    zeta[label(ij)] = w.zmat(ps.zeta[k]);
    diag[std::string("degree_") + label(ij)] = ps.degrees[k];
  }
  Json jdv = Json::array();
  const Vec6 j = jd(t);
  for (int k = 0; k < 6; ++k) jdv.push_back(w.cnum(j(k)));
  diag["survivors"] = sr.survivors.size();
  diag["chosen"] = sr.chosen;
  diag["reference_pattern"] = sr.matches_reference_pattern;
  diag["ratio_spread"] = w.num(ps.ratio_spread);
  diag["lambda_min"] = w.num(hermitian_part_min_eig(t));
  return Json{{"op", "periods"},
              {"input", Json{{"z", w.vec(zv)}}},
              {"result", Json{{"omega_squared", sq}, {"omega", om}, {"tau", w.tau(t)}, {"jd", jdv}, {"zeta", zeta}}},
              {"diagnostics", diag},
              {"pass", true}};
}

Json agm_json(MeanKind kind, const std::vector<double>& cv, bool with_formula, const SeriesCtrl& sc,
              const Writer& w) {
  const MeanState c = state_of(cv);
  const IterResult it = iterate_mean(kind, c);
  Json result{{"limit", w.num(it.limit)}, {"iterations", it.iterations}};
  Json gaps = Json::array();
  for (double g : it.trace.gaps) gaps.push_back(w.num(g));
  Json diag{{"gaps", gaps}, {"rate_constant", w.num(it.trace.rate_constant)},
            {"rate_exponent", w.num(it.trace.rate_exponent)}};
  if (with_formula) {
    const LimitFormula lf = limit_formula(kind, c, sc);
    result["value_z"] = w.num(lf.value_z);
    result["value_w"] = w.num(lf.value_w);
    result["z"] = w.zmat(lf.z);
    result["w"] = w.zmat(lf.w);
    diag["pre_steps"] = lf.pre_steps;
    diag["degree_z"] = lf.degree_z;
    diag["degree_w"] = lf.degree_w;
  }
  return Json{{"op", std::string("agm ") + to_string(kind)},
              {"input", Json{{"c", w.vec(cv)}}},
              {"result", result},
              {"diagnostics", diag},
              {"pass", true}};
}

// Emission -------------------------------------------------------------------------

struct Emitter {
  std::ostream& os;
  bool csv = false;
  bool header_done = false;

  void emit(const Json& doc) {
    if (csv) {
      if (!header_done) os << kCsvHeader << "\n";
      header_done = true;
      write_csv(doc, os);
    } else {
      os << doc.dump() << "\n";
    }
  }
};

int precision_default() {
  const char* env = std::getenv(kPrecisionEnv);
  if (env == nullptr || *env == '\0') return kDefaultPrecision;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0') return -1;
  return static_cast<int>(v);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Numerics for F_S, K3 periods, theta constants and four-term means", "k3"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  int precision = precision_default();
  std::string format = "json";
  std::string out_file;
  std::vector<std::string> tol_overrides;
  std::uint64_t seed = 1;
  app.add_option("--precision", precision, "significant digits in output (>= 10); default $K3_PRECISION or 16");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_file, "write output to FILE instead of stdout");
  app.add_option("--tol", tol_overrides, "tolerance override name=value (repeatable)");
  app.add_option("--seed", seed, "seed for randomized inputs");

  std::string op;

  // eval
  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate F_S, F_T or 2F1");
  eval->require_subcommand(1);
  for (const char* which : {"fs", "ft"}) {
    auto* s = eval->add_subcommand(which, std::string("series ") + which);
    s->add_option("--z", eval_args.z, "z1,z2,z3,z4")->delimiter(',')->required();
    s->add_option("--alpha", eval_args.alpha, "six real parameters summing to 3")->delimiter(',');
  }
  auto* f21 = eval->add_subcommand("2f1", "Gauss hypergeometric series");
  f21->add_option("--a", eval_args.a);
  f21->add_option("--b", eval_args.b);
  f21->add_option("--c", eval_args.c);
  f21->add_option("--x", eval_args.x, "re[,im]")->delimiter(',')->required();

  // theta
  std::vector<double> theta_tau;
  std::string theta_char_bits;
  auto* theta = app.add_subcommand("theta", "theta constants at tau");
  theta->add_option("--tau", theta_tau, "re,im of tau11,tau12,tau21,tau22")->delimiter(',')->required();
  theta->add_option("--char", theta_char_bits, "characteristic bits a1a2b1b2");

  // periods
  std::vector<double> periods_z;
  auto* periods = app.add_subcommand("periods", "periods, signs and tau for the normal form at z");
  periods->add_option("--z", periods_z, "z1,z2,z3,z4")->delimiter(',')->required();

  // agm
  std::vector<double> agm_c;
  bool limit_formula_flag = false;
  auto* agm = app.add_subcommand("agm", "four-term mean iterations");
  agm->require_subcommand(1);
  for (const char* which : {"d4", "borchardt"}) {
    auto* s = agm->add_subcommand(which, std::string("the ") + which + " mean");
    s->add_option("--c", agm_c, "c1,c2,c3,c4")->delimiter(',')->required();
    s->add_flag("--limit-formula", limit_formula_flag, "also evaluate the closed forms");
  }

  // verify
  const std::vector<VerifyOp> ops = verify_ops();
  Params params;
  auto* verify = app.add_subcommand("verify", "check one identity and report residuals");
  verify->require_subcommand(1);
  for (const auto& vop : ops) {
    auto* s = verify->add_subcommand(vop.name, vop.help);
    for (const auto& f : vop.flags) add_param_flag(s, params, f);
  }

  // sweep
  std::size_t sweep_n = 1;
  auto* sweep = app.add_subcommand("sweep", "seeded sweeps over every verification");
  sweep->require_subcommand(1);
  auto* verify_all = sweep->add_subcommand("verify-all", "run every verify op n times, one JSON line per report");
  verify_all->add_option("--n", sweep_n, "rounds");

  Writer writer;
  VerifyCtrl ctrl;
  try {
    app.parse(argc, argv);
    if (precision < 10) throw UsageError("precision must be at least 10 (flag or " + std::string(kPrecisionEnv) + ")");
    writer.precision = precision;
    for (const auto& t : tol_overrides) apply_tolerance(ctrl.tol, t);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, out);
      return kPass;
    }
    out << error_json("usage", "usage", e.what()).dump() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    out << error_json("usage", "usage", e.what()).dump() << "\n";
    return kUsage;
  }

  std::ofstream file;
  if (!out_file.empty()) {
    file.open(out_file);
    if (!file) {
      out << error_json("usage", "usage", "cannot open " + out_file).dump() << "\n";
      return kUsage;
    }
  }
  Emitter em{out_file.empty() ? out : file, format == "csv"};

  auto guarded = [&](const std::string& name, const std::function<Json()>& body) -> int {
    try {
      const Json doc = body();
      em.emit(doc);
      return doc["pass"].get<bool>() ? kPass : kFailed;
    } catch (const Error& e) {
      em.emit(error_json(name, std::string(to_string(e.code())), e.what()));
      return kNumeric;
    } catch (const UsageError& e) {
      em.emit(error_json(name, "usage", e.what()));
      return kUsage;
    }
  };

  if (eval->parsed()) {
    const std::string which = eval->get_subcommands().front()->get_name();
    return guarded("eval " + which, [&] { return eval_json(which, eval_args, ctrl.series, writer); });
  }
  if (theta->parsed()) {
    return guarded("theta", [&] { return theta_json(theta_tau, theta_char_bits, ctrl.lattice, writer); });
  }
  if (periods->parsed()) {
    return guarded("periods", [&] { return periods_json(periods_z, ctrl.series, writer); });
  }
  if (agm->parsed()) {
    const MeanKind kind = agm->get_subcommands().front()->get_name() == "d4" ? MeanKind::D4 : MeanKind::Borchardt;
    return guarded(std::string("agm ") + to_string(kind),
                   [&] { return agm_json(kind, agm_c, limit_formula_flag, ctrl.series, writer); });
  }
  if (verify->parsed()) {
    const std::string name = verify->get_subcommands().front()->get_name();
    for (const auto& vop : ops) {
      if (vop.name != name) continue;
      Sampler sampler(seed);
      return guarded("verify " + name, [&] { return report_json("verify " + name, vop.fn(params, sampler, ctrl), writer); });
    }
  }
  if (sweep->parsed()) {
    // Sequential on purpose: one generator, fixed draw order, reproducible lines.
    Sampler sampler(seed);
    const Params defaults;
    int worst = kPass;
    for (std::size_t round = 0; round < sweep_n; ++round) {
      for (const auto& vop : ops) {
        Params p = defaults;
        p.lambda = sampler.uniform(0.05, 0.95);
        p.x = sampler.uniform(0.05, 0.8);
        p.z1 = sampler.uniform(0.55, 0.65);
        p.z4 = sampler.uniform(0.55, 0.65);
        p.qp_radius = 1;
        const int code =
            guarded("verify " + vop.name, [&] { return report_json("verify " + vop.name, vop.fn(p, sampler, ctrl), writer); });
        if (code == kNumeric || (code == kFailed && worst == kPass)) worst = code;
      }
    }
    return worst;
  }
  return kUsage;
}

}  // namespace k3::cli
