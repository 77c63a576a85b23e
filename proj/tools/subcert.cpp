// subcert: certification toolkit for systems of quadratic differential
// operators.  Exit codes: 0 = positive result, 2 = negative result (well-posed
// input, property not certified), 3 = input error, 4 = internal error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "subcert/polynomial.hpp"
#include "subcert/quantize.hpp"
#include "subcert/report.hpp"
#include "subcert/version.hpp"

namespace {

using namespace subcert;

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 2;
constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

struct CommonArgs {
  std::string file;
  std::string format = "text";
  unsigned long long seed = 42;
};

SystemOfForms load_or_throw(const std::string& file) {
  return load_system_file(file);  // throws std::runtime_error on bad input
}

ReportMeta make_meta(const CommonArgs& c, const std::string& command,
                     const SystemOfForms& sys) {
  ReportMeta meta;
  meta.command = command;
  meta.input = c.file;
  meta.digest = system_digest(sys);
  meta.seed = c.seed;
  meta.format = c.format;
  return meta;
}

int run_analyze(const CommonArgs& c, int kmax, double tol) {
  SystemOfForms sys = load_or_throw(c.file);
  AnalysisReport rep;
  rep.n = sys.space.n;
  rep.num_forms = sys.size();
  rep.hypothesis = check_nonnegative_real_parts(sys);
  rep.cert = certify(sys, system_digest(sys), kmax, tol);

  QuadraticForm sum = sys.forms[0];
  for (int i = 1; i < sys.size(); ++i) sum = sum.plus(sys.forms[i]);
  Subspace S = singular_space(sum, tol);
  rep.singular_dim = static_cast<int>(S.basis.cols());
  rep.ellipticity = partial_ellipticity(sum, S, c.seed);

  std::cout << render_analysis(rep, make_meta(c, "analyze", sys));
  return (rep.hypothesis.ok && rep.cert.satisfied) ? kExitPositive : kExitNegative;
}

int run_verify(const CommonArgs& c, std::vector<int> levels, int k0_opt, int guard) {
  SystemOfForms sys = load_or_throw(c.file);
  VerifyReport rep;
  rep.n = sys.space.n;
  rep.num_forms = sys.size();
  int k0 = k0_opt;
  if (k0 < 0) {
    Certificate cert = certify(sys, system_digest(sys));
    if (!cert.k0) {
      std::cerr << "tower does not reach zero; pass --k0 to probe anyway\n";
      return kExitNegative;
    }
    k0 = *cert.k0;
  }
  rep.k0 = k0;
  rep.rayleigh = subellipticity_constant(sys, k0, levels, guard);
  std::cout << render_verify(rep, make_meta(c, "verify", sys));
  return rep.rayleigh.trend == "stable" ? kExitPositive : kExitNegative;
}

int run_weights(const CommonArgs& c, int m, int radii, double radius, int directions) {
  SystemOfForms sys = load_or_throw(c.file);
  WeightsReport rep;
  rep.n = sys.space.n;
  rep.num_forms = sys.size();
  int level = m;
  if (level < 1) {
    Certificate cert = certify(sys, system_digest(sys));
    level = cert.k0 ? *cert.k0 : 1;
  }
  rep.m = level;
  SearchOptions opts;
  opts.region.radii = radii;
  opts.region.r_max = radius;
  opts.region.directions = directions;
  opts.region.seed = c.seed;
  rep.search = construct_weight(sys, level, opts);
  std::cout << render_weights(rep, make_meta(c, "weights", sys));
  return rep.search.success ? kExitPositive : kExitNegative;
}

int run_wick(const CommonArgs& c, int levels, int nodes, double tol) {
  SystemOfForms sys = load_or_throw(c.file);
  WickReport rep;
  rep.n = sys.space.n;
  rep.levels = levels;
  rep.quadrature_nodes = nodes;

  QuadraticForm sum = sys.forms[0];
  for (int i = 1; i < sys.size(); ++i) sum = sum.plus(sys.forms[i]);
  ConventionTransport tr = convention_transport(sum);
  rep.transport_residual = tr.identity_residual;

  HermiteBasis basis(sys.space.n, levels, Convention::appendix);
  PolynomialSymbol a = PolynomialSymbol::from_quadratic(tr.q_tilde);

  OperatorMatrix weyl = weyl_quantize(a, basis);
  OperatorMatrix wick = wick_quantize(a, basis);
  rep.smoothing_correction = (wick.A - weyl.A).cwiseAbs().maxCoeff();

  QuadratureWick quad = wick_by_quadrature(a, basis, nodes);
  rep.identity_residual = quad.identity_residual;

  CompositionResidual comp = composition_residual(a, a.conjugate(), basis);
  rep.composition_residual = comp.interior_norm;

  std::cout << render_wick(rep, make_meta(c, "wick", sys));
  if (tol > 0 && rep.identity_residual > tol) return kExitNegative;
  return kExitPositive;
}

int run_example(const std::string& name, int n, int k0, const std::string& out) {
  SystemOfForms sys;
  if (name == "standard") {
    sys = example_system(n);
  } else if (name == "position") {
    sys = example_family_position(n);
  } else if (name == "momentum") {
    sys = example_family_momentum(n);
  } else if (name == "deep") {
    sys = deep_tower_system(k0);
  } else if (name == "elliptic") {
    SystemOfForms s{PhaseSpace{n}};
    CMat Q = CMat::Identity(2 * n, 2 * n);
    s.push(QuadraticForm(s.space, std::complex<double>(1.0, 1.0) * Q), "q");
    sys = s;
  } else if (name == "violating") {
    SystemOfForms s{PhaseSpace{n}};
    CMat Q = CMat::Zero(2 * n, 2 * n);
    Q(0, 0) = 1.0;
    Q(n, n) = 1.0;
    s.push(QuadraticForm(s.space, Q), "q");
    sys = s;
  } else {
    std::cerr << "unknown example '" << name
              << "' (choose standard, position, momentum, deep, elliptic, violating)\n";
    return kExitInput;
  }
  const std::string text = emit_system_json(sys);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return kExitInput;
    }
    f << text;
  }
  return kExitPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification toolkit for systems of quadratic differential operators"};
  app.set_version_flag("--version", std::string(subcert::version_string));
  app.require_subcommand(1);

  CommonArgs common;
  auto add_common = [&](CLI::App* sub, bool with_seed = true) {
    sub->add_option("file", common.file, "system JSON file")->required();
    sub->add_option("--format", common.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    if (with_seed) sub->add_option("--seed", common.seed, "sampling seed");
  };

  int kmax = -1;
  double tol = subcert::kernel_rel_tol;
  auto* analyze = app.add_subcommand(
      "analyze", "kernel tower, loss exponent, singular space");
  add_common(analyze);
  analyze->add_option("--kmax", kmax, "tower depth cap (default 2n)");
  analyze->add_option("--tol", tol, "relative rank tolerance");

  std::vector<int> levels;
  int k0_opt = -1, guard = 2;
  auto* verify = app.add_subcommand(
      "verify", "truncated-operator subellipticity probe");
  add_common(verify, false);
  verify->add_option("--levels", levels, "basis levels to probe (default 8 16 24 32)");
  verify->add_option("--k0", k0_opt, "override tower depth for the weight exponent");
  verify->add_option("--guard", guard, "guard band (>= 2)");

  int m = -1, radii = 24, directions = 128;
  double radius = 1e3;
  auto* weights = app.add_subcommand(
      "weights", "construct and validate a weight function family");
  add_common(weights);
  weights->add_option("--m", m, "construction depth (default: tower k0)");
  weights->add_option("--samples", directions, "directions per radius");
  weights->add_option("--radii", radii, "number of radii");
  weights->add_option("--radius", radius, "outer sample radius");

  int qlevels = 6, nodes = 12;
  double wick_tol = -1.0;
  auto* wick = app.add_subcommand(
      "wick", "quantization diagnostics on a truncated Hermite basis");
  add_common(wick, false);
  wick->add_option("--levels", qlevels, "basis level cutoff");
  wick->add_option("--nodes", nodes, "quadrature nodes per coordinate");
  wick->add_option("--tol", wick_tol, "fail if the identity residual exceeds this");

  std::string example_name = "standard", example_out;
  int example_n = 2, example_k0 = 2;
  auto* example = app.add_subcommand("example", "emit a built-in system file");
  example->add_option("name", example_name,
                      "standard | position | momentum | deep | elliptic | violating");
  example->add_option("-n,--n", example_n, "phase-space dimension parameter");
  example->add_option("--k0", example_k0, "tower depth for 'deep' (2 or 3)");
  example->add_option("-o,--out", example_out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPositive : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(common, kmax, tol);
    if (*verify) return run_verify(common, levels, k0_opt, guard);
    if (*weights) return run_weights(common, m, radii, radius, directions);
    if (*wick) return run_wick(common, qlevels, nodes, wick_tol);
    if (*example) return run_example(example_name, example_n, example_k0, example_out);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
