// jscat: forward and inverse scattering for finitely supported Jacobi operators.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "jacobi/error.hpp"
#include "jacobi/inverse.hpp"
#include "jacobi/io.hpp"
#include "jacobi/kernels.hpp"
#include "jacobi/scattering.hpp"
#include "jacobi/stability.hpp"

using namespace jacobi;

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

JacobiOperator load_operator(const std::string& path) { return operator_from_json(read_json_file(path)); }

struct Options {
  std::string input;
  std::string input2;
  std::string output;
  double tol_root = 1e-10;
  double tol_term = 1e-8;
  double zstar = 2.0;
  std::vector<double> eps;
  std::vector<double> radius;
  int trials = 4;
  std::uint64_t seed = 1;
  std::string summary;
  std::string mode = "uniform_disk";
  double delta = 0.0;
  int nodes = 512;
  unsigned threads = 0;
  bool strict = false;
};

ScatteringOptions scattering_options(const Options& o) {
  ScatteringOptions so;
  so.roots.root_tol = o.tol_root;
  return so;
}

ReconstructOptions reconstruct_options(const Options& o) {
  ReconstructOptions ro;
  ro.calibrate.z_star = o.zstar;
  ro.strip.term_tol = o.tol_term;
  return ro;
}

int cmd_validate(const Options& o) {
  const JacobiOperator op = load_operator(o.input);
  const auto violations = validate(op);
  std::ostringstream out;
  for (const Violation& v : violations) out << v.rule << " at n = " << v.index << ": " << v.message << "\n";
  if (violations.empty()) out << "ok\n";
  write_text(o.output, out.str());
  return violations.empty() ? 0 : 2;
}

int cmd_forward(const Options& o) {
  const ScatteringData sd = scattering(load_operator(o.input), scattering_options(o));
  write_text(o.output, to_json(sd).dump(2) + "\n");
  return 0;
}

int cmd_inverse(const Options& o) {
  RootData rd = root_data_from_json(read_json_file(o.input));
  if (!o.radius.empty()) {
    const double R = o.radius.front();
    auto drop = [&](std::vector<cplx>& v) {
      std::erase_if(v, [&](const cplx& z) { return std::abs(z) >= R; });
    };
    drop(rd.poles);
    drop(rd.zeros);
    rd.disk_radius = R;
  }
  ReconstructOptions ro = reconstruct_options(o);
  // hand-entered roots are rounded, so defects are reported instead of fatal
  ro.lenient = !o.strict;
  const ReconstructionReport rep = reconstruct(rd, ro);
  write_text(o.output, to_json(rep).dump(2) + "\n");
  return 0;
}

int cmd_roundtrip(const Options& o) {
  const JacobiOperator op = load_operator(o.input);
  const ScatteringData sd = scattering(op, scattering_options(o));
  const ReconstructionReport rep = reconstruct(root_data_from(sd), reconstruct_options(o));
  // the inverse map returns the representative with N^- = 0
  const JacobiOperator target =
      rep.sign_branch == SignBranch::free ? JacobiOperator::free() : translate(op, -op.n_minus());
  std::ostringstream out;
  out << "max_b_err " << fmt(max_b_difference(target, rep.op)) << "\n";
  out << "max_a2_err " << fmt(max_a2_difference(target, rep.op)) << "\n";
  out << "A_err " << fmt(std::abs(rep.A - op.a_product())) << "\n";
  write_text(o.output, out.str());
  return 0;
}

int cmd_check(const Options& o) {
  const JacobiOperator op = load_operator(o.input);
  const ScatteringData sd = scattering(op, scattering_options(o));
  const ScatteringIdentities id = check_scattering_identities(op, sd);
  std::ostringstream out;
  out << "plucker " << fmt(id.plucker / id.plucker_scale) << "\n";
  out << "threshold_plus " << fmt(id.threshold_plus) << "\n";
  out << "threshold_minus " << fmt(id.threshold_minus) << "\n";
  out << "w_at_zero " << fmt(id.w_at_zero) << "\n";
  out << "s_leading " << fmt(id.s_leading) << "\n";
  out << "kernel_recursion " << fmt(id.kernel_recursion) << "\n";
  out << "kernel_plus_sum " << fmt(id.kernel_plus_sum) << "\n";
  out << "kernel_minus_sum " << fmt(id.kernel_minus_sum) << "\n";
  for (const NormingConstant& nc : sd.norming) {
    out << "norming z=" << fmt(nc.z.real()) << " gamma_sum " << fmt(nc.gamma) << " gamma_residue "
        << fmt(nc.gamma_residue) << "\n";
  }
  if (op.n_minus() >= 0) {
    const int N = std::max(0, op.n_plus());
    const JacobiOperator w = on_window(op, N);
    const KernelTable l0 = inverse_kernel(kernel_coeffs(jost(w, Side::plus)));
    out << "l0_composition " << fmt(impulse_composition_error(w, l0)) << "\n";
    const KernelTable K = pair_kernel(w, JacobiOperator::free());
    const PairIdentityReport pr = check_pair_identities(K, w, JacobiOperator::free());
    out << "pair_box " << fmt(pr.box) << "\n";
    out << "pair_k1 " << fmt(pr.k1) << "\n";
    out << "pair_k2 " << fmt(pr.k2) << "\n";
  }
  write_text(o.output, out.str());
  return 0;
}

int cmd_sweep(const Options& o) {
  SweepConfig cfg;
  cfg.base = load_operator(o.input);
  cfg.eps_grid = o.eps.empty() ? std::vector<double>{1e-6, 1e-5, 1e-4, 1e-3, 1e-2} : o.eps;
  cfg.radius_grid = o.radius.empty() ? std::vector<double>{1e6} : o.radius;
  cfg.trials_per_cell = o.trials;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.perturbation = o.mode == "radial" ? Perturbation::radial : Perturbation::uniform_disk;
  if (o.delta > 0.0) cfg.delta = o.delta;
  const SweepResult res = run_sweep(cfg);
  write_text(o.output, sweep_csv(res.records));
  if (!o.summary.empty()) write_text(o.summary, to_json(res.summary).dump(2) + "\n");
  return 0;
}

int cmd_cauchy(const Options& o) {
  const JacobiOperator x = load_operator(o.input);
  const JacobiOperator y = o.input2.empty() ? JacobiOperator::free() : load_operator(o.input2);
  const int N = std::max({0, x.n_plus(), y.n_plus()});
  std::ostringstream out;
  double worst = 0.0;
  for (int m = 0; m <= 2 * N; ++m) {
    const double direct = direct_k0_difference(x, y, m);
    const double contour = cauchy_extract(x, y, m, o.nodes);
    worst = std::max(worst, std::abs(contour - direct));
    out << "m " << m << " contour " << fmt(contour) << " direct " << fmt(direct) << " diff "
        << fmt(std::abs(contour - direct)) << "\n";
  }
  out << "max_diff " << fmt(worst) << "\n";
  write_text(o.output, out.str());
  return 0;
}

void report(bool json, int code, const std::string& kind, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  if (json) std::cerr << nlohmann::json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward and inverse scattering for finitely supported Jacobi operators"};
  app.require_subcommand(1, 1);
  bool json_errors = false;
  app.add_flag("--json-errors", json_errors, "Also print errors as JSON on stderr");

  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "Output path (default stdout)");
    sub->add_option("--tol-root", o.tol_root, "Root residual tolerance");
    sub->add_option("--tol-term", o.tol_term, "Layer stripping termination tolerance");
    sub->add_option("--zstar", o.zstar, "Evaluation point for A^2");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Report invariant violations of an operator");
  validate_cmd->add_option("operator", o.input, "Operator JSON")->required();
  common(validate_cmd);

  auto* forward_cmd = app.add_subcommand("forward", "Compute scattering data");
  forward_cmd->add_option("operator", o.input, "Operator JSON")->required();
  common(forward_cmd);

  auto* inverse_cmd = app.add_subcommand("inverse", "Reconstruct an operator from zeros and poles");
  inverse_cmd->add_option("roots", o.input, "RootData JSON")->required();
  inverse_cmd->add_option("--radius", o.radius, "Drop roots with |z| >= R")->expected(1);
  inverse_cmd->add_flag("--strict", o.strict, "Fail on any inconsistency in the root data");
  common(inverse_cmd);

  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "Forward then inverse; print coefficient errors");
  roundtrip_cmd->add_option("operator", o.input, "Operator JSON")->required();
  common(roundtrip_cmd);

  auto* check_cmd = app.add_subcommand("check", "Print residuals of the structural identities");
  check_cmd->add_option("operator", o.input, "Operator JSON")->required();
  common(check_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Stability sweep over eps and R");
  sweep_cmd->add_option("operator", o.input, "Base operator JSON")->required();
  sweep_cmd->add_option("--eps", o.eps, "Perturbation sizes");
  sweep_cmd->add_option("--radius", o.radius, "Disk radii");
  sweep_cmd->add_option("--trials", o.trials, "Trials per (eps, R) cell")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", o.seed, "Random seed");
  sweep_cmd->add_option("--summary", o.summary, "Summary JSON path");
  sweep_cmd->add_option("--mode", o.mode, "Perturbation mode")->check(CLI::IsMember({"uniform_disk", "radial"}));
  sweep_cmd->add_option("--delta", o.delta, "Report B_delta membership of each reconstruction");
  sweep_cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  common(sweep_cmd);

  auto* cauchy_cmd = app.add_subcommand("cauchy-check", "Contour versus direct kernel coefficients");
  cauchy_cmd->add_option("operator", o.input, "Operator JSON")->required();
  cauchy_cmd->add_option("other", o.input2, "Second operator JSON (default: free)");
  cauchy_cmd->add_option("--nodes", o.nodes, "Quadrature nodes")->check(CLI::PositiveNumber);
  common(cauchy_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(o);
    if (*forward_cmd) return cmd_forward(o);
    if (*inverse_cmd) return cmd_inverse(o);
    if (*roundtrip_cmd) return cmd_roundtrip(o);
    if (*check_cmd) return cmd_check(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*cauchy_cmd) return cmd_cauchy(o);
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report(json_errors, code, std::string(to_string(e.kind())), e.what());
    return code;
  } catch (const std::exception& e) {
    report(json_errors, 3, "Internal", e.what());
    return 3;
  }
  return 0;
}
