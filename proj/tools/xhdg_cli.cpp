#include "xhdg/xhdg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CaseOptions {
  std::string name;
  std::optional<double> nu2;
  std::optional<double> nu;
  std::optional<double> lambda;
};

void add_case_options(CLI::App* cmd, CaseOptions& opt) {
  cmd->add_option("--case", opt.name, "circle-interface, circle-domain, nonconvex-domain or crack-tip")
      ->required()
      ->check(CLI::IsMember({"circle-interface", "circle-domain", "nonconvex-domain", "crack-tip"}));
  auto* nu2 = cmd->add_option("--nu2", opt.nu2, "Poisson ratio inside the inclusion (circle-interface)");
  auto* nu = cmd->add_option("--nu", opt.nu, "Poisson ratio (circle-domain)");
  auto* lambda = cmd->add_option("--lambda", opt.lambda, "Lame lambda (nonconvex-domain)");
  nu2->excludes(nu)->excludes(lambda);
  nu->excludes(lambda);
}

xhdg::ManufacturedCase build_case(const CaseOptions& opt) {
  const std::vector<std::pair<std::string, std::optional<double>>> knobs = {
      {"circle-interface", opt.nu2}, {"circle-domain", opt.nu}, {"nonconvex-domain", opt.lambda}};
  std::optional<double> parameter;
  for (const auto& [name, value] : knobs) {
    if (!value) continue;
    if (name != opt.name) throw std::invalid_argument("this material option does not apply to case '" + opt.name + "'");
    parameter = value;
  }
  return xhdg::make_case(opt.name, parameter);
}

std::string format(double v) {
  if (v != v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::string format_order(double v) {
  if (v != v) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unfitted-mesh hybridizable DG solver for linear elasticity interface problems"};
  app.require_subcommand(1);

  CaseOptions run_opt;
  int run_k = 1;
  std::vector<int> run_n;
  std::string run_out;
  auto* run = app.add_subcommand("run", "convergence study over a list of meshes, written as CSV");
  add_case_options(run, run_opt);
  run->add_option("--k", run_k, "polynomial degree")->check(CLI::Range(1, 6));
  run->add_option("--n", run_n, "subdivisions per axis, increasing")->delimiter(',')->required();
  run->add_option("--out", run_out, "CSV output path");

  auto* verify = app.add_subcommand("verify", "property checks: patch tests, geometry, projections, symmetry");

  CaseOptions dump_opt;
  int dump_k = 1;
  int dump_n = 8;
  std::string dump_out;
  auto* dump = app.add_subcommand("dump-fields", "solve once and write x y u1 u2 s11 s12 s22 per quadrature point");
  add_case_options(dump, dump_opt);
  dump->add_option("--k", dump_k, "polynomial degree")->check(CLI::Range(1, 6));
  dump->add_option("--n", dump_n, "subdivisions per axis")->required()->check(CLI::PositiveNumber);
  dump->add_option("--out", dump_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto c = build_case(run_opt);
      std::optional<std::string> path;
      if (!run_out.empty()) path = run_out;
      const auto rows = xhdg::run_study(c, run_k, run_n, path);
      std::printf("%6s %12s %12s %6s %12s %6s\n", "N", "h", "err_u", "order", "err_sigma", "order");
      for (const auto& r : rows) {
        std::printf("%6d %12s %12s %6s %12s %6s\n", r.n, format(r.h).c_str(), format(r.err_u).c_str(),
                    format_order(r.order_u).c_str(), format(r.err_sigma).c_str(), format_order(r.order_sigma).c_str());
      }
      return 0;
    }
    if (*verify) {
      int failed = 0;
      for (const auto& r : xhdg::run_property_suite()) {
        std::printf("%s  %-60s %.3e (tol %.1e) %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.value, r.tolerance,
                    r.detail.c_str());
        if (!r.passed) ++failed;
      }
      if (failed) std::fprintf(stderr, "%d check(s) failed\n", failed);
      return failed ? 1 : 0;
    }
    if (*dump) {
      const auto d = xhdg::solve_case(build_case(dump_opt), dump_n, dump_k);
      xhdg::dump_fields(d, dump_out);
      return 0;
    }
  } catch (const xhdg::GeometryError& e) {
    std::cerr << "geometry error";
    if (e.element() >= 0) std::cerr << " on element " << e.element();
    std::cerr << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
