#include "xhdg/driver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace xhdg {

FieldSolution recover_fields(const DofMap& dm, const TraceSystem& sys, const Eigen::VectorXd& free_values) {
  FieldSolution sol;
  sol.traces = expand_traces(dm, sys, free_values);
  sol.interior = Eigen::VectorXd::Zero(dm.num_interior_dofs());
  const int ns = dm.stress_size();
  const int nu = dm.disp_size();
  for (const auto& cd : sys.locals) {
    const auto pos = trace_positions(dm, cd.blocks);
    Eigen::VectorXd lam(static_cast<Eigen::Index>(pos.size()));
    for (std::size_t i = 0; i < pos.size(); ++i) lam(static_cast<Eigen::Index>(i)) = sol.traces(pos[i]);
    const Eigen::VectorXd x = cd.y - cd.Y * lam;
    const auto& es = dm.sides[cd.side];
    sol.interior.segment(es.stress_offset, ns) = x.head(ns);
    sol.interior.segment(es.disp_offset, nu) = x.tail(nu);
  }
  return sol;
}

Mat2 stress_at(const DofMap& dm, const FieldSolution& sol, int side, const Vec2& x) {
  const auto& es = dm.sides[side];
  const auto basis = dm.stress_basis(es);
  const int m = basis.size();
  Eigen::VectorXd phi(m);
  basis.values(x, phi);
  Mat2 s = Mat2::Zero();
  for (int c = 0; c < 3; ++c) s += phi.dot(sol.interior.segment(es.stress_offset + c * m, m)) * symmetric_unit(c);
  return s;
}

Vec2 displacement_at(const DofMap& dm, const FieldSolution& sol, int side, const Vec2& x) {
  const auto& es = dm.sides[side];
  const auto basis = dm.disp_basis(es);
  const int m = basis.size();
  Eigen::VectorXd psi(m);
  basis.values(x, psi);
  return Vec2(psi.dot(sol.interior.segment(es.disp_offset, m)), psi.dot(sol.interior.segment(es.disp_offset + m, m)));
}

Vec2 trace_at(const DofMap& dm, const FieldSolution& sol, int block, const Vec2& x) {
  const auto& b = dm.blocks[block];
  Eigen::VectorXd mu(dm.k + 1);
  b.basis.values(x, mu);
  const Eigen::Index off = static_cast<Eigen::Index>(block) * dm.block_size();
  return Vec2(mu.dot(sol.traces.segment(off, dm.k + 1)), mu.dot(sol.traces.segment(off + dm.k + 1, dm.k + 1)));
}

namespace {

AreaRule error_rule(const Mesh& mesh, const DofMap& dm, const ElementSide& es, const ManufacturedCase& c, int degree) {
  if (!c.crack) return side_area_rule(mesh, dm, es, degree);
  const Vec2 tip = c.crack->tip;
  AreaRule rule;
  rule.points.resize(2, 0);
  rule.weights.resize(0);
  if (es.cut) {
    for (const auto& p : dm.cut_cell(es.element)->patches[es.side]) rule.append(patch_rule_toward(p, tip, degree));
  } else {
    const Patch tri = Patch::triangle(mesh.vertex(es.element, 0), mesh.vertex(es.element, 1), mesh.vertex(es.element, 2));
    rule.append(patch_rule_toward(tri, tip, degree));
  }
  return rule;
}

double frob2(const Mat2& m) { return m.squaredNorm(); }

}  // namespace

ErrorNorms compute_errors(const Mesh& mesh, const DofMap& dm, const FieldSolution& sol, const ManufacturedCase& c,
                          int degree) {
  if (degree < 0) degree = std::max(2 * dm.k + 4, c.crack ? 12 : 0);
  double eu = 0, nu = 0, es2 = 0, ns2 = 0, ee = 0, ne = 0;
  for (int s = 0; s < static_cast<int>(dm.sides.size()); ++s) {
    const auto& side = dm.sides[s];
    const auto& mat = c.material[side.side];
    const AreaRule rule = error_rule(mesh, dm, side, c, degree);
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      const Vec2 x = rule.points.col(q);
      const double w = rule.weights(q);
      const Vec2 u = c.u(x, side.side);
      const Mat2 sig = c.sigma(x, side.side);
      const Mat2 g = c.grad_u(x, side.side);
      const Mat2 eps = 0.5 * (g + g.transpose());
      const Mat2 sig_h = stress_at(dm, sol, s, x);
      eu += w * (u - displacement_at(dm, sol, s, x)).squaredNorm();
      nu += w * u.squaredNorm();
      es2 += w * frob2(sig - sig_h);
      ns2 += w * frob2(sig);
      ee += w * frob2(eps - apply_compliance(mat, sig_h));
      ne += w * frob2(eps);
    }
  }
  ErrorNorms out;
  auto rel = [&](double e, double n) {
    if (n > 0) return std::sqrt(e / n);
    out.absolute = true;
    return std::sqrt(e);
  };
  out.u = rel(eu, nu);
  out.sigma = rel(es2, ns2);
  out.strain = rel(ee, ne);
  return out;
}

Discretization solve_case(const ManufacturedCase& c, int n, int k) {
  Discretization d;
  d.mesh = build_uniform_mesh(n, c.box);
  d.dofmap = build_dofmap(d.mesh, c, k);
  d.system = assemble_global(d.mesh, d.dofmap, c);
  SolveResult res = solve(d.system);
  d.report = res.report;
  d.solution = recover_fields(d.dofmap, d.system, res.x);
  return d;
}

double observed_order(double e_prev, double e, double h_prev, double h) {
  return std::log(e_prev / e) / std::log(h_prev / h);
}

std::vector<ConvergenceRow> run_study(const ManufacturedCase& c, int k, const std::vector<int>& ns,
                                      const std::optional<std::string>& csv_path) {
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) throw std::invalid_argument("mesh sizes must be strictly increasing");
  }
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    const Discretization d = solve_case(c, n, k);
    const ErrorNorms err = compute_errors(d.mesh, d.dofmap, d.solution, c);
    ConvergenceRow row;
    row.n = n;
    row.h = d.mesh.diameter(0);
    row.err_u = err.u;
    row.err_sigma = err.sigma;
    row.err_strain = err.strain;
    row.order_u = row.order_sigma = std::numeric_limits<double>::quiet_NaN();
    if (!rows.empty()) {
      const auto& prev = rows.back();
      row.order_u = observed_order(prev.err_u, row.err_u, prev.h, row.h);
      row.order_sigma = observed_order(prev.err_sigma, row.err_sigma, prev.h, row.h);
    }
    rows.push_back(row);
  }
  if (csv_path) {
    std::ofstream out(*csv_path);
    if (!out) throw std::runtime_error("cannot open " + *csv_path + " for writing");
    out << to_csv(rows);
    if (!out) throw std::runtime_error("failed writing " + *csv_path);
  }
  return rows;
}

std::string to_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream os;
  os << "N,h,err_u,order_u,err_sigma,order_sigma\n";
  char buf[256];
  for (const auto& r : rows) {
    if (std::isnan(r.order_u)) {
      std::snprintf(buf, sizeof buf, "%d,%.6e,%.6e,,%.6e,\n", r.n, r.h, r.err_u, r.err_sigma);
    } else {
      std::snprintf(buf, sizeof buf, "%d,%.6e,%.6e,%.4f,%.6e,%.4f\n", r.n, r.h, r.err_u, r.order_u, r.err_sigma,
                    r.order_sigma);
    }
    os << buf;
  }
  return os.str();
}

void dump_fields(const Discretization& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "# x y u1 u2 s11 s12 s22\n";
  char buf[256];
  for (int s = 0; s < static_cast<int>(d.dofmap.sides.size()); ++s) {
    const AreaRule rule = side_area_rule(d.mesh, d.dofmap, d.dofmap.sides[s], 2);
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      const Vec2 x = rule.points.col(q);
      const Vec2 u = displacement_at(d.dofmap, d.solution, s, x);
      const Mat2 sig = stress_at(d.dofmap, d.solution, s, x);
      std::snprintf(buf, sizeof buf, "%.10e %.10e %.10e %.10e %.10e %.10e %.10e\n", x.x(), x.y(), u.x(), u.y(),
                    sig(0, 0), sig(0, 1), sig(1, 1));
      out << buf;
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace xhdg
