#include "xhdg/verify.hpp"

#include "xhdg/projection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/SparseLU>

namespace xhdg {

namespace {

constexpr double kPatchTol = 1e-9;
constexpr double kSymmetryTol = 1e-10;
constexpr double kGeometryTol = 1e-10;
constexpr double kSlopeTol = 0.2;
constexpr double kGradientTol = 1e-7;
constexpr double kOracleTol = 1e-10;
constexpr double kFluxTol = 1e-9;

CheckResult make_result(std::string name, double value, double tolerance, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.value = value;
  r.tolerance = tolerance;
  r.passed = std::isfinite(value) && value <= tolerance;
  r.detail = std::move(detail);
  return r;
}

LameParameters test_material() { return lame_from_young(3.0, 0.3); }

Mat2 test_gradient() {
  Mat2 g;
  g << 0.3, -0.2, 0.5, 0.1;
  return g;
}

// Straight interface meeting the box at mesh vertices for every n divisible by 8.
GeometryDescriptor patch_line() { return GeometryDescriptor::polyline({Vec2(0, 0.375), Vec2(1, 0.75)}); }

// Affine data on the boundary-unfitted layouts: each side of the line with
// either condition on it, and the slit with traction on its faces.
std::vector<ManufacturedCase> boundary_cases(const Mat2& gradient, const Vec2& offset) {
  std::vector<ManufacturedCase> out;
  for (int active = 0; active < 2; ++active) {
    for (BoundaryKind kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
      ManufacturedCase c = linear_case(Scheme::BoundaryUnfitted, patch_line(), test_material(), gradient, offset);
      c.active = {active == 0, active == 1};
      c.gamma_kind = kind;
      out.push_back(c);
    }
  }
  ManufacturedCase slit = linear_case(Scheme::BoundaryUnfitted, GeometryDescriptor::slit(Vec2(0, 0.5), Vec2(0.5, 0.5)),
                                      test_material(), gradient, offset);
  slit.gamma_kind = BoundaryKind::Neumann;
  out.push_back(slit);
  return out;
}

// Same affine displacement on both sides with different materials, so the
// stress jumps across the line and the interface carries a traction load.
std::vector<ManufacturedCase> interface_cases(const Mat2& gradient, const Vec2& offset) {
  ManufacturedCase c = linear_case(Scheme::Interface, patch_line(), test_material(), gradient, offset);
  c.material = {test_material(), lame_from_young(1.0, 0.45)};
  const Mat2 eps = 0.5 * (gradient + gradient.transpose());
  const std::array<Mat2, 2> stress = {apply_elasticity(c.material[0], eps), apply_elasticity(c.material[1], eps)};
  c.sigma = [stress](const Vec2&, int side) { return stress[side]; };
  return {c};
}

std::vector<ManufacturedCase> scheme_cases(Scheme scheme, const Mat2& gradient, const Vec2& offset) {
  if (scheme == Scheme::BoundaryUnfitted) return boundary_cases(gradient, offset);
  return interface_cases(gradient, offset);
}

int patch_mesh(const ManufacturedCase& c) { return c.geometry.kind() == GeometryDescriptor::Kind::Slit ? 9 : 8; }

std::string scheme_name(Scheme s) { return s == Scheme::Interface ? "interface" : "boundary-unfitted"; }

double slope(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

}  // namespace

GeometryDescriptor reference_circle() { return GeometryDescriptor::circle(Vec2(0.5, 0.5), std::sqrt(3.0) / 8); }

double max_pointwise_error(const Mesh& mesh, const DofMap& dm, const FieldSolution& sol, const ManufacturedCase& c) {
  double worst = 0;
  for (int s = 0; s < static_cast<int>(dm.sides.size()); ++s) {
    const auto& es = dm.sides[s];
    const AreaRule rule = side_area_rule(mesh, dm, es, 4);
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      const Vec2 x = rule.points.col(q);
      worst = std::max(worst, (c.u(x, es.side) - displacement_at(dm, sol, s, x)).lpNorm<Eigen::Infinity>());
      worst = std::max(worst, (c.sigma(x, es.side) - stress_at(dm, sol, s, x)).lpNorm<Eigen::Infinity>());
    }
  }
  return worst;
}

double asymmetry(const Eigen::SparseMatrix<double>& m) {
  const Eigen::SparseMatrix<double> t = m.transpose();
  const double n = m.norm();
  return n > 0 ? (m - t).norm() / n : 0;
}

double side_measure(const Mesh& mesh, const DofMap& dm, int side) {
  double area = 0;
  for (const auto& es : dm.sides) {
    if (es.side == side) area += side_area_rule(mesh, dm, es, 2).measure();
  }
  return area;
}

double interface_length(const DofMap& dm) {
  double len = 0;
  for (const auto& cell : dm.cut_cells) len += interface_rule(cell, dm.quad_order).measure();
  return len;
}

double flux_continuity_residual(const Mesh& mesh, const DofMap& dm, const FieldSolution& sol,
                                const ManufacturedCase& c) {
  const int k = dm.k;
  Eigen::VectorXd sum = face_loads(mesh, dm, c);
  sum = -sum;
  double scale = sum.lpNorm<Eigen::Infinity>();
  Eigen::VectorXd mu_v(k + 1);
  for (int s = 0; s < static_cast<int>(dm.sides.size()); ++s) {
    const auto& es = dm.sides[s];
    const double tau = stabilization_value(c.material[es.side], mesh.diameter(es.element));
    for (const auto& f : dm.side_faces[s]) {
      const auto& b = dm.blocks[f.block];
      const LineRule rule = face_rule(mesh, dm, es, f, dm.quad_order);
      Eigen::VectorXd contrib = Eigen::VectorXd::Zero(dm.block_size());
      for (Eigen::Index q = 0; q < rule.size(); ++q) {
        const Vec2 x = rule.points.col(q);
        const Vec2 n = rule.normals.col(q);
        const Vec2 flux = stress_at(dm, sol, s, x) * n - tau * (displacement_at(dm, sol, s, x) - trace_at(dm, sol, f.block, x));
        b.basis.values(x, mu_v);
        for (int i = 0; i < 2; ++i) contrib.segment(i * (k + 1), k + 1) += rule.weights(q) * flux(i) * mu_v;
      }
      sum.segment(static_cast<Eigen::Index>(f.block) * dm.block_size(), dm.block_size()) += contrib;
      scale = std::max(scale, contrib.lpNorm<Eigen::Infinity>());
    }
  }
  double worst = 0;
  for (int i = 0; i < dm.num_trace_dofs(); ++i) {
    if (dm.free_index[i] >= 0) worst = std::max(worst, std::abs(sum(i)));
  }
  return scale > 0 ? worst / scale : worst;
}

double monolithic_discrepancy(const Mesh& mesh, const DofMap& dm, const TraceSystem& sys, const FieldSolution& sol,
                              const ManufacturedCase& c) {
  const int ni = dm.num_interior_dofs();
  const int n = ni + dm.num_trace_dofs();
  std::vector<Eigen::Triplet<double>> entries;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs.tail(dm.num_trace_dofs()) = face_loads(mesh, dm, c);
  const Eigen::VectorXd& fixed = sys.constrained;
  auto is_fixed = [&](int g) { return g >= ni && dm.free_index[g - ni] < 0; };
  for (int s = 0; s < static_cast<int>(dm.sides.size()); ++s) {
    const LocalBlocks lb = assemble_local(mesh, dm, c, s);
    const auto& es = dm.sides[s];
    std::vector<int> idx;
    for (int j = 0; j < dm.stress_size(); ++j) idx.push_back(es.stress_offset + j);
    for (int j = 0; j < dm.disp_size(); ++j) idx.push_back(es.disp_offset + j);
    const auto ninner = static_cast<Eigen::Index>(idx.size());
    for (int p : trace_positions(dm, lb.blocks)) idx.push_back(ni + p);
    const auto nl = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd local(nl, nl);
    local.topLeftCorner(ninner, ninner) = lb.interior_matrix();
    local.topRightCorner(ninner, nl - ninner) = lb.coupling_matrix();
    local.bottomLeftCorner(nl - ninner, ninner) = lb.coupling_matrix().transpose();
    local.bottomRightCorner(nl - ninner, nl - ninner) = lb.Sll;
    const Eigen::VectorXd f = lb.interior_rhs();
    for (Eigen::Index a = 0; a < nl; ++a) {
      if (a < ninner) rhs(idx[a]) += f(a);
      if (is_fixed(idx[a])) continue;
      for (Eigen::Index b = 0; b < nl; ++b) {
        if (is_fixed(idx[b])) rhs(idx[a]) -= local(a, b) * fixed(idx[b] - ni);
        else entries.emplace_back(idx[a], idx[b], local(a, b));
      }
    }
  }
  for (int i = 0; i < dm.num_trace_dofs(); ++i) {
    if (dm.free_index[i] >= 0) continue;
    entries.emplace_back(ni + i, ni + i, 1.0);
    rhs(ni + i) = fixed(i);
  }
  Eigen::SparseMatrix<double> k(n, n);
  k.setFromTriplets(entries.begin(), entries.end());
  k.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(k);
  const Eigen::VectorXd x = lu.solve(rhs);
  Eigen::VectorXd ref(n);
  ref << sol.interior, sol.traces;
  const double size = ref.lpNorm<Eigen::Infinity>();
  const double diff = (x - ref).lpNorm<Eigen::Infinity>();
  return size > 0 ? diff / size : diff;
}

ProjectionErrors projection_errors(const Mesh& mesh, const GeometryDescriptor& geom,
                                   const std::function<double(const Vec2&, int)>& v, int degree,
                                   ProjectionVariant variant) {
  const ManufacturedCase layout = linear_case(Scheme::Interface, geom, test_material(), Mat2::Zero(), Vec2::Zero());
  const DofMap dm = build_dofmap(mesh, layout, 1);
  const int rule_degree = 2 * degree + 8;
  double vol = 0, bnd = 0, edge = 0;
  for (int s = 0; s < static_cast<int>(dm.sides.size()); ++s) {
    const auto& es = dm.sides[s];
    const auto fn = [&](const Vec2& x) { return v(x, es.side); };
    const ScalarBasis<double> basis(degree, es.center, es.scale);
    const AreaRule own = side_area_rule(mesh, dm, es, rule_degree);
    const AreaRule whole = straight_triangle_rule(mesh.vertex(es.element, 0), mesh.vertex(es.element, 1),
                                                  mesh.vertex(es.element, 2), rule_degree);
    const Projection proj = l2_project(basis, variant == ProjectionVariant::Extension ? whole : own, fn);
    vol += l2_distance_squared(basis, own, proj.coefficients, fn);
    for (const auto& f : dm.side_faces[s]) {
      const LineRule rule = face_rule(mesh, dm, es, f, rule_degree);
      bnd += l2_distance_squared(basis, rule, proj.coefficients, fn);
      if (f.local_edge < 0) continue;
      const auto& b = dm.blocks[f.block];
      const auto tb = SegmentTraceBasis<double>::dominant(degree, b.a, b.b);
      LineRule source = rule;
      if (variant == ProjectionVariant::Extension) {
        const auto& e = mesh.edges[b.edge];
        source = segment_line_rule(mesh.vertices[e.vertices[0]], mesh.vertices[e.vertices[1]], Vec2::Zero(), rule_degree);
      }
      const Projection tp = l2_project(tb, source, fn);
      edge += l2_distance_squared(tb, rule, tp.coefficients, fn);
    }
  }
  return {std::sqrt(vol), std::sqrt(bnd), std::sqrt(edge)};
}

CheckResult check_patch_test(Scheme scheme, int k) {
  double worst = 0;
  for (const auto& c : scheme_cases(scheme, test_gradient(), Vec2(0.1, -0.2))) {
    const Discretization d = solve_case(c, patch_mesh(c), k);
    worst = std::max(worst, max_pointwise_error(d.mesh, d.dofmap, d.solution, c));
  }
  return make_result("patch test, " + scheme_name(scheme) + ", k=" + std::to_string(k), worst, kPatchTol,
                     "max pointwise error of u and sigma");
}

CheckResult check_zero_data(Scheme scheme) {
  double worst = 0;
  bool definite = true;
  for (const auto& c : scheme_cases(scheme, Mat2::Zero(), Vec2::Zero())) {
    for (int k = 1; k <= 2; ++k) {
      const Discretization d = solve_case(c, patch_mesh(c), k);
      definite = definite && d.report.method == SolveMethod::Cholesky;
      worst = std::max({worst, d.solution.interior.lpNorm<Eigen::Infinity>(), d.solution.traces.lpNorm<Eigen::Infinity>()});
    }
  }
  auto r = make_result("zero data gives zero solution, " + scheme_name(scheme), worst, 1e-14,
                       definite ? "positive-definite factorization" : "matrix not positive definite");
  r.passed = r.passed && definite;
  return r;
}

CheckResult check_symmetry() {
  double worst = 0;
  for (int k = 1; k <= 2; ++k) {
    for (Scheme scheme : {Scheme::Interface, Scheme::BoundaryUnfitted}) {
      for (const auto& c : scheme_cases(scheme, test_gradient(), Vec2::Zero())) {
        const Mesh mesh = build_uniform_mesh(patch_mesh(c));
        worst = std::max(worst, asymmetry(assemble_global(mesh, build_dofmap(mesh, c, k), c).matrix));
      }
    }
    const ManufacturedCase c = make_case("circle-interface");
    const Mesh mesh = build_uniform_mesh(8);
    worst = std::max(worst, asymmetry(assemble_global(mesh, build_dofmap(mesh, c, k), c).matrix));
  }
  return make_result("global matrix symmetry", worst, kSymmetryTol, "relative Frobenius norm of M - M^T");
}

CheckResult check_disk_area() {
  const ManufacturedCase c = linear_case(Scheme::Interface, reference_circle(), test_material(), Mat2::Zero(), Vec2::Zero());
  const Mesh mesh = build_uniform_mesh(16);
  const double area = side_measure(mesh, build_dofmap(mesh, c, 1), 1);
  const double exact = 3 * std::numbers::pi / 64;
  std::ostringstream os;
  os.precision(16);
  os << "area " << area << " vs " << exact;
  return make_result("disk area", std::abs(area - exact), kGeometryTol, os.str());
}

CheckResult check_circumference() {
  const ManufacturedCase c = linear_case(Scheme::Interface, reference_circle(), test_material(), Mat2::Zero(), Vec2::Zero());
  const Mesh mesh = build_uniform_mesh(16);
  const double len = interface_length(build_dofmap(mesh, c, 1));
  const double exact = 2 * std::numbers::pi * std::sqrt(3.0) / 8;
  std::ostringstream os;
  os.precision(16);
  os << "length " << len << " vs " << exact;
  return make_result("circle circumference", std::abs(len - exact), kGeometryTol, os.str());
}

std::vector<CheckResult> check_projection_rates(int degree, ProjectionVariant variant) {
  const auto v = [](const Vec2& x, int side) {
    const double pi = std::numbers::pi;
    return side == 0 ? std::sin(pi * x.x()) * std::sin(pi * x.y()) : std::cos(pi * x.x()) * std::exp(x.y());
  };
  std::vector<ProjectionErrors> errs;
  for (int n : {8, 16, 32}) errs.push_back(projection_errors(build_uniform_mesh(n), reference_circle(), v, degree, variant));
  const ProjectionErrors& coarse = errs[1];
  const ProjectionErrors& fine = errs[2];
  const std::string tag = std::string(variant == ProjectionVariant::Extension ? "extension" : "side-restricted") +
                          ", r=" + std::to_string(degree);
  auto rate = [&](const std::string& what, double c, double f, double target) {
    const double s = slope(c, f);
    std::ostringstream os;
    os << "slope " << s << ", expected " << target;
    return make_result("projection rate " + what + ", " + tag, std::abs(s - target), kSlopeTol, os.str());
  };
  return {rate("volume", coarse.volume, fine.volume, degree + 1.0),
          rate("element boundary", coarse.element_boundary, fine.element_boundary, degree + 0.5),
          rate("edge trace", coarse.edge_trace, fine.edge_trace, degree + 0.5)};
}

CheckResult check_basis_gradients() {
  const ScalarBasis<double> basis(3, Vec2(0.3, 0.4), 0.2);
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> dist(0.2, 0.6);
  const int m = basis.size();
  Eigen::VectorXd val(m), vp(m), vm(m);
  Eigen::MatrixXd grad(m, 2);
  const double step = 1e-5;
  double worst = 0;
  for (int p = 0; p < 10; ++p) {
    const Vec2 x(dist(gen), dist(gen));
    basis.values_and_gradients(x, val, grad);
    for (int d = 0; d < 2; ++d) {
      const Vec2 e = Vec2::Unit(d) * step;
      basis.values(Vec2(x + e), vp);
      basis.values(Vec2(x - e), vm);
      const Eigen::VectorXd fd = (vp - vm) / (2 * step);
      for (int j = 0; j < m; ++j) {
        worst = std::max(worst, std::abs(fd(j) - grad(j, d)) / std::max(1.0, std::abs(grad(j, d))));
      }
    }
  }
  return make_result("basis gradients vs central differences", worst, kGradientTol);
}

CheckResult check_monolithic_oracle() {
  double worst = 0;
  auto run = [&](const ManufacturedCase& c, int n, int k) {
    const Discretization d = solve_case(c, n, k);
    worst = std::max(worst, monolithic_discrepancy(d.mesh, d.dofmap, d.system, d.solution, c));
  };
  for (int k = 1; k <= 2; ++k) {
    run(linear_case(Scheme::Interface, GeometryDescriptor::circle(Vec2(2, 2), 0.5), test_material(), test_gradient(),
                    Vec2(0.1, 0.2)),
        1, k);
    run(make_case("circle-interface"), 8, k);
    run(make_case("nonconvex-domain"), 8, k);
    run(make_case("crack-tip"), 9, k);
  }
  return make_result("monolithic vs condensed solve", worst, kOracleTol, "relative max difference of all unknowns");
}

CheckResult check_flux_continuity() {
  double worst = 0;
  for (const char* name : {"circle-interface", "circle-domain", "nonconvex-domain", "crack-tip"}) {
    const ManufacturedCase c = make_case(name);
    const Discretization d = solve_case(c, std::string(name) == "crack-tip" ? 9 : 8, 2);
    worst = std::max(worst, flux_continuity_residual(d.mesh, d.dofmap, d.solution, c));
  }
  return make_result("interelement flux continuity", worst, kFluxTol, "relative residual over free trace blocks");
}

std::vector<CheckResult> run_property_suite() {
  std::vector<CheckResult> out;
  for (Scheme s : {Scheme::Interface, Scheme::BoundaryUnfitted}) {
    for (int k = 1; k <= 2; ++k) out.push_back(check_patch_test(s, k));
    out.push_back(check_zero_data(s));
  }
  out.push_back(check_symmetry());
  out.push_back(check_disk_area());
  out.push_back(check_circumference());
  for (ProjectionVariant v : {ProjectionVariant::SideRestricted, ProjectionVariant::Extension}) {
    for (int r = 0; r <= 2; ++r) {
      for (auto& c : check_projection_rates(r, v)) out.push_back(std::move(c));
    }
  }
  out.push_back(check_basis_gradients());
  out.push_back(check_monolithic_oracle());
  out.push_back(check_flux_continuity());
  return out;
}

}  // namespace xhdg
