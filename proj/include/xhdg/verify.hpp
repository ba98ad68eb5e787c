#pragma once

#include "xhdg/driver.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace xhdg {

/// Outcome of one property check: `value` is compared against `tolerance`
/// (or against a target slope for rate checks).
struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0;
  double tolerance = 0;
  std::string detail;
};

/// Circle of radius sqrt(3)/8 centred in the unit square.
GeometryDescriptor reference_circle();

/// Largest |u - u_h| and |sigma - sigma_h| over the degree-4 area quadrature points of every element side.
double max_pointwise_error(const Mesh& mesh, const DofMap& dm, const FieldSolution& sol, const ManufacturedCase& c);

/// Relative Frobenius norm of M - M^T.
double asymmetry(const Eigen::SparseMatrix<double>& m);

/// Measure of Omega_2 (side index 1) and length of Gamma summed over a classified mesh.
double side_measure(const Mesh& mesh, const DofMap& dm, int side);
double interface_length(const DofMap& dm);

/// Largest mismatch, over free trace blocks, between the summed numerical flux
/// <sigma_h n - tau (u_h - trace), mu> of the adjacent element sides and the
/// prescribed traction load, relative to the largest single contribution.
double flux_continuity_residual(const Mesh& mesh, const DofMap& dm, const FieldSolution& sol,
                                const ManufacturedCase& c);

/// Solves the uncondensed system over interior and trace unknowns with a sparse LU and
/// returns the largest difference from the condensed solution, relative to its size.
double monolithic_discrepancy(const Mesh& mesh, const DofMap& dm, const TraceSystem& sys, const FieldSolution& sol,
                              const ManufacturedCase& c);

enum class ProjectionVariant {
  /// Each element side projects the restriction of v to K n Omega_i.
  SideRestricted,
  /// Each element side projects the extension of v_i over all of K.
  Extension,
};

/// L2 projection errors on one mesh: over the element sides, over their
/// boundaries (edge portions and Gamma_K), and of the edge projection on the
/// edge portions.
struct ProjectionErrors {
  double volume = 0;
  double element_boundary = 0;
  double edge_trace = 0;
};

/// `v(x, side)` must be defined on all of the bounding box for either side.
ProjectionErrors projection_errors(const Mesh& mesh, const GeometryDescriptor& geom,
                                   const std::function<double(const Vec2&, int)>& v, int degree,
                                   ProjectionVariant variant);

CheckResult check_patch_test(Scheme scheme, int k);
CheckResult check_zero_data(Scheme scheme);
CheckResult check_symmetry();
CheckResult check_disk_area();
CheckResult check_circumference();
/// Three checks per degree on n = 8, 16, 32, using the last pair: volume slope
/// r + 1, element boundary and edge trace slopes r + 1/2.
std::vector<CheckResult> check_projection_rates(int degree, ProjectionVariant variant);
CheckResult check_basis_gradients();
CheckResult check_monolithic_oracle();
CheckResult check_flux_continuity();

/// Every property check; none of them runs a convergence study.
std::vector<CheckResult> run_property_suite();

}  // namespace xhdg
