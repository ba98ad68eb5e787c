#pragma once

#include "xhdg/assembly.hpp"
#include "xhdg/solver.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace xhdg {

/// Discrete fields: interior coefficients in the DofMap's global numbering and
/// the full trace vector (free and constrained values).
struct FieldSolution {
  Eigen::VectorXd interior;
  Eigen::VectorXd traces;
};

FieldSolution recover_fields(const DofMap& dm, const TraceSystem& sys, const Eigen::VectorXd& free_values);

Mat2 stress_at(const DofMap& dm, const FieldSolution& sol, int side, const Vec2& x);
Vec2 displacement_at(const DofMap& dm, const FieldSolution& sol, int side, const Vec2& x);
Vec2 trace_at(const DofMap& dm, const FieldSolution& sol, int block, const Vec2& x);

/// Relative L2 errors. `strain` compares eps(u) with the discrete strain A sigma_h.
/// When an exact norm vanishes the absolute error is reported and the flag is set.
struct ErrorNorms {
  double u = 0;
  double sigma = 0;
  double strain = 0;
  bool absolute = false;
};

/// Errors integrated over the element sides of the computational domain with
/// rules of degree `degree` (default 2k + 4). Rules are collapsed toward the
/// crack tip when the case has one.
ErrorNorms compute_errors(const Mesh& mesh, const DofMap& dm, const FieldSolution& sol, const ManufacturedCase& c,
                          int degree = -1);

/// Everything produced by one solve on one mesh.
struct Discretization {
  Mesh mesh;
  DofMap dofmap;
  TraceSystem system;
  SolveReport report;
  FieldSolution solution;
};

Discretization solve_case(const ManufacturedCase& c, int n, int k);

struct ConvergenceRow {
  int n = 0;
  double h = 0;
  double err_u = 0;
  /// NaN on the first row.
  double order_u = 0;
  double err_sigma = 0;
  double order_sigma = 0;
  double err_strain = 0;
};

/// Observed order log(e_prev / e) / log(h_prev / h).
double observed_order(double e_prev, double e, double h_prev, double h);

/// Runs the case on each n (strictly increasing) and optionally writes CSV.
std::vector<ConvergenceRow> run_study(const ManufacturedCase& c, int k, const std::vector<int>& ns,
                                      const std::optional<std::string>& csv_path = std::nullopt);

std::string to_csv(const std::vector<ConvergenceRow>& rows);

/// Writes a "# x y u1 u2 s11 s12 s22" header, then one row per area quadrature point of every element side.
void dump_fields(const Discretization& d, const std::string& path);

}  // namespace xhdg
