#pragma once

#include "xhdg/spaces.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace xhdg {

/// 3 x 3 matrix of the compliance map on the symmetric basis
/// E_0 = I, E_1 = [0 1; 1 0], E_2 = [1 0; 0 -1]: entry (c, d) = (A E_d) : E_c.
/// The basis is orthogonal and splits volumetric from deviatoric stress, so the
/// matrix is diag(1 / (mu + lambda), 1 / mu, 1 / mu).
Eigen::Matrix3d compliance_matrix(const LameParameters& m);

/// Symmetric basis tensor E_c: c = 0 identity, 1 shear, 2 normal difference.
Mat2 symmetric_unit(int c);

/// Element-side matrices. Stress dofs are ordered c * dim P_{k-1} + m,
/// displacement dofs i * dim P_k + m, and trace dofs follow `blocks`.
struct LocalBlocks {
  int side = -1;
  std::vector<int> blocks;
  Eigen::MatrixXd A;    ///< (A sigma, w)
  Eigen::MatrixXd Bt;   ///< rows w, columns v: (v, div w)
  Eigen::MatrixXd C;    ///< rows w, columns mu: <mu, w n>
  Eigen::MatrixXd Suu;  ///< tau <u, v>
  Eigen::MatrixXd Sul;  ///< tau <mu, v>
  Eigen::MatrixXd Sll;  ///< tau <mu, mu'>
  Eigen::VectorXd F;    ///< (f, v)

  /// Interior block of the symmetric local system in the order (sigma, u).
  Eigen::MatrixXd interior_matrix() const;
  Eigen::MatrixXd coupling_matrix() const;
  Eigen::VectorXd interior_rhs() const;
};

LocalBlocks assemble_local(const Mesh& mesh, const DofMap& dm, const ManufacturedCase& c, int side);

/// Schur complement on the trace dofs of one element side with the data needed
/// for back-substitution: interior = y - Y * traces.
struct Condensed {
  int side = -1;
  std::vector<int> blocks;
  Eigen::MatrixXd schur;
  Eigen::VectorXd rhs;
  Eigen::MatrixXd Y;
  Eigen::VectorXd y;
  /// Extended-precision schur and rhs, filled only when condensing with `extended`.
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> schur_ext;
  Eigen::Matrix<long double, Eigen::Dynamic, 1> rhs_ext;
};

/// Throws std::runtime_error naming the element when the interior block is singular.
/// With `extended` the elimination runs in long double.
Condensed condense(const LocalBlocks& local, int element, bool extended = false);

/// Above this lambda / mu the condensed matrix carries penalty-sized entries whose
/// double rounding pollutes the nearly divergence-free modes, so the trace system is
/// assembled and factored in long double.
inline constexpr double kExtendedPrecisionRatio = 1e7;

bool needs_extended_precision(const ManufacturedCase& c);

/// Trace-vector positions of a local trace layout.
std::vector<int> trace_positions(const DofMap& dm, const std::vector<int>& blocks);

/// Neumann and interface loads <g, mu> per trace dof, added once per block.
Eigen::VectorXd face_loads(const Mesh& mesh, const DofMap& dm, const ManufacturedCase& c);

struct TraceSystem {
  Scheme scheme = Scheme::Interface;
  /// Free-by-free condensed matrix.
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  /// Long double copies of matrix and rhs, kept when `extended` is set.
  bool extended = false;
  Eigen::SparseMatrix<long double> matrix_ext;
  Eigen::Matrix<long double, Eigen::Dynamic, 1> rhs_ext;
  /// Full trace vector with Dirichlet values in place, zero on free dofs.
  Eigen::VectorXd constrained;
  std::vector<Condensed> locals;
};

/// Integrates a degree-(2k+2) monomial over the first cut region at the working
/// order and at a refined order; throws std::runtime_error on disagreement.
void check_quadrature(const Mesh& mesh, const DofMap& dm);

TraceSystem assemble_global(const Mesh& mesh, const DofMap& dm, const ManufacturedCase& c);

/// Free-unknown vector -> full trace vector including constrained values.
Eigen::VectorXd expand_traces(const DofMap& dm, const TraceSystem& sys, const Eigen::VectorXd& free_values);

}  // namespace xhdg
