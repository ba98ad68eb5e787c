#pragma once

#include "xhdg/assembly.hpp"

#include <Eigen/Sparse>

#include <string>

namespace xhdg {

enum class SolveMethod { Cholesky, SymmetricIndefinite, ConjugateGradient };

std::string to_string(SolveMethod m);

struct SolveReport {
  SolveMethod method = SolveMethod::Cholesky;
  /// Normwise backward error ||M x - b|| / (||M||_F ||x|| + ||b||).
  double residual = 0;
  bool success = false;
  std::string diagnostics;
};

struct SolveResult {
  Eigen::VectorXd x;
  SolveReport report;
};

/// Sparse direct solve of a symmetric system with an AMD fill-reducing ordering.
///
/// Tries LL^T first, then LDL^T, then conjugate gradients; a few steps of
/// iterative refinement bring the residual below 1e-9 when needed. Throws
/// std::runtime_error with the smallest pivot and its dof if every method fails.
SolveResult solve(const Eigen::SparseMatrix<double>& m, const Eigen::VectorXd& b);

/// Uses the long double copy of the system when it was assembled in extended precision.
SolveResult solve(const TraceSystem& sys);

}  // namespace xhdg
