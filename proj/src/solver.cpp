#include "xhdg/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include <sstream>
#include <stdexcept>

namespace xhdg {

namespace {

constexpr double kTarget = 1e-9;

// Normwise backward error ||b - M x|| / (||M||_F ||x|| + ||b||).
template <typename Scalar>
double relative_residual(const Eigen::SparseMatrix<Scalar>& m, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b) {
  const double scale = static_cast<double>(m.norm() * x.norm() + b.norm());
  const double nr = static_cast<double>((m * x - b).norm());
  return scale > 0 ? nr / scale : nr;
}

template <typename Factor, typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> refine(const Factor& f, const Eigen::SparseMatrix<Scalar>& m,
                                                const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x = f.solve(b);
  for (int it = 0; it < 3; ++it) {
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> r = b - m * x;
    x += f.solve(r);
  }
  return x;
}

std::string format_residual(double r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

template <typename Scalar>
SolveReport solve_in(const Eigen::SparseMatrix<Scalar>& m, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) {
  using Sparse = Eigen::SparseMatrix<Scalar>;
  if (m.rows() != m.cols() || m.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  SolveReport report;
  if (m.rows() == 0) {
    x.resize(0);
    report.success = true;
    return report;
  }

  Eigen::SimplicialLLT<Sparse, Eigen::Lower, Eigen::AMDOrdering<int>> llt(m);
  if (llt.info() == Eigen::Success) {
    x = refine(llt, m, b);
    report.method = SolveMethod::Cholesky;
    report.residual = relative_residual(m, x, b);
    report.success = report.residual <= kTarget;
    if (report.success) return report;
  }

  std::ostringstream diag;
  Eigen::SimplicialLDLT<Sparse, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(m);
  if (ldlt.info() == Eigen::Success) {
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d = ldlt.vectorD();
    Eigen::Index imin = 0;
    d.cwiseAbs().minCoeff(&imin);
    const int dof = ldlt.permutationPinv().indices()(imin);
    diag << "smallest pivot " << static_cast<double>(d(imin)) << " at dof " << dof;
    if (d.cwiseAbs().minCoeff() > 0) {
      x = refine(ldlt, m, b);
      report.method = SolveMethod::SymmetricIndefinite;
      report.residual = relative_residual(m, x, b);
      report.success = report.residual <= kTarget;
      report.diagnostics = diag.str();
      if (report.success) return report;
    }
  } else {
    diag << "LDL^T factorization failed";
  }

  Eigen::ConjugateGradient<Sparse, Eigen::Lower | Eigen::Upper> cg(m);
  cg.setTolerance(Scalar(1e-12));
  cg.setMaxIterations(static_cast<Eigen::Index>(10 * m.rows()));
  x = cg.solve(b);
  report.method = SolveMethod::ConjugateGradient;
  report.residual = relative_residual(m, x, b);
  report.success = report.residual <= kTarget;
  report.diagnostics = diag.str();
  if (!report.success) {
    throw std::runtime_error("linear solve failed (" + diag.str() + "), residual " + format_residual(report.residual));
  }
  return report;
}

}  // namespace

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Cholesky: return "cholesky";
    case SolveMethod::SymmetricIndefinite: return "ldlt";
    case SolveMethod::ConjugateGradient: return "cg";
  }
  return "unknown";
}

SolveResult solve(const Eigen::SparseMatrix<double>& m, const Eigen::VectorXd& b) {
  SolveResult out;
  out.report = solve_in(m, b, out.x);
  return out;
}

SolveResult solve(const TraceSystem& sys) {
  if (!sys.extended) return solve(sys.matrix, sys.rhs);
  Eigen::Matrix<long double, Eigen::Dynamic, 1> x;
  SolveResult out;
  out.report = solve_in(sys.matrix_ext, sys.rhs_ext, x);
  out.x = x.cast<double>();
  return out;
}

}  // namespace xhdg
