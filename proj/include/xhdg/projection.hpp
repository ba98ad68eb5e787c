#pragma once

#include "xhdg/basis.hpp"
#include "xhdg/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>

namespace xhdg {

struct Projection {
  Eigen::VectorXd coefficients;
  /// Reciprocal condition estimate of the mass matrix; small values flag sliver regions.
  double rcond = 1;
  bool ill_conditioned() const { return rcond < 1e-13; }
};

/// L2 projection of a scalar function onto span(basis) with respect to `rule`.
///
/// Works for element, element-side, edge and edge-portion regions alike; the
/// region is whatever the rule integrates over.
template <typename Basis, typename Rule>
Projection l2_project(const Basis& basis, const Rule& rule, const std::function<double(const Vec2&)>& f) {
  const Eigen::MatrixXd phi = basis.eval(rule.points);
  Eigen::VectorXd fq(rule.size());
  for (Eigen::Index q = 0; q < rule.size(); ++q) fq(q) = f(rule.points.col(q));
  const Eigen::MatrixXd mass = phi.transpose() * rule.weights.asDiagonal() * phi;
  const Eigen::VectorXd rhs = phi.transpose() * rule.weights.cwiseProduct(fq);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(mass);
  Projection out;
  out.rcond = ldlt.rcond();
  if (out.ill_conditioned()) {
    out.coefficients = mass.colPivHouseholderQr().solve(rhs);
  } else {
    out.coefficients = ldlt.solve(rhs);
  }
  return out;
}

/// Squared L2 distance between f and the expansion with `coeffs`, under `rule`.
template <typename Basis, typename Rule>
double l2_distance_squared(const Basis& basis, const Rule& rule, const Eigen::VectorXd& coeffs,
                           const std::function<double(const Vec2&)>& f) {
  const Eigen::VectorXd vals = basis.eval(rule.points) * coeffs;
  double acc = 0;
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const double d = f(rule.points.col(q)) - vals(q);
    acc += rule.weights(q) * d * d;
  }
  return acc;
}

}  // namespace xhdg
