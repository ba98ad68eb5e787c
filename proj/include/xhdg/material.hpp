#pragma once

#include "xhdg/quadrature.hpp"

#include <stdexcept>

namespace xhdg {

struct LameParameters {
  double mu = 1;
  double lambda = 1;
};

enum class PlaneModel { Strain, Stress };

/// (E, nu) -> (mu, lambda) in plane strain or plane stress.
inline LameParameters lame_from_young(double young, double nu, PlaneModel model = PlaneModel::Strain) {
  if (!(young > 0)) throw std::invalid_argument("Young's modulus must be positive");
  if (nu == 0.5 && model == PlaneModel::Strain) throw std::invalid_argument("nu = 0.5 gives an infinite lambda");
  if (!(nu > -1 && nu < (model == PlaneModel::Strain ? 0.5 : 1.0))) throw std::invalid_argument("Poisson ratio out of range");
  const double mu = young / (2 * (1 + nu));
  const double lambda =
      model == PlaneModel::Strain ? young * nu / ((1 + nu) * (1 - 2 * nu)) : young * nu / ((1 + nu) * (1 - nu));
  return {mu, lambda};
}

/// Compliance map (sigma - lambda / (2 mu + 2 lambda) tr(sigma) I) / (2 mu), evaluated as
/// dev(sigma) / (2 mu) + tr(sigma) I / (4 (mu + lambda)) so that large lambda loses no digits.
template <typename Derived>
Mat2 apply_compliance(const LameParameters& m, const Eigen::MatrixBase<Derived>& w) {
  const double tr = w.trace();
  const Mat2 dev = w - 0.5 * tr * Mat2::Identity();
  return dev / (2 * m.mu) + (tr / (4 * (m.mu + m.lambda))) * Mat2::Identity();
}

/// Hooke's law 2 mu eps + lambda tr(eps) I.
template <typename Derived>
Mat2 apply_elasticity(const LameParameters& m, const Eigen::MatrixBase<Derived>& eps) {
  return 2 * m.mu * eps + m.lambda * eps.trace() * Mat2::Identity();
}

/// Face stabilization 2 mu / h_K, used for both edge and interface faces.
inline double stabilization_value(const LameParameters& m, double h_k) { return 2 * m.mu / h_k; }

/// Double contraction a : b.
template <typename A, typename B>
double contract(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a.cwiseProduct(b).sum();
}

}  // namespace xhdg
