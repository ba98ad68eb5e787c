#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace xhdg {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Highest polynomial degree any reference rule is generated for.
inline constexpr int kMaxRuleDegree = 30;

/// Quadrature rule on a reference cell. Points are stored column-wise.
template <typename Scalar>
struct QuadRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> points;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
  int degree = 0;

  Eigen::Index size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [0, 1].
template <typename Scalar = double>
QuadRule<Scalar> gauss_legendre(int npoints) {
  if (npoints < 1 || npoints > kMaxRuleDegree) {
    throw std::invalid_argument("gauss_legendre: unsupported point count " + std::to_string(npoints));
  }
  QuadRule<Scalar> rule;
  rule.points.resize(1, npoints);
  rule.weights.resize(npoints);
  rule.degree = 2 * npoints - 1;
  const int n = npoints;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    Scalar x = std::cos(std::numbers::pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int j = 2; j <= n; ++j) {
        const Scalar p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < Scalar(1e-16)) break;
    }
    // Recompute the derivative at the converged node.
    Scalar p0 = 1;
    Scalar p1 = x;
    for (int j = 2; j <= n; ++j) {
      const Scalar p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const Scalar w = Scalar(2) / ((1 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1]; ascending order.
    rule.points(0, i) = (1 - x) / 2;
    rule.points(0, n - 1 - i) = (1 + x) / 2;
    rule.weights(i) = w / 2;
    rule.weights(n - 1 - i) = w / 2;
  }
  if (n == 1) {
    rule.points(0, 0) = Scalar(0.5);
    rule.weights(0) = 1;
  }
  return rule;
}

/// Rule on the unit segment [0, 1] exact for polynomials of the given degree.
template <typename Scalar = double>
QuadRule<Scalar> segment_rule(int degree) {
  if (degree < 0 || degree > kMaxRuleDegree) {
    throw std::invalid_argument("segment_rule: unsupported degree " + std::to_string(degree));
  }
  auto rule = gauss_legendre<Scalar>(degree / 2 + 1);
  rule.degree = degree;
  return rule;
}

/// Conical-product rule on the reference triangle (0,0), (1,0), (0,1).
///
/// Collapses the unit square onto the triangle through (u, v) -> (u (1 - v), v);
/// the Jacobian factor (1 - v) raises the degree in v by one, hence the extra point.
template <typename Scalar = double>
QuadRule<Scalar> triangle_rule(int degree) {
  if (degree < 0 || degree > kMaxRuleDegree) {
    throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));
  }
  const auto g = gauss_legendre<Scalar>((degree + 3) / 2);
  const auto m = g.size();
  QuadRule<Scalar> rule;
  rule.points.resize(2, m * m);
  rule.weights.resize(m * m);
  rule.degree = degree;
  Eigen::Index q = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const Scalar v = g.points(0, j);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Scalar u = g.points(0, i);
      rule.points(0, q) = u * (1 - v);
      rule.points(1, q) = v;
      rule.weights(q) = g.weights(i) * g.weights(j) * (1 - v);
      ++q;
    }
  }
  return rule;
}

/// Quadrature over a physical 2D region.
struct AreaRule {
  Eigen::Matrix2Xd points;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return weights.size(); }
  double measure() const { return weights.sum(); }
  void append(const AreaRule& other) {
    const auto n0 = size();
    points.conservativeResize(2, n0 + other.size());
    weights.conservativeResize(n0 + other.size());
    points.rightCols(other.size()) = other.points;
    weights.tail(other.size()) = other.weights;
  }
};

/// Quadrature over a physical curve, with one unit normal per point.
struct LineRule {
  Eigen::Matrix2Xd points;
  Eigen::VectorXd weights;
  Eigen::Matrix2Xd normals;

  Eigen::Index size() const { return weights.size(); }
  double measure() const { return weights.sum(); }
  void append(const LineRule& other) {
    const auto n0 = size();
    points.conservativeResize(2, n0 + other.size());
    normals.conservativeResize(2, n0 + other.size());
    weights.conservativeResize(n0 + other.size());
    points.rightCols(other.size()) = other.points;
    normals.rightCols(other.size()) = other.normals;
    weights.tail(other.size()) = other.weights;
  }
};

/// Gauss rule on the straight segment a -> b with a fixed normal.
inline LineRule segment_line_rule(const Vec2& a, const Vec2& b, const Vec2& normal, int degree) {
  const auto ref = segment_rule<double>(degree);
  const double len = (b - a).norm();
  LineRule rule;
  rule.points.resize(2, ref.size());
  rule.normals.resize(2, ref.size());
  rule.weights = ref.weights * len;
  for (Eigen::Index q = 0; q < ref.size(); ++q) {
    rule.points.col(q) = a + ref.points(0, q) * (b - a);
    rule.normals.col(q) = normal;
  }
  return rule;
}

/// Affine image of triangle_rule on the triangle (a, b, c).
inline AreaRule straight_triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int degree) {
  const auto ref = triangle_rule<double>(degree);
  const double jac = std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  AreaRule rule;
  rule.points.resize(2, ref.size());
  rule.weights = ref.weights * jac;
  for (Eigen::Index q = 0; q < ref.size(); ++q) {
    rule.points.col(q) = a + ref.points(0, q) * (b - a) + ref.points(1, q) * (c - a);
  }
  return rule;
}

}  // namespace xhdg
