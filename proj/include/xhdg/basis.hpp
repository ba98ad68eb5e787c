#pragma once

#include "xhdg/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace xhdg {

/// Number of bivariate monomials of total degree <= k.
constexpr int dim_p2(int k) { return k < 0 ? 0 : (k + 1) * (k + 2) / 2; }

/// Scaled monomials ((x - c_x) / d)^a ((y - c_y) / d)^b with a + b <= k.
///
/// Ordered by total degree, and within a degree by decreasing power of x:
/// 1, X, Y, X^2, XY, Y^2, ...
template <typename Scalar>
class ScalarBasis {
 public:
  using Point = Eigen::Matrix<Scalar, 2, 1>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  ScalarBasis() = default;
  ScalarBasis(int degree, const Point& center, Scalar scale) : degree_(degree), center_(center), scale_(scale) {}

  int degree() const { return degree_; }
  int size() const { return dim_p2(degree_); }
  const Point& center() const { return center_; }
  Scalar scale() const { return scale_; }

  /// Values at one point into `out` (length size()).
  template <typename Derived>
  void values(const Point& x, Eigen::MatrixBase<Derived> const& out_) const {
    auto& out = const_cast<Eigen::MatrixBase<Derived>&>(out_);
    const Scalar X = (x.x() - center_.x()) / scale_;
    const Scalar Y = (x.y() - center_.y()) / scale_;
    Scalar px[kMaxDeg + 1];
    Scalar py[kMaxDeg + 1];
    powers(X, px);
    powers(Y, py);
    int m = 0;
    for (int d = 0; d <= degree_; ++d) {
      for (int a = d; a >= 0; --a) out(m++) = px[a] * py[d - a];
    }
  }

  /// Values and Cartesian gradients at one point; grads is size() x 2.
  template <typename D1, typename D2>
  void values_and_gradients(const Point& x, Eigen::MatrixBase<D1> const& val_, Eigen::MatrixBase<D2> const& grad_) const {
    auto& val = const_cast<Eigen::MatrixBase<D1>&>(val_);
    auto& grad = const_cast<Eigen::MatrixBase<D2>&>(grad_);
    const Scalar X = (x.x() - center_.x()) / scale_;
    const Scalar Y = (x.y() - center_.y()) / scale_;
    Scalar px[kMaxDeg + 1];
    Scalar py[kMaxDeg + 1];
    powers(X, px);
    powers(Y, py);
    int m = 0;
    for (int d = 0; d <= degree_; ++d) {
      for (int a = d; a >= 0; --a) {
        const int b = d - a;
        val(m) = px[a] * py[b];
        grad(m, 0) = a > 0 ? Scalar(a) * px[a - 1] * py[b] / scale_ : Scalar(0);
        grad(m, 1) = b > 0 ? Scalar(b) * px[a] * py[b - 1] / scale_ : Scalar(0);
        ++m;
      }
    }
  }

  /// Value matrix, one row per column of `points`.
  Matrix eval(const Eigen::Matrix<Scalar, 2, Eigen::Dynamic>& points) const {
    Matrix out(points.cols(), size());
    for (Eigen::Index q = 0; q < points.cols(); ++q) values(Point(points.col(q)), out.row(q).transpose());
    return out;
  }

  /// Evaluates the expansion sum_m coeffs(m) phi_m at x.
  template <typename Derived>
  Scalar evaluate(const Point& x, const Eigen::MatrixBase<Derived>& coeffs) const {
    Vector v(size());
    values(x, v);
    return v.dot(coeffs);
  }

  static constexpr int kMaxDeg = 12;

 private:
  void powers(Scalar t, Scalar* p) const {
    p[0] = 1;
    for (int i = 1; i <= degree_; ++i) p[i] = p[i - 1] * t;
  }

  int degree_ = 0;
  Point center_ = Point::Zero();
  Scalar scale_ = 1;
};

/// Univariate monomials in a projected coordinate: s = ((x - origin) . axis - center) / scale.
///
/// With `along` the coordinate is arc length on a straight segment; with `dominant`
/// it is whichever Cartesian coordinate varies most over the chord, which keeps the
/// mass matrix well conditioned on curves that are almost axis aligned.
template <typename Scalar>
class SegmentTraceBasis {
 public:
  using Point = Eigen::Matrix<Scalar, 2, 1>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  SegmentTraceBasis() = default;
  SegmentTraceBasis(int degree, const Point& origin, const Point& axis, Scalar center, Scalar scale)
      : degree_(degree), origin_(origin), axis_(axis), center_(center), scale_(scale) {}

  /// Arc-length coordinate on the straight segment a -> b, centered at its midpoint.
  static SegmentTraceBasis along(int degree, const Point& a, const Point& b) {
    const Scalar len = (b - a).norm();
    return SegmentTraceBasis(degree, a, (b - a) / len, len / 2, len);
  }

  /// Dominant Cartesian coordinate of the chord a -> b: x if |dx| >= |dy|, else y.
  static SegmentTraceBasis dominant(int degree, const Point& a, const Point& b) {
    const Point d = b - a;
    const bool use_x = std::abs(d.x()) >= std::abs(d.y());
    const Point axis = use_x ? Point(1, 0) : Point(0, 1);
    const Scalar lo = use_x ? a.x() : a.y();
    const Scalar hi = use_x ? b.x() : b.y();
    return SegmentTraceBasis(degree, Point::Zero(), axis, (lo + hi) / 2, std::abs(hi - lo));
  }

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  const Point& axis() const { return axis_; }

  Scalar coordinate(const Point& x) const { return ((x - origin_).dot(axis_) - center_) / scale_; }

  template <typename Derived>
  void values(const Point& x, Eigen::MatrixBase<Derived> const& out_) const {
    auto& out = const_cast<Eigen::MatrixBase<Derived>&>(out_);
    const Scalar s = coordinate(x);
    out(0) = 1;
    for (int j = 1; j <= degree_; ++j) out(j) = out(j - 1) * s;
  }

  Matrix eval(const Eigen::Matrix<Scalar, 2, Eigen::Dynamic>& points) const {
    Matrix out(points.cols(), size());
    for (Eigen::Index q = 0; q < points.cols(); ++q) values(Point(points.col(q)), out.row(q).transpose());
    return out;
  }

  template <typename Derived>
  Scalar evaluate(const Point& x, const Eigen::MatrixBase<Derived>& coeffs) const {
    Vector v(size());
    values(x, v);
    return v.dot(coeffs);
  }

 private:
  int degree_ = 0;
  Point origin_ = Point::Zero();
  Point axis_ = Point(1, 0);
  Scalar center_ = 0;
  Scalar scale_ = 1;
};

/// Weighted Gram matrix sum_q w_q phi(x_q) phi(x_q)^T for any basis with eval().
template <typename Basis, typename Rule>
Eigen::MatrixXd mass_matrix(const Basis& basis, const Rule& rule) {
  const Eigen::MatrixXd phi = basis.eval(rule.points);
  return phi.transpose() * rule.weights.asDiagonal() * phi;
}

/// 2-norm condition number of a symmetric positive semidefinite matrix.
inline double spd_condition_number(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const double lo = ev.minCoeff();
  if (lo <= 0) return std::numeric_limits<double>::infinity();
  return ev.maxCoeff() / lo;
}

}  // namespace xhdg
