#include "xhdg/basis.hpp"
#include "xhdg/projection.hpp"
#include "xhdg/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace xhdg;

namespace {

double integrate_triangle(const QuadRule<double>& r, int a, int b) {
  double s = 0;
  for (Eigen::Index q = 0; q < r.size(); ++q) s += r.weights(q) * std::pow(r.points(0, q), a) * std::pow(r.points(1, q), b);
  return s;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST(Quadrature, ReferenceTriangleMoments) {
  const auto r = triangle_rule<double>(4);
  EXPECT_NEAR(integrate_triangle(r, 0, 0), 0.5, 1e-15);
  EXPECT_NEAR(integrate_triangle(r, 1, 0), 1.0 / 6, 1e-15);
}

TEST(Quadrature, SegmentSecondMoment) {
  const auto r = segment_rule<double>(2);
  double s = 0;
  for (Eigen::Index q = 0; q < r.size(); ++q) s += r.weights(q) * r.points(0, q) * r.points(0, q);
  EXPECT_NEAR(s, 1.0 / 3, 1e-15);
}

TEST(Quadrature, TriangleExactnessUpToDeclaredDegree) {
  for (int deg : {0, 1, 2, 5, 8, 13, 20}) {
    const auto r = triangle_rule<double>(deg);
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; a + b <= deg; ++b) {
        const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
        EXPECT_NEAR(integrate_triangle(r, a, b), exact, 1e-14) << "degree " << deg << " monomial " << a << "," << b;
      }
    }
  }
}

TEST(Quadrature, SegmentExactnessUpToDeclaredDegree) {
  for (int deg = 0; deg <= kMaxRuleDegree; ++deg) {
    const auto r = segment_rule<double>(deg);
    double s = 0;
    for (Eigen::Index q = 0; q < r.size(); ++q) s += r.weights(q) * std::pow(r.points(0, q), deg);
    EXPECT_NEAR(s, 1.0 / (deg + 1), 1e-14) << deg;
  }
}

TEST(Quadrature, PointsAreDeterministicAndInside) {
  const auto a = triangle_rule<double>(7);
  const auto b = triangle_rule<double>(7);
  EXPECT_EQ(a.points, b.points);
  for (Eigen::Index q = 0; q < a.size(); ++q) {
    EXPECT_GT(a.points(0, q), 0);
    EXPECT_GT(a.points(1, q), 0);
    EXPECT_LT(a.points(0, q) + a.points(1, q), 1);
    EXPECT_GT(a.weights(q), 0);
  }
}

TEST(Quadrature, UnsupportedDegreeThrows) {
  EXPECT_THROW(triangle_rule<double>(kMaxRuleDegree + 1), std::invalid_argument);
  EXPECT_THROW(segment_rule<double>(-1), std::invalid_argument);
}

TEST(Quadrature, StraightTriangleRuleMeasure) {
  const auto r = straight_triangle_rule(Vec2(1, 1), Vec2(3, 1), Vec2(1, 4), 3);
  EXPECT_NEAR(r.measure(), 3.0, 1e-14);
}

TEST(Basis, ConstantIsOne) {
  const ScalarBasis<double> b(0, Vec2(0.3, -2), 0.7);
  Eigen::VectorXd v(1);
  for (const Vec2& x : {Vec2(0, 0), Vec2(5, -3), Vec2(0.3, -2)}) {
    b.values(x, v);
    EXPECT_EQ(v(0), 1.0);
  }
}

TEST(Basis, CenteredAtCentroid) {
  const Vec2 p0(0, 0), p1(1, 0), p2(0, 1);
  const Vec2 c = (p0 + p1 + p2) / 3;
  const ScalarBasis<double> b(1, c, std::sqrt(2.0));
  Eigen::VectorXd v(3);
  b.values(c, v);
  EXPECT_EQ(v(1), 0.0);
  EXPECT_EQ(v(2), 0.0);
}

TEST(Basis, GradientsMatchFiniteDifferences) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  const ScalarBasis<double> b(4, Vec2(0.4, 0.3), 0.5);
  const int m = b.size();
  const double step = 1e-5;
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const Vec2 x(u(rng), u(rng));
    Eigen::VectorXd val(m), vp(m), vm(m);
    Eigen::MatrixXd grad(m, 2);
    b.values_and_gradients(x, val, grad);
    for (int d = 0; d < 2; ++d) {
      const Vec2 e = step * Vec2::Unit(d);
      b.values(x + e, vp);
      b.values(x - e, vm);
      const Eigen::VectorXd fd = (vp - vm) / (2 * step);
      for (int j = 0; j < m; ++j) {
        const double scale = std::max(1.0, std::abs(grad(j, d)));
        worst = std::max(worst, std::abs(fd(j) - grad(j, d)) / scale);
      }
    }
  }
  EXPECT_LT(worst, 1e-7);
}

TEST(Basis, OrderingByDegreeThenPowerOfX) {
  const ScalarBasis<double> b(2, Vec2(0, 0), 1);
  Eigen::VectorXd v(6);
  b.values(Vec2(2, 3), v);
  Eigen::VectorXd expected(6);
  expected << 1, 2, 3, 4, 6, 9;
  EXPECT_EQ(v, expected);
}

TEST(Basis, DominantCoordinateFollowsChord) {
  const auto bx = SegmentTraceBasis<double>::dominant(2, Vec2(0, 0), Vec2(1, 0.2));
  EXPECT_EQ(bx.axis(), Vec2(1, 0));
  EXPECT_NEAR(bx.coordinate(Vec2(0.5, 7)), 0.0, 1e-15);
  const auto by = SegmentTraceBasis<double>::dominant(2, Vec2(0, 0), Vec2(0.1, -1));
  EXPECT_EQ(by.axis(), Vec2(0, 1));
  EXPECT_NEAR(by.coordinate(Vec2(3, -1)), -0.5, 1e-15);
}

TEST(Basis, AlongCoordinateIsCenteredArcLength) {
  const auto b = SegmentTraceBasis<double>::along(1, Vec2(0, 0), Vec2(3, 4));
  EXPECT_NEAR(b.coordinate(Vec2(1.5, 2)), 0.0, 1e-15);
  EXPECT_NEAR(b.coordinate(Vec2(3, 4)), 0.5, 1e-15);
}

TEST(Projection, MeanOfXOnReferenceTriangle) {
  const auto rule = straight_triangle_rule(Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), 4);
  const ScalarBasis<double> b(0, Vec2(1.0 / 3, 1.0 / 3), 1);
  const auto p = l2_project(b, rule, [](const Vec2& x) { return x.x(); });
  EXPECT_NEAR(p.coefficients(0), 1.0 / 3, 1e-15);
}

TEST(Projection, ReproducesPolynomialsOfItsDegree) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  const auto rule = straight_triangle_rule(Vec2(0.2, 0.1), Vec2(0.45, 0.1), Vec2(0.2, 0.35), 12);
  for (int r = 0; r <= 4; ++r) {
    const ScalarBasis<double> b(r, Vec2(0.28, 0.18), 0.35);
    Eigen::VectorXd c(b.size());
    for (int i = 0; i < c.size(); ++i) c(i) = g(rng);
    const auto p = l2_project(b, rule, [&](const Vec2& x) { return b.evaluate(x, c); });
    EXPECT_LT((p.coefficients - c).cwiseAbs().maxCoeff(), 1e-11) << r;
    EXPECT_FALSE(p.ill_conditioned());
  }
}

TEST(Projection, EdgeProjectionReproducesPolynomials) {
  const Vec2 a(0.25, 0.5), bb(0.5, 0.625);
  const auto rule = segment_line_rule(a, bb, Vec2(0, 1), 10);
  const auto basis = SegmentTraceBasis<double>::along(3, a, bb);
  Eigen::Vector4d c(0.3, -1.2, 2.0, 0.7);
  const auto p = l2_project(basis, rule, [&](const Vec2& x) { return basis.evaluate(x, c); });
  EXPECT_LT((p.coefficients - c).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(Projection, SliverRegionIsFlagged) {
  const auto rule = straight_triangle_rule(Vec2(0, 0), Vec2(1, 0), Vec2(0.5, 1e-9), 6);
  const ScalarBasis<double> b(2, Vec2(0.5, 0), 1);
  const auto p = l2_project(b, rule, [](const Vec2& x) { return x.x(); });
  EXPECT_TRUE(p.ill_conditioned());
  EXPECT_TRUE(p.coefficients.allFinite());
}

TEST(Projection, ErrorDecaysAtOptimalRate) {
  for (int r = 0; r <= 2; ++r) {
    double prev = 0;
    for (int level = 0; level < 4; ++level) {
      const double h = 0.25 / (1 << level);
      const auto rule = straight_triangle_rule(Vec2(0.1, 0.1), Vec2(0.1 + h, 0.1), Vec2(0.1, 0.1 + h), 14);
      const ScalarBasis<double> b(r, Vec2(0.1 + h / 3, 0.1 + h / 3), h);
      auto f = [](const Vec2& x) { return std::sin(3 * x.x()) * std::exp(x.y()); };
      const auto p = l2_project(b, rule, f);
      const double err = std::sqrt(l2_distance_squared(b, rule, p.coefficients, f));
      if (level == 3) EXPECT_NEAR(std::log2(prev / err), r + 2.0, 0.2) << r;
      prev = err;
    }
  }
}
