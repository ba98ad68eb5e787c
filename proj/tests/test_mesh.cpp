#include "xhdg/mesh.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

using namespace xhdg;

namespace {

std::pair<int, int> sorted(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

TEST(Mesh, SingleSquareCounts) {
  const Mesh m = build_uniform_mesh(1);
  EXPECT_EQ(m.num_triangles(), 2);
  EXPECT_EQ(m.vertices.size(), 4u);
  EXPECT_EQ(m.num_edges(), 5);
}

TEST(Mesh, EightByEightCounts) {
  const Mesh m = build_uniform_mesh(8);
  EXPECT_EQ(m.num_triangles(), 128);
  EXPECT_EQ(m.vertices.size(), 81u);
  EXPECT_EQ(m.num_edges(), 208);
}

TEST(Mesh, CountFormulas) {
  for (int n : {2, 3, 9, 17}) {
    const Mesh m = build_uniform_mesh(n);
    EXPECT_EQ(m.num_triangles(), 2 * n * n);
    EXPECT_EQ(static_cast<int>(m.vertices.size()), (n + 1) * (n + 1));
    EXPECT_EQ(m.num_edges(), n * (3 * n + 2));
  }
}

TEST(Mesh, AreasSumToBox) {
  for (int n : {1, 5, 16}) {
    const BoundingBox box{Vec2(-1, 0.5), Vec2(2, 1.75)};
    const Mesh m = build_uniform_mesh(n, box);
    double total = 0;
    for (int t = 0; t < m.num_triangles(); ++t) {
      EXPECT_GT(m.signed_area(t), 0);
      total += m.area(t);
    }
    EXPECT_NEAR(total, box.area(), 1e-12);
  }
}

TEST(Mesh, EdgeConnectivityIsConsistent) {
  const Mesh m = build_uniform_mesh(6);
  std::set<std::pair<int, int>> seen;
  int boundary = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& ed = m.edges[e];
    EXPECT_TRUE(seen.insert(sorted(ed.vertices[0], ed.vertices[1])).second);
    EXPECT_EQ(ed.boundary, ed.triangles[1] < 0);
    if (ed.boundary) ++boundary;
  }
  EXPECT_EQ(boundary, 4 * 6);
  for (int t = 0; t < m.num_triangles(); ++t) {
    for (int j = 0; j < 3; ++j) {
      const auto& ed = m.edges[m.triangle_edges[t][j]];
      const auto local = sorted(m.triangles[t][j], m.triangles[t][(j + 1) % 3]);
      EXPECT_EQ(local, sorted(ed.vertices[0], ed.vertices[1]));
      EXPECT_TRUE(ed.triangles[0] == t || ed.triangles[1] == t);
    }
  }
}

TEST(Mesh, OutwardNormalsPointAwayFromCentroid) {
  const Mesh m = build_uniform_mesh(3);
  for (int t = 0; t < m.num_triangles(); ++t) {
    for (int j = 0; j < 3; ++j) {
      const Vec2 n = m.outward_normal(t, j);
      const Vec2 mid = 0.5 * (m.vertex(t, j) + m.vertex(t, (j + 1) % 3));
      EXPECT_NEAR(n.norm(), 1.0, 1e-14);
      EXPECT_GT(n.dot(mid - m.centroid(t)), 0);
      EXPECT_NEAR(n.dot(m.vertex(t, (j + 1) % 3) - m.vertex(t, j)), 0.0, 1e-14);
    }
  }
}

TEST(Mesh, DiameterIsDiagonal) {
  const Mesh m = build_uniform_mesh(4);
  for (int t = 0; t < m.num_triangles(); ++t) EXPECT_NEAR(m.diameter(t), std::sqrt(2.0) / 4, 1e-15);
}

TEST(Mesh, RejectsNonPositiveSize) { EXPECT_THROW(build_uniform_mesh(0), std::invalid_argument); }
