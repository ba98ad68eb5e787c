#pragma once

#include "xhdg/quadrature.hpp"

#include <array>
#include <vector>

namespace xhdg {

struct BoundingBox {
  Vec2 lo = Vec2(0, 0);
  Vec2 hi = Vec2(1, 1);

  double width() const { return hi.x() - lo.x(); }
  double height() const { return hi.y() - lo.y(); }
  double area() const { return width() * height(); }
};

struct MeshEdge {
  std::array<int, 2> vertices{};
  /// Adjacent triangles; the second entry is -1 on the boundary.
  std::array<int, 2> triangles{-1, -1};
  bool boundary = false;
};

/// Structured triangulation of a box. Immutable once built.
///
/// Local edge j of a triangle joins vertices j and (j + 1) % 3.
class Mesh {
 public:
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<MeshEdge> edges;
  std::vector<std::array<int, 3>> triangle_edges;
  int n = 0;
  BoundingBox box;

  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  Vec2 vertex(int t, int j) const { return vertices[triangles[t][j]]; }
  double signed_area(int t) const;
  double area(int t) const { return std::abs(signed_area(t)); }
  /// Longest edge length h_K.
  double diameter(int t) const;
  Vec2 centroid(int t) const;
  double edge_length(int e) const { return (vertices[edges[e].vertices[1]] - vertices[edges[e].vertices[0]]).norm(); }
  /// Unit outward normal of local edge j of triangle t.
  Vec2 outward_normal(int t, int j) const;
  /// Position of local edge j of triangle t inside the global edge's orientation.
  bool edge_aligned(int t, int j) const;
  bool contains(int t, const Vec2& x, double tol = 0.0) const;
};

/// n x n grid of squares, each split along its lower-left to upper-right diagonal.
Mesh build_uniform_mesh(int n, const BoundingBox& box = {});

}  // namespace xhdg
