#include "xhdg/mesh.hpp"

#include <map>
#include <stdexcept>

namespace xhdg {

namespace {
double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }
}  // namespace

double Mesh::signed_area(int t) const {
  const Vec2 a = vertex(t, 0);
  return 0.5 * cross(vertex(t, 1) - a, vertex(t, 2) - a);
}

double Mesh::diameter(int t) const {
  double h = 0;
  for (int j = 0; j < 3; ++j) h = std::max(h, (vertex(t, (j + 1) % 3) - vertex(t, j)).norm());
  return h;
}

Vec2 Mesh::centroid(int t) const { return (vertex(t, 0) + vertex(t, 1) + vertex(t, 2)) / 3.0; }

Vec2 Mesh::outward_normal(int t, int j) const {
  const Vec2 d = vertex(t, (j + 1) % 3) - vertex(t, j);
  // Counterclockwise triangles have the interior on the left of each edge.
  return Vec2(d.y(), -d.x()).normalized();
}

bool Mesh::edge_aligned(int t, int j) const {
  return edges[triangle_edges[t][j]].vertices[0] == triangles[t][j];
}

bool Mesh::contains(int t, const Vec2& x, double tol) const {
  for (int j = 0; j < 3; ++j) {
    const Vec2 a = vertex(t, j);
    const Vec2 b = vertex(t, (j + 1) % 3);
    if (cross(b - a, x - a) < -tol * (b - a).norm()) return false;
  }
  return true;
}

Mesh build_uniform_mesh(int n, const BoundingBox& box) {
  if (n < 1) throw std::invalid_argument("build_uniform_mesh: n must be positive");
  if (!(box.width() > 0) || !(box.height() > 0)) throw std::invalid_argument("build_uniform_mesh: degenerate bounding box");

  Mesh mesh;
  mesh.n = n;
  mesh.box = box;
  mesh.vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  const double hx = box.width() / n;
  const double hy = box.height() / n;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      // Snap the last row/column exactly onto the box.
      const double x = i == n ? box.hi.x() : box.lo.x() + i * hx;
      const double y = j == n ? box.hi.y() : box.lo.y() + j * hy;
      mesh.vertices.emplace_back(x, y);
    }
  }
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  mesh.triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.triangles.push_back({v00, v10, v11});  // below the diagonal
      mesh.triangles.push_back({v00, v11, v01});  // above the diagonal
    }
  }

  std::map<std::pair<int, int>, int> lookup;
  mesh.triangle_edges.resize(mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int j = 0; j < 3; ++j) {
      const int a = mesh.triangles[t][j];
      const int b = mesh.triangles[t][(j + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = lookup.find(key);
      if (it == lookup.end()) {
        const int e = mesh.num_edges();
        MeshEdge edge;
        edge.vertices = {a, b};
        edge.triangles = {t, -1};
        mesh.edges.push_back(edge);
        lookup.emplace(key, e);
        mesh.triangle_edges[t][j] = e;
      } else {
        auto& edge = mesh.edges[it->second];
        if (edge.triangles[1] != -1) throw std::logic_error("build_uniform_mesh: edge shared by more than two triangles");
        edge.triangles[1] = t;
        mesh.triangle_edges[t][j] = it->second;
      }
    }
  }
  for (auto& e : mesh.edges) e.boundary = e.triangles[1] == -1;
  return mesh;
}

}  // namespace xhdg
