#include "xhdg/spaces.hpp"

#include "xhdg/projection.hpp"

#include <algorithm>
#include <stdexcept>

namespace xhdg {

namespace {

constexpr double kPortionTol = 1e-12;

int local_edge_of(const Mesh& mesh, int t, int e) {
  for (int j = 0; j < 3; ++j) {
    if (mesh.triangle_edges[t][j] == e) return j;
  }
  throw std::logic_error("edge not found in triangle");
}

Vec2 edge_point(const Mesh& mesh, int e, double t) {
  const Vec2 p = mesh.vertices[mesh.edges[e].vertices[0]];
  const Vec2 q = mesh.vertices[mesh.edges[e].vertices[1]];
  return p + t * (q - p);
}

double region_diameter(const CutCell& cell, int side) {
  std::vector<Vec2> pts;
  for (const auto& p : cell.patches[side]) {
    pts.push_back(p.apex);
    pts.push_back(p.from);
    pts.push_back(p.to);
    if (p.curved) pts.push_back(p.curve(0.5));
  }
  double d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  }
  return d;
}

FaceKind to_face_kind(BoundaryKind b) { return b == BoundaryKind::Dirichlet ? FaceKind::Dirichlet : FaceKind::Neumann; }

}  // namespace

DofMap build_dofmap(const Mesh& mesh, const ManufacturedCase& c, int k, int quad_order) {
  if (k < 1) throw std::invalid_argument("polynomial degree k must be at least 1");
  DofMap dm;
  dm.k = k;
  dm.scheme = c.scheme;
  dm.quad_order = quad_order < 0 ? 2 * k + 2 : quad_order;
  dm.classification = classify(mesh, c.geometry);
  const auto& cls = dm.classification;

  dm.cut_index.assign(mesh.triangles.size(), -1);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (cls.elements[t] != ElementTag::Cut) continue;
    dm.cut_index[t] = static_cast<int>(dm.cut_cells.size());
    dm.cut_cells.push_back(cut_element(mesh, t, c.geometry, cls, dm.quad_order));
  }

  if (c.scheme == Scheme::Interface) {
    for (int e = 0; e < mesh.num_edges(); ++e) {
      if (mesh.edges[e].boundary && cls.edges[e] == EdgeTag::Cut &&
          c.box_kind(cls.edge_cuts[e]->point) == BoundaryKind::Dirichlet) {
        throw GeometryError("interface crosses the Dirichlet boundary away from a vertex", mesh.edges[e].triangles[0]);
      }
    }
  }

  // Element sides.
  dm.element_sides.assign(mesh.triangles.size(), {-1, -1});
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (cls.elements[t] != ElementTag::Cut) {
      const int s = Classification::side_of(cls.elements[t]);
      if (!c.active[s]) continue;
      dm.element_sides[t][s] = static_cast<int>(dm.sides.size());
      dm.sides.push_back(ElementSide{t, s, false, mesh.centroid(t), mesh.diameter(t)});
      continue;
    }
    const auto& cell = dm.cut_cells[dm.cut_index[t]];
    for (int s = 0; s < 2; ++s) {
      if (!c.active[s]) continue;
      const AreaRule rule = cell.side_rule(s, 2);
      const double area = rule.measure();
      if (!(area > 1e-14 * mesh.area(t))) continue;
      const Vec2 centroid = rule.points * rule.weights / area;
      dm.element_sides[t][s] = static_cast<int>(dm.sides.size());
      dm.sides.push_back(ElementSide{t, s, true, centroid, region_diameter(cell, s)});
    }
  }
  dm.side_faces.resize(dm.sides.size());

  auto add_block = [&](TraceBlock b, const std::vector<FaceLink>& links, const std::vector<int>& owners) {
    if (links.empty()) return;
    const int id = static_cast<int>(dm.blocks.size());
    b.basis = b.on_gamma ? SegmentTraceBasis<double>::dominant(k, b.a, b.b) : SegmentTraceBasis<double>::along(k, b.a, b.b);
    if (!b.on_gamma && b.kind != FaceKind::Interface) {
      b.normal = mesh.outward_normal(dm.sides[owners[0]].element, links[0].local_edge);
    }
    dm.blocks.push_back(b);
    for (std::size_t i = 0; i < links.size(); ++i) {
      FaceLink l = links[i];
      l.block = id;
      dm.side_faces[owners[i]].push_back(l);
    }
  };

  // Edge blocks.
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& edge = mesh.edges[e];
    const double len = mesh.edge_length(e);
    if (cls.edges[e] == EdgeTag::OnInterface && !edge.boundary) {
      std::array<int, 2> adj_side{-1, -1};
      for (int i = 0; i < 2; ++i) {
        adj_side[i] = Classification::side_of(cls.elements[edge.triangles[i]]);
      }
      if (c.scheme == Scheme::Interface && adj_side[0] != adj_side[1]) {
        TraceBlock b;
        b.edge = e;
        b.a = edge_point(mesh, e, 0);
        b.b = edge_point(mesh, e, 1);
        b.kind = FaceKind::Interface;
        const int t_one = adj_side[0] == 0 ? edge.triangles[0] : edge.triangles[1];
        b.normal = mesh.outward_normal(t_one, local_edge_of(mesh, t_one, e));
        std::vector<FaceLink> links;
        std::vector<int> owners;
        for (int i = 0; i < 2; ++i) {
          const int t = edge.triangles[i];
          links.push_back({-1, local_edge_of(mesh, t, e)});
          owners.push_back(dm.element_sides[t][adj_side[i]]);
        }
        add_block(b, links, owners);
        continue;
      }
      if (c.scheme == Scheme::BoundaryUnfitted) {
        for (int i = 0; i < 2; ++i) {
          const int t = edge.triangles[i];
          const int sidx = dm.element_sides[t][adj_side[i]];
          if (sidx < 0) continue;
          TraceBlock b;
          b.edge = e;
          b.side = adj_side[i];
          b.a = edge_point(mesh, e, 0);
          b.b = edge_point(mesh, e, 1);
          b.kind = to_face_kind(c.gamma_kind);
          add_block(b, {{-1, local_edge_of(mesh, t, e)}}, {sidx});
        }
        continue;
      }
    }

    std::vector<std::pair<Interval, int>> portions;
    if (cls.edges[e] == EdgeTag::Cut) {
      const double ts = cls.edge_cuts[e]->t;
      const int s0 = c.geometry.side(edge_point(mesh, e, 0.5 * ts));
      portions.push_back({Interval{0, ts}, s0});
      portions.push_back({Interval{ts, 1}, 1 - s0});
    } else if (cls.edges[e] == EdgeTag::OnInterface) {
      portions.push_back({Interval{0, 1}, c.geometry.side(mesh.centroid(edge.triangles[0]))});
    } else {
      portions.push_back({Interval{0, 1}, Classification::side_of(cls.edges[e])});
    }
    for (const auto& [iv, s] : portions) {
      if (iv.length() * len < kPortionTol * len) continue;
      std::vector<FaceLink> links;
      std::vector<int> owners;
      for (int t : edge.triangles) {
        if (t < 0) continue;
        int sidx = -1;
        if (cls.elements[t] == ElementTag::Cut) {
          sidx = dm.element_sides[t][s];
        } else {
          sidx = dm.element_sides[t][Classification::side_of(cls.elements[t])];
        }
        if (sidx < 0) continue;
        links.push_back({-1, local_edge_of(mesh, t, e)});
        owners.push_back(sidx);
      }
      TraceBlock b;
      b.edge = e;
      b.side = s;
      b.interval = iv;
      b.a = edge_point(mesh, e, iv.t0);
      b.b = edge_point(mesh, e, iv.t1);
      b.kind = edge.boundary ? to_face_kind(c.box_kind(0.5 * (b.a + b.b))) : FaceKind::Interior;
      add_block(b, links, owners);
    }
  }

  // Gamma blocks.
  for (const auto& cell : dm.cut_cells) {
    const int t = cell.element;
    TraceBlock b;
    b.on_gamma = true;
    b.element = t;
    b.a = cell.interface.first();
    b.b = cell.interface.last();
    if (c.scheme == Scheme::Interface) {
      b.kind = FaceKind::Interface;
      std::vector<FaceLink> links;
      std::vector<int> owners;
      for (int s = 0; s < 2; ++s) {
        if (dm.element_sides[t][s] < 0) continue;
        links.push_back({-1, -1});
        owners.push_back(dm.element_sides[t][s]);
      }
      add_block(b, links, owners);
    } else {
      for (int s = 0; s < 2; ++s) {
        if (dm.element_sides[t][s] < 0) continue;
        b.side = s;
        b.kind = to_face_kind(c.gamma_kind);
        add_block(b, {{-1, -1}}, {dm.element_sides[t][s]});
      }
    }
  }

  // Numbering.
  const int nsides = static_cast<int>(dm.sides.size());
  for (int i = 0; i < nsides; ++i) {
    dm.sides[i].stress_offset = i * dm.stress_size();
    dm.sides[i].disp_offset = nsides * dm.stress_size() + i * dm.disp_size();
  }
  bool has_dirichlet = false;
  dm.free_index.assign(static_cast<std::size_t>(dm.num_trace_dofs()), -1);
  for (std::size_t b = 0; b < dm.blocks.size(); ++b) {
    auto& blk = dm.blocks[b];
    blk.offset = dm.trace_offset() + static_cast<int>(b) * dm.block_size();
    if (blk.kind == FaceKind::Dirichlet) {
      has_dirichlet = true;
      continue;
    }
    for (int i = 0; i < dm.block_size(); ++i) dm.free_index[b * dm.block_size() + i] = dm.num_free++;
  }
  if (!has_dirichlet) throw std::invalid_argument("no Dirichlet boundary: pure traction problems are not supported");
  return dm;
}

AreaRule side_area_rule(const Mesh& mesh, const DofMap& dm, const ElementSide& s, int degree) {
  if (s.cut) return dm.cut_cell(s.element)->side_rule(s.side, degree);
  return straight_triangle_rule(mesh.vertex(s.element, 0), mesh.vertex(s.element, 1), mesh.vertex(s.element, 2), degree);
}

LineRule block_rule(const Mesh&, const DofMap& dm, const TraceBlock& b, int degree) {
  if (!b.on_gamma) return segment_line_rule(b.a, b.b, b.normal, degree);
  LineRule rule = interface_rule(*dm.cut_cell(b.element), degree);
  if (b.kind != FaceKind::Interface && b.side == 1) rule.normals = -rule.normals;
  return rule;
}

LineRule face_rule(const Mesh& mesh, const DofMap& dm, const ElementSide& s, const FaceLink& f, int degree) {
  const TraceBlock& b = dm.blocks[f.block];
  if (f.local_edge >= 0) return segment_line_rule(b.a, b.b, mesh.outward_normal(s.element, f.local_edge), degree);
  LineRule rule = interface_rule(*dm.cut_cell(s.element), degree);
  if (s.side == 1) rule.normals = -rule.normals;
  return rule;
}

Eigen::VectorXd project_onto_block(const Mesh& mesh, const DofMap& dm, const TraceBlock& b,
                                   const std::function<Vec2(const Vec2&)>& g) {
  const LineRule rule = block_rule(mesh, dm, b, dm.quad_order);
  Eigen::VectorXd out(dm.block_size());
  for (int comp = 0; comp < 2; ++comp) {
    const auto proj = l2_project(b.basis, rule, [&](const Vec2& x) { return g(x)(comp); });
    out.segment(comp * (dm.k + 1), dm.k + 1) = proj.coefficients;
  }
  return out;
}

Eigen::VectorXd project_flux_preserving(const Mesh& mesh, const DofMap& dm, const TraceBlock& b,
                                        const std::function<Vec2(const Vec2&)>& g) {
  const LineRule rule = block_rule(mesh, dm, b, dm.quad_order);
  const int m = dm.k + 1;
  const Eigen::MatrixXd phi = b.basis.eval(rule.points);
  const Eigen::MatrixXd mass = phi.transpose() * rule.weights.asDiagonal() * phi;
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(2 * m + 1, 2 * m + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * m + 1);
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const Vec2 gq = g(rule.points.col(q));
    const Vec2 nq = rule.normals.col(q);
    for (int comp = 0; comp < 2; ++comp) {
      rhs.segment(comp * m, m) += rule.weights(q) * gq(comp) * phi.row(q).transpose();
      kkt.block(2 * m, comp * m, 1, m) += rule.weights(q) * nq(comp) * phi.row(q);
    }
    rhs(2 * m) += rule.weights(q) * gq.dot(nq);
  }
  kkt.block(0, 0, m, m) = mass;
  kkt.block(m, m, m, m) = mass;
  kkt.block(0, 2 * m, 2 * m, 1) = kkt.block(2 * m, 0, 1, 2 * m).transpose();
  return kkt.fullPivLu().solve(rhs).head(2 * m);
}

Eigen::VectorXd constrain_dirichlet(const Mesh& mesh, const DofMap& dm, const ManufacturedCase& c) {
  Eigen::VectorXd values = Eigen::VectorXd::Zero(dm.num_trace_dofs());
  for (std::size_t i = 0; i < dm.blocks.size(); ++i) {
    const auto& b = dm.blocks[i];
    if (b.kind != FaceKind::Dirichlet) continue;
    const int side = std::max(b.side, 0);
    values.segment(static_cast<Eigen::Index>(i) * dm.block_size(), dm.block_size()) =
        project_flux_preserving(mesh, dm, b, [&](const Vec2& x) { return c.g_dirichlet(x, side); });
  }
  return values;
}

}  // namespace xhdg
