#include "xhdg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace xhdg {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

constexpr double kRelTol = 1e-12;

double wrap_angle(double a) {
  a = std::remainder(a, 2 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2 * std::numbers::pi;
  return a;
}

/// Signed distance to a chain of segments, positive on the left of the nearest one.
double chain_level_set(const std::vector<Vec2>& pts, const Vec2& x) {
  double best = std::numeric_limits<double>::infinity();
  double best_cross = 0;
  double sign = 1;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 a = pts[i];
    const Vec2 d = pts[i + 1] - a;
    const double len2 = d.squaredNorm();
    const double u = std::clamp((x - a).dot(d) / len2, 0.0, 1.0);
    const double dist = (x - (a + u * d)).norm();
    const double c = cross(d, x - a) / std::sqrt(len2);
    // Ties at a shared vertex go to the segment the point projects into.
    if (dist < best - 1e-15 || (dist <= best + 1e-15 && std::abs(c) > std::abs(best_cross))) {
      best = dist;
      best_cross = c;
      sign = c > 0 ? 1.0 : (c < 0 ? -1.0 : 0.0);
    }
  }
  return sign * best;
}

std::optional<EdgeCut> intersect_circle(const Circle& circ, const Vec2& p, const Vec2& q) {
  const Vec2 d = q - p;
  const Vec2 f = p - circ.center;
  const double a = d.squaredNorm();
  const double b = 2 * f.dot(d);
  const double c = f.squaredNorm() - circ.radius * circ.radius;
  const double disc = b * b - 4 * a * c;
  const double scale = std::max(b * b, 4 * a * std::abs(c));
  if (std::abs(disc) <= 1e-13 * scale) {
    const double t = -b / (2 * a);
    if (t > -kRelTol && t < 1 + kRelTol) throw GeometryError("interface is tangent to a mesh edge");
    return std::nullopt;
  }
  if (disc < 0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double qv = -0.5 * (b + (b >= 0 ? sq : -sq));
  double roots[2] = {qv / a, qv != 0 ? c / qv : qv / a};
  int interior = 0;
  int closed = 0;
  double hit = 0;
  for (double t : roots) {
    if (t > kRelTol && t < 1 - kRelTol) {
      ++interior;
      hit = t;
    }
    if (t > -kRelTol && t < 1 + kRelTol) ++closed;
  }
  if (interior == 0) return std::nullopt;
  if (closed > 1) throw GeometryError("mesh edge crosses the interface more than once");
  return EdgeCut{hit, p + hit * d};
}

std::optional<EdgeCut> intersect_chain(const std::vector<Vec2>& pts, const Vec2& p, const Vec2& q, bool vertex_error) {
  const Vec2 d = q - p;
  std::vector<double> hits;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 a = pts[i];
    const Vec2 e = pts[i + 1] - a;
    const double denom = cross(d, e);
    if (std::abs(denom) <= 1e-14 * d.norm() * e.norm()) {
      if (std::abs(cross(a - p, d)) <= kRelTol * d.norm() * std::max(1.0, (a - p).norm())) {
        const double u0 = (a - p).dot(d) / d.squaredNorm();
        const double u1 = (pts[i + 1] - p).dot(d) / d.squaredNorm();
        if (std::max(u0, u1) > kRelTol && std::min(u0, u1) < 1 - kRelTol) {
          throw GeometryError("geometry segment is collinear with a mesh edge");
        }
      }
      continue;
    }
    const double t = cross(a - p, e) / denom;
    const double u = cross(a - p, d) / denom;
    if (u < -kRelTol || u > 1 + kRelTol) continue;
    if (t <= kRelTol || t >= 1 - kRelTol) {
      if (vertex_error && t > -kRelTol && t < 1 + kRelTol) throw GeometryError("slit passes through a mesh vertex");
      continue;
    }
    if (std::none_of(hits.begin(), hits.end(), [&](double h) { return std::abs(h - t) < 1e-10; })) hits.push_back(t);
  }
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1) throw GeometryError("mesh edge crosses the interface more than once");
  return EdgeCut{hits[0], p + hits[0] * d};
}

int strict_sign(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

/// Ear clipping of a simple polygon into straight patches.
std::vector<Patch> triangulate(std::vector<Vec2> poly, int element) {
  double area2 = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) area2 += cross(poly[i], poly[(i + 1) % poly.size()]);
  if (area2 < 0) std::reverse(poly.begin(), poly.end());
  std::vector<Patch> out;
  while (poly.size() > 3) {
    const std::size_t n = poly.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n && !clipped; ++i) {
      const Vec2& a = poly[(i + n - 1) % n];
      const Vec2& b = poly[i];
      const Vec2& c = poly[(i + 1) % n];
      if (cross(b - a, c - b) <= 0) continue;
      bool empty = true;
      for (std::size_t j = 0; j < n && empty; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        const Vec2& x = poly[j];
        if (cross(b - a, x - a) > 0 && cross(c - b, x - b) > 0 && cross(a - c, x - c) > 0) empty = false;
      }
      if (!empty) continue;
      out.push_back(Patch::triangle(a, b, c));
      poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) throw GeometryError("cannot triangulate cut region", element);
  }
  out.push_back(Patch::triangle(poly[0], poly[1], poly[2]));
  return out;
}

/// Position of x along a chain as segment index plus local parameter.
double chain_parameter(const std::vector<Vec2>& pts, const Vec2& x) {
  double best = std::numeric_limits<double>::infinity();
  double param = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 d = pts[i + 1] - pts[i];
    const double u = std::clamp((x - pts[i]).dot(d) / d.squaredNorm(), 0.0, 1.0);
    const double dist = (x - (pts[i] + u * d)).norm();
    if (dist < best) {
      best = dist;
      param = static_cast<double>(i) + u;
    }
  }
  return param;
}

}  // namespace

GeometryDescriptor GeometryDescriptor::circle(const Vec2& center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("circle radius must be positive");
  return GeometryDescriptor(Circle{center, radius});
}

GeometryDescriptor GeometryDescriptor::polyline(std::vector<Vec2> points) {
  if (points.size() < 2) throw std::invalid_argument("polyline needs at least two points");
  return GeometryDescriptor(Polyline{std::move(points)});
}

GeometryDescriptor GeometryDescriptor::slit(const Vec2& start, const Vec2& tip) {
  if ((tip - start).norm() == 0) throw std::invalid_argument("slit has zero length");
  return GeometryDescriptor(Slit{start, tip});
}

GeometryDescriptor::Kind GeometryDescriptor::kind() const {
  switch (shape_.index()) {
    case 0: return Kind::Circle;
    case 1: return Kind::Polyline;
    default: return Kind::Slit;
  }
}

double GeometryDescriptor::level_set(const Vec2& x) const {
  switch (kind()) {
    case Kind::Circle: {
      const auto& c = as_circle();
      return (x - c.center).norm() - c.radius;
    }
    case Kind::Polyline: return chain_level_set(as_polyline().points, x);
    case Kind::Slit: return chain_level_set({as_slit().start, as_slit().tip}, x);
  }
  return 0;
}

double GeometryDescriptor::normal_variation_constant() const {
  return kind() == Kind::Circle ? 1.0 / as_circle().radius : 0.0;
}

int Classification::num_cut_elements() const {
  return static_cast<int>(std::count(elements.begin(), elements.end(), ElementTag::Cut));
}

std::optional<EdgeCut> intersect_edge(const GeometryDescriptor& geom, const Vec2& p, const Vec2& q) {
  switch (geom.kind()) {
    case GeometryDescriptor::Kind::Circle: return intersect_circle(geom.as_circle(), p, q);
    case GeometryDescriptor::Kind::Polyline: return intersect_chain(geom.as_polyline().points, p, q, false);
    case GeometryDescriptor::Kind::Slit: return intersect_chain({geom.as_slit().start, geom.as_slit().tip}, p, q, true);
  }
  return std::nullopt;
}

namespace {

Classification classify_level_set(const Mesh& mesh, const GeometryDescriptor& geom) {
  Classification cls;
  const double tol = kRelTol * mesh.diameter(0);
  std::vector<int> sign(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) sign[v] = strict_sign(geom.level_set(mesh.vertices[v]), tol);

  cls.edges.resize(mesh.edges.size());
  cls.edge_cuts.resize(mesh.edges.size());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto [va, vb] = mesh.edges[e].vertices;
    const Vec2 p = mesh.vertices[va];
    const Vec2 q = mesh.vertices[vb];
    const int sa = sign[va];
    const int sb = sign[vb];
    const int owner = mesh.edges[e].triangles[0];
    try {
      if (sa * sb < 0) {
        auto cut = intersect_edge(geom, p, q);
        if (!cut) throw GeometryError("sign change without a crossing on a mesh edge", owner);
        cls.edges[e] = EdgeTag::Cut;
        cls.edge_cuts[e] = cut;
      } else if (sa == 0 && sb == 0) {
        if (std::abs(geom.level_set(0.5 * (p + q))) > 1e-9 * (q - p).norm()) {
          throw GeometryError("mesh edge is a chord of the interface", owner);
        }
        cls.edges[e] = EdgeTag::OnInterface;
      } else {
        if (intersect_edge(geom, p, q)) throw GeometryError("mesh edge crosses the interface twice", owner);
        cls.edges[e] = (sa != 0 ? sa : sb) > 0 ? EdgeTag::Uncut1 : EdgeTag::Uncut2;
      }
    } catch (const GeometryError& err) {
      if (err.element() >= 0) throw;
      throw GeometryError(err.what(), owner);
    }
  }

  cls.elements.resize(mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    int pos = 0, neg = 0, zero = 0;
    for (int v : mesh.triangles[t]) {
      if (sign[v] > 0) ++pos;
      else if (sign[v] < 0) ++neg;
      else ++zero;
    }
    if (zero == 3) throw GeometryError("element lies on the interface", t);
    if (pos > 0 && neg > 0) {
      int cuts = zero;
      for (int e : mesh.triangle_edges[t]) cuts += cls.edges[e] == EdgeTag::Cut;
      if (cuts != 2) throw GeometryError("interface crosses element boundary more than twice", t);
      cls.elements[t] = ElementTag::Cut;
    } else {
      if (geom.kind() == GeometryDescriptor::Kind::Circle && pos > 0 && mesh.contains(t, geom.as_circle().center, -tol)) {
        throw GeometryError("circle lies inside a single element", t);
      }
      cls.elements[t] = pos > 0 ? ElementTag::Interior1 : ElementTag::Interior2;
    }
  }
  return cls;
}

Classification classify_slit(const Mesh& mesh, const GeometryDescriptor& geom) {
  Classification cls;
  const auto& slit = geom.as_slit();
  cls.edges.resize(mesh.edges.size());
  cls.edge_cuts.resize(mesh.edges.size());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Vec2 p = mesh.vertices[mesh.edges[e].vertices[0]];
    const Vec2 q = mesh.vertices[mesh.edges[e].vertices[1]];
    std::optional<EdgeCut> cut;
    try {
      cut = intersect_edge(geom, p, q);
    } catch (const GeometryError& err) {
      throw GeometryError(err.what(), mesh.edges[e].triangles[0]);
    }
    if (cut) {
      cls.edges[e] = EdgeTag::Cut;
      cls.edge_cuts[e] = cut;
    } else {
      cls.edges[e] = geom.side(0.5 * (p + q)) == 0 ? EdgeTag::Uncut1 : EdgeTag::Uncut2;
    }
  }
  cls.elements.resize(mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    int cuts = 0;
    for (int e : mesh.triangle_edges[t]) cuts += cls.edges[e] == EdgeTag::Cut;
    if (cuts > 2) throw GeometryError("slit crosses element boundary more than twice", t);
    const double tol = kRelTol * mesh.diameter(t);
    const bool end_inside = mesh.contains(t, slit.tip, -tol) || mesh.contains(t, slit.start, -tol);
    if (cuts == 2 && !end_inside) {
      cls.elements[t] = ElementTag::Cut;
      continue;
    }
    if (end_inside) cls.tip_elements.push_back(t);
    cls.elements[t] = geom.side(mesh.centroid(t)) == 0 ? ElementTag::Interior1 : ElementTag::Interior2;
  }
  return cls;
}

}  // namespace

Classification classify(const Mesh& mesh, const GeometryDescriptor& geom) {
  return geom.kind() == GeometryDescriptor::Kind::Slit ? classify_slit(mesh, geom) : classify_level_set(mesh, geom);
}

Vec2 Patch::curve(double s) const {
  if (!curved) return from + s * (to - from);
  const double th = theta0 + s * (theta1 - theta0);
  return center + radius * Vec2(std::cos(th), std::sin(th));
}

Vec2 Patch::curve_derivative(double s) const {
  if (!curved) return to - from;
  const double th = theta0 + s * (theta1 - theta0);
  return radius * (theta1 - theta0) * Vec2(-std::sin(th), std::cos(th));
}

AreaRule Patch::rule(int degree) const {
  const int ns = std::min(kMaxRuleDegree, degree / 2 + 1 + (curved ? 3 : 0));
  const int nt = std::min(kMaxRuleDegree, (degree + 3) / 2);
  const auto gs = gauss_legendre<double>(ns);
  const auto gt = gauss_legendre<double>(nt);
  AreaRule rule;
  rule.points.resize(2, ns * nt);
  rule.weights.resize(ns * nt);
  int q = 0;
  for (int i = 0; i < ns; ++i) {
    const double s = gs.points(0, i);
    const Vec2 g = curve(s);
    const double jac = std::abs(cross(g - apex, curve_derivative(s)));
    for (int j = 0; j < nt; ++j) {
      const double t = gt.points(0, j);
      rule.points.col(q) = apex + t * (g - apex);
      rule.weights(q) = sign * gs.weights(i) * gt.weights(j) * t * jac;
      ++q;
    }
  }
  return rule;
}

AreaRule patch_rule_toward(const Patch& patch, const Vec2& singular, int degree) {
  if (patch.curved) return patch.rule(degree);
  const Vec2 a = patch.apex, b = patch.from, c = patch.to;
  const double tol = 1e-10 * std::max((b - a).norm(), (c - a).norm());
  if ((singular - a).norm() <= tol) return patch.rule(degree);
  if ((singular - b).norm() <= tol) return Patch::triangle(b, c, a).rule(degree);
  if ((singular - c).norm() <= tol) return Patch::triangle(c, a, b).rule(degree);
  const Vec2 v[3] = {a, b, c};
  for (int j = 0; j < 3; ++j) {
    const Vec2 p = v[j], q = v[(j + 1) % 3], r = v[(j + 2) % 3];
    const double len = (q - p).norm();
    if (std::abs(cross(q - p, singular - p)) <= tol * len) {
      const double u = (singular - p).dot(q - p) / (len * len);
      if (u > 0 && u < 1) {
        AreaRule rule = Patch::triangle(singular, q, r).rule(degree);
        rule.append(Patch::triangle(singular, r, p).rule(degree));
        return rule;
      }
    }
  }
  return patch.rule(degree);
}

double InterfacePiece::length() const {
  if (arc) return radius * std::abs(theta1 - theta0);
  double len = 0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) len += (chain[i + 1] - chain[i]).norm();
  return len;
}

AreaRule CutCell::side_rule(int side, int degree) const {
  AreaRule rule;
  rule.points.resize(2, 0);
  rule.weights.resize(0);
  for (const auto& p : patches[side]) rule.append(p.rule(degree));
  return rule;
}

CutCell cut_element(const Mesh& mesh, int element, const GeometryDescriptor& geom, const Classification& cls,
                    int quad_order) {
  if (cls.elements[element] != ElementTag::Cut) throw std::invalid_argument("cut_element: element is not cut");
  CutCell cell;
  cell.element = element;
  cell.quad_order = quad_order;
  const double h = mesh.diameter(element);
  const double tol = kRelTol * h;
  const bool slit = geom.kind() == GeometryDescriptor::Kind::Slit;

  std::array<std::vector<Vec2>, 2> poly;
  std::array<std::vector<bool>, 2> is_cut;
  std::vector<Vec2> cuts;
  auto push = [&](int s, const Vec2& x, bool c) {
    poly[s].push_back(x);
    is_cut[s].push_back(c);
  };
  for (int j = 0; j < 3; ++j) {
    const Vec2 v = mesh.vertex(element, j);
    const double phi = geom.level_set(v);
    const int sg = strict_sign(phi, slit ? 0.0 : tol);
    if (sg == 0 && slit) throw GeometryError("slit passes through a mesh vertex", element);
    if (sg > 0) push(0, v, false);
    else if (sg < 0) push(1, v, false);
    else {
      push(0, v, true);
      push(1, v, true);
      cuts.push_back(v);
    }
    const int e = mesh.triangle_edges[element][j];
    if (cls.edges[e] == EdgeTag::Cut) {
      const Vec2 x = cls.edge_cuts[e]->point;
      push(0, x, true);
      push(1, x, true);
      cuts.push_back(x);
    }
  }
  if (cuts.size() != 2) throw GeometryError("element is not crossed exactly once", element);

  // Edge portions in each global edge's own parameter.
  for (int j = 0; j < 3; ++j) {
    const int e = mesh.triangle_edges[element][j];
    const Vec2 p = mesh.vertices[mesh.edges[e].vertices[0]];
    if (cls.edges[e] == EdgeTag::Cut) {
      const double ts = cls.edge_cuts[e]->t;
      const int s0 = geom.side(0.5 * (p + cls.edge_cuts[e]->point));
      cell.edge_portions[s0][j] = Interval{0, ts};
      cell.edge_portions[1 - s0][j] = Interval{ts, 1};
    } else {
      cell.edge_portions[Classification::side_of(cls.edges[e])][j] = Interval{0, 1};
    }
  }

  auto& iface = cell.interface;
  const Vec2 P = cuts[0], Q = cuts[1];
  if (geom.kind() == GeometryDescriptor::Kind::Circle) {
    const auto& c = geom.as_circle();
    iface.arc = true;
    iface.center = c.center;
    iface.radius = c.radius;
    iface.theta0 = std::atan2(P.y() - c.center.y(), P.x() - c.center.x());
    iface.theta1 = iface.theta0 + wrap_angle(std::atan2(Q.y() - c.center.y(), Q.x() - c.center.x()) - iface.theta0);
    iface.chain = {P, Q};
    const double mid = 0.5 * (iface.theta0 + iface.theta1);
    if (!mesh.contains(element, c.center + c.radius * Vec2(std::cos(mid), std::sin(mid)), tol)) {
      throw GeometryError("interface arc leaves its element", element);
    }
  } else if (geom.kind() == GeometryDescriptor::Kind::Polyline) {
    const auto& pts = geom.as_polyline().points;
    const double a = chain_parameter(pts, P);
    const double b = chain_parameter(pts, Q);
    iface.chain.push_back(P);
    if (a < b) {
      for (int i = static_cast<int>(std::floor(a)) + 1; i < b; ++i) {
        if (i > a + 1e-12 && i < b - 1e-12) iface.chain.push_back(pts[i]);
      }
    } else {
      for (int i = static_cast<int>(std::ceil(a)) - 1; i > b; --i) {
        if (i < a - 1e-12 && i > b + 1e-12) iface.chain.push_back(pts[i]);
      }
    }
    iface.chain.push_back(Q);
    for (std::size_t i = 1; i + 1 < iface.chain.size(); ++i) {
      if (!mesh.contains(element, iface.chain[i], tol)) throw GeometryError("polyline vertex outside its element", element);
    }
  } else {
    iface.chain = {P, Q};
  }
  if (!iface.arc) {
    for (std::size_t i = 0; i + 1 < iface.chain.size(); ++i) {
      const Vec2 a = iface.chain[i], b = iface.chain[i + 1];
      Vec2 nrm = Vec2((b - a).y(), -(b - a).x()).normalized();
      const Vec2 mid = 0.5 * (a + b);
      const double delta = 1e-6 * (b - a).norm();
      if (geom.level_set(mid + delta * nrm) > geom.level_set(mid - delta * nrm)) nrm = -nrm;
      iface.normals.push_back(nrm);
    }
  }

  for (int s = 0; s < 2; ++s) {
    auto& pg = poly[s];
    auto& ic = is_cut[s];
    const std::size_t n = pg.size();
    if (n < 3) throw GeometryError("degenerate cut region", element);
    // Rotate so the closing edge back -> front is the interface.
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (ic[i] && ic[(i + 1) % n] && (pg[i] - pg[(i + 1) % n]).norm() > tol) {
        start = (i + 1) % n;
        break;
      }
    }
    if (start == n) throw GeometryError("cut region has no interface side", element);
    std::rotate(pg.begin(), pg.begin() + static_cast<std::ptrdiff_t>(start), pg.end());
    const Vec2 c0 = pg.front();
    const Vec2 c1 = pg.back();

    if (iface.arc) {
      for (std::size_t i = 1; i + 1 < n; ++i) cell.patches[s].push_back(Patch::triangle(pg[0], pg[i], pg[i + 1]));
      Patch seg;
      seg.curved = true;
      seg.center = iface.center;
      seg.radius = iface.radius;
      seg.apex = 0.5 * (c0 + c1);
      seg.from = c1;
      seg.to = c0;
      seg.theta0 = std::atan2(c1.y() - iface.center.y(), c1.x() - iface.center.x());
      seg.theta1 = seg.theta0 + wrap_angle(std::atan2(c0.y() - iface.center.y(), c0.x() - iface.center.x()) - seg.theta0);
      const double bulge = cross(c0 - c1, seg.curve(0.5) - c1);
      const double body = cross(c0 - c1, pg[1] - c1);
      seg.sign = bulge * body > 0 ? -1.0 : 1.0;
      cell.patches[s].push_back(seg);
    } else if (iface.chain.size() == 2) {
      for (std::size_t i = 1; i + 1 < n; ++i) cell.patches[s].push_back(Patch::triangle(pg[0], pg[i], pg[i + 1]));
    } else {
      std::vector<Vec2> full = pg;
      const bool ends_at_q = (c1 - iface.last()).norm() <= (c1 - iface.first()).norm();
      const std::size_t m = iface.chain.size();
      if (ends_at_q) {
        for (std::size_t i = m - 2; i >= 1; --i) full.push_back(iface.chain[i]);
      } else {
        for (std::size_t i = 1; i + 1 < m; ++i) full.push_back(iface.chain[i]);
      }
      cell.patches[s] = triangulate(std::move(full), element);
    }
  }
  return cell;
}

LineRule interface_rule(const CutCell& cell, int quad_order) {
  const auto& iface = cell.interface;
  LineRule rule;
  if (iface.arc) {
    const auto g = gauss_legendre<double>(std::min(kMaxRuleDegree, quad_order / 2 + 4));
    const double dth = iface.theta1 - iface.theta0;
    rule.points.resize(2, g.size());
    rule.normals.resize(2, g.size());
    rule.weights = g.weights * (iface.radius * std::abs(dth));
    for (Eigen::Index q = 0; q < g.size(); ++q) {
      const double th = iface.theta0 + g.points(0, q) * dth;
      const Vec2 dir(std::cos(th), std::sin(th));
      rule.points.col(q) = iface.center + iface.radius * dir;
      rule.normals.col(q) = -dir;
    }
    return rule;
  }
  rule.points.resize(2, 0);
  rule.normals.resize(2, 0);
  rule.weights.resize(0);
  for (std::size_t i = 0; i + 1 < iface.chain.size(); ++i) {
    rule.append(segment_line_rule(iface.chain[i], iface.chain[i + 1], iface.normals[i], quad_order));
  }
  return rule;
}

}  // namespace xhdg
