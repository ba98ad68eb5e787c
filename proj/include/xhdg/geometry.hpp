#pragma once

#include "xhdg/mesh.hpp"
#include "xhdg/quadrature.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace xhdg {

struct Circle {
  Vec2 center;
  double radius = 0;
};

/// Open chain of segments.
struct Polyline {
  std::vector<Vec2> points;
};

/// Segment from `start` to a crack tip; both faces of the slit are boundary.
struct Slit {
  Vec2 start;
  Vec2 tip;
};

/// Raised when the mesh does not resolve the geometry. `element` is -1 when not tied to one.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(const std::string& what, int element = -1) : std::runtime_error(what), element_(element) {}
  int element() const { return element_; }

 private:
  int element_;
};

/// Interface or immersed boundary. The level set is a signed distance with
/// phi > 0 on side one (Omega_1) and phi < 0 on side two (Omega_2); for a
/// circle, side two is the disk.
class GeometryDescriptor {
 public:
  enum class Kind { Circle, Polyline, Slit };

  static GeometryDescriptor circle(const Vec2& center, double radius);
  static GeometryDescriptor polyline(std::vector<Vec2> points);
  static GeometryDescriptor slit(const Vec2& start, const Vec2& tip);

  Kind kind() const;
  const Circle& as_circle() const { return std::get<Circle>(shape_); }
  const Polyline& as_polyline() const { return std::get<Polyline>(shape_); }
  const Slit& as_slit() const { return std::get<Slit>(shape_); }

  double level_set(const Vec2& x) const;
  /// Side index (0 or 1) of a point off the interface.
  int side(const Vec2& x) const { return level_set(x) >= 0 ? 0 : 1; }
  /// Curvature bound gamma in |n(x) - n(y)| <= gamma h_K; zero for straight geometry.
  double normal_variation_constant() const;

 private:
  explicit GeometryDescriptor(std::variant<Circle, Polyline, Slit> shape) : shape_(std::move(shape)) {}
  std::variant<Circle, Polyline, Slit> shape_;
};

enum class ElementTag { Interior1, Interior2, Cut };
enum class EdgeTag { Uncut1, Uncut2, Cut, OnInterface };

/// Crossing of a segment p -> q at p + t (q - p).
struct EdgeCut {
  double t = 0;
  Vec2 point;
};

struct Classification {
  std::vector<ElementTag> elements;
  std::vector<EdgeTag> edges;
  /// Crossing in the global edge orientation, set for EdgeTag::Cut.
  std::vector<std::optional<EdgeCut>> edge_cuts;
  /// Elements that contain a slit end strictly inside; they are left uncut.
  std::vector<int> tip_elements;

  int num_cut_elements() const;
  /// Side index (0 or 1) of an uncut element or uncut edge.
  static int side_of(ElementTag tag) { return tag == ElementTag::Interior2 ? 1 : 0; }
  static int side_of(EdgeTag tag) { return tag == EdgeTag::Uncut2 ? 1 : 0; }
};

/// Unique crossing of the segment p -> q with the geometry.
///
/// Circles are solved in closed form; a tangential touch (double root) and a
/// segment crossing twice both raise GeometryError.
std::optional<EdgeCut> intersect_edge(const GeometryDescriptor& geom, const Vec2& p, const Vec2& q);

/// Tags every element and edge; throws GeometryError when the mesh is too coarse.
Classification classify(const Mesh& mesh, const GeometryDescriptor& geom);

/// Triangle with two straight sides meeting at `apex`; the third side is the
/// segment or circular arc from `from` to `to`. Integrated through the
/// collapsed map x(s, t) = apex + t (curve(s) - apex). A sign of -1 makes the
/// patch subtract its area, which is how a circular segment bulging into a
/// polygon is removed from it.
struct Patch {
  Vec2 apex;
  Vec2 from;
  Vec2 to;
  bool curved = false;
  double sign = 1;
  Vec2 center = Vec2::Zero();
  double radius = 0;
  double theta0 = 0;
  double theta1 = 0;

  static Patch triangle(const Vec2& a, const Vec2& b, const Vec2& c) {
    Patch p;
    p.apex = a;
    p.from = b;
    p.to = c;
    return p;
  }

  Vec2 curve(double s) const;
  Vec2 curve_derivative(double s) const;
  AreaRule rule(int degree) const;
};

struct Interval {
  double t0 = 0;
  double t1 = 1;
  double length() const { return t1 - t0; }
};

/// Gamma_K: a straight chain P -> ... -> Q or a circular arc from P to Q.
struct InterfacePiece {
  std::vector<Vec2> chain;
  /// Unit normal of each straight chain segment, from Omega_1 into Omega_2.
  std::vector<Vec2> normals;
  bool arc = false;
  Vec2 center = Vec2::Zero();
  double radius = 0;
  double theta0 = 0;
  double theta1 = 0;

  const Vec2& first() const { return chain.front(); }
  const Vec2& last() const { return chain.back(); }
  double length() const;
};

struct CutCell {
  int element = -1;
  /// Quadrature patches covering K_1 and K_2: straight triangles of the chord
  /// polygon plus, for arcs, one signed circular-segment patch.
  std::array<std::vector<Patch>, 2> patches;
  InterfacePiece interface;
  /// Per side and local edge: the portion F n closure(Omega_i) in the global edge parameter.
  std::array<std::array<std::optional<Interval>, 3>, 2> edge_portions;
  int quad_order = 4;

  AreaRule side_rule(int side, int degree) const;
  AreaRule side_rule(int side) const { return side_rule(side, quad_order); }
  double side_area(int side) const { return side_rule(side).measure(); }
};

CutCell cut_element(const Mesh& mesh, int element, const GeometryDescriptor& geom, const Classification& cls,
                    int quad_order);

/// Points, weights and unit normals (from Omega_1 into Omega_2) on Gamma_K.
LineRule interface_rule(const CutCell& cell, int quad_order);

/// Area rule on a patch, collapsed toward `singular` when that point lies on the
/// patch so that integrands like r^{-1} stay integrable by Gauss rules.
AreaRule patch_rule_toward(const Patch& patch, const Vec2& singular, int degree);

}  // namespace xhdg
