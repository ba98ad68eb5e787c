#pragma once

#include "xhdg/basis.hpp"
#include "xhdg/geometry.hpp"
#include "xhdg/problems.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace xhdg {

enum class FaceKind { Interior, Dirichlet, Neumann, Interface };

/// Element restricted to one subdomain. Uncut elements have exactly one.
struct ElementSide {
  int element = -1;
  int side = 0;
  bool cut = false;
  /// Frame of the scaled monomial bases: region centroid and diameter.
  Vec2 center = Vec2::Zero();
  double scale = 1;
  int stress_offset = 0;
  int disp_offset = 0;
};

/// One trace polynomial block: an edge, an edge portion on one side of Gamma,
/// or the piece of Gamma inside a cut element.
struct TraceBlock {
  bool on_gamma = false;
  /// Global edge for edge blocks, -1 otherwise.
  int edge = -1;
  /// Cut element for Gamma blocks, -1 otherwise.
  int element = -1;
  /// Subdomain the block belongs to; -1 for a shared interface block.
  int side = -1;
  Interval interval;
  Vec2 a = Vec2::Zero();
  Vec2 b = Vec2::Zero();
  FaceKind kind = FaceKind::Interior;
  /// Edge blocks only: from Omega_1 into Omega_2 on interface blocks, outward from
  /// the first linked element otherwise (outward from the domain on boundary faces).
  Vec2 normal = Vec2::Zero();
  SegmentTraceBasis<double> basis;
  int offset = 0;
};

/// Link from an element side to a trace block on its boundary.
struct FaceLink {
  int block = -1;
  /// Local edge of the element, or -1 for Gamma_K.
  int local_edge = -1;
};

/// Numbering of all unknowns: [stress of every element side][displacement of
/// every element side][edge trace blocks][Gamma trace blocks]. Each trace block
/// stores its dofs component-major: comp * (k + 1) + j.
class DofMap {
 public:
  int k = 1;
  Scheme scheme = Scheme::Interface;
  int quad_order = 4;
  std::vector<ElementSide> sides;
  /// Per element, index into `sides` for each subdomain (-1 if absent).
  std::vector<std::array<int, 2>> element_sides;
  std::vector<TraceBlock> blocks;
  std::vector<std::vector<FaceLink>> side_faces;
  std::vector<CutCell> cut_cells;
  /// Per element, index into `cut_cells` (-1 if uncut).
  std::vector<int> cut_index;
  Classification classification;
  /// Trace dof -> free unknown, -1 where constrained.
  std::vector<int> free_index;
  int num_free = 0;

  int stress_size() const { return 3 * dim_p2(k - 1); }
  int disp_size() const { return 2 * dim_p2(k); }
  int interior_size() const { return stress_size() + disp_size(); }
  int block_size() const { return 2 * (k + 1); }
  int num_interior_dofs() const { return static_cast<int>(sides.size()) * interior_size(); }
  int num_trace_dofs() const { return static_cast<int>(blocks.size()) * block_size(); }
  int trace_offset() const { return num_interior_dofs(); }
  /// Index of a trace dof inside the trace vector (not the global numbering).
  int trace_dof(int block, int comp, int j) const { return block * block_size() + comp * (k + 1) + j; }

  const CutCell* cut_cell(int element) const {
    return cut_index[element] < 0 ? nullptr : &cut_cells[cut_index[element]];
  }
  ScalarBasis<double> stress_basis(const ElementSide& s) const { return {k - 1, s.center, s.scale}; }
  ScalarBasis<double> disp_basis(const ElementSide& s) const { return {k, s.center, s.scale}; }
};

/// Builds the spaces for `c.scheme` on a classified mesh.
///
/// Throws std::invalid_argument for k < 1 or when no Dirichlet face exists, and
/// GeometryError when Gamma crosses a Dirichlet box edge away from a vertex in
/// the interface scheme.
DofMap build_dofmap(const Mesh& mesh, const ManufacturedCase& c, int k, int quad_order = -1);

/// Area rule over an element side (the whole element when uncut).
AreaRule side_area_rule(const Mesh& mesh, const DofMap& dm, const ElementSide& s, int degree);

/// Quadrature over a trace block. Normals point from Omega_1 into Omega_2 on
/// interface blocks and out of the domain on boundary blocks.
LineRule block_rule(const Mesh& mesh, const DofMap& dm, const TraceBlock& b, int degree);

/// Face quadrature from an element side's point of view, with outward normals.
LineRule face_rule(const Mesh& mesh, const DofMap& dm, const ElementSide& s, const FaceLink& f, int degree);

/// Coefficients of the L2 projection of a vector function onto a block, as a
/// trace-block vector of length 2 (k + 1).
Eigen::VectorXd project_onto_block(const Mesh& mesh, const DofMap& dm, const TraceBlock& b,
                                   const std::function<Vec2(const Vec2&)>& g);

/// L2 projection onto the block that also reproduces the normal flux of g over the block.
Eigen::VectorXd project_flux_preserving(const Mesh& mesh, const DofMap& dm, const TraceBlock& b,
                                        const std::function<Vec2(const Vec2&)>& g);

/// Full trace vector holding the projected Dirichlet data on constrained blocks, zero elsewhere.

Eigen::VectorXd constrain_dirichlet(const Mesh& mesh, const DofMap& dm, const ManufacturedCase& c);

}  // namespace xhdg
