#pragma once

#include "xhdg/geometry.hpp"
#include "xhdg/material.hpp"
#include "xhdg/mesh.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>

namespace xhdg {

/// Interface scheme: both subdomains carry unknowns and Gamma holds a single
/// shared trace. Boundary-unfitted scheme: only the active sides form Omega
/// and Gamma is a boundary with its own per-side traces.
enum class Scheme { Interface, BoundaryUnfitted };

enum class BoundaryKind { Dirichlet, Neumann };

struct CrackParameters {
  Vec2 tip;
  double stress_intensity = 0;
  double kolosov = 0;
};

/// Exact solution, data and configuration of one test problem. The `side`
/// argument (0 for Omega_1, 1 for Omega_2) selects per-subdomain material and
/// resolves fields that are discontinuous across Gamma.
struct ManufacturedCase {
  std::string name;
  Scheme scheme = Scheme::Interface;
  BoundingBox box;
  GeometryDescriptor geometry = GeometryDescriptor::circle(Vec2(0.5, 0.5), 0.25);
  std::array<bool, 2> active{true, true};
  std::array<LameParameters, 2> material{};

  std::function<Vec2(const Vec2&, int)> u;
  /// Row i holds the gradient of u_i.
  std::function<Mat2(const Vec2&, int)> grad_u;
  std::function<Mat2(const Vec2&, int)> sigma;
  std::function<Vec2(const Vec2&, int)> f;

  /// Condition type on the bounding box at a boundary point.
  std::function<BoundaryKind(const Vec2&)> box_kind = [](const Vec2&) { return BoundaryKind::Dirichlet; };
  /// Condition type on Gamma for the boundary-unfitted scheme.
  BoundaryKind gamma_kind = BoundaryKind::Dirichlet;

  std::optional<CrackParameters> crack;

  Vec2 g_dirichlet(const Vec2& x, int side) const { return u(x, side); }
  /// sigma n for the outward normal n of the subdomain on `side`.
  Vec2 g_neumann(const Vec2& x, const Vec2& n, int side) const { return sigma(x, side) * n; }
  /// Jump (sigma_1 - sigma_2) n with n from Omega_1 into Omega_2.
  Vec2 g_interface(const Vec2& x, const Vec2& n) const { return (sigma(x, 0) - sigma(x, 1)) * n; }
};

enum class Field { U, Sigma, F, GD, GN, GNGamma };

/// Generic evaluator. Sigma returns (s11, s12, s22); GN and GNGamma use `normal`.
Eigen::VectorXd evaluate(const ManufacturedCase& c, Field field, const Vec2& x, int side,
                         const Vec2& normal = Vec2::Zero());

/// Circular inclusion of radius^2 = 3/64 in the unit square, E = 3, nu_1 = 0.4, plane strain.
ManufacturedCase circle_interface_case(double nu2);
/// Disk of radius^2 = 3/16 immersed in the unit square, E = 3, plane strain, Dirichlet on the circle.
ManufacturedCase circle_domain_case(double nu);
/// Unit square minus the disk of radius^2 = 3/64, mu = 1; Dirichlet on the square, traction on the circle.
ManufacturedCase nonconvex_domain_case(double lambda);
/// Slit from (0, 1/2) to the tip (1/2, 1/2) with the Williams mode-I field, plane stress.
ManufacturedCase crack_tip_case();

/// Builds a case by CLI name. `parameter` is nu2, nu or lambda; defaults follow the tables.
ManufacturedCase make_case(const std::string& name, std::optional<double> parameter = std::nullopt);

/// Affine displacement with a constant stress. Used as a patch test on either scheme.
ManufacturedCase linear_case(Scheme scheme, const GeometryDescriptor& geom, const LameParameters& material,
                             const Mat2& gradient, const Vec2& offset);

}  // namespace xhdg
