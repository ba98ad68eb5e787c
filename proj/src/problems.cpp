#include "xhdg/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xhdg {

namespace {

// Factors of the divergence-free polynomial field shared by the circle cases.
double fa(double t) { return t * t * (t - 1) * (t - 1); }
double fb(double t) { return t * (t - 1) * (2 * t - 1); }
double fb1(double t) { return 6 * t * t - 6 * t + 1; }
double fb2(double t) { return 12 * t - 6; }

void set_cubic_field(ManufacturedCase& c) {
  const auto mat = c.material;
  c.u = [](const Vec2& p, int) { return Vec2(-fa(p.x()) * fb(p.y()), fa(p.y()) * fb(p.x())); };
  c.grad_u = [](const Vec2& p, int) {
    const double x = p.x(), y = p.y();
    Mat2 g;
    g << -2 * fb(x) * fb(y), -fa(x) * fb1(y), fa(y) * fb1(x), 2 * fb(y) * fb(x);
    return g;
  };
  c.sigma = [mat](const Vec2& p, int side) {
    const double mu = mat[side].mu;
    const double x = p.x(), y = p.y();
    const double s11 = -4 * mu * fb(x) * fb(y);
    const double s12 = mu * (fa(y) * fb1(x) - fa(x) * fb1(y));
    Mat2 s;
    s << s11, s12, s12, -s11;
    return s;
  };
  c.f = [mat](const Vec2& p, int side) {
    const double mu = mat[side].mu;
    const double x = p.x(), y = p.y();
    return Vec2(mu * (-2 * fb1(x) * fb(y) - fa(x) * fb2(y)), mu * (fa(y) * fb2(x) + 2 * fb(x) * fb1(y)));
  };
}

}  // namespace

Eigen::VectorXd evaluate(const ManufacturedCase& c, Field field, const Vec2& x, int side, const Vec2& normal) {
  if (c.crack && (x - c.crack->tip).norm() == 0) throw std::domain_error("crack field is singular at the tip");
  switch (field) {
    case Field::U:
    case Field::GD: return c.u(x, side);
    case Field::F: return c.f(x, side);
    case Field::Sigma: {
      const Mat2 s = c.sigma(x, side);
      return Eigen::Vector3d(s(0, 0), s(0, 1), s(1, 1));
    }
    case Field::GN: return c.g_neumann(x, normal, side);
    case Field::GNGamma: return c.g_interface(x, normal);
  }
  return {};
}

ManufacturedCase circle_interface_case(double nu2) {
  ManufacturedCase c;
  c.name = "circle-interface";
  c.scheme = Scheme::Interface;
  c.geometry = GeometryDescriptor::circle(Vec2(0.5, 0.5), std::sqrt(3.0 / 64.0));
  c.material = {lame_from_young(3.0, 0.4), lame_from_young(3.0, nu2)};
  set_cubic_field(c);
  return c;
}

ManufacturedCase circle_domain_case(double nu) {
  ManufacturedCase c;
  c.name = "circle-domain";
  c.scheme = Scheme::BoundaryUnfitted;
  c.geometry = GeometryDescriptor::circle(Vec2(0.5, 0.5), std::sqrt(3.0 / 16.0));
  c.active = {false, true};
  const auto m = lame_from_young(3.0, nu);
  c.material = {m, m};
  c.gamma_kind = BoundaryKind::Dirichlet;
  set_cubic_field(c);
  return c;
}

ManufacturedCase nonconvex_domain_case(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  ManufacturedCase c;
  c.name = "nonconvex-domain";
  c.scheme = Scheme::BoundaryUnfitted;
  c.geometry = GeometryDescriptor::circle(Vec2(0.5, 0.5), std::sqrt(3.0 / 64.0));
  c.active = {true, false};
  const LameParameters m{1.0, lambda};
  c.material = {m, m};
  c.gamma_kind = BoundaryKind::Neumann;
  c.u = [](const Vec2& p, int) { return Vec2(std::pow(p.y(), 4), std::pow(p.x(), 4)); };
  c.grad_u = [](const Vec2& p, int) {
    Mat2 g;
    g << 0, 4 * std::pow(p.y(), 3), 4 * std::pow(p.x(), 3), 0;
    return g;
  };
  c.sigma = [m](const Vec2& p, int) {
    const double s12 = 4 * m.mu * (std::pow(p.x(), 3) + std::pow(p.y(), 3));
    Mat2 s;
    s << 0, s12, s12, 0;
    return s;
  };
  c.f = [m](const Vec2& p, int) { return Vec2(12 * m.mu * p.y() * p.y(), 12 * m.mu * p.x() * p.x()); };
  return c;
}

ManufacturedCase crack_tip_case() {
  ManufacturedCase c;
  c.name = "crack-tip";
  c.scheme = Scheme::BoundaryUnfitted;
  const Vec2 tip(0.5, 0.5);
  c.geometry = GeometryDescriptor::slit(Vec2(0.0, 0.5), tip);
  c.active = {true, true};
  const double nu = 1.0 / 3.0;
  const auto m = lame_from_young(8.0 / 3.0, nu, PlaneModel::Stress);
  c.material = {m, m};
  c.gamma_kind = BoundaryKind::Neumann;
  const double kappa = (3 - nu) / (1 + nu);
  const double sif = std::sqrt(std::numbers::pi / 2);
  c.crack = CrackParameters{tip, sif, kappa};

  // Polar angle measured from the tip, continued to +pi above and -pi below the slit.
  auto polar = [tip](const Vec2& p, int side) {
    const Vec2 d = p - tip;
    double th = std::atan2(d.y(), d.x());
    if (side == 1 && th > std::numbers::pi / 2) th -= 2 * std::numbers::pi;
    if (side == 0 && th < -std::numbers::pi / 2) th += 2 * std::numbers::pi;
    return std::pair<double, double>(d.norm(), th);
  };
  const double amp = sif / (2 * m.mu * std::sqrt(2 * std::numbers::pi));
  c.u = [=](const Vec2& p, int side) {
    const auto [r, th] = polar(p, side);
    const double s = std::sin(th / 2), co = std::cos(th / 2);
    return Vec2(amp * std::sqrt(r) * co * (kappa - 1 + 2 * s * s), amp * std::sqrt(r) * s * (kappa + 1 - 2 * co * co));
  };
  c.grad_u = [=](const Vec2& p, int side) {
    const auto [r, th] = polar(p, side);
    const double s = std::sin(th / 2), co = std::cos(th / 2);
    const double g1 = co * (kappa - 1 + 2 * s * s);
    const double g2 = s * (kappa + 1 - 2 * co * co);
    const double dg1 = -0.5 * s * (kappa - 1 + 2 * s * s) + 2 * s * co * co;
    const double dg2 = 0.5 * co * (kappa + 1 - 2 * co * co) + 2 * s * s * co;
    const double sr = std::sqrt(r);
    const double ct = std::cos(th), st = std::sin(th);
    // d/dx = cos(th) d/dr - sin(th)/r d/dth, d/dy = sin(th) d/dr + cos(th)/r d/dth.
    Mat2 g;
    g(0, 0) = amp * (ct * g1 / (2 * sr) - st * dg1 / sr);
    g(0, 1) = amp * (st * g1 / (2 * sr) + ct * dg1 / sr);
    g(1, 0) = amp * (ct * g2 / (2 * sr) - st * dg2 / sr);
    g(1, 1) = amp * (st * g2 / (2 * sr) + ct * dg2 / sr);
    return g;
  };
  c.sigma = [=](const Vec2& p, int side) {
    const auto [r, th] = polar(p, side);
    const double a = sif / std::sqrt(2 * std::numbers::pi * r);
    const double s = std::sin(th / 2), co = std::cos(th / 2);
    const double s3 = std::sin(1.5 * th), c3 = std::cos(1.5 * th);
    Mat2 out;
    out(0, 0) = a * co * (1 - s * s3);
    out(1, 1) = a * co * (1 + s * s3);
    out(0, 1) = out(1, 0) = a * co * s * c3;
    return out;
  };
  c.f = [](const Vec2&, int) { return Vec2(0, 0); };
  return c;
}

ManufacturedCase make_case(const std::string& name, std::optional<double> parameter) {
  if (name == "circle-interface") return circle_interface_case(parameter.value_or(0.4));
  if (name == "circle-domain") return circle_domain_case(parameter.value_or(0.49));
  if (name == "nonconvex-domain") return nonconvex_domain_case(parameter.value_or(1.0));
  if (name == "crack-tip") {
    if (parameter) throw std::invalid_argument("crack-tip takes no material parameter");
    return crack_tip_case();
  }
  throw std::invalid_argument("unknown case '" + name + "'");
}

ManufacturedCase linear_case(Scheme scheme, const GeometryDescriptor& geom, const LameParameters& material,
                             const Mat2& gradient, const Vec2& offset) {
  ManufacturedCase c;
  c.name = "linear";
  c.scheme = scheme;
  c.geometry = geom;
  c.material = {material, material};
  const Mat2 eps = 0.5 * (gradient + gradient.transpose());
  const Mat2 stress = apply_elasticity(material, eps);
  c.u = [gradient, offset](const Vec2& p, int) { return Vec2(gradient * p + offset); };
  c.grad_u = [gradient](const Vec2&, int) { return gradient; };
  c.sigma = [stress](const Vec2&, int) { return stress; };
  c.f = [](const Vec2&, int) { return Vec2(0, 0); };
  return c;
}

}  // namespace xhdg
