#pragma once

// Uncondensed dense solve of the hybridized system on an uncut mesh with
// displacement data on every boundary edge. Written from the weak form with its
// own bases (unscaled monomials, E11/E12/E22 stress units, edge-parameter traces)
// so that it shares nothing with the library beyond meshes and reference rules.

#include "xhdg/mesh.hpp"
#include "xhdg/problems.hpp"
#include "xhdg/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace oracle {

using xhdg::Mat2;
using xhdg::Vec2;

inline int dim(int k) { return k < 0 ? 0 : (k + 1) * (k + 2) / 2; }

inline Eigen::VectorXd monomials(int k, const Vec2& x) {
  Eigen::VectorXd v(dim(k));
  int m = 0;
  for (int d = 0; d <= k; ++d) {
    for (int a = d; a >= 0; --a) v(m++) = std::pow(x.x(), a) * std::pow(x.y(), d - a);
  }
  return v;
}

inline Eigen::MatrixXd monomial_gradients(int k, const Vec2& x) {
  Eigen::MatrixXd g(dim(k), 2);
  int m = 0;
  for (int d = 0; d <= k; ++d) {
    for (int a = d; a >= 0; --a) {
      const int b = d - a;
      g(m, 0) = a > 0 ? a * std::pow(x.x(), a - 1) * std::pow(x.y(), b) : 0.0;
      g(m, 1) = b > 0 ? b * std::pow(x.x(), a) * std::pow(x.y(), b - 1) : 0.0;
      ++m;
    }
  }
  return g;
}

inline Mat2 unit(int c) {
  Mat2 e = Mat2::Zero();
  if (c == 0) e(0, 0) = 1;
  if (c == 1) e(0, 1) = e(1, 0) = 1;
  if (c == 2) e(1, 1) = 1;
  return e;
}

inline Mat2 compliance(const xhdg::LameParameters& m, const Mat2& s) {
  return (s - m.lambda / (2 * m.mu + 2 * m.lambda) * s.trace() * Mat2::Identity()) / (2 * m.mu);
}

struct Solution {
  const xhdg::Mesh* mesh = nullptr;
  int k = 1;
  Eigen::VectorXd x;
  int per_element = 0;

  int ms() const { return dim(k - 1); }
  int mu() const { return dim(k); }

  Mat2 sigma(int t, const Vec2& p) const {
    const Eigen::VectorXd phi = monomials(k - 1, p);
    Mat2 s = Mat2::Zero();
    for (int c = 0; c < 3; ++c) s += phi.dot(x.segment(t * per_element + c * ms(), ms())) * unit(c);
    return s;
  }

  Vec2 u(int t, const Vec2& p) const {
    const Eigen::VectorXd psi = monomials(k, p);
    const int off = t * per_element + 3 * ms();
    return Vec2(psi.dot(x.segment(off, mu())), psi.dot(x.segment(off + mu(), mu())));
  }

  // Trace on global edge e at parameter s in [0, 1] along the edge orientation.
  Vec2 trace(int e, double s) const {
    const int off = mesh->num_triangles() * per_element + e * 2 * (k + 1);
    Vec2 v = Vec2::Zero();
    for (int j = 0; j <= k; ++j) {
      v.x() += std::pow(s, j) * x(off + j);
      v.y() += std::pow(s, j) * x(off + k + 1 + j);
    }
    return v;
  }
};

// Material and data of side 0 of `c` are used everywhere.
inline Solution solve(const xhdg::Mesh& mesh, const xhdg::ManufacturedCase& c, int k) {
  const auto& mat = c.material[0];
  const int ms = dim(k - 1), mu = dim(k), mt = k + 1;
  const int per_element = 3 * ms + 2 * mu;
  const int nt = mesh.num_triangles();
  const int n = nt * per_element + mesh.num_edges() * 2 * mt;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  auto sig_idx = [&](int t, int c, int m) { return t * per_element + c * ms + m; };
  auto u_idx = [&](int t, int i, int m) { return t * per_element + 3 * ms + i * mu + m; };
  auto l_idx = [&](int e, int i, int j) { return nt * per_element + e * 2 * mt + i * mt + j; };
  const int deg = 2 * k + 8;
  const auto tri = xhdg::triangle_rule<double>(deg);
  const auto seg = xhdg::segment_rule<double>(deg);

  for (int t = 0; t < nt; ++t) {
    const Vec2 p0 = mesh.vertex(t, 0), p1 = mesh.vertex(t, 1), p2 = mesh.vertex(t, 2);
    const double jac = std::abs((p1 - p0).x() * (p2 - p0).y() - (p1 - p0).y() * (p2 - p0).x());
    for (Eigen::Index q = 0; q < tri.size(); ++q) {
      const Vec2 x = p0 + tri.points(0, q) * (p1 - p0) + tri.points(1, q) * (p2 - p0);
      const double w = tri.weights(q) * jac;
      const Eigen::VectorXd phi = monomials(k - 1, x);
      const Eigen::MatrixXd gphi = monomial_gradients(k - 1, x);
      const Eigen::VectorXd psi = monomials(k, x);
      const Vec2 f = c.f(x, 0);
      for (int c1 = 0; c1 < 3; ++c1) {
        for (int m1 = 0; m1 < ms; ++m1) {
          for (int c2 = 0; c2 < 3; ++c2) {
            const double aw = (compliance(mat, unit(c2)).cwiseProduct(unit(c1))).sum();
            for (int m2 = 0; m2 < ms; ++m2) a(sig_idx(t, c1, m1), sig_idx(t, c2, m2)) += w * aw * phi(m1) * phi(m2);
          }
          const Vec2 div = unit(c1) * gphi.row(m1).transpose();
          for (int i = 0; i < 2; ++i) {
            for (int m = 0; m < mu; ++m) {
              a(sig_idx(t, c1, m1), u_idx(t, i, m)) += w * div(i) * psi(m);
              a(u_idx(t, i, m), sig_idx(t, c1, m1)) += w * div(i) * psi(m);
            }
          }
        }
      }
      for (int i = 0; i < 2; ++i) {
        for (int m = 0; m < mu; ++m) rhs(u_idx(t, i, m)) += w * f(i) * psi(m);
      }
    }

    const double tau = 2 * mat.mu / mesh.diameter(t);
    for (int j = 0; j < 3; ++j) {
      const int e = mesh.triangle_edges[t][j];
      const Vec2 a0 = mesh.vertices[mesh.edges[e].vertices[0]];
      const Vec2 a1 = mesh.vertices[mesh.edges[e].vertices[1]];
      const Vec2 nrm = mesh.outward_normal(t, j);
      const double len = (a1 - a0).norm();
      for (Eigen::Index q = 0; q < seg.size(); ++q) {
        const double s = seg.points(0, q);
        const Vec2 x = a0 + s * (a1 - a0);
        const double w = seg.weights(q) * len;
        const Eigen::VectorXd phi = monomials(k - 1, x);
        const Eigen::VectorXd psi = monomials(k, x);
        Eigen::VectorXd lam(mt);
        for (int jj = 0; jj < mt; ++jj) lam(jj) = std::pow(s, jj);
        for (int i = 0; i < 2; ++i) {
          // (A sigma, w) + (u, div w) - <trace, w n> = 0
          for (int c1 = 0; c1 < 3; ++c1) {
            const Vec2 wn = unit(c1) * nrm;
            for (int m1 = 0; m1 < ms; ++m1) {
              for (int jj = 0; jj < mt; ++jj) {
                a(sig_idx(t, c1, m1), l_idx(e, i, jj)) -= w * wn(i) * phi(m1) * lam(jj);
                a(l_idx(e, i, jj), sig_idx(t, c1, m1)) += w * wn(i) * phi(m1) * lam(jj);
              }
            }
          }
          // (div sigma, v) - tau <u - trace, v> = (f, v) and the trace equation.
          for (int m1 = 0; m1 < mu; ++m1) {
            for (int m2 = 0; m2 < mu; ++m2) a(u_idx(t, i, m1), u_idx(t, i, m2)) -= w * tau * psi(m1) * psi(m2);
            for (int jj = 0; jj < mt; ++jj) {
              a(u_idx(t, i, m1), l_idx(e, i, jj)) += w * tau * psi(m1) * lam(jj);
              a(l_idx(e, i, jj), u_idx(t, i, m1)) -= w * tau * psi(m1) * lam(jj);
            }
          }
          for (int j1 = 0; j1 < mt; ++j1) {
            for (int j2 = 0; j2 < mt; ++j2) a(l_idx(e, i, j1), l_idx(e, i, j2)) += w * tau * lam(j1) * lam(j2);
          }
        }
      }
    }
  }

  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.edges[e].boundary) continue;
    const Vec2 a0 = mesh.vertices[mesh.edges[e].vertices[0]];
    const Vec2 a1 = mesh.vertices[mesh.edges[e].vertices[1]];
    const double len = (a1 - a0).norm();
    for (int i = 0; i < 2; ++i) {
      for (int jj = 0; jj < mt; ++jj) {
        a.row(l_idx(e, i, jj)).setZero();
        rhs(l_idx(e, i, jj)) = 0;
      }
    }
    for (Eigen::Index q = 0; q < seg.size(); ++q) {
      const double s = seg.points(0, q);
      const double w = seg.weights(q) * len;
      const Vec2 g = c.u(a0 + s * (a1 - a0), 0);
      for (int i = 0; i < 2; ++i) {
        for (int j1 = 0; j1 < mt; ++j1) {
          rhs(l_idx(e, i, j1)) += w * g(i) * std::pow(s, j1);
          for (int j2 = 0; j2 < mt; ++j2) a(l_idx(e, i, j1), l_idx(e, i, j2)) += w * std::pow(s, j1 + j2);
        }
      }
    }
  }

  Solution sol;
  sol.mesh = &mesh;
  sol.k = k;
  sol.per_element = per_element;
  sol.x = a.fullPivLu().solve(rhs);
  return sol;
}

}  // namespace oracle
