#include "xhdg/spaces.hpp"
#include "xhdg/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace xhdg;

namespace {

const GeometryDescriptor kLine = GeometryDescriptor::polyline({Vec2(0, 0.375), Vec2(1, 0.75)});

Mat2 gradient() {
  Mat2 g;
  g << 0.3, -0.2, 0.5, 0.1;
  return g;
}

ManufacturedCase linear(Scheme scheme, const GeometryDescriptor& geom) {
  return linear_case(scheme, geom, lame_from_young(3, 0.3), gradient(), Vec2(0.1, -0.4));
}

}  // namespace

TEST(DofMap, InteriorSizes) {
  const Mesh m = build_uniform_mesh(8);
  const auto c1 = circle_interface_case(0.4);
  const DofMap k1 = build_dofmap(m, c1, 1);
  EXPECT_EQ(k1.interior_size(), 9);
  EXPECT_EQ(k1.block_size(), 4);

  const DofMap k2 = build_dofmap(m, c1, 2);
  ASSERT_FALSE(k2.cut_cells.empty());
  const int t = k2.cut_cells.front().element;
  int per_element = 0;
  for (int s = 0; s < 2; ++s) {
    if (k2.element_sides[t][s] >= 0) per_element += k2.interior_size();
  }
  EXPECT_EQ(per_element, 42);
}

TEST(DofMap, GammaBlocksHaveTwoComponentsOfDegreeK) {
  const Mesh m = build_uniform_mesh(8);
  const DofMap dm = build_dofmap(m, circle_interface_case(0.4), 1);
  int gamma = 0;
  for (const auto& b : dm.blocks) {
    if (!b.on_gamma) continue;
    ++gamma;
    EXPECT_EQ(b.basis.size() * 2, 4);
    EXPECT_EQ(b.kind, FaceKind::Interface);
  }
  EXPECT_EQ(gamma, static_cast<int>(dm.cut_cells.size()));
}

TEST(DofMap, EverySideIsClosedByItsFaces) {
  const Mesh m = build_uniform_mesh(16);
  for (const auto& c : {circle_interface_case(0.4), circle_domain_case(0.3), nonconvex_domain_case(1.0)}) {
    const DofMap dm = build_dofmap(m, c, 2);
    std::vector<int> links(dm.blocks.size(), 0);
    for (std::size_t s = 0; s < dm.sides.size(); ++s) {
      double flux = 0;
      for (const auto& f : dm.side_faces[s]) {
        ++links[f.block];
        const LineRule r = face_rule(m, dm, dm.sides[s], f, 6);
        for (Eigen::Index q = 0; q < r.size(); ++q) flux += r.weights(q) * r.normals(0, q) * r.points(0, q);
      }
      // Divergence theorem for the field (x, 0): the boundary flux equals the side area.
      EXPECT_NEAR(flux, side_area_rule(m, dm, dm.sides[s], 2).measure(), 1e-13) << c.name << " side " << s;
    }
    for (std::size_t b = 0; b < dm.blocks.size(); ++b) {
      const auto& blk = dm.blocks[b];
      const bool shared = blk.kind == FaceKind::Interior || (blk.kind == FaceKind::Interface);
      EXPECT_EQ(links[b], shared ? 2 : 1) << c.name << " block " << b;
    }
  }
}

TEST(DofMap, FreeNumberingSkipsDirichletBlocks) {
  const Mesh m = build_uniform_mesh(8);
  const DofMap dm = build_dofmap(m, circle_domain_case(0.3), 1);
  int expected = 0;
  for (std::size_t b = 0; b < dm.blocks.size(); ++b) {
    for (int i = 0; i < dm.block_size(); ++i) {
      const int f = dm.free_index[b * dm.block_size() + i];
      if (dm.blocks[b].kind == FaceKind::Dirichlet) {
        EXPECT_EQ(f, -1);
      } else {
        EXPECT_EQ(f, expected++);
      }
    }
  }
  EXPECT_EQ(dm.num_free, expected);
}

TEST(DofMap, RejectsInvalidInputs) {
  const Mesh m = build_uniform_mesh(8);
  EXPECT_THROW(build_dofmap(m, circle_interface_case(0.4), 0), std::invalid_argument);
  auto c = linear(Scheme::BoundaryUnfitted, kLine);
  c.box_kind = [](const Vec2&) { return BoundaryKind::Neumann; };
  c.gamma_kind = BoundaryKind::Neumann;
  EXPECT_THROW(build_dofmap(m, c, 1), std::invalid_argument);
}

TEST(DofMap, InterfaceThroughDirichletEdgeIsRejected) {
  const Mesh m = build_uniform_mesh(8);
  const auto c = linear(Scheme::Interface, GeometryDescriptor::polyline({Vec2(0, 0.3), Vec2(1, 0.71)}));
  EXPECT_THROW(build_dofmap(m, c, 1), GeometryError);
}

TEST(Constraints, ZeroDataGivesZeroValues) {
  const Mesh m = build_uniform_mesh(8);
  const auto c = linear_case(Scheme::BoundaryUnfitted, reference_circle(), {1, 1}, Mat2::Zero(), Vec2::Zero());
  const DofMap dm = build_dofmap(m, c, 2);
  const Eigen::VectorXd v = constrain_dirichlet(m, dm, c);
  EXPECT_EQ(v.size(), dm.num_trace_dofs());
  EXPECT_EQ(v.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Constraints, LinearDataReproducedOnStraightFaces) {
  const Mesh m = build_uniform_mesh(8);
  for (Scheme scheme : {Scheme::Interface, Scheme::BoundaryUnfitted}) {
    const auto c = linear(scheme, kLine);
    const DofMap dm = build_dofmap(m, c, 1);
    const Eigen::VectorXd v = constrain_dirichlet(m, dm, c);
    int checked = 0;
    for (std::size_t b = 0; b < dm.blocks.size(); ++b) {
      const auto& blk = dm.blocks[b];
      if (blk.kind != FaceKind::Dirichlet) continue;
      const LineRule r = block_rule(m, dm, blk, 6);
      for (Eigen::Index q = 0; q < r.size(); ++q) {
        const Vec2 x = r.points.col(q);
        for (int i = 0; i < 2; ++i) {
          const double val = blk.basis.evaluate(x, v.segment(dm.trace_dof(b, i, 0), dm.k + 1));
          EXPECT_NEAR(val, c.u(x, 0)(i), 1e-11);
        }
      }
      ++checked;
    }
    EXPECT_GE(checked, 32);
  }
}

TEST(Constraints, CurvedFaceProjectionResidualVanishes) {
  const Mesh m = build_uniform_mesh(16);
  const auto c = circle_domain_case(0.3);
  const DofMap dm = build_dofmap(m, c, 2);
  auto g = [&](const Vec2& x) { return c.g_dirichlet(x, 1); };
  int checked = 0;
  for (const auto& blk : dm.blocks) {
    if (!blk.on_gamma || blk.kind != FaceKind::Dirichlet) continue;
    const Eigen::VectorXd coef = project_onto_block(m, dm, blk, g);
    const LineRule r = block_rule(m, dm, blk, 12);
    const Eigen::MatrixXd phi = blk.basis.eval(r.points);
    for (int i = 0; i < 2; ++i) {
      Eigen::VectorXd res = Eigen::VectorXd::Zero(dm.k + 1);
      double scale = 0;
      for (Eigen::Index q = 0; q < r.size(); ++q) {
        const double diff = phi.row(q).dot(coef.segment(i * (dm.k + 1), dm.k + 1)) - g(r.points.col(q))(i);
        res += r.weights(q) * diff * phi.row(q).transpose();
        scale += r.weights(q) * std::abs(g(r.points.col(q))(i));
      }
      EXPECT_LT(res.cwiseAbs().maxCoeff(), 1e-11 * std::max(scale, 1e-3));
    }
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(Constraints, FluxPreservingProjectionMatchesNormalFlux) {
  const Mesh m = build_uniform_mesh(16);
  const auto c = circle_domain_case(0.3);
  const DofMap dm = build_dofmap(m, c, 1);
  auto g = [&](const Vec2& x) { return c.g_dirichlet(x, 1); };
  for (const auto& blk : dm.blocks) {
    if (!blk.on_gamma) continue;
    const Eigen::VectorXd coef = project_flux_preserving(m, dm, blk, g);
    const LineRule r = block_rule(m, dm, blk, 12);
    double exact = 0, discrete = 0;
    for (Eigen::Index q = 0; q < r.size(); ++q) {
      const Vec2 x = r.points.col(q);
      const Vec2 n = r.normals.col(q);
      const Vec2 gh(blk.basis.evaluate(x, coef.head(dm.k + 1)), blk.basis.evaluate(x, coef.tail(dm.k + 1)));
      exact += r.weights(q) * g(x).dot(n);
      discrete += r.weights(q) * gh.dot(n);
    }
    EXPECT_NEAR(discrete, exact, 1e-14);
  }
}
