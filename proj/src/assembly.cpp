#include "xhdg/assembly.hpp"

#include <stdexcept>
#include <string>
#include <type_traits>

namespace xhdg {

Mat2 symmetric_unit(int c) {
  Mat2 e = Mat2::Zero();
  if (c == 0) e(0, 0) = e(1, 1) = 1;
  else if (c == 1) e(0, 1) = e(1, 0) = 1;
  else e(0, 0) = 1, e(1, 1) = -1;
  return e;
}

Eigen::Matrix3d compliance_matrix(const LameParameters& m) {
  Eigen::Matrix3d out;
  for (int c = 0; c < 3; ++c) {
    for (int d = 0; d < 3; ++d) out(c, d) = contract(apply_compliance(m, symmetric_unit(d)), symmetric_unit(c));
  }
  return out;
}

Eigen::MatrixXd LocalBlocks::interior_matrix() const {
  const auto ns = A.rows(), nu = Suu.rows();
  Eigen::MatrixXd k(ns + nu, ns + nu);
  k.topLeftCorner(ns, ns) = -A;
  k.topRightCorner(ns, nu) = -Bt;
  k.bottomLeftCorner(nu, ns) = -Bt.transpose();
  k.bottomRightCorner(nu, nu) = Suu;
  return k;
}

Eigen::MatrixXd LocalBlocks::coupling_matrix() const {
  const auto ns = A.rows(), nu = Suu.rows(), nl = Sll.rows();
  Eigen::MatrixXd k(ns + nu, nl);
  k.topRows(ns) = C;
  k.bottomRows(nu) = -Sul;
  return k;
}

Eigen::VectorXd LocalBlocks::interior_rhs() const {
  const auto ns = A.rows(), nu = Suu.rows();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(ns + nu);
  r.tail(nu) = -F;
  return r;
}

LocalBlocks assemble_local(const Mesh& mesh, const DofMap& dm, const ManufacturedCase& c, int side) {
  const ElementSide& es = dm.sides[side];
  const int k = dm.k;
  const auto bs = dm.stress_basis(es);
  const auto bu = dm.disp_basis(es);
  const int ms = bs.size(), mu = bu.size();
  const int ns = 3 * ms, nu = 2 * mu;
  const auto& mat = c.material[es.side];
  const double tau = stabilization_value(mat, mesh.diameter(es.element));

  LocalBlocks lb;
  lb.side = side;
  const auto& faces = dm.side_faces[side];
  for (const auto& f : faces) lb.blocks.push_back(f.block);
  const int bsz = dm.block_size();
  const int nl = static_cast<int>(faces.size()) * bsz;
  lb.A = Eigen::MatrixXd::Zero(ns, ns);
  lb.Bt = Eigen::MatrixXd::Zero(ns, nu);
  lb.C = Eigen::MatrixXd::Zero(ns, nl);
  lb.Suu = Eigen::MatrixXd::Zero(nu, nu);
  lb.Sul = Eigen::MatrixXd::Zero(nu, nl);
  lb.Sll = Eigen::MatrixXd::Zero(nl, nl);
  lb.F = Eigen::VectorXd::Zero(nu);

  std::array<Mat2, 3> units;
  for (int cc = 0; cc < 3; ++cc) units[cc] = symmetric_unit(cc);

  const AreaRule rule = side_area_rule(mesh, dm, es, dm.quad_order);
  Eigen::MatrixXd msig = Eigen::MatrixXd::Zero(ms, ms);
  Eigen::VectorXd phi(ms), psi(mu);
  Eigen::MatrixXd gphi(ms, 2);
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const Vec2 x = rule.points.col(q);
    const double w = rule.weights(q);
    bs.values_and_gradients(x, phi, gphi);
    bu.values(x, psi);
    msig.noalias() += w * phi * phi.transpose();
    const Vec2 f = c.f(x, es.side);
    for (int i = 0; i < 2; ++i) lb.F.segment(i * mu, mu) += w * f(i) * psi;
    for (int cc = 0; cc < 3; ++cc) {
      for (int m = 0; m < ms; ++m) {
        const Vec2 div = units[cc] * gphi.row(m).transpose();
        for (int i = 0; i < 2; ++i) lb.Bt.block(cc * ms + m, i * mu, 1, mu) += (w * div(i)) * psi.transpose();
      }
    }
  }
  const Eigen::Matrix3d cm = compliance_matrix(mat);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) lb.A.block(a * ms, b * ms, ms, ms) = cm(a, b) * msig;
  }

  Eigen::VectorXd mu_v(k + 1);
  for (std::size_t l = 0; l < faces.size(); ++l) {
    const LineRule fr = face_rule(mesh, dm, es, faces[l], dm.quad_order);
    const auto& tb = dm.blocks[faces[l].block].basis;
    const int off = static_cast<int>(l) * bsz;
    for (Eigen::Index q = 0; q < fr.size(); ++q) {
      const Vec2 x = fr.points.col(q);
      const Vec2 n = fr.normals.col(q);
      const double w = fr.weights(q);
      bs.values(x, phi);
      bu.values(x, psi);
      tb.values(x, mu_v);
      for (int cc = 0; cc < 3; ++cc) {
        const Vec2 en = units[cc] * n;
        for (int i = 0; i < 2; ++i) {
          lb.C.block(cc * ms, off + i * (k + 1), ms, k + 1).noalias() += (w * en(i)) * phi * mu_v.transpose();
        }
      }
      for (int i = 0; i < 2; ++i) {
        lb.Suu.block(i * mu, i * mu, mu, mu).noalias() += (tau * w) * psi * psi.transpose();
        lb.Sul.block(i * mu, off + i * (k + 1), mu, k + 1).noalias() += (tau * w) * psi * mu_v.transpose();
        lb.Sll.block(off + i * (k + 1), off + i * (k + 1), k + 1, k + 1).noalias() += (tau * w) * mu_v * mu_v.transpose();
      }
    }
  }
  return lb;
}

namespace {

template <typename Scalar>
void condense_in(const LocalBlocks& local, int element, Condensed& out) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Mat kii = local.interior_matrix().cast<Scalar>();
  const Mat kil = local.coupling_matrix().cast<Scalar>();
  Eigen::PartialPivLU<Mat> lu(kii);
  if (!(lu.rcond() > Scalar(1e-18))) {
    throw std::runtime_error("singular interior block on element " + std::to_string(element));
  }
  const Mat Y = lu.solve(kil);
  const Vec y = lu.solve(Vec(local.interior_rhs().cast<Scalar>()));
  out.Y = Y.template cast<double>();
  out.y = y.template cast<double>();
  const Mat schur = local.Sll.cast<Scalar>() - kil.transpose() * Y;
  const Vec rhs = -kil.transpose() * y;
  if constexpr (std::is_same_v<Scalar, double>) {
    out.schur = schur;
    out.rhs = rhs;
  } else {
    out.schur_ext = schur;
    out.rhs_ext = rhs;
    out.schur = schur.template cast<double>();
    out.rhs = rhs.template cast<double>();
  }
}

}  // namespace

Condensed condense(const LocalBlocks& local, int element, bool extended) {
  Condensed out;
  out.side = local.side;
  out.blocks = local.blocks;
  if (extended) condense_in<long double>(local, element, out);
  else condense_in<double>(local, element, out);
  return out;
}

bool needs_extended_precision(const ManufacturedCase& c) {
  for (int s = 0; s < 2; ++s) {
    if (c.active[s] && c.material[s].lambda > kExtendedPrecisionRatio * c.material[s].mu) return true;
  }
  return false;
}

std::vector<int> trace_positions(const DofMap& dm, const std::vector<int>& blocks) {
  std::vector<int> pos;
  pos.reserve(blocks.size() * static_cast<std::size_t>(dm.block_size()));
  for (int b : blocks) {
    for (int i = 0; i < dm.block_size(); ++i) pos.push_back(b * dm.block_size() + i);
  }
  return pos;
}

Eigen::VectorXd face_loads(const Mesh& mesh, const DofMap& dm, const ManufacturedCase& c) {
  Eigen::VectorXd loads = Eigen::VectorXd::Zero(dm.num_trace_dofs());
  const int k = dm.k;
  Eigen::VectorXd mu_v(k + 1);
  for (std::size_t bi = 0; bi < dm.blocks.size(); ++bi) {
    const auto& b = dm.blocks[bi];
    if (b.kind != FaceKind::Neumann && b.kind != FaceKind::Interface) continue;
    const LineRule rule = block_rule(mesh, dm, b, dm.quad_order);
    const int side = std::max(b.side, 0);
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      const Vec2 x = rule.points.col(q);
      const Vec2 n = rule.normals.col(q);
      const Vec2 g = b.kind == FaceKind::Neumann ? c.g_neumann(x, n, side) : c.g_interface(x, n);
      b.basis.values(x, mu_v);
      for (int i = 0; i < 2; ++i) {
        loads.segment(static_cast<Eigen::Index>(bi) * dm.block_size() + i * (k + 1), k + 1) += rule.weights(q) * g(i) * mu_v;
      }
    }
  }
  return loads;
}

void check_quadrature(const Mesh& mesh, const DofMap& dm) {
  if (dm.cut_cells.empty()) return;
  const CutCell& cell = dm.cut_cells.front();
  const Vec2 c = mesh.centroid(cell.element);
  const double h = mesh.diameter(cell.element);
  const int p = dm.k + 1;
  auto integrate = [&](int degree) {
    double val = 0, mag = 0;
    for (int s = 0; s < 2; ++s) {
      const AreaRule r = cell.side_rule(s, degree);
      for (Eigen::Index q = 0; q < r.size(); ++q) {
        const Vec2 x = (r.points.col(q) - c) / h;
        const double v = std::pow(x.x() + 0.5, p) * std::pow(x.y() - 0.25, p);
        val += r.weights(q) * v;
        mag += r.weights(q) * std::abs(v);
      }
    }
    return std::pair<double, double>(val, mag);
  };
  const auto [coarse, mag] = integrate(dm.quad_order);
  const auto [fine, unused] = integrate(std::min(kMaxRuleDegree, dm.quad_order + 10));
  (void)unused;
  if (std::abs(coarse - fine) > 1e-9 * mag) {
    throw std::runtime_error("quadrature self-check failed on element " + std::to_string(cell.element));
  }
}

TraceSystem assemble_global(const Mesh& mesh, const DofMap& dm, const ManufacturedCase& c) {
  check_quadrature(mesh, dm);
  TraceSystem sys;
  sys.scheme = dm.scheme;
  sys.extended = needs_extended_precision(c);
  sys.constrained = constrain_dirichlet(mesh, dm, c);
  using LD = long double;
  Eigen::Matrix<LD, Eigen::Dynamic, 1> rhs = Eigen::Matrix<LD, Eigen::Dynamic, 1>::Zero(dm.num_free);
  const Eigen::VectorXd loads = face_loads(mesh, dm, c);
  std::vector<Eigen::Triplet<LD>> triplets;
  sys.locals.reserve(dm.sides.size());
  for (int s = 0; s < static_cast<int>(dm.sides.size()); ++s) {
    Condensed cd = condense(assemble_local(mesh, dm, c, s), dm.sides[s].element, sys.extended);
    const auto pos = trace_positions(dm, cd.blocks);
    const auto n = static_cast<Eigen::Index>(pos.size());
    auto entry = [&](Eigen::Index a, Eigen::Index b) -> LD { return sys.extended ? cd.schur_ext(a, b) : cd.schur(a, b); };
    for (Eigen::Index a = 0; a < n; ++a) {
      const int fa = dm.free_index[pos[a]];
      if (fa < 0) continue;
      rhs(fa) += sys.extended ? cd.rhs_ext(a) : LD(cd.rhs(a));
      for (Eigen::Index b = 0; b < n; ++b) {
        const int fb = dm.free_index[pos[b]];
        if (fb >= 0) {
          triplets.emplace_back(fa, fb, entry(a, b));
        } else {
          rhs(fa) -= entry(a, b) * LD(sys.constrained(pos[b]));
        }
      }
    }
    cd.schur_ext.resize(0, 0);
    cd.rhs_ext.resize(0);
    sys.locals.push_back(std::move(cd));
  }
  for (Eigen::Index i = 0; i < loads.size(); ++i) {
    const int fi = dm.free_index[i];
    if (fi >= 0) rhs(fi) += loads(i);
  }
  Eigen::SparseMatrix<LD> m(dm.num_free, dm.num_free);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  sys.matrix = m.cast<double>();
  sys.rhs = rhs.cast<double>();
  if (sys.extended) {
    sys.matrix_ext = std::move(m);
    sys.rhs_ext = std::move(rhs);
  }
  return sys;
}

Eigen::VectorXd expand_traces(const DofMap& dm, const TraceSystem& sys, const Eigen::VectorXd& free_values) {
  Eigen::VectorXd full = sys.constrained;
  for (int i = 0; i < dm.num_trace_dofs(); ++i) {
    const int f = dm.free_index[i];
    if (f >= 0) full(i) = free_values(f);
  }
  return full;
}

}  // namespace xhdg
