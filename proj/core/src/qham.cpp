#include "lagdirac/qham.hpp"

#include <cmath>

namespace lagdirac {

namespace {
const std::complex<double> kI(0.0, 1.0);

GroupContext make_context(GroupTag tag, std::vector<Eigen::MatrixXcd> basis,
                          double coeff) {
  GroupContext ctx;
  ctx.tag = tag;
  ctx.lie_dim = static_cast<Eigen::Index>(basis.size());
  ctx.rep_dim = basis.empty() ? 0 : basis[0].rows();
  ctx.basis = std::move(basis);
  ctx.B = Eigen::MatrixXd::Identity(ctx.lie_dim, ctx.lie_dim);
  ctx.pairing_coeff = coeff;
  return ctx;
}

}  // namespace

GroupContext GroupContext::su2() {
  Eigen::MatrixXcd s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -kI, kI, 0;
  s3 << 1, 0, 0, -1;
  std::vector<Eigen::MatrixXcd> basis = {-0.5 * kI * s1, -0.5 * kI * s2,
                                         -0.5 * kI * s3};
  return make_context(GroupTag::SU2, std::move(basis), 2.0);
}

GroupContext GroupContext::so3() {
  std::vector<Eigen::MatrixXcd> basis(3, Eigen::MatrixXcd::Zero(3, 3));
  // (L_i)_jk = -eps_ijk
  const int eps[3][3][3] = {};
  auto set = [&](int i, int j, int k, double v) { basis[i](j, k) = -v; };
  (void)eps;
  set(0, 1, 2, 1.0);
  set(0, 2, 1, -1.0);
  set(1, 2, 0, 1.0);
  set(1, 0, 2, -1.0);
  set(2, 0, 1, 1.0);
  set(2, 1, 0, -1.0);
  return make_context(GroupTag::SO3, std::move(basis), 0.5);
}

Eigen::MatrixXcd GroupContext::from_coords(const Eigen::VectorXd& xi) const {
  if (xi.size() != lie_dim)
    throw DimensionMismatch("from_coords: coordinate size");
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(rep_dim, rep_dim);
  for (Eigen::Index i = 0; i < lie_dim; ++i) x += xi(i) * basis[i];
  return x;
}

Eigen::VectorXd GroupContext::to_coords(const Eigen::MatrixXcd& x) const {
  Eigen::VectorXd out(lie_dim);
  for (Eigen::Index i = 0; i < lie_dim; ++i)
    out(i) = -pairing_coeff * (basis[i] * x).trace().real();
  return out;
}

Eigen::MatrixXd GroupContext::ad(const Eigen::VectorXd& xi) const {
  const Eigen::MatrixXcd x = from_coords(xi);
  Eigen::MatrixXd out(lie_dim, lie_dim);
  for (Eigen::Index j = 0; j < lie_dim; ++j)
    out.col(j) = to_coords(x * basis[j] - basis[j] * x);
  return out;
}

Eigen::MatrixXcd GroupContext::exp(const Eigen::VectorXd& xi) const {
  // elements of the algebra are anti-Hermitian in the built-in realizations
  const Eigen::MatrixXcd x = from_coords(xi);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      Eigen::MatrixXcd(-kI * x));
  Eigen::VectorXcd phases(rep_dim);
  for (Eigen::Index j = 0; j < rep_dim; ++j)
    phases(j) = std::exp(kI * es.eigenvalues()(j));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

void GroupContext::check_element(const Eigen::MatrixXcd& g) const {
  if (g.rows() != rep_dim || g.cols() != rep_dim)
    throw DimensionMismatch("check_element: wrong representation size");
  if ((g.adjoint() * g - Eigen::MatrixXcd::Identity(rep_dim, rep_dim)).norm() >
      1e-6)
    throw NotOrthogonal("check_element: g not unitary");
  if (std::abs(g.determinant() - 1.0) > 1e-6)
    throw NotOrthogonal("check_element: det g != 1");
  if (tag == GroupTag::SO3 && g.imag().norm() > 1e-9)
    throw NotOrthogonal("check_element: SO(3) element must be real");
}

double GroupContext::invariance_residual() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < lie_dim; ++i) {
    const Eigen::MatrixXd adi = ad(Eigen::VectorXd::Unit(lie_dim, i));
    worst = std::max(worst, (adi * B + B * adi.transpose()).norm());
  }
  return worst;
}

OrthogonalPoint adjoint(const GroupContext& ctx, const Eigen::MatrixXcd& g) {
  ctx.check_element(g);
  const Eigen::MatrixXcd ginv = g.adjoint();
  Eigen::MatrixXd a(ctx.lie_dim, ctx.lie_dim);
  for (Eigen::Index j = 0; j < ctx.lie_dim; ++j)
    a.col(j) = ctx.to_coords(g * ctx.basis[j] * ginv);
  return OrthogonalPoint(std::move(a), 1e-6);
}

DiracStructure cartan_dirac_at(const GroupContext& ctx,
                               const Eigen::MatrixXcd& g, double tol) {
  return lag_from_orth(adjoint(ctx, g), tol);
}

QHamReport verify_qham(const GroupContext& ctx, const PointedQHam& p,
                       double tol) {
  const Eigen::Index n = ctx.lie_dim;
  if (p.dPhi.rows() != n || p.dPhi.cols() != p.m || p.omega.rows() != p.m)
    throw DimensionMismatch("verify_qham: shape mismatch");
  const OrthogonalPoint a = adjoint(ctx, p.g);
  const DiracStructure target = lag_from_orth(a, tol);

  QHamReport rep;
  rep.image_gap = std::numeric_limits<double>::infinity();
  rep.image_dim = -1;
  rep.is_dirac_morphism = false;
  try {
    const DiracStructure image =
        forward_image(DiracMorphism(p.dPhi, p.omega),
                      DiracStructure::tangent(p.m, tol));
    rep.image_dim = image.E.dim();
    rep.image_gap = principal_angle_gap(image.E, target.E);
    rep.is_dirac_morphism = rep.image_gap <= 1e-8;
  } catch (const NonLagrangianResult&) {
  }

  Eigen::MatrixXd stacked(p.m + n, p.m);
  stacked.topRows(p.m) = p.omega;
  stacked.bottomRows(n) = p.dPhi;
  rep.is_strong = nullspace(stacked, tol).cols() == 0;

  const double det = a.A.determinant();
  rep.parity_ok = ((p.m % 2 == 0) == (det > 0.0));
  return rep;
}

ConjugacyClassPoint conjugacy_class_data(const GroupContext& ctx,
                                         const Eigen::MatrixXcd& g,
                                         double tol) {
  const Eigen::Index n = ctx.lie_dim;
  const Eigen::MatrixXd a = adjoint(ctx, g).A;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd span = id - a.transpose();  // xi -> xi^sharp at g
  const Eigen::MatrixXd tb =
      orthonormalize(span.cast<std::complex<double>>(), tol).real();
  const Eigen::Index m = tb.cols();

  ConjugacyClassPoint out;
  out.frame = tb;
  out.p.g = g;
  out.p.m = m;
  out.p.dPhi = tb;  // moment map is the inclusion
  out.p.generators = tb.transpose() * span;
  out.moment_residual = 0.0;
  if (m == 0) {
    out.p.omega = Eigen::MatrixXd::Zero(0, 0);
    return out;
  }
  // Moment condition iota(xi_M) omega = -(1/2) B((theta^L + theta^R) . , xi)
  // on the generator span, solved in the least-squares sense.
  const Eigen::MatrixXd gen = out.p.generators;           // m x n
  const Eigen::MatrixXd rhs =
      -0.5 * tb.transpose() * (id + a.transpose());       // m x n
  const Eigen::MatrixXd gram = gen * gen.transpose();     // m x m, invertible
  Eigen::MatrixXd w = rhs * gen.transpose() * gram.inverse();
  w = 0.5 * (w - w.transpose()).eval();
  out.moment_residual = (w * gen - rhs).norm();
  if (out.moment_residual > 1e3 * tol * std::max(1.0, rhs.norm()))
    throw InconsistentMomentCondition(
        "conjugacy_class_data: moment condition residual " +
        std::to_string(out.moment_residual));
  out.p.omega = std::move(w);
  return out;
}

PointedQHam fusion(const GroupContext& ctx, const PointedQHam& p1,
                   const PointedQHam& p2) {
  const Eigen::Index n = ctx.lie_dim;
  if (p1.dPhi.rows() != n || p2.dPhi.rows() != n)
    throw DimensionMismatch("fusion: context mismatch");
  const DiracMorphism mult =
      multiplicative_morphism(adjoint(ctx, p1.g), adjoint(ctx, p2.g));
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(2 * n, p1.m + p2.m);
  theta.topLeftCorner(n, p1.m) = p1.dPhi;
  theta.bottomRightCorner(n, p2.m) = p2.dPhi;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(p1.m + p2.m, p1.m + p2.m);
  omega.topLeftCorner(p1.m, p1.m) = p1.omega;
  omega.bottomRightCorner(p2.m, p2.m) = p2.omega;
  const DiracMorphism fused = compose(mult, DiracMorphism(theta, omega));

  PointedQHam out;
  out.g = p1.g * p2.g;
  out.m = p1.m + p2.m;
  out.dPhi = fused.theta;
  out.omega = fused.omega;
  out.generators.resize(out.m, n);
  out.generators.topRows(p1.m) = p1.generators;
  out.generators.bottomRows(p2.m) = p2.generators;
  return out;
}

PointedHam coadjoint_orbit_data(const GroupContext& ctx,
                                const Eigen::VectorXd& mu, double tol) {
  const Eigen::MatrixXd admu = ctx.ad(mu);
  const Eigen::MatrixXd tb =
      orthonormalize(admu.cast<std::complex<double>>(), tol).real();
  const Eigen::Index m = tb.cols();
  PointedHam out;
  out.mu = mu;
  out.m = m;
  out.dPhi0 = tb;
  out.generators = -tb.transpose() * admu;
  if (m == 0) {
    out.omega0 = Eigen::MatrixXd::Zero(0, 0);
    return out;
  }
  Eigen::MatrixXd s = tb.transpose() * admu * tb;  // invertible skew on T
  Eigen::MatrixXd w = -s.inverse();
  out.omega0 = 0.5 * (w - w.transpose()).eval();
  return out;
}

PointedQHam exponential_point(const GroupContext& ctx, const PointedHam& p0,
                              double tol) {
  const Eigen::MatrixXd admu = ctx.ad(p0.mu);
  const ExpLift lift = exp_lift(SkewPoint(admu), tol);
  if (!lift.strong)
    throw NotRegular("exponential_point: exp is singular at mu");
  const DiracMorphism composed =
      compose(lift.morphism, DiracMorphism(p0.dPhi0, p0.omega0));
  PointedQHam out;
  out.g = ctx.exp(p0.mu);
  out.m = p0.m;
  out.dPhi = composed.theta;
  out.omega = composed.omega;
  out.generators = p0.generators;
  return out;
}

ReductionResult reduction_normal_form(const PointedQHam& p, double tol) {
  const Eigen::Index n = p.dPhi.rows();
  const Eigen::Index m = p.m;
  if ((p.g - Eigen::MatrixXcd::Identity(p.g.rows(), p.g.cols())).norm() > 1e-6)
    throw std::invalid_argument("reduction_normal_form: requires g = e");
  if (numeric_rank(p.dPhi, tol) != n)
    throw NotRegular("reduction_normal_form: dPhi not surjective");
  if (numeric_rank(p.generators, tol) != n)
    throw NotFree("reduction_normal_form: generators rank-deficient");
  const Eigen::MatrixXd w = p.omega;
  const double scale = std::max(1.0, w.norm());

  const Eigen::MatrixXd tz = nullspace(p.dPhi, tol);       // m x (m-n)
  const Eigen::MatrixXd f =
      nullspace(Eigen::MatrixXd(tz.transpose()), tol);     // complement, m x n
  const Eigen::MatrixXd gb =
      orthonormalize(p.generators.cast<std::complex<double>>(), tol).real();

  const Eigen::MatrixXd fomega =
      nullspace(Eigen::MatrixXd(f.transpose() * w), tol);  // F^omega
  Eigen::MatrixXd joint(m, gb.cols() + fomega.cols());
  joint << gb, fomega;
  if (numeric_rank(joint, tol) !=
      std::min(m, static_cast<Eigen::Index>(joint.cols())))
    throw NotRegular(
        "reduction_normal_form: g-directions meet F^omega nontrivially");

  // phi: F -> g-directions with omega(phi(v), .)|_F = omega(v, .)|_F;
  // F' = {v - phi(v)/2} is then isotropic.
  const Eigen::MatrixXd pairing = f.transpose() * w * gb;  // n x n
  const Eigen::MatrixXd fprime =
      f - 0.5 * gb * pairing.inverse() * (f.transpose() * w * f);

  ReductionResult out;
  out.fprime = fprime;
  out.fprime_isotropy_residual =
      (fprime.transpose() * w * fprime).norm() / scale;

  Eigen::MatrixXd span(m, gb.cols() + fprime.cols());
  span << gb, fprime;
  out.vred_basis = nullspace(Eigen::MatrixXd(span.transpose() * w), tol);
  if (out.vred_basis.cols() != m - 2 * n)
    throw NotRegular("reduction_normal_form: reduced dimension defect");
  out.omega_red =
      out.vred_basis.transpose() * w * out.vred_basis;

  out.block_offdiag_residual =
      std::max({(out.vred_basis.transpose() * w * gb).norm(),
                (out.vred_basis.transpose() * w * fprime).norm(),
                (gb.transpose() * w * gb).norm()}) /
      scale;
  // omega(xi_M, f) = -<dPhi f, xi>: the g/g* block is the standard pairing
  // mu_1(v_2) - mu_2(v_1) under the dPhi identification F' ~ g*.
  out.pairing_match_residual =
      (p.generators.transpose() * w.transpose() * fprime + p.dPhi * fprime)
          .norm() /
      std::max(1.0, (p.dPhi * fprime).norm());
  return out;
}

ReductionInstance build_reduction_instance(const GroupContext& ctx,
                                           Eigen::Index m_red,
                                           const Eigen::MatrixXd& omega_red,
                                           const Eigen::MatrixXd& scramble) {
  const Eigen::Index n = ctx.lie_dim;
  const Eigen::Index m = m_red + 2 * n;
  if (omega_red.rows() != m_red || scramble.rows() != m)
    throw DimensionMismatch("build_reduction_instance: shape mismatch");
  Eigen::MatrixXd w0 = Eigen::MatrixXd::Zero(m, m);
  w0.topLeftCorner(m_red, m_red) = omega_red;
  w0.block(m_red, m_red + n, n, n) = Eigen::MatrixXd::Identity(n, n);
  w0.block(m_red + n, m_red, n, n) = -Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd linv = scramble.inverse();

  ReductionInstance inst;
  inst.planted_omega_red = omega_red;
  inst.scramble = scramble;
  inst.p.g = Eigen::MatrixXcd::Identity(ctx.rep_dim, ctx.rep_dim);
  inst.p.m = m;
  inst.p.omega = linv.transpose() * w0 * linv;
  inst.p.dPhi = Eigen::MatrixXd::Zero(n, m);
  inst.p.dPhi.rightCols(n) = Eigen::MatrixXd::Identity(n, n);
  inst.p.dPhi = (inst.p.dPhi * linv).eval();
  inst.p.generators = Eigen::MatrixXd::Zero(m, n);
  inst.p.generators.middleRows(m_red, n) = Eigen::MatrixXd::Identity(n, n);
  inst.p.generators = (scramble * inst.p.generators).eval();
  return inst;
}

ReductionResult shifted_reduction(const GroupContext& ctx,
                                  const PointedQHam& p,
                                  const Eigen::MatrixXcd& g, double tol) {
  const ConjugacyClassPoint cc = conjugacy_class_data(ctx, g.adjoint(), tol);
  return reduction_normal_form(fusion(ctx, p, cc.p), tol);
}

}  // namespace lagdirac
