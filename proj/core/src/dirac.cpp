#include "lagdirac/dirac.hpp"

#include <cmath>

namespace lagdirac {

DiracMorphism::DiracMorphism(Eigen::MatrixXd theta_in, Eigen::MatrixXd omega_in)
    : theta(std::move(theta_in)), omega(std::move(omega_in)) {
  if (omega.rows() != omega.cols() || omega.rows() != theta.cols())
    throw DimensionMismatch("DiracMorphism: omega must be square of source dim");
  const double scale = std::max(1.0, omega.norm());
  if ((omega + omega.transpose()).norm() > 1e-9 * scale)
    throw std::invalid_argument("DiracMorphism: omega must be skew");
}

DiracMorphism DiracMorphism::identity(Eigen::Index n) {
  return DiracMorphism(Eigen::MatrixXd::Identity(n, n),
                       Eigen::MatrixXd::Zero(n, n));
}

DiracStructure::DiracStructure(Eigen::Index n_in, Subspace e, bool certify)
    : n(n_in), E(std::move(e)) {
  if (E.ambient_dim() != 2 * n)
    throw DimensionMismatch("DiracStructure: E must live in dimension 2n");
  if (certify) {
    if (E.dim() != n)
      throw NonLagrangianInput("DiracStructure: dim E != n");
    const auto iso = isotropic_check(E, BilinearPairing::canonical(n));
    if (!iso.isotropic)
      throw NonLagrangianInput("DiracStructure: E not isotropic, residual " +
                               std::to_string(iso.residual));
  }
}

DiracStructure DiracStructure::tangent(Eigen::Index n, double tol) {
  Eigen::MatrixXcd frame = Eigen::MatrixXcd::Zero(2 * n, n);
  frame.topRows(n) = Eigen::MatrixXcd::Identity(n, n);
  return DiracStructure(n, Subspace(std::move(frame), Field::Real, tol), false);
}

DiracStructure DiracStructure::cotangent(Eigen::Index n, double tol) {
  Eigen::MatrixXcd frame = Eigen::MatrixXcd::Zero(2 * n, n);
  frame.bottomRows(n) = Eigen::MatrixXcd::Identity(n, n);
  return DiracStructure(n, Subspace(std::move(frame), Field::Real, tol), false);
}

DiracStructure DiracStructure::graph_of_skew(const Eigen::MatrixXd& w,
                                             double tol) {
  const Eigen::Index n = w.rows();
  if (w.cols() != n) throw DimensionMismatch("graph_of_skew: w must be square");
  Eigen::MatrixXd span(2 * n, n);
  span.topRows(n) = w;
  span.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
  return DiracStructure(n, Subspace::from_span(span, tol));
}

DiracStructure direct_sum(const DiracStructure& d1, const DiracStructure& d2) {
  const Eigen::Index n1 = d1.n, n2 = d2.n;
  const Eigen::Index r1 = d1.E.dim(), r2 = d2.E.dim();
  Eigen::MatrixXcd frame = Eigen::MatrixXcd::Zero(2 * (n1 + n2), r1 + r2);
  frame.block(0, 0, n1, r1) = d1.E.frame().topRows(n1);
  frame.block(n1 + n2, 0, n1, r1) = d1.E.frame().bottomRows(n1);
  frame.block(n1, r1, n2, r2) = d2.E.frame().topRows(n2);
  frame.block(2 * n1 + n2, r1, n2, r2) = d2.E.frame().bottomRows(n2);
  const Field f = join(d1.E.field(), d2.E.field());
  const double tol = std::max(d1.E.tol(), d2.E.tol());
  return DiracStructure(n1 + n2, Subspace(std::move(frame), f, tol), false);
}

DiracMorphism compose(const DiracMorphism& m2, const DiracMorphism& m1) {
  if (m2.source_dim() != m1.target_dim())
    throw DimensionMismatch("compose: inner dimensions differ");
  Eigen::MatrixXd theta = m2.theta * m1.theta;
  Eigen::MatrixXd omega =
      m1.omega + m1.theta.transpose() * m2.omega * m1.theta;
  return DiracMorphism(std::move(theta), std::move(omega));
}

LinearRelation morphism_relation(const DiracMorphism& m, double tol) {
  const Eigen::Index n = m.source_dim(), np = m.target_dim();
  Eigen::MatrixXd span = Eigen::MatrixXd::Zero(2 * n + 2 * np, n + np);
  // Columns from v in V: ((v, iota_v omega), (Theta v, 0)).
  span.block(0, 0, n, n) = Eigen::MatrixXd::Identity(n, n);
  span.block(n, 0, n, n) = m.omega;
  span.block(2 * n, 0, np, n) = m.theta;
  // Columns from a' in V'*: ((0, Theta^T a'), (0, a')).
  span.block(n, n, n, np) = m.theta.transpose();
  span.block(2 * n + np, n, np, np) = Eigen::MatrixXd::Identity(np, np);
  return LinearRelation(2 * n, 2 * np, Subspace::from_span(span, tol));
}

DiracStructure forward_image(const DiracMorphism& m, const DiracStructure& d) {
  if (m.source_dim() != d.n)
    throw DimensionMismatch("forward_image: source dimension mismatch");
  const LinearRelation rel = morphism_relation(m, d.E.tol());
  Subspace image = relation_apply(rel, d.E, Direction::Forward);
  const Eigen::Index np = m.target_dim();
  if (image.dim() != np)
    throw NonLagrangianResult("forward_image: image dimension " +
                              std::to_string(image.dim()) + " != " +
                              std::to_string(np));
  const auto iso = isotropic_check(image, BilinearPairing::canonical(np));
  if (!iso.isotropic)
    throw NonLagrangianResult("forward_image: isotropy residual " +
                              std::to_string(iso.residual));
  return DiracStructure(np, std::move(image), false);
}

Subspace kernel_of(const DiracMorphism& m, double tol) {
  const Eigen::Index n = m.source_dim();
  const Eigen::MatrixXd k = nullspace(m.theta, tol);
  Eigen::MatrixXd span(2 * n, k.cols());
  span.topRows(n) = k;
  span.bottomRows(n) = m.omega * k;
  return Subspace::from_span(span, tol);
}

bool is_strong(const DiracMorphism& m, const DiracStructure& d) {
  if (m.source_dim() != d.n)
    throw DimensionMismatch("is_strong: source dimension mismatch");
  return intersect(d.E, kernel_of(m, d.E.tol())).dim() == 0;
}

Parity parity(const DiracStructure& d) {
  const DiracStructure v = DiracStructure::tangent(d.n, d.E.tol());
  const Eigen::Index k = intersect(d.E, v.E).dim();
  return (k % 2 == 0) ? Parity::Even : Parity::Odd;
}

namespace {

DiracMorphism path_morphism(const DiracMorphism& m, double t) {
  const Eigen::Index n = m.source_dim(), np = m.target_dim();
  Eigen::MatrixXd theta(n + np, n);
  theta.topRows(n) = (1.0 - t) * Eigen::MatrixXd::Identity(n, n);
  theta.bottomRows(np) = t * m.theta;
  return DiracMorphism(std::move(theta), t * m.omega);
}

}  // namespace

DiracStructure standard_path(const DiracMorphism& m, const DiracStructure& d,
                             double t) {
  if (!is_strong(m, d))
    throw NotStrong("standard_path: morphism is not strong for E");
  return forward_image(path_morphism(m, t), d);
}

DiracStructure two_param_path(const DiracMorphism& m1, const DiracMorphism& m2,
                              const DiracStructure& d, double t, double tp) {
  if (t < 0.0 || tp < 0.0 || t + tp > 1.0 + 1e-12)
    throw std::invalid_argument("two_param_path: need t, t' >= 0, t + t' <= 1");
  if (!is_strong(m1, d))
    throw NotStrong("two_param_path: first morphism not strong");
  if (!is_strong(m2, forward_image(m1, d)))
    throw NotStrong("two_param_path: second morphism not strong");
  const Eigen::Index n = m1.source_dim(), np = m1.target_dim(),
                     npp = m2.target_dim();
  Eigen::MatrixXd theta(n + np + npp, n);
  theta.topRows(n) = (1.0 - t - tp) * Eigen::MatrixXd::Identity(n, n);
  theta.middleRows(n, np) = t * m1.theta;
  theta.bottomRows(npp) = tp * m2.theta * m1.theta;
  Eigen::MatrixXd omega =
      t * m1.omega +
      tp * (m1.omega + m1.theta.transpose() * m2.omega * m1.theta);
  return forward_image(DiracMorphism(std::move(theta), std::move(omega)), d);
}

DiracStructure normalized_path(const DiracStructure& d, double t) {
  const Eigen::Index n = d.n;
  const double c = 1.0 / std::sqrt(t * t + (1.0 - t) * (1.0 - t));
  Eigen::MatrixXd theta(2 * n, n);
  theta.topRows(n) = c * (1.0 - t) * Eigen::MatrixXd::Identity(n, n);
  theta.bottomRows(n) = c * t * Eigen::MatrixXd::Identity(n, n);
  return forward_image(
      DiracMorphism(std::move(theta), Eigen::MatrixXd::Zero(n, n)), d);
}

}  // namespace lagdirac
