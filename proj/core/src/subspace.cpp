#include "lagdirac/subspace.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace lagdirac {

namespace {

// Full SVD split: returns (range basis, cokernel basis) of m.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> range_and_corange(
    const Eigen::MatrixXcd& m, double tol) {
  if (m.cols() == 0) {
    return {Eigen::MatrixXcd(m.rows(), 0),
            Eigen::MatrixXcd::Identity(m.rows(), m.rows())};
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() ? sv(0) * tol : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  return {svd.matrixU().leftCols(rank), svd.matrixU().rightCols(m.rows() - rank)};
}

}  // namespace

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& m, double tol) {
  return range_and_corange(m, tol).first;
}

Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() == 0) return Eigen::MatrixXcd::Identity(m.cols(), m.cols());
  if (m.cols() == 0) return Eigen::MatrixXcd(0, 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() ? sv(0) * tol : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double tol) {
  return nullspace(Eigen::MatrixXcd(m.cast<std::complex<double>>()), tol)
      .real();
}

Eigen::Index numeric_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() ? sv(0) * tol : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  return rank;
}

Eigen::Index numeric_rank(const Eigen::MatrixXd& m, double tol) {
  return numeric_rank(Eigen::MatrixXcd(m.cast<std::complex<double>>()), tol);
}

Subspace::Subspace(Eigen::MatrixXcd orthonormal_frame, Field field, double tol)
    : frame_(std::move(orthonormal_frame)), field_(field), tol_(tol) {
  if (tol_ <= 0.0) throw std::invalid_argument("Subspace: tol must be positive");
  if (frame_.cols() > frame_.rows())
    throw DimensionMismatch("Subspace: more columns than ambient dimension");
  if (frame_.cols() > 0) {
    const double ortho_defect =
        (frame_.adjoint() * frame_ -
         Eigen::MatrixXcd::Identity(frame_.cols(), frame_.cols()))
            .norm();
    if (ortho_defect > 1e3 * tol_)
      throw std::invalid_argument("Subspace: frame columns not orthonormal");
  }
}

Subspace Subspace::from_span(const Eigen::MatrixXcd& span, Field field,
                             double tol) {
  return Subspace(orthonormalize(span, tol), field, tol);
}

Subspace Subspace::from_span(const Eigen::MatrixXd& span, double tol) {
  return from_span(Eigen::MatrixXcd(span.cast<std::complex<double>>()),
                   Field::Real, tol);
}

Subspace Subspace::zero(Eigen::Index ambient_dim, Field field, double tol) {
  return Subspace(Eigen::MatrixXcd(ambient_dim, 0), field, tol);
}

Subspace Subspace::full(Eigen::Index ambient_dim, Field field, double tol) {
  return Subspace(Eigen::MatrixXcd::Identity(ambient_dim, ambient_dim), field,
                  tol);
}

Subspace Subspace::orthogonal_complement() const {
  auto [range, corange] = range_and_corange(frame_, tol_);
  (void)range;
  return Subspace(corange, field_, tol_);
}

double Subspace::membership_residual(const Eigen::VectorXcd& x) const {
  if (x.size() != ambient_dim())
    throw DimensionMismatch("membership_residual: ambient dimension mismatch");
  const Eigen::VectorXcd res = x - frame_ * (frame_.adjoint() * x);
  return res.norm() / std::max(x.norm(), 1.0);
}

bool Subspace::contains(const Eigen::VectorXcd& x) const {
  return membership_residual(x) <= 1e3 * tol_;
}

Subspace intersect(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw DimensionMismatch("intersect: ambient dimensions differ");
  const Field f = join(s1.field(), s2.field());
  const double tol = std::max(s1.tol(), s2.tol());
  const Subspace c1 = s1.orthogonal_complement();
  const Subspace c2 = s2.orthogonal_complement();
  Eigen::MatrixXcd stacked(s1.ambient_dim(), c1.dim() + c2.dim());
  stacked << c1.frame(), c2.frame();
  if (stacked.cols() == 0) return Subspace::full(s1.ambient_dim(), f, tol);
  auto [range, corange] = range_and_corange(stacked, tol);
  (void)range;
  return Subspace(corange, f, tol);
}

Subspace subspace_sum(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw DimensionMismatch("subspace_sum: ambient dimensions differ");
  const Field f = join(s1.field(), s2.field());
  const double tol = std::max(s1.tol(), s2.tol());
  Eigen::MatrixXcd stacked(s1.ambient_dim(), s1.dim() + s2.dim());
  stacked << s1.frame(), s2.frame();
  return Subspace::from_span(stacked, f, tol);
}

double principal_angle_gap(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw DimensionMismatch("principal_angle_gap: ambient dimensions differ");
  auto one_sided = [](const Subspace& a, const Subspace& b) {
    if (a.dim() == 0) return 0.0;
    const Eigen::MatrixXcd rest =
        a.frame() - b.frame() * (b.frame().adjoint() * a.frame());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rest);
    return svd.singularValues()(0);
  };
  return std::max(one_sided(s1, s2), one_sided(s2, s1));
}

BilinearPairing::BilinearPairing(Eigen::MatrixXd g) : gram(std::move(g)) {
  if (gram.rows() != gram.cols())
    throw DimensionMismatch("BilinearPairing: gram must be square");
  if ((gram - gram.transpose()).norm() > 1e-12 * std::max(1.0, gram.norm()))
    throw std::invalid_argument("BilinearPairing: gram must be symmetric");
}

BilinearPairing BilinearPairing::canonical(Eigen::Index n) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  g.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  g.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return BilinearPairing(std::move(g));
}

IsotropyReport isotropic_check(const Subspace& s, const BilinearPairing& p) {
  if (s.ambient_dim() != p.dim())
    throw DimensionMismatch("isotropic_check: pairing dimension mismatch");
  if (s.dim() == 0) return {true, 0.0};
  const Eigen::MatrixXcd m =
      s.frame().transpose() * p.gram.cast<std::complex<double>>() * s.frame();
  const double residual = m.norm();
  return {residual <= 1e3 * s.tol(), residual};
}

LinearRelation::LinearRelation(Eigen::Index source, Eigen::Index target,
                               Subspace g)
    : source_dim(source), target_dim(target), graph(std::move(g)) {
  if (graph.ambient_dim() != source_dim + target_dim)
    throw DimensionMismatch(
        "LinearRelation: graph ambient dimension must be source + target");
}

Subspace relation_apply(const LinearRelation& r, const Subspace& s,
                        Direction direction) {
  const Eigen::Index in_dim =
      direction == Direction::Forward ? r.source_dim : r.target_dim;
  const Eigen::Index out_dim =
      direction == Direction::Forward ? r.target_dim : r.source_dim;
  if (s.ambient_dim() != in_dim)
    throw DimensionMismatch("relation_apply: subspace dimension mismatch");
  const Field f = join(s.field(), r.graph.field());
  const double tol = std::max(s.tol(), r.graph.tol());

  // Extend S by the full opposite block, intersect with the graph, then
  // project onto the opposite block.
  Eigen::MatrixXcd ext =
      Eigen::MatrixXcd::Zero(in_dim + out_dim, s.dim() + out_dim);
  const Eigen::Index in_row = direction == Direction::Forward ? 0 : r.source_dim;
  const Eigen::Index out_row = direction == Direction::Forward ? r.source_dim : 0;
  ext.block(in_row, 0, in_dim, s.dim()) = s.frame();
  ext.block(out_row, s.dim(), out_dim, out_dim) =
      Eigen::MatrixXcd::Identity(out_dim, out_dim);
  const Subspace cut =
      intersect(r.graph, Subspace(std::move(ext), f, tol));
  return Subspace::from_span(
      Eigen::MatrixXcd(cut.frame().block(out_row, 0, out_dim, cut.dim())), f,
      tol);
}

}  // namespace lagdirac
