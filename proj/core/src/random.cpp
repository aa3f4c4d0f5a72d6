#include "lagdirac/random.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace lagdirac {

Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.gauss();
  return m;
}

Eigen::MatrixXcd random_complex_matrix(Rng& rng, Eigen::Index rows,
                                       Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = std::complex<double>(rng.gauss(), rng.gauss());
  return m;
}

namespace {

template <typename Mat>
Mat haar_factor(const Mat& g) {
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(g.rows(), g.cols());
  const Mat r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const auto d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index n) {
  return haar_factor<Eigen::MatrixXd>(random_matrix(rng, n, n));
}

Eigen::MatrixXd random_special_orthogonal(Rng& rng, Eigen::Index n) {
  Eigen::MatrixXd q = random_orthogonal(rng, n);
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index n) {
  return haar_factor<Eigen::MatrixXcd>(random_complex_matrix(rng, n, n));
}

Eigen::MatrixXd random_skew(Rng& rng, Eigen::Index n, double scale) {
  const Eigen::MatrixXd g = random_matrix(rng, n, n);
  return scale * 0.5 * (g - g.transpose());
}

Eigen::MatrixXcd random_antihermitian(Rng& rng, Eigen::Index n, double scale) {
  const Eigen::MatrixXcd g = random_complex_matrix(rng, n, n);
  return scale * 0.5 * (g - g.adjoint());
}

Eigen::MatrixXd random_invertible_skew(Rng& rng, Eigen::Index n,
                                       double min_sv) {
  if (n % 2 != 0)
    throw std::invalid_argument("random_invertible_skew: n must be even");
  for (int tries = 0; tries < 64; ++tries) {
    Eigen::MatrixXd s = random_skew(rng, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
    if (svd.singularValues()(n - 1) >= min_sv) return s;
  }
  throw std::runtime_error("random_invertible_skew: resampling failed");
}

Eigen::MatrixXd random_invertible(Rng& rng, Eigen::Index n, double min_sv) {
  for (int tries = 0; tries < 64; ++tries) {
    Eigen::MatrixXd m = random_matrix(rng, n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    if (svd.singularValues()(n - 1) >= min_sv) return m;
  }
  throw std::runtime_error("random_invertible: resampling failed");
}

DiracStructure random_dirac_structure(Rng& rng, Eigen::Index n, double tol) {
  const Eigen::MatrixXd a = random_orthogonal(rng, n);
  const Eigen::MatrixXd ainv = a.transpose();
  Eigen::MatrixXd span(2 * n, n);
  span.topRows(n) = Eigen::MatrixXd::Identity(n, n) - ainv;
  span.bottomRows(n) = 0.5 * (Eigen::MatrixXd::Identity(n, n) + ainv);
  return DiracStructure(n, Subspace::from_span(span, tol));
}

DiracMorphism random_strong_morphism(Rng& rng, Eigen::Index target_dim,
                                     const DiracStructure& d) {
  if (target_dim < d.n)
    throw DimensionMismatch(
        "random_strong_morphism: target must be at least the source");
  // injective theta has trivial kernel, so the morphism is strong for any E
  Eigen::MatrixXd theta = random_matrix(rng, target_dim, d.n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(theta);
  while (svd.singularValues()(d.n - 1) < 0.1) {
    theta = random_matrix(rng, target_dim, d.n);
    svd.compute(theta);
  }
  return DiracMorphism(std::move(theta), random_skew(rng, d.n));
}

}  // namespace lagdirac
