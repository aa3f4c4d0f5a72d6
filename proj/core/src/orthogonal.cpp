#include "lagdirac/orthogonal.hpp"

#include <cmath>
#include <complex>

namespace lagdirac {

OrthogonalPoint::OrthogonalPoint(Eigen::MatrixXd m, double tol)
    : A(std::move(m)) {
  if (A.rows() != A.cols())
    throw DimensionMismatch("OrthogonalPoint: matrix must be square");
  const double defect =
      (A.transpose() * A - Eigen::MatrixXd::Identity(A.rows(), A.rows()))
          .norm();
  if (defect > 1e3 * tol * std::max(1.0, static_cast<double>(A.rows())))
    throw NotOrthogonal("OrthogonalPoint: A^T A != I, defect " +
                        std::to_string(defect));
}

SkewPoint::SkewPoint(Eigen::MatrixXd m, double tol) : a(std::move(m)) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("SkewPoint: matrix must be square");
  if ((a + a.transpose()).norm() > 1e3 * tol * std::max(1.0, a.norm()))
    throw std::invalid_argument("SkewPoint: matrix must be skew");
}

Eigen::MatrixXd skew_matrix_function(
    const Eigen::MatrixXd& skew,
    const std::function<std::complex<double>(std::complex<double>)>& f) {
  const Eigen::Index n = skew.rows();
  const std::complex<double> im(0.0, 1.0);
  const Eigen::MatrixXcd herm = -im * skew.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  Eigen::VectorXcd fvals(n);
  for (Eigen::Index k = 0; k < n; ++k)
    fvals(k) = f(im * es.eigenvalues()(k));
  const Eigen::MatrixXcd out = es.eigenvectors() * fvals.asDiagonal() *
                               es.eigenvectors().adjoint();
  return out.real();
}

Eigen::MatrixXd expm_skew(const Eigen::MatrixXd& a) {
  return skew_matrix_function(a, [](std::complex<double> z) {
    return std::exp(z);
  });
}

Eigen::MatrixXd exp_jacobian(const Eigen::MatrixXd& a) {
  return skew_matrix_function(a, [](std::complex<double> z) {
    if (std::abs(z) < 1e-6)
      return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
    return (1.0 - std::exp(-z)) / z;
  });
}

Eigen::MatrixXd exp_form_matrix(const Eigen::MatrixXd& a) {
  return skew_matrix_function(a, [](std::complex<double> z) {
    if (std::abs(z) < 1e-2) {
      // (z - sinh z)/z^2 = -z/6 - z^3/120 - z^5/5040 - ...
      const std::complex<double> z2 = z * z;
      return -z / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0));
    }
    return (z - std::sinh(z)) / (z * z);
  });
}

DiracStructure lag_from_orth(const OrthogonalPoint& a, double tol) {
  const Eigen::Index n = a.n();
  const Eigen::MatrixXd ainv = a.A.transpose();
  Eigen::MatrixXd span(2 * n, n);
  span.topRows(n) = Eigen::MatrixXd::Identity(n, n) - ainv;
  span.bottomRows(n) = 0.5 * (Eigen::MatrixXd::Identity(n, n) + ainv);
  return DiracStructure(n, Subspace::from_span(span, tol));
}

OrthogonalPoint orth_from_lag(const DiracStructure& d) {
  // In the coordinates p_a = alpha + v/2, p_b = alpha - v/2 a Lagrangian is
  // the graph of an orthogonal map p_b = A^{-1} p_a.
  const Eigen::Index n = d.n;
  const Eigen::MatrixXcd& fr = d.E.frame();
  const Eigen::MatrixXcd pa = fr.bottomRows(n) + 0.5 * fr.topRows(n);
  const Eigen::MatrixXcd pb = fr.bottomRows(n) - 0.5 * fr.topRows(n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      pa, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smin = svd.singularValues().size()
                          ? svd.singularValues()(svd.singularValues().size() - 1)
                          : 0.0;
  if (n > 0 && smin <= d.E.tol() * svd.singularValues()(0))
    throw SingularOperator("orth_from_lag: p_a block is singular");
  const Eigen::MatrixXcd ainv = pb * svd.solve(
      Eigen::MatrixXcd::Identity(n, n));
  const Eigen::MatrixXcd ac = ainv.transpose();  // orthogonal, bilinear sense
  if (ac.imag().norm() > 1e3 * d.E.tol() * std::max(1.0, ac.norm()))
    throw NotOrthogonal("orth_from_lag: recovered matrix is not real");
  return OrthogonalPoint(ac.real(), 1e3 * d.E.tol());
}

DiracStructure opposite(const DiracStructure& d) {
  Eigen::MatrixXcd frame = d.E.frame();
  frame.bottomRows(d.n) *= -1.0;
  return DiracStructure(d.n, Subspace(std::move(frame), d.E.field(), d.E.tol()),
                        false);
}

DiracMorphism multiplicative_morphism(const OrthogonalPoint& a1,
                                      const OrthogonalPoint& a2) {
  if (a1.n() != a2.n())
    throw DimensionMismatch("multiplicative_morphism: sizes differ");
  const Eigen::Index n = a1.n();
  Eigen::MatrixXd theta(n, 2 * n);
  theta.leftCols(n) = a2.A.transpose();
  theta.rightCols(n) = Eigen::MatrixXd::Identity(n, n);
  // sigma((xi1, xi2), (zeta1, zeta2)) = (B(xi1, A2 zeta2) - B(A2 xi2, zeta1))/2.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n) = -0.5 * a2.A;
  w.bottomLeftCorner(n, n) = 0.5 * a2.A.transpose();
  return DiracMorphism(std::move(theta), std::move(w));
}

double associativity_check(const OrthogonalPoint& a1, const OrthogonalPoint& a2,
                           const OrthogonalPoint& a3) {
  const Eigen::Index n = a1.n();
  const OrthogonalPoint a12(a1.A * a2.A);
  const OrthogonalPoint a23(a2.A * a3.A);
  // Left: (m(a1,a2) x id) then m(a12, a3). Right: (id x m(a2,a3)) then
  // m(a1, a23).
  const DiracMorphism inner_l = multiplicative_morphism(a1, a2);
  const DiracMorphism inner_r = multiplicative_morphism(a2, a3);
  Eigen::MatrixXd theta_l = Eigen::MatrixXd::Zero(2 * n, 3 * n);
  theta_l.topLeftCorner(n, 2 * n) = inner_l.theta;
  theta_l.bottomRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd omega_l = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  omega_l.topLeftCorner(2 * n, 2 * n) = inner_l.omega;
  Eigen::MatrixXd theta_r = Eigen::MatrixXd::Zero(2 * n, 3 * n);
  theta_r.topLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  theta_r.bottomRightCorner(n, 2 * n) = inner_r.theta;
  Eigen::MatrixXd omega_r = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  omega_r.bottomRightCorner(2 * n, 2 * n) = inner_r.omega;
  const DiracMorphism left = compose(multiplicative_morphism(a12, a3),
                                     DiracMorphism(theta_l, omega_l));
  const DiracMorphism right = compose(multiplicative_morphism(a1, a23),
                                      DiracMorphism(theta_r, omega_r));
  return std::max((left.theta - right.theta).lpNorm<Eigen::Infinity>(),
                  (left.omega - right.omega).lpNorm<Eigen::Infinity>());
}

CayleyLift cayley_morphism(const SkewPoint& a, double tol) {
  const Eigen::Index n = a.n();
  const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd A =
      (i + 0.5 * a.a) * (i - 0.5 * a.a).inverse();
  return CayleyLift{DiracMorphism::identity(n), OrthogonalPoint(A, tol),
                    DiracStructure::graph_of_skew(a.a, tol)};
}

ExpLift exp_lift(const SkewPoint& a, double tol) {
  const Eigen::Index n = a.n();
  const Eigen::MatrixXd pi = exp_jacobian(a.a);
  const Eigen::MatrixXd w = exp_form_matrix(a.a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pi);
  const double smin =
      n > 0 ? svd.singularValues()(svd.singularValues().size() - 1) : 1.0;
  const double smax = n > 0 ? svd.singularValues()(0) : 1.0;
  return ExpLift{DiracMorphism(pi, w), OrthogonalPoint(expm_skew(a.a), tol),
                 DiracStructure::graph_of_skew(a.a, tol),
                 smin > tol * std::max(smax, 1.0), smin};
}

DiracStructure gauge_transform(const DiracStructure& d,
                               const SkewPoint& omega) {
  if (omega.n() != d.n)
    throw DimensionMismatch("gauge_transform: dimension mismatch");
  Eigen::MatrixXcd frame = d.E.frame();
  frame.bottomRows(d.n) -=
      omega.a.cast<std::complex<double>>() * frame.topRows(d.n);
  return DiracStructure(
      d.n, Subspace::from_span(frame, d.E.field(), d.E.tol()), false);
}

double gauge_formula_residual(const DiracStructure& d, const SkewPoint& omega) {
  const Eigen::Index n = d.n;
  const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd A = orth_from_lag(d).A;
  const Eigen::MatrixXd denom = i - omega.a * (A - i);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(denom);
  if (!lu.isInvertible()) return std::nan("");
  const Eigen::MatrixXd a_formula = (A - omega.a * (A - i)) * lu.inverse();
  const DiracStructure sheared = gauge_transform(d, omega);
  return principal_angle_gap(
      sheared.E, lag_from_orth(OrthogonalPoint(a_formula), d.E.tol()).E);
}

SymplecticPathPoint symplectic_path(const SkewPoint& r, double t, double tol) {
  const Eigen::Index n = r.n();
  const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> rsvd(r.a);
  if (n > 0 && rsvd.singularValues()(rsvd.singularValues().size() - 1) <=
                   tol * rsvd.singularValues()(0))
    throw SingularForm("symplectic_path: R must be invertible");
  const double c = 0.5 * (1.0 - t) * (1.0 - t);
  const Eigen::MatrixXd a_t = (t * r.a - c * i) * (t * r.a + c * i).inverse();
  // Complex structure of the polar decomposition, oriented so that the
  // spectra of J A_t and J A~_t stay in the closed right half plane.
  const Eigen::MatrixXd j = skew_matrix_function(
      r.a, [](std::complex<double> z) {
        return std::complex<double>(0.0, z.imag() >= 0.0 ? -1.0 : 1.0);
      });
  const Eigen::MatrixXd a_tilde = -expm_skew(t * M_PI * j);
  double margin = std::numeric_limits<double>::infinity();
  double min_sv = std::numeric_limits<double>::infinity();
  for (const Eigen::MatrixXd& a : {a_t, a_tilde}) {
    const Eigen::MatrixXd ja = j * a;
    Eigen::EigenSolver<Eigen::MatrixXd> es(ja);
    margin = std::min(margin, es.eigenvalues().real().minCoeff());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ja + i);
    min_sv = std::min(min_sv,
                      static_cast<double>(svd.singularValues()(
                          svd.singularValues().size() - 1)));
  }
  return SymplecticPathPoint{OrthogonalPoint(a_t, tol),
                             OrthogonalPoint(a_tilde, tol), margin, min_sv,
                             margin > -1e3 * tol && min_sv > tol};
}

DiracStructure exp_pullback_homotopy(const SkewPoint& a, double s, double tol) {
  return lag_from_orth(OrthogonalPoint(expm_skew(s * a.a), tol), tol);
}

}  // namespace lagdirac
