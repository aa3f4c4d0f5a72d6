#pragma once

#include <Eigen/Dense>
#include <functional>

#include "lagdirac/dirac.hpp"

namespace lagdirac {

struct OrthogonalPoint {
  Eigen::MatrixXd A;

  explicit OrthogonalPoint(Eigen::MatrixXd a, double tol = kDefaultTol);
  Eigen::Index n() const { return A.rows(); }
};

struct SkewPoint {
  Eigen::MatrixXd a;

  explicit SkewPoint(Eigen::MatrixXd m, double tol = kDefaultTol);
  Eigen::Index n() const { return a.rows(); }
};

/// f(a) for a real skew matrix, computed by unitary diagonalization of the
/// Hermitian matrix -i a. The scalar function receives the (imaginary)
/// eigenvalues i*lambda. The result is real whenever f(conj z) = conj f(z).
Eigen::MatrixXd skew_matrix_function(
    const Eigen::MatrixXd& skew,
    const std::function<std::complex<double>(std::complex<double>)>& f);

Eigen::MatrixXd expm_skew(const Eigen::MatrixXd& a);
/// (I - e^{-a}) / a, with the removable singularity at 0 filled in.
Eigen::MatrixXd exp_jacobian(const Eigen::MatrixXd& a);
/// (a - sinh a) / a^2, skew; the 2-form coefficient of the exponential lift.
Eigen::MatrixXd exp_form_matrix(const Eigen::MatrixXd& a);

/// E_A = {((I - A^{-1}) v, (I + A^{-1}) v / 2)}.
DiracStructure lag_from_orth(const OrthogonalPoint& a,
                             double tol = kDefaultTol);

/// Inverse of lag_from_orth via the split-coordinate change
/// (v, alpha) -> (alpha + v/2, alpha - v/2).
OrthogonalPoint orth_from_lag(const DiracStructure& d);

/// E^op = {(v, -alpha)}; corresponds to A^{-1}.
DiracStructure opposite(const DiracStructure& d);

/// The multiplicative morphism at (A1, A2): Theta(xi1, xi2) = A2^{-1} xi1 + xi2
/// with the group 2-form sigma; its forward image takes E_{A1} x E_{A2}
/// to E_{A1 A2}.
DiracMorphism multiplicative_morphism(const OrthogonalPoint& a1,
                                      const OrthogonalPoint& a2);

/// max-norm residual between the two composition orders of the
/// multiplicative morphism over a triple.
double associativity_check(const OrthogonalPoint& a1, const OrthogonalPoint& a2,
                           const OrthogonalPoint& a3);

struct CayleyLift {
  DiracMorphism morphism;    // (id, 0)
  OrthogonalPoint group_point;  // (I + a/2)(I - a/2)^{-1}
  DiracStructure source;     // Gr_a
};

CayleyLift cayley_morphism(const SkewPoint& a, double tol = kDefaultTol);

struct ExpLift {
  DiracMorphism morphism;    // (Pi_a, -varpi_a)
  OrthogonalPoint group_point;  // exp(a)
  DiracStructure source;     // Gr_a
  bool strong;               // Pi_a invertible
  double smallest_singular_value;
};

ExpLift exp_lift(const SkewPoint& a, double tol = kDefaultTol);

/// Shear (v, alpha) -> (v, alpha - iota_v omega) applied to the frame.
/// verify_formula additionally checks the closed-form
/// A^omega = (A - w(A - I))(I - w(A - I))^{-1} when defined.
DiracStructure gauge_transform(const DiracStructure& d, const SkewPoint& omega);
/// Residual between gauge_transform and the closed-form A^omega;
/// NaN when I - w(A - I) is singular.
double gauge_formula_residual(const DiracStructure& d, const SkewPoint& omega);

struct SymplecticPathPoint {
  OrthogonalPoint a_t;        // (t R - (1-t)^2/2) / (t R + (1-t)^2/2)
  OrthogonalPoint a_tilde_t;  // -exp(t pi J)
  double halfplane_margin;    // min Re of spec(J A_t) and spec(J A~_t)
  double min_singular_value;  // of J A_t + I and J A~_t + I
  bool halfplane_ok;
};

SymplecticPathPoint symplectic_path(const SkewPoint& r, double t,
                                    double tol = kDefaultTol);

/// lag_from_orth(exp(s a)): the pointwise homotopy from V* to E_{exp a}.
DiracStructure exp_pullback_homotopy(const SkewPoint& a, double s,
                                     double tol = kDefaultTol);

}  // namespace lagdirac
