#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <functional>
#include <vector>

#include "lagdirac/subspace.hpp"

namespace lagdirac {

/// D_A = d/dt on [0,1]-valued functions with f(1) = -A f(0); skew-adjoint
/// for unitary A, spectrum 2 pi i (lambda^(r) + k - 1/2).
struct BoundaryOperator {
  Eigen::Index n;
  Eigen::MatrixXcd A;
  Field field;
  double tol;

  explicit BoundaryOperator(Eigen::MatrixXcd a, double tol_in = kDefaultTol);
  explicit BoundaryOperator(const Eigen::MatrixXd& a,
                            double tol_in = kDefaultTol);
};

/// A v^(r) = e^{2 pi i lambda^(r)} v^(r), lambda canonicalized to [0,1)
/// with |lambda - 1/2| <= tol snapped to 1/2 for exact kernel bookkeeping.
struct AnalyticSpectrum {
  Eigen::VectorXd lambdas;   // n entries in [0,1)
  Eigen::MatrixXcd vectors;  // unitary eigenbasis, columns
};

AnalyticSpectrum base_spectrum(const BoundaryOperator& b);

struct SpectralLine {
  std::complex<double> eigenvalue;  // 2 pi i (lambda + k - 1/2)
  double lambda;
  int k;
  int r;  // index into base_spectrum
};

/// Eigenvalue ladder for k in [k_min, k_max], sorted by imaginary part.
std::vector<SpectralLine> analytic_spectrum(const BoundaryOperator& b,
                                            int k_min, int k_max);

/// dim ker(A + I) = dim(E cap V); count of lambda = 1/2.
Eigen::Index kernel_dim(const BoundaryOperator& b);

struct DiscretizedOperator {
  Eigen::Index N;
  double h;
  Eigen::SparseMatrix<std::complex<double>> matrix;  // nN x nN, skew-adjoint
};

/// Centered difference (f_{j+1} - f_{j-1}) / (2h) on midpoints t_j = (j+1/2)/N
/// with wrap terms through the boundary condition; exactly skew-adjoint.
DiscretizedOperator discretize(const BoundaryOperator& b, Eigen::Index N);

struct SmallestModes {
  Eigen::VectorXd lambdas;    // eigenvalue = i * lambda, sorted by |lambda|
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd residuals;  // ||M v - i lambda v|| per mode
};

/// Smallest-magnitude eigenvalues of a sparse skew-adjoint matrix via
/// shift-inverted subspace iteration on -M^2.
SmallestModes smallest_magnitude_modes(
    const Eigen::SparseMatrix<std::complex<double>>& skew, int nev,
    int max_iters = 400, double res_tol = 1e-9);

/// Same, but aware of the discretization: filters out the spurious sawtooth
/// mirror branch of the centered stencil before Rayleigh-Ritz, so the modes
/// returned are the physical ones converging to analytic_spectrum.
SmallestModes smallest_magnitude_modes(const DiscretizedOperator& op, int nev,
                                       int max_iters = 400,
                                       double res_tol = 1e-9);

struct HsDiagnostic {
  std::vector<long long> checkpoints;
  std::vector<double> partial_sums;
  double slope;       // of partial sums against log M over the last decade
  double threshold;   // 0.1 x first-term magnitude
  bool divergent;
};

/// Truncated double sum of |<phi_k^(r), phi_l'^(s)>|^2 over the sign-split
/// index region (lambda+k-1/2 > 0, lambda'+l-1/2 <= 0), |k|,|l| <= m_max,
/// grouped by d = l - k for O(n^2 m_max) work.
HsDiagnostic hs_divergence_diagnostic(const BoundaryOperator& b1,
                                      const BoundaryOperator& b2,
                                      long long m_max);

/// || M_gamma D_{A'} M_gamma^{-1} - (D_A + M_mu) || with mu = -gamma' gamma^{-1};
/// gamma is sampled where needed (midpoints and their neighbours). Requires
/// pointwise-unitary gamma and the compatibility A gamma(0) = gamma(1) A'.
double conjugation_identity(
    const BoundaryOperator& b_to, const BoundaryOperator& b_from,
    const std::function<Eigen::MatrixXcd(double)>& gamma, Eigen::Index N);

/// (||R_1(D_a) - R_1(D_0)||, 3 ||a||) with R_1(D) = (D - 1)^{-1} on the
/// N-point discretizations of D_{exp(a) A} and D_A; contract lhs <= rhs.
std::pair<double, double> resolvent_continuity(const BoundaryOperator& b,
                                               const Eigen::MatrixXcd& a,
                                               Eigen::Index N);

/// J = i sign(-i D) for an invertible skew-adjoint matrix.
Eigen::MatrixXcd polarization_j(const Eigen::MatrixXcd& d,
                                double tol = kDefaultTol);

/// (||J_{D+Q} - J_D||_F, ||Q||_F / a) with a = min |eigenvalue| over both
/// spectra; contract lhs <= rhs.
std::pair<double, double> finite_hs_bound(const Eigen::MatrixXcd& d,
                                          const Eigen::MatrixXcd& q,
                                          double tol = kDefaultTol);

/// || J_D + (1/pi) int R_t(D) dt || via quadrature; sanity for the integral
/// representation J_D = -(1/pi) int R_t(D) dt.
double integral_representation_residual(const Eigen::MatrixXcd& d,
                                        double tol = kDefaultTol);

/// Largest singular value by power iteration on M^H M.
double operator_norm_estimate(const Eigen::MatrixXcd& m, int iters = 200);

}  // namespace lagdirac
