#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lagdirac/orthogonal.hpp"

namespace lagdirac {

enum class GroupTag { SU2, SO3, Generic };

/// A matrix group with a B-orthonormal Lie algebra basis in a defining
/// representation; B(X, Y) = -c Re tr(XY).
struct GroupContext {
  GroupTag tag;
  Eigen::Index lie_dim;
  Eigen::Index rep_dim;
  std::vector<Eigen::MatrixXcd> basis;
  Eigen::MatrixXd B;  // identity in the built-in contexts
  double pairing_coeff;

  static GroupContext su2();  // e_i = -(i/2) sigma_i, B = -2 tr
  static GroupContext so3();  // (L_i)_jk = -eps_ijk, B = -(1/2) tr

  Eigen::MatrixXcd from_coords(const Eigen::VectorXd& xi) const;
  Eigen::VectorXd to_coords(const Eigen::MatrixXcd& x) const;
  /// Matrix of ad_xi in the basis.
  Eigen::MatrixXd ad(const Eigen::VectorXd& xi) const;
  Eigen::MatrixXcd exp(const Eigen::VectorXd& xi) const;
  void check_element(const Eigen::MatrixXcd& g) const;
  /// max residual of B([x,y],z) + B(y,[x,z]) over basis triples.
  double invariance_residual() const;
};

/// Matrix of Ad_g in the chosen basis; B-orthogonal.
OrthogonalPoint adjoint(const GroupContext& ctx, const Eigen::MatrixXcd& g);

/// E_G|_g = E_{Ad_g} in left trivialization.
DiracStructure cartan_dirac_at(const GroupContext& ctx,
                               const Eigen::MatrixXcd& g,
                               double tol = kDefaultTol);

/// Pointwise data of a q-Hamiltonian space at one point: tangent dimension m,
/// moment differential (left trivialization), 2-form, and the infinitesimal
/// action generators (columns over a g-basis, expressed in T-coordinates).
struct PointedQHam {
  Eigen::MatrixXcd g;
  Eigen::Index m;
  Eigen::MatrixXd dPhi;        // n x m
  Eigen::MatrixXd omega;       // m x m skew
  Eigen::MatrixXd generators;  // m x n, xi |-> xi_M
};

struct QHamReport {
  bool is_dirac_morphism;
  bool is_strong;
  bool parity_ok;
  double image_gap;       // principal-angle gap to E_{Ad_g}
  Eigen::Index image_dim;
};

/// Forward image of TM under (dPhi, omega) against E_{Ad_g}; strongness via
/// ker(omega) cap ker(dPhi) = 0; parity law (-1)^m = det(Ad_g).
QHamReport verify_qham(const GroupContext& ctx, const PointedQHam& p,
                       double tol = kDefaultTol);

struct ConjugacyClassPoint {
  PointedQHam p;
  Eigen::MatrixXd frame;      // n x m, orthonormal basis of T in g-coords
  double moment_residual;     // least-squares defect of the solved omega
};

/// The conjugacy class through g with moment map the inclusion; T is the
/// image of I - Ad_g^{-1} and omega is solved from the moment condition.
ConjugacyClassPoint conjugacy_class_data(const GroupContext& ctx,
                                         const Eigen::MatrixXcd& g,
                                         double tol = kDefaultTol);

/// g = g1 g2; (dPhi, omega) composed with the multiplicative morphism at
/// (Ad_{g1}, Ad_{g2}); generators act diagonally.
PointedQHam fusion(const GroupContext& ctx, const PointedQHam& p1,
                   const PointedQHam& p2);

/// Pointwise Hamiltonian data: mu in g* ~ g via B, with a 2-form whose
/// forward image of TM is Gr_{ad_mu}.
struct PointedHam {
  Eigen::VectorXd mu;
  Eigen::Index m;
  Eigen::MatrixXd dPhi0;       // n x m
  Eigen::MatrixXd omega0;      // m x m skew
  Eigen::MatrixXd generators;  // m x n
};

/// The coadjoint orbit through mu: T = im(ad_mu), dPhi0 the inclusion,
/// omega0 = -(T^t ad_mu T)^{-1} (the KKS form in this frame).
PointedHam coadjoint_orbit_data(const GroupContext& ctx,
                                const Eigen::VectorXd& mu,
                                double tol = kDefaultTol);

/// Phi = exp Phi_0: composes the Hamiltonian data with the exponential lift
/// of ad_mu. NotRegular when (I - e^{-ad_mu})/ad_mu is singular.
PointedQHam exponential_point(const GroupContext& ctx, const PointedHam& p0,
                              double tol = kDefaultTol);

struct ReductionResult {
  Eigen::MatrixXd omega_red;          // on the reduced directions
  Eigen::MatrixXd vred_basis;         // m x (m - 2n), orthonormal
  Eigen::MatrixXd fprime;             // m x n, the corrected complement
  double fprime_isotropy_residual;
  double block_offdiag_residual;      // coupling of vred to g + g*
  double pairing_match_residual;      // g/g* block vs mu1(v2) - mu2(v1)
};

/// The reduction normal form at g = e, following the splitting
/// omega = omega_red + omega_{g+g*} with F' = {v - phi(v)/2}.
ReductionResult reduction_normal_form(const PointedQHam& p,
                                      double tol = kDefaultTol);

struct ReductionInstance {
  PointedQHam p;
  Eigen::MatrixXd planted_omega_red;
  Eigen::MatrixXd scramble;  // the invertible change of coordinates L
};

/// Build-then-recover oracle: (omega_red + standard g/g* block) scrambled by
/// a random invertible L; reduction_normal_form must recover omega_red up to
/// the induced isomorphism.
ReductionInstance build_reduction_instance(const GroupContext& ctx,
                                           Eigen::Index m_red,
                                           const Eigen::MatrixXd& omega_red,
                                           const Eigen::MatrixXd& scramble);

/// Shifting trick: reduction at g expressed as fusion with the conjugacy
/// class of g^{-1} followed by reduction at e.
ReductionResult shifted_reduction(const GroupContext& ctx,
                                  const PointedQHam& p,
                                  const Eigen::MatrixXcd& g,
                                  double tol = kDefaultTol);

}  // namespace lagdirac
