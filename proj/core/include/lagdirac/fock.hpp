#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

#include "lagdirac/dirac.hpp"

namespace lagdirac {

/// An orthogonal complex structure on R^d: J^2 = -I, J^T = -J.
struct ComplexStructure {
  Eigen::Index d;
  Eigen::MatrixXd J;

  explicit ComplexStructure(Eigen::MatrixXd j, double tol = kDefaultTol);
};

/// J = D |D|^{-1} for an invertible real skew matrix.
ComplexStructure complex_structure_from_skew(const Eigen::MatrixXd& d,
                                             double tol = kDefaultTol);

/// The spinor module S_J = wedge(V_+), V_+ = ker(J - i) in C^d; wedge basis
/// indexed by subsets of the d/2 modes.
struct SpinorModule {
  ComplexStructure J;
  Eigen::MatrixXcd plus_basis;  // d x d/2, orthonormal
  double tol;

  explicit SpinorModule(ComplexStructure j, double tol_in = kDefaultTol);

  Eigen::Index modes() const { return J.d / 2; }
  Eigen::Index wedge_dim() const { return Eigen::Index(1) << modes(); }
};

/// rho(v) = sqrt(2) (eps(v_+) + iota(v_-)) on the wedge basis; complex-linear
/// in v and satisfies rho(v)^2 = <v,v> (bilinear) I.
Eigen::MatrixXcd clifford_action(const SpinorModule& s,
                                 const Eigen::VectorXcd& v);

/// Diagonal (-1)^{wedge degree}; anticommutes with every rho(v).
Eigen::MatrixXd grading(const SpinorModule& s);

/// Shale-Stinespring parity: parity of (dim ker(J1 + J2)) / 2.
Parity ss_parity(const ComplexStructure& j1, const ComplexStructure& j2);

/// K = {k <= 0} with `removed` holes punched and `added` particles above 0;
/// canonical form: added sorted descending, removed sorted ascending.
struct WedgeState {
  std::vector<int> added;    // positive, descending
  std::vector<int> removed;  // nonpositive, ascending

  static WedgeState make(std::vector<int> added_in, std::vector<int> removed_in);
  bool operator==(const WedgeState& o) const {
    return added == o.added && removed == o.removed;
  }
};

/// m_K = |added| - |removed|.
int weight(const WedgeState& k);

/// tau(K) = {k + 1 : k in K}, re-encoded; weight(shift(K)) = weight(K) + 1.
WedgeState shift(const WedgeState& k);

/// Exact creation/annihilation operators on the span of wedge states
/// supported in modes [-N, N]; operators moving a particle outside the
/// window send the state to zero.
class WedgeWindow {
 public:
  explicit WedgeWindow(int n);  // throws WindowTooLarge for n > 12

  int window() const { return n_; }
  int mode_count() const { return 2 * n_ + 1; }
  std::uint64_t dim() const { return std::uint64_t(1) << mode_count(); }

  /// Occupation bitmask of a wedge state; mode k sits at bit k + N.
  std::uint64_t encode(const WedgeState& k) const;
  WedgeState decode(std::uint64_t mask) const;
  std::uint64_t vacuum() const;

  /// rho(f_k) without the sqrt(2): exterior multiplication. Returns the sign
  /// (+1/-1) and writes the image mask; sign 0 means the zero vector.
  int create(int k, std::uint64_t in, std::uint64_t* out) const;
  /// rho(f_k^*) without the sqrt(2): contraction.
  int annihilate(int k, std::uint64_t in, std::uint64_t* out) const;
  /// The implementer of f_k -> f_{k+1}; sign 0 when the top mode is pushed
  /// out of the window.
  int tau(std::uint64_t in, std::uint64_t* out) const;

  /// m_K of the state relative to the window vacuum.
  int weight_of(std::uint64_t mask) const;

  /// Dense sign matrices for small windows (dim <= 4096), for composition
  /// with generic linear algebra.
  Eigen::SparseMatrix<double> create_matrix(int k) const;
  Eigen::SparseMatrix<double> annihilate_matrix(int k) const;
  Eigen::SparseMatrix<double> tau_matrix() const;

  /// Normalization factor turning the sign matrices into rho.
  static constexpr double kRhoNormalization = 1.4142135623730951;

 private:
  int bit(int k) const { return k + n_; }
  int n_;
};

WedgeWindow wedge_operators(int n);

struct So2Report {
  double s;
  int window;
  std::vector<double> ladder;      // 2 pi (k - 1/2 + s), k in [-N, N]
  std::vector<int> vplus_modes;    // k with positive ladder entry
  int spectral_flow;               // signed crossings relative to s = 0
  bool kernel_crossing;            // some ladder entry at 0 (within tol)
  int min_weight;                  // histogram support starts here
  std::vector<long long> weight_histogram;  // counts per weight
  double ladder_match_residual;    // vs analytic_spectrum of the rotation
};

/// The SO(2) model: rotation-by-2-pi-s boundary conditions, eigenvalue
/// ladder, induced polarization on the window, and the weight spectrum of
/// the truncated module (shifted by +1 at s = 1, matching tau).
So2Report so2_model(double s, int window, double tol = kDefaultTol);

}  // namespace lagdirac
