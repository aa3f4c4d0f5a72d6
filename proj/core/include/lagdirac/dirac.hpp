#pragma once

#include <Eigen/Dense>

#include "lagdirac/subspace.hpp"

namespace lagdirac {

/// A morphism (Theta, omega): V + V* --> V' + V'*. The 2-form omega is
/// stored as the skew matrix W of the map v -> iota_v omega, so
/// omega(v, w) = (W v)^T w.
struct DiracMorphism {
  Eigen::MatrixXd theta;  // n' x n
  Eigen::MatrixXd omega;  // n x n, skew

  DiracMorphism(Eigen::MatrixXd theta_in, Eigen::MatrixXd omega_in);

  Eigen::Index source_dim() const { return theta.cols(); }
  Eigen::Index target_dim() const { return theta.rows(); }

  static DiracMorphism identity(Eigen::Index n);
};

/// A Lagrangian subspace E of V + V* with the canonical split pairing.
struct DiracStructure {
  Eigen::Index n;
  Subspace E;

  DiracStructure(Eigen::Index n_in, Subspace e, bool certify = true);

  BilinearPairing pairing() const { return BilinearPairing::canonical(n); }

  /// E = V (the first factor).
  static DiracStructure tangent(Eigen::Index n, double tol = kDefaultTol);
  /// E = V*.
  static DiracStructure cotangent(Eigen::Index n, double tol = kDefaultTol);
  /// The graph {(W mu, mu)} of a skew matrix (always Lagrangian).
  static DiracStructure graph_of_skew(const Eigen::MatrixXd& w,
                                      double tol = kDefaultTol);
};

/// Order-preserving direct sum: Lagrangians of (V+V*) and (V'+V'*) combine
/// into one of (V+V')+(V+V')*, reordering coordinates to (v, v', a, a').
DiracStructure direct_sum(const DiracStructure& d1, const DiracStructure& d2);

DiracMorphism compose(const DiracMorphism& m2, const DiracMorphism& m1);

/// The relation (v, a) ~ (v', a')  iff  v' = Theta v, a = iota_v omega + Theta^T a'.
LinearRelation morphism_relation(const DiracMorphism& m,
                                 double tol = kDefaultTol);

/// Forward image of D.E, certified Lagrangian before return.
DiracStructure forward_image(const DiracMorphism& m, const DiracStructure& d);

/// ker(Theta, omega) = {(v, iota_v omega) : Theta v = 0}.
Subspace kernel_of(const DiracMorphism& m, double tol = kDefaultTol);

bool is_strong(const DiracMorphism& m, const DiracStructure& d);

enum class Parity { Even, Odd };

Parity parity(const DiracStructure& d);

/// Forward image E_t of E under (j_t, t omega), j_t(v) = ((1-t)v, t Theta v),
/// a Lagrangian in (V+V') + (V+V')*. Requires a strong morphism.
DiracStructure standard_path(const DiracMorphism& m, const DiracStructure& d,
                             double t);

/// Two-parameter family E_{tt'} in V + V' + V''.
DiracStructure two_param_path(const DiracMorphism& m1, const DiracMorphism& m2,
                              const DiracStructure& d, double t, double tp);

/// Path for (id, 0) with the isometric normalization
/// (t^2 + (1-t)^2)^{-1/2} j_t.
DiracStructure normalized_path(const DiracStructure& d, double t);

}  // namespace lagdirac
