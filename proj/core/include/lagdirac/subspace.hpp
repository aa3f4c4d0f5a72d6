#pragma once

#include <Eigen/Dense>
#include <complex>

#include "lagdirac/errors.hpp"

namespace lagdirac {

enum class Field { Real, Complex };

inline Field join(Field a, Field b) {
  return (a == Field::Real && b == Field::Real) ? Field::Real : Field::Complex;
}

constexpr double kDefaultTol = 1e-9;

/// A subspace of R^d or C^d, stored as an orthonormal-column frame.
/// The zero subspace is a d x 0 frame. Rank decisions are relative:
/// singular values below tol * sigma_max are treated as zero.
class Subspace {
 public:
  Subspace(Eigen::MatrixXcd orthonormal_frame, Field field,
           double tol = kDefaultTol);

  static Subspace from_span(const Eigen::MatrixXcd& span, Field field,
                            double tol = kDefaultTol);
  static Subspace from_span(const Eigen::MatrixXd& span,
                            double tol = kDefaultTol);
  static Subspace zero(Eigen::Index ambient_dim, Field field,
                       double tol = kDefaultTol);
  static Subspace full(Eigen::Index ambient_dim, Field field,
                       double tol = kDefaultTol);

  Eigen::Index ambient_dim() const { return frame_.rows(); }
  Eigen::Index dim() const { return frame_.cols(); }
  Field field() const { return field_; }
  double tol() const { return tol_; }
  const Eigen::MatrixXcd& frame() const { return frame_; }

  Eigen::MatrixXcd projector() const { return frame_ * frame_.adjoint(); }
  Subspace orthogonal_complement() const;

  /// Residual of x against the subspace, ||x - P x|| / max(||x||, 1).
  double membership_residual(const Eigen::VectorXcd& x) const;
  bool contains(const Eigen::VectorXcd& x) const;

 private:
  Eigen::MatrixXcd frame_;
  Field field_;
  double tol_;
};

/// Orthonormal basis for the column space of m, with relative rank cutoff.
Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& m, double tol);

/// Orthonormal basis for the nullspace of m.
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double tol);
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double tol);

Eigen::Index numeric_rank(const Eigen::MatrixXcd& m, double tol);
Eigen::Index numeric_rank(const Eigen::MatrixXd& m, double tol);

Subspace intersect(const Subspace& s1, const Subspace& s2);
Subspace subspace_sum(const Subspace& s1, const Subspace& s2);

/// max over both directions of || (I - P_other) frame ||_2; equals the sine
/// of the largest principal angle when dimensions agree, and is >= the
/// dimension defect otherwise (in the sense of being close to 1).
double principal_angle_gap(const Subspace& s1, const Subspace& s2);

/// A symmetric bilinear pairing x^T gram y on a 2n-dimensional space.
struct BilinearPairing {
  Eigen::MatrixXd gram;

  explicit BilinearPairing(Eigen::MatrixXd g);
  Eigen::Index dim() const { return gram.rows(); }

  /// The canonical split pairing <(v1,a1),(v2,a2)> = a1(v2) + a2(v1)
  /// on V + V*, V of dimension n.
  static BilinearPairing canonical(Eigen::Index n);
};

struct IsotropyReport {
  bool isotropic;
  double residual;
};

/// ||frame^T gram frame|| against the subspace tolerance. Note the plain
/// transpose: the pairing is bilinear also over C.
IsotropyReport isotropic_check(const Subspace& s, const BilinearPairing& p);

enum class Direction { Forward, Backward };

/// A linear relation between C^s and C^t, stored as its graph subspace
/// of C^(s+t) (source coordinates first).
struct LinearRelation {
  Eigen::Index source_dim;
  Eigen::Index target_dim;
  Subspace graph;

  LinearRelation(Eigen::Index source, Eigen::Index target, Subspace g);
};

/// Forward image { x' : exists x in S with (x,x') in graph }, or the
/// backward preimage.
Subspace relation_apply(const LinearRelation& r, const Subspace& s,
                        Direction direction);

}  // namespace lagdirac
