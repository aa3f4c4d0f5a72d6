#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "lagdirac/dirac.hpp"

namespace lagdirac {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double gauss() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t integer() { return engine_(); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
Eigen::MatrixXcd random_complex_matrix(Rng& rng, Eigen::Index rows,
                                       Eigen::Index cols);

/// Haar-ish orthogonal matrix: QR of a Gaussian matrix with the R-diagonal
/// sign fix.
Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index n);
Eigen::MatrixXd random_special_orthogonal(Rng& rng, Eigen::Index n);
Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index n);

Eigen::MatrixXd random_skew(Rng& rng, Eigen::Index n, double scale = 1.0);
Eigen::MatrixXcd random_antihermitian(Rng& rng, Eigen::Index n,
                                      double scale = 1.0);
/// Random invertible skew (even n), smallest singular value bounded away
/// from zero by resampling.
Eigen::MatrixXd random_invertible_skew(Rng& rng, Eigen::Index n,
                                       double min_sv = 0.1);

Eigen::MatrixXd random_invertible(Rng& rng, Eigen::Index n,
                                  double min_sv = 0.1);

/// E_A for a random A in O(n); covers both parities.
DiracStructure random_dirac_structure(Rng& rng, Eigen::Index n,
                                      double tol = kDefaultTol);

/// A strong morphism for d: injective theta plus random skew omega.
DiracMorphism random_strong_morphism(Rng& rng, Eigen::Index target_dim,
                                     const DiracStructure& d);

}  // namespace lagdirac
