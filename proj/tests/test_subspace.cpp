#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "lagdirac/dirac.hpp"
#include "lagdirac/orthogonal.hpp"
#include "lagdirac/random.hpp"
#include "lagdirac/subspace.hpp"

using namespace lagdirac;

namespace {
Subspace axis(Eigen::Index d, Eigen::Index i) {
  return Subspace::from_span(Eigen::MatrixXd(Eigen::VectorXd::Unit(d, i)));
}
}  // namespace

TEST_CASE("intersection basics") {
  const Subspace e1 = axis(2, 0), e2 = axis(2, 1);
  CHECK(intersect(e1, e1).dim() == 1);
  CHECK(principal_angle_gap(intersect(e1, e1), e1) <= 1e-12);
  CHECK(intersect(e1, e2).dim() == 0);
}

TEST_CASE("intersection law dim(E_A1 cap E_A2) = dim ker(A1 - A2)") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXd a1 = random_orthogonal(rng, 3);
    const Eigen::MatrixXd a2 = random_orthogonal(rng, 3);
    const Eigen::Index expected = 3 - numeric_rank(Eigen::MatrixXd(a1 - a2),
                                                   kDefaultTol);
    const auto cap = intersect(lag_from_orth(OrthogonalPoint(a1)).E,
                               lag_from_orth(OrthogonalPoint(a2)).E);
    CHECK(cap.dim() == expected);
  }
  // engineered coincidence: shared eigenvector
  Eigen::MatrixXd r1 = Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd r2 = Eigen::MatrixXd::Identity(3, 3);
  const double th1 = 0.7, th2 = 1.9;
  r1.topLeftCorner(2, 2) << std::cos(th1), -std::sin(th1), std::sin(th1),
      std::cos(th1);
  r2.topLeftCorner(2, 2) << std::cos(th2), -std::sin(th2), std::sin(th2),
      std::cos(th2);
  const auto cap = intersect(lag_from_orth(OrthogonalPoint(r1)).E,
                             lag_from_orth(OrthogonalPoint(r2)).E);
  CHECK(cap.dim() == 1);  // shared fixed axis e3
}

TEST_CASE("isotropy of V, V*, and a non-isotropic line") {
  const auto p = BilinearPairing::canonical(2);
  CHECK(isotropic_check(DiracStructure::tangent(2).E, p).isotropic);
  CHECK(isotropic_check(DiracStructure::cotangent(2).E, p).isotropic);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x(0) = 1.0;  // e1
  x(2) = 1.0;  // its dual
  const auto rep = isotropic_check(Subspace::from_span(Eigen::MatrixXd(x)), p);
  CHECK_FALSE(rep.isotropic);
  // <(e1, eps1), (e1, eps1)> = 2 on the unnormalized vector
  CHECK(rep.residual == doctest::Approx(1.0).epsilon(1e-9));  // frame is unit
}

TEST_CASE("relation_apply on the identity and zero relations") {
  Rng rng(3);
  const Subspace s = Subspace::from_span(random_matrix(rng, 4, 2));
  const auto id = morphism_relation(DiracMorphism::identity(2));
  const Subspace s_id = relation_apply(id, s, Direction::Forward);
  CHECK(principal_angle_gap(s_id, s) <= 1e-10);
}

TEST_CASE("forward of V under (id, omega_std) is the graph of -omega") {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, -1, 0;
  const auto rel = morphism_relation(
      DiracMorphism(Eigen::MatrixXd::Identity(2, 2), w));
  const Subspace img =
      relation_apply(rel, DiracStructure::tangent(2).E, Direction::Forward);
  // 0 = iota_v omega + alpha' upstream, so the image is {(v, -W v)}
  Eigen::MatrixXd span(4, 2);
  span.topRows(2) = Eigen::MatrixXd::Identity(2, 2);
  span.bottomRows(2) = -w;
  CHECK(principal_angle_gap(img, Subspace::from_span(span)) <= 1e-10);
}

TEST_CASE("projector idempotence and Grassmann duality") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.integer() % 9);
    const Eigen::Index r1 = static_cast<Eigen::Index>(rng.integer() % (d + 1));
    const Eigen::Index r2 = static_cast<Eigen::Index>(rng.integer() % (d + 1));
    const Subspace s1 = Subspace::from_span(random_matrix(rng, d, r1));
    const Subspace s2 = Subspace::from_span(random_matrix(rng, d, r2));
    const Eigen::MatrixXcd p = s1.projector();
    CHECK((p * p - p).norm() <= 10 * kDefaultTol);
    CHECK(intersect(s1, s2).dim() + subspace_sum(s1, s2).dim() ==
          s1.dim() + s2.dim());
  }
}

TEST_CASE("zero subspace flows through every operation") {
  const Subspace z = Subspace::zero(3, Field::Real);
  CHECK(z.dim() == 0);
  CHECK(intersect(z, Subspace::full(3, Field::Real)).dim() == 0);
  CHECK(subspace_sum(z, z).dim() == 0);
  CHECK(z.orthogonal_complement().dim() == 3);
}

TEST_CASE("forward-backward round trip inside the range") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.integer() % 4);
    const DiracMorphism m(random_matrix(rng, n, n) +
                              3.0 * Eigen::MatrixXd::Identity(n, n),
                          random_skew(rng, n));
    const auto rel = morphism_relation(m);
    const Subspace s = Subspace::from_span(random_matrix(rng, 2 * n, n));
    const Subspace fwd = relation_apply(rel, s, Direction::Forward);
    const Subspace back = relation_apply(rel, fwd, Direction::Backward);
    // s is contained in the backward image of its forward image
    for (Eigen::Index cidx = 0; cidx < s.dim(); ++cidx)
      CHECK(back.membership_residual(s.frame().col(cidx)) <= 1e-8);
  }
}
