#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "lagdirac/dirac.hpp"
#include "lagdirac/orthogonal.hpp"
#include "lagdirac/random.hpp"

using namespace lagdirac;

TEST_CASE("composition formula and associativity") {
  const auto id3 = DiracMorphism::identity(3);
  const auto c = compose(id3, id3);
  CHECK((c.theta - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  CHECK(c.omega.norm() == 0.0);

  Rng rng(5);
  // compose((0,0), (theta, omega)) keeps omega
  const DiracMorphism m(random_matrix(rng, 3, 3), random_skew(rng, 3));
  const DiracMorphism zero(Eigen::MatrixXd::Zero(2, 3),
                           Eigen::MatrixXd::Zero(3, 3));
  const auto z = compose(zero, m);
  CHECK(z.theta.norm() == 0.0);
  CHECK((z.omega - m.omega).norm() <= 1e-14);

  // associativity across dims 3 -> 4 -> 2 -> 5
  const DiracMorphism m1(random_matrix(rng, 4, 3), random_skew(rng, 3));
  const DiracMorphism m2(random_matrix(rng, 2, 4), random_skew(rng, 4));
  const DiracMorphism m3(random_matrix(rng, 5, 2), random_skew(rng, 2));
  const auto lhs = compose(m3, compose(m2, m1));
  const auto rhs = compose(compose(m3, m2), m1);
  CHECK((lhs.theta - rhs.theta).norm() <= 1e-12);
  CHECK((lhs.omega - rhs.omega).norm() <= 1e-12);
}

TEST_CASE("morphism relation membership") {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, -1, 0;
  const auto rel = morphism_relation(
      DiracMorphism(Eigen::MatrixXd::Identity(2, 2), w));
  CHECK(rel.graph.dim() == 4);
  // ((e1, iota_{e1} omega), (e1, 0))
  Eigen::VectorXd x = Eigen::VectorXd::Zero(8);
  x(0) = 1.0;              // v = e1
  x.segment(2, 2) = w.col(0);  // alpha = W e1
  x(4) = 1.0;              // v' = e1
  CHECK(rel.graph.membership_residual(x) <= 1e-10);
}

TEST_CASE("forward image of V* is (V')*") {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const DiracMorphism m(random_matrix(rng, 4, 3), random_skew(rng, 3));
    const auto img = forward_image(m, DiracStructure::cotangent(3));
    CHECK(principal_angle_gap(img.E, DiracStructure::cotangent(4).E) <= 1e-9);
  }
}

TEST_CASE("kernel formula") {
  Rng rng(19);
  const Eigen::MatrixXd w = random_skew(rng, 3);
  CHECK(kernel_of(DiracMorphism(Eigen::MatrixXd::Identity(3, 3), w)).dim() ==
        0);
  const auto full = kernel_of(DiracMorphism(Eigen::MatrixXd::Zero(2, 3), w));
  CHECK(full.dim() == 3);
  // {(v, W v)}
  Eigen::VectorXd x(6);
  x.head(3) = Eigen::VectorXd::Unit(3, 1);
  x.tail(3) = w.col(1);
  CHECK(full.membership_residual(x) <= 1e-10);

  Eigen::MatrixXd rank1 = Eigen::MatrixXd::Zero(2, 2);
  rank1(0, 0) = 1.0;
  CHECK(kernel_of(DiracMorphism(rank1, Eigen::MatrixXd::Zero(2, 2))).dim() ==
        1);
}

TEST_CASE("strongness of (0, omega) on (V, V) and of (0,0) on V, V*") {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, -1, 0;
  const DiracStructure tv = DiracStructure::tangent(2);
  CHECK(is_strong(DiracMorphism(Eigen::MatrixXd::Zero(0, 2), w), tv));
  CHECK_FALSE(is_strong(
      DiracMorphism(Eigen::MatrixXd::Zero(0, 2), Eigen::MatrixXd::Zero(2, 2)),
      tv));
  const DiracMorphism zz(Eigen::MatrixXd::Zero(0, 2),
                         Eigen::MatrixXd::Zero(2, 2));
  CHECK_FALSE(is_strong(zz, DiracStructure::tangent(2)));
  CHECK(is_strong(zz, DiracStructure::cotangent(2)));
}

TEST_CASE("parity examples") {
  CHECK(parity(DiracStructure::tangent(3)) == Parity::Odd);
  CHECK(parity(DiracStructure::cotangent(3)) == Parity::Even);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  a(0, 0) = -1.0;
  CHECK(parity(lag_from_orth(OrthogonalPoint(a))) == Parity::Odd);
}

TEST_CASE("forward images are Lagrangian and parity is preserved") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.integer() % 8);
    const DiracStructure d = random_dirac_structure(rng, n);
    const DiracMorphism m = random_strong_morphism(rng, n + 1, d);
    const DiracStructure img = forward_image(m, d);
    const auto iso = isotropic_check(img.E, img.pairing());
    CHECK(iso.residual <= 1e-8);
    CHECK(img.E.dim() == n + 1);
    CHECK(parity(img) == parity(d));
  }
}

TEST_CASE("functoriality of the forward image") {
  Rng rng(29);
  for (int t = 0; t < 25; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.integer() % 3);
    const DiracStructure d = random_dirac_structure(rng, n);
    const DiracMorphism m1 = random_strong_morphism(rng, n + 1, d);
    const DiracStructure mid = forward_image(m1, d);
    const DiracMorphism m2 = random_strong_morphism(rng, n + 2, mid);
    const DiracStructure two_step = forward_image(m2, mid);
    const DiracStructure one_step = forward_image(compose(m2, m1), d);
    CHECK(principal_angle_gap(two_step.E, one_step.E) <= 1e-8);
  }
}

TEST_CASE("standard path endpoints and continuity") {
  Rng rng(31);
  const DiracStructure d = random_dirac_structure(rng, 3);
  const DiracMorphism m = random_strong_morphism(rng, 4, d);
  const DiracStructure img = forward_image(m, d);

  const DiracStructure e0 = standard_path(m, d, 0.0);
  const DiracStructure e1 = standard_path(m, d, 1.0);
  CHECK(principal_angle_gap(
            e0.E, direct_sum(d, DiracStructure::cotangent(4)).E) <= 1e-9);
  CHECK(principal_angle_gap(
            e1.E, direct_sum(DiracStructure::cotangent(3), img).E) <= 1e-9);

  double prev_set = 0.0;
  double max_step = 0.0;
  DiracStructure prev = e0;
  for (int i = 1; i <= 100; ++i) {
    const DiracStructure cur = standard_path(m, d, i / 100.0);
    max_step = std::max(max_step, principal_angle_gap(prev.E, cur.E));
    prev = cur;
    (void)prev_set;
  }
  CHECK(max_step < 0.2);
}

TEST_CASE("two-parameter path corners and edge factorization") {
  Rng rng(37);
  const DiracStructure d = random_dirac_structure(rng, 2);
  const DiracMorphism m1 = random_strong_morphism(rng, 3, d);
  const DiracStructure mid = forward_image(m1, d);
  const DiracMorphism m2 = random_strong_morphism(rng, 4, mid);
  const DiracStructure end = forward_image(m2, mid);

  const auto corner00 = two_param_path(m1, m2, d, 0.0, 0.0);
  CHECK(principal_angle_gap(
            corner00.E,
            direct_sum(direct_sum(d, DiracStructure::cotangent(3)),
                       DiracStructure::cotangent(4))
                .E) <= 1e-9);
  const auto corner01 = two_param_path(m1, m2, d, 0.0, 1.0);
  CHECK(principal_angle_gap(
            corner01.E,
            direct_sum(direct_sum(DiracStructure::cotangent(2),
                                  DiracStructure::cotangent(3)),
                       end)
                .E) <= 1e-9);
  for (const double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto edge = two_param_path(m1, m2, d, s, 0.0);
    const auto expected =
        direct_sum(standard_path(m1, d, s), DiracStructure::cotangent(4));
    CHECK(principal_angle_gap(edge.E, expected.E) <= 1e-8);
  }
}

TEST_CASE("normalized path endpoints and midpoint") {
  Rng rng(41);
  const DiracStructure d = random_dirac_structure(rng, 3);
  CHECK(principal_angle_gap(
            normalized_path(d, 0.0).E,
            direct_sum(d, DiracStructure::cotangent(3)).E) <= 1e-9);
  CHECK(principal_angle_gap(
            normalized_path(d, 1.0).E,
            direct_sum(DiracStructure::cotangent(3), d).E) <= 1e-9);
  const DiracStructure mid = normalized_path(d, 0.5);
  CHECK(mid.E.dim() == 6);
  CHECK(isotropic_check(mid.E, mid.pairing()).isotropic);
}
