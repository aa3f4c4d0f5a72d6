#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "lagdirac/qham.hpp"
#include "lagdirac/random.hpp"

using namespace lagdirac;

namespace {
constexpr double kPi = 3.14159265358979323846;

bool passes(const QHamReport& r) {
  return r.is_dirac_morphism && r.is_strong && r.parity_ok;
}
}  // namespace

TEST_CASE("group contexts: invariance, orthogonality of Ad, coordinates") {
  for (const GroupContext& ctx : {GroupContext::su2(), GroupContext::so3()}) {
    CHECK(ctx.invariance_residual() <= 1e-12);
    // basis is B-orthonormal
    for (Eigen::Index i = 0; i < ctx.lie_dim; ++i) {
      const Eigen::VectorXd e = ctx.to_coords(ctx.basis[i]);
      CHECK((e - Eigen::VectorXd::Unit(ctx.lie_dim, i)).norm() <= 1e-12);
    }
    Rng rng(1);
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd xi = random_matrix(rng, ctx.lie_dim, 1);
      const auto ad = adjoint(ctx, ctx.exp(xi));
      CHECK((ad.A.transpose() * ad.A -
             Eigen::MatrixXd::Identity(ctx.lie_dim, ctx.lie_dim))
                .norm() <= 1e-9);
      CHECK(ad.A.determinant() == doctest::Approx(1.0).epsilon(1e-9));
    }
    // Ad_e = I
    const auto ide = adjoint(
        ctx, Eigen::MatrixXcd::Identity(ctx.rep_dim, ctx.rep_dim));
    CHECK((ide.A - Eigen::MatrixXd::Identity(ctx.lie_dim, ctx.lie_dim))
              .norm() <= 1e-12);
  }
}

TEST_CASE("su2 adjoint of a diagonal element is rotation by 2 theta") {
  const GroupContext ctx = GroupContext::su2();
  const double theta = 0.7;
  Eigen::MatrixXcd g(2, 2);
  g.setZero();
  g(0, 0) = std::exp(std::complex<double>(0, theta));
  g(1, 1) = std::exp(std::complex<double>(0, -theta));
  const auto ad = adjoint(ctx, g);
  // the axis (e_3 direction) is fixed and the perpendicular plane rotates
  // by 2 theta
  Eigen::VectorXd axis = Eigen::VectorXd::Unit(3, 2);
  CHECK((ad.A * axis - axis).norm() <= 1e-10);
  CHECK(ad.A.trace() == doctest::Approx(1.0 + 2.0 * std::cos(2 * theta))
                            .epsilon(1e-10));
}

TEST_CASE("so3 adjoint is the element itself") {
  const GroupContext ctx = GroupContext::so3();
  Rng rng(2);
  const Eigen::VectorXd xi = random_matrix(rng, 3, 1);
  const Eigen::MatrixXcd g = ctx.exp(xi);
  const auto ad = adjoint(ctx, g);
  CHECK((ad.A.cast<std::complex<double>>() - g).norm() <= 1e-9);
}

TEST_CASE("Cartan-Dirac structure at e is g*") {
  for (const GroupContext& ctx : {GroupContext::su2(), GroupContext::so3()}) {
    const auto d = cartan_dirac_at(
        ctx, Eigen::MatrixXcd::Identity(ctx.rep_dim, ctx.rep_dim));
    CHECK(principal_angle_gap(d.E, DiracStructure::cotangent(ctx.lie_dim).E) <=
          1e-12);
  }
  // two spanning descriptions agree on random group elements
  const GroupContext ctx = GroupContext::su2();
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXcd g = ctx.exp(Eigen::VectorXd(random_matrix(rng, 3, 1)));
    const auto d = cartan_dirac_at(ctx, g);
    const Eigen::MatrixXd a = adjoint(ctx, g).A;
    Eigen::MatrixXd span(6, 3);
    span.topRows(3) = Eigen::MatrixXd::Identity(3, 3) - a.transpose();
    span.bottomRows(3) = 0.5 * (Eigen::MatrixXd::Identity(3, 3) + a.transpose());
    CHECK(principal_angle_gap(d.E, Subspace::from_span(span)) <= 1e-10);
  }
}

TEST_CASE("conjugacy classes verify as q-Hamiltonian points") {
  Rng rng(4);
  for (const GroupContext& ctx : {GroupContext::su2(), GroupContext::so3()}) {
    // trivial point at e
    const auto at_e = conjugacy_class_data(
        ctx, Eigen::MatrixXcd::Identity(ctx.rep_dim, ctx.rep_dim));
    CHECK(at_e.p.m == 0);
    CHECK(passes(verify_qham(ctx, at_e.p)));

    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd xi =
          (0.3 + rng.uniform()) *
          Eigen::VectorXd(random_matrix(rng, ctx.lie_dim, 1)).normalized();
      const auto cc = conjugacy_class_data(ctx, ctx.exp(xi));
      CHECK(cc.moment_residual <= 1e-10);
      const auto rep = verify_qham(ctx, cc.p);
      CHECK(rep.image_gap <= 1e-9);
      CHECK(passes(rep));
      CHECK(cc.p.m == 2);  // generic classes in rank-1 groups are 2-spheres
    }
  }
  // SO(3) rotation by pi still has det(Ad) = 1 and an even class
  const GroupContext so3 = GroupContext::so3();
  const auto half_turn =
      conjugacy_class_data(so3, so3.exp(kPi * Eigen::VectorXd::Unit(3, 2)));
  const auto rep = verify_qham(so3, half_turn.p);
  CHECK(rep.parity_ok);
  CHECK(passes(rep));
}

TEST_CASE("verify_qham failure modes") {
  const GroupContext ctx = GroupContext::su2();
  Rng rng(5);
  const Eigen::MatrixXcd g = ctx.exp(Eigen::VectorXd(random_matrix(rng, 3, 1)));
  // omega = 0, dPhi = 0 cannot be strong
  PointedQHam junk;
  junk.g = g;
  junk.m = 2;
  junk.dPhi = Eigen::MatrixXd::Zero(3, 2);
  junk.omega = Eigen::MatrixXd::Zero(2, 2);
  junk.generators = Eigen::MatrixXd::Zero(2, 3);
  const auto rep = verify_qham(ctx, junk);
  CHECK_FALSE(rep.is_strong);

  // odd tangent dimension with det(Ad_g) = 1 violates the parity law
  PointedQHam odd = junk;
  odd.m = 1;
  odd.dPhi = Eigen::MatrixXd::Zero(3, 1);
  odd.omega = Eigen::MatrixXd::Zero(1, 1);
  odd.generators = Eigen::MatrixXd::Zero(1, 3);
  CHECK_FALSE(verify_qham(ctx, odd).parity_ok);
}

TEST_CASE("fusion: unit, verification, associativity") {
  const GroupContext ctx = GroupContext::su2();
  Rng rng(6);
  auto cc = [&](double scale) {
    const Eigen::VectorXd xi =
        scale * Eigen::VectorXd(random_matrix(rng, 3, 1)).normalized();
    return conjugacy_class_data(ctx, ctx.exp(xi)).p;
  };
  const PointedQHam p1 = cc(0.9), p2 = cc(1.3), p3 = cc(0.6);

  // fusing with the trivial point changes nothing
  const auto trivial = conjugacy_class_data(
      ctx, Eigen::MatrixXcd::Identity(2, 2));
  const auto unit = fusion(ctx, p1, trivial.p);
  CHECK((unit.g - p1.g).norm() <= 1e-12);
  CHECK((unit.dPhi - p1.dPhi).norm() <= 1e-10);
  CHECK((unit.omega - p1.omega).norm() <= 1e-10);

  const auto fused = fusion(ctx, p1, p2);
  CHECK((fused.g - p1.g * p2.g).norm() <= 1e-12);
  CHECK(passes(verify_qham(ctx, fused)));

  const auto left = fusion(ctx, fusion(ctx, p1, p2), p3);
  const auto right = fusion(ctx, p1, fusion(ctx, p2, p3));
  CHECK((left.g - right.g).norm() <= 1e-12);
  CHECK((left.dPhi - right.dPhi).norm() <= 1e-10);
  CHECK((left.omega - right.omega).norm() <= 1e-10);
}

TEST_CASE("coadjoint orbits and the exponential point") {
  const GroupContext ctx = GroupContext::su2();
  Rng rng(7);

  // mu = 0: empty orbit, exponential lands at e
  const auto orbit0 = coadjoint_orbit_data(ctx, Eigen::VectorXd::Zero(3));
  CHECK(orbit0.m == 0);
  const auto p0 = exponential_point(ctx, orbit0);
  CHECK((p0.g - Eigen::MatrixXcd::Identity(2, 2)).norm() <= 1e-12);
  CHECK(passes(verify_qham(ctx, p0)));

  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd mu =
        (0.2 + rng.uniform()) *
        Eigen::VectorXd(random_matrix(rng, 3, 1)).normalized();
    const auto orbit = coadjoint_orbit_data(ctx, mu);
    CHECK(orbit.m == 2);
    const auto p = exponential_point(ctx, orbit);
    CHECK(passes(verify_qham(ctx, p)));
  }

  // ad_mu eigenvalue 2 pi makes exp singular
  const Eigen::VectorXd big = 2 * kPi * Eigen::VectorXd::Unit(3, 2);
  CHECK_THROWS_AS(exponential_point(ctx, coadjoint_orbit_data(ctx, big)),
                  NotRegular);
}

TEST_CASE("reduction build-then-recover") {
  Rng rng(8);
  for (const GroupContext& ctx : {GroupContext::su2(), GroupContext::so3()}) {
    for (int t = 0; t < 20; ++t) {
      const Eigen::Index m_red = 2 + 2 * (rng.integer() % 3);
      const Eigen::MatrixXd wred = random_invertible_skew(rng, m_red);
      const Eigen::MatrixXd l =
          random_invertible(rng, m_red + 2 * ctx.lie_dim, 0.2);
      const ReductionInstance inst =
          build_reduction_instance(ctx, m_red, wred, l);
      const ReductionResult res = reduction_normal_form(inst.p);
      CHECK(res.fprime_isotropy_residual <= 1e-10);
      CHECK(res.block_offdiag_residual <= 1e-9);
      CHECK(res.pairing_match_residual <= 1e-9);
      const Eigen::MatrixXd c =
          (l.inverse() * res.vred_basis).topRows(m_red);
      CHECK((c.transpose() * wred * c - res.omega_red).norm() /
                std::max(1.0, wred.norm()) <=
            1e-9);
    }
  }
}

TEST_CASE("reduction error modes and the shifting trick") {
  const GroupContext ctx = GroupContext::su2();
  Rng rng(9);
  const Eigen::MatrixXd wred = random_invertible_skew(rng, 4);
  const Eigen::MatrixXd l = random_invertible(rng, 10, 0.2);
  const ReductionInstance inst = build_reduction_instance(ctx, 4, wred, l);

  // breaking surjectivity of dPhi raises NotRegular
  PointedQHam broken = inst.p;
  broken.dPhi.setZero();
  CHECK_THROWS_AS(reduction_normal_form(broken), NotRegular);

  PointedQHam unfree = inst.p;
  unfree.generators.setZero();
  CHECK_THROWS_AS(reduction_normal_form(unfree), NotFree);

  // shifted reduction at e agrees with the direct one
  const ReductionResult direct = reduction_normal_form(inst.p);
  const ReductionResult shifted = shifted_reduction(
      ctx, inst.p, Eigen::MatrixXcd::Identity(2, 2));
  CHECK(shifted.fprime_isotropy_residual <= 1e-9);
  CHECK(shifted.block_offdiag_residual <= 1e-8);
  CHECK(direct.omega_red.rows() == shifted.omega_red.rows());
}
