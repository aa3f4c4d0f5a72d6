#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "lagdirac/fock.hpp"
#include "lagdirac/random.hpp"
#include "lagdirac/spectral.hpp"

using namespace lagdirac;

namespace {
constexpr double kPi = 3.14159265358979323846;

SpinorModule random_module(Rng& rng, Eigen::Index d) {
  return SpinorModule(complex_structure_from_skew(random_invertible_skew(rng, d)));
}
}  // namespace

TEST_CASE("clifford relation rho(v)^2 = <v,v> I") {
  Rng rng(1);
  for (Eigen::Index d : {2, 4, 6, 8}) {
    const SpinorModule s = random_module(rng, d);
    CHECK(s.wedge_dim() == (Eigen::Index(1) << (d / 2)));
    for (int t = 0; t < 12; ++t) {
      const Eigen::VectorXcd v =
          random_matrix(rng, d, 1).cast<std::complex<double>>();
      const Eigen::MatrixXcd rho = clifford_action(s, v);
      const std::complex<double> vv = (v.transpose() * v)(0, 0);
      CHECK((rho * rho -
             vv * Eigen::MatrixXcd::Identity(rho.rows(), rho.cols()))
                .norm() <= 1e-9);
    }
  }
}

TEST_CASE("CAR on the plus basis: eps-eps and eps-iota anticommutators") {
  Rng rng(2);
  const SpinorModule s = random_module(rng, 6);
  const Eigen::Index m = s.modes();
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l) {
      const Eigen::VectorXcd fk = s.plus_basis.col(k);
      const Eigen::VectorXcd fl = s.plus_basis.col(l);
      const Eigen::MatrixXcd rk = clifford_action(s, fk);
      const Eigen::MatrixXcd rl = clifford_action(s, fl);
      CHECK((rk * rl + rl * rk).norm() <= 1e-10);  // isotropic directions
      const Eigen::MatrixXcd rlc = clifford_action(s, fl.conjugate());
      const Eigen::MatrixXcd anti = rk * rlc + rlc * rk;
      const double expected = (k == l) ? 2.0 : 0.0;
      CHECK((anti - expected * Eigen::MatrixXcd::Identity(anti.rows(),
                                                          anti.cols()))
                .norm() <= 1e-10);
    }
}

TEST_CASE("grading anticommutes and splits evenly") {
  Rng rng(3);
  const SpinorModule s = random_module(rng, 6);
  const Eigen::MatrixXd g = grading(s);
  CHECK(g.diagonal().sum() == doctest::Approx(0.0));  // equal halves for d >= 2
  CHECK(g(0, 0) == doctest::Approx(1.0));             // vacuum is even
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXcd v =
        random_matrix(rng, 6, 1).cast<std::complex<double>>();
    const Eigen::MatrixXcd rho = clifford_action(s, v);
    CHECK((g * rho + rho * g).norm() <= 1e-10);
  }
}

TEST_CASE("Shale-Stinespring parity") {
  Rng rng(4);
  const ComplexStructure j1 =
      complex_structure_from_skew(random_invertible_skew(rng, 6));
  CHECK(ss_parity(j1, j1) == Parity::Even);

  Eigen::MatrixXd j(2, 2);
  j << 0, 1, -1, 0;
  const ComplexStructure jp(j), jm(Eigen::MatrixXd(-j));
  CHECK(ss_parity(jp, jm) == Parity::Odd);

  // kernel of J1 + J2 is always even-dimensional
  for (int t = 0; t < 50; ++t) {
    const ComplexStructure a =
        complex_structure_from_skew(random_invertible_skew(rng, 8));
    const ComplexStructure b =
        complex_structure_from_skew(random_invertible_skew(rng, 8));
    CHECK_NOTHROW((void)ss_parity(a, b));
  }
}

TEST_CASE("weights and the shift") {
  const WedgeState vacuum = WedgeState::make({}, {});
  CHECK(weight(vacuum) == 0);
  const WedgeState sv = shift(vacuum);
  CHECK(sv == WedgeState::make({1}, {}));
  CHECK(weight(sv) == 1);
  CHECK(shift(sv) == WedgeState::make({1, 2}, {}));
  CHECK(weight(WedgeState::make({2}, {0})) == 0);
  // shifting {2} added / {0} removed: every k in K moves up by one; the
  // hole at 0 moves to 1 (now simply "1 not added"), 2 moves to 3, and the
  // new nonpositive slot 0 is filled
  CHECK(shift(WedgeState::make({2}, {0})) == WedgeState::make({3}, {}));
  CHECK(weight(shift(WedgeState::make({2}, {0}))) == 1);

  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    std::vector<int> added, removed;
    for (int i = 0; i < 4; ++i) {
      if (rng.uniform() < 0.4)
        added.push_back(1 + static_cast<int>(rng.integer() % 9));
      if (rng.uniform() < 0.4)
        removed.push_back(-static_cast<int>(rng.integer() % 9));
    }
    const WedgeState k = WedgeState::make(added, removed);
    CHECK(weight(shift(k)) == weight(k) + 1);
  }
}

TEST_CASE("wedge window: CAR exact, f_k^2 = 0, tau conjugation") {
  const WedgeWindow w(4);
  CHECK_THROWS_AS(WedgeWindow(13), WindowTooLarge);
  const std::uint64_t dim = w.dim();
  for (int k = -4; k <= 4; ++k) {
    for (std::uint64_t s = 0; s < dim; ++s) {
      std::uint64_t m1 = 0, m2 = 0;
      const int s1 = w.create(k, s, &m1);
      if (s1 != 0) CHECK(w.create(k, m1, &m2) == 0);  // f_k^2 = 0
      // {eps_k, iota_k} = 1
      std::uint64_t a1 = 0, a2 = 0, b1 = 0, b2 = 0;
      const int sa1 = w.annihilate(k, s, &a1);
      const int sa2 = sa1 == 0 ? 0 : w.create(k, a1, &a2);
      const int sb1 = w.create(k, s, &b1);
      const int sb2 = sb1 == 0 ? 0 : w.annihilate(k, b1, &b2);
      const int total = (sa2 != 0 && a2 == s ? sa1 * sa2 : 0) +
                        (sb2 != 0 && b2 == s ? sb1 * sb2 : 0);
      CHECK(total == 1);
    }
  }
  // tau on the vacuum adds mode 1
  std::uint64_t tv = 0;
  CHECK(w.tau(w.vacuum(), &tv) == 1);
  CHECK(w.weight_of(tv) == 1);
  CHECK(w.weight_of(w.vacuum()) == 0);

  // tau rho(f_k) tau^{-1} = rho(f_{k+1}) away from the top edge
  for (int k = -4; k < 4; ++k)
    for (std::uint64_t s = 0; s < dim; ++s) {
      std::uint64_t ts = 0;
      if (w.tau(s, &ts) == 0) continue;
      std::uint64_t lm = 0, rm = 0, tmp = 0;
      const int sl1 = w.create(k, s, &tmp);
      const int sl = sl1 == 0 ? 0 : sl1 * w.tau(tmp, &lm);
      const int sr = w.create(k + 1, ts, &rm);
      CHECK(sl == sr);
      if (sl != 0) CHECK(lm == rm);
    }
}

TEST_CASE("sparse window matrices agree with the functional ops") {
  const WedgeWindow w(3);
  const auto cm = w.create_matrix(1);
  const auto am = w.annihilate_matrix(1);
  const Eigen::MatrixXd anti =
      Eigen::MatrixXd(cm * am + am * cm);
  CHECK((anti - Eigen::MatrixXd::Identity(anti.rows(), anti.cols())).norm() ==
        0.0);
  const auto tm = w.tau_matrix();
  // tau matrix columns match the functional tau
  for (std::uint64_t s = 0; s < w.dim(); ++s) {
    std::uint64_t ts = 0;
    const int sign = w.tau(s, &ts);
    const Eigen::VectorXd col = Eigen::MatrixXd(tm).col(static_cast<Eigen::Index>(s));
    if (sign == 0) {
      CHECK(col.norm() == 0.0);
    } else {
      CHECK(col(static_cast<Eigen::Index>(ts)) == doctest::Approx(sign));
      CHECK(col.cwiseAbs().sum() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("V_+ for A = 1 matches the wedge polarization descriptors") {
  // modes f_k with eigenvalue 2 pi (k - 1/2): positive for k >= 1
  const So2Report r = so2_model(0.0, 4);
  for (const int k : r.vplus_modes) CHECK(k >= 1);
  CHECK(static_cast<int>(r.vplus_modes.size()) == 4);
  CHECK(r.ladder.size() == 9);
  for (size_t i = 0; i < r.ladder.size(); ++i) {
    const int k = static_cast<int>(i) - 4;
    CHECK(r.ladder[i] == doctest::Approx(2 * kPi * (k - 0.5)).epsilon(1e-12));
  }
}

TEST_CASE("so2 model weights and spectral flow") {
  const So2Report r0 = so2_model(0.0, 5);
  CHECK(r0.spectral_flow == 0);
  CHECK_FALSE(r0.kernel_crossing);
  // symmetric histogram at s = 0
  const auto& h0 = r0.weight_histogram;
  for (size_t i = 0; i < h0.size(); ++i)
    CHECK(h0[i] == h0[h0.size() - 1 - i]);

  const So2Report rhalf = so2_model(0.5, 5);
  CHECK(rhalf.kernel_crossing);

  const So2Report r1 = so2_model(1.0, 5);
  CHECK(r1.spectral_flow == 1);
  // shifting by one unit: the same counts sit one weight higher
  CHECK(r1.min_weight == r0.min_weight + 1);
  REQUIRE(r1.weight_histogram.size() == h0.size());
  for (size_t i = 0; i < h0.size(); ++i)
    CHECK(r1.weight_histogram[i] == h0[i]);
  CHECK(r1.ladder_match_residual <= 1e-9);
}
