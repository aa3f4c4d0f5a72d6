#include "lagdirac/suite.hpp"

#include <chrono>
#include <cmath>

#include "lagdirac/fock.hpp"
#include "lagdirac/json_io.hpp"
#include "lagdirac/qham.hpp"
#include "lagdirac/random.hpp"
#include "lagdirac/spectral.hpp"

namespace lagdirac {

namespace {
constexpr double kPi = 3.14159265358979323846;

struct Recorder {
  std::vector<CheckRecord>* records;
  void operator()(const std::string& name, double residual, double tol) {
    records->push_back(CheckRecord{name, residual <= tol, residual, tol});
  }
  void flag(const std::string& name, bool ok) {
    records->push_back(CheckRecord{name, ok, ok ? 0.0 : 1.0, 0.5});
  }
};

void dirac_suite(Rng& rng, const SuiteParams& p, Recorder rec) {
  double worst_iso = 0.0, worst_gap = 0.0;
  int parity_failures = 0;
  for (int t = 0; t < p.trials; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.integer() %
                                                         (p.nmax));
    const DiracStructure d = random_dirac_structure(rng, n, p.tol);
    const auto iso = isotropic_check(d.E, d.pairing());
    worst_iso = std::max(worst_iso, iso.residual);

    const DiracMorphism m = random_strong_morphism(rng, n + 1, d);
    const DiracStructure image = forward_image(m, d);
    const auto iso2 = isotropic_check(image.E, image.pairing());
    worst_iso = std::max(worst_iso, iso2.residual);
    if (parity(d) != parity(image)) ++parity_failures;

    // round trip through the split-coordinate dictionary
    const DiracStructure back = lag_from_orth(orth_from_lag(d), p.tol);
    worst_gap = std::max(worst_gap, principal_angle_gap(d.E, back.E));

    const DiracStructure sum = direct_sum(d, image);
    rec.flag("direct_sum dimension", sum.E.dim() == d.E.dim() + image.E.dim());
  }
  rec("lagrangian isotropy residual", worst_iso, 1e-8);
  rec("dictionary round-trip gap", worst_gap, 1e-8);
  rec.flag("parity invariance under strong morphisms", parity_failures == 0);
}

void orth_suite(Rng& rng, const SuiteParams& p, Recorder rec) {
  const Eigen::Index n = p.nmax;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  rec("E_I = V*",
      principal_angle_gap(lag_from_orth(OrthogonalPoint(id)).E,
                          DiracStructure::cotangent(n).E),
      1e-12);
  rec("E_{-I} = V",
      principal_angle_gap(lag_from_orth(OrthogonalPoint(-id)).E,
                          DiracStructure::tangent(n).E),
      1e-12);

  double worst_mult = 0.0, worst_assoc = 0.0, worst_gauge = 0.0;
  for (int t = 0; t < p.trials; ++t) {
    const OrthogonalPoint a1(random_orthogonal(rng, n));
    const OrthogonalPoint a2(random_orthogonal(rng, n));
    const OrthogonalPoint a3(random_orthogonal(rng, n));
    const DiracStructure prod = forward_image(
        multiplicative_morphism(a1, a2),
        direct_sum(lag_from_orth(a1), lag_from_orth(a2)));
    worst_mult = std::max(
        worst_mult,
        principal_angle_gap(prod.E,
                            lag_from_orth(OrthogonalPoint(a1.A * a2.A)).E));
    worst_assoc = std::max(worst_assoc, associativity_check(a1, a2, a3));
    worst_gauge = std::max(
        worst_gauge,
        gauge_formula_residual(lag_from_orth(a1),
                               SkewPoint(random_skew(rng, n, 0.3))));
  }
  rec("multiplicativity image gap", worst_mult, 1e-8);
  rec("associativity residual", worst_assoc, 1e-10);
  rec("gauge closed-form residual", worst_gauge, 1e-8);

  // exponential lift witness: e_0(xi) = (a xi, xi) is related to e(xi)
  double worst_wit = 0.0;
  for (int t = 0; t < p.trials; ++t) {
    const Eigen::MatrixXd a = random_skew(rng, n);
    const ExpLift lift = exp_lift(SkewPoint(a));
    const LinearRelation rel = morphism_relation(lift.morphism);
    for (Eigen::Index c = 0; c < n; ++c) {
      const Eigen::VectorXd xi = Eigen::VectorXd::Unit(n, c);
      Eigen::VectorXcd pair(4 * n);
      pair.head(n) = (a * xi).cast<std::complex<double>>();
      pair.segment(n, n) = xi.cast<std::complex<double>>();
      pair.segment(2 * n, n) =
          ((Eigen::MatrixXd::Identity(n, n) - lift.group_point.A.transpose()) *
           xi)
              .cast<std::complex<double>>();
      pair.tail(n) =
          (0.5 *
           (Eigen::MatrixXd::Identity(n, n) + lift.group_point.A.transpose()) *
           xi)
              .cast<std::complex<double>>();
      worst_wit = std::max(worst_wit, rel.graph.membership_residual(pair));
    }
  }
  rec("exp-lift relation witness", worst_wit, 1e-10);

  double worst_margin = 0.0;
  for (int t = 0; t < 5; ++t) {
    const Eigen::MatrixXd r = random_invertible_skew(rng, 4);
    for (int i = 0; i <= 10; ++i) {
      const auto pt = symplectic_path(SkewPoint(r), i / 10.0);
      worst_margin = std::max(worst_margin, -pt.halfplane_margin);
    }
  }
  rec("symplectic path halfplane margin", worst_margin, 1e-9);
}

void spectral_suite(Rng& rng, const SuiteParams& p, Recorder rec) {
  // skewness of the discretization
  const BoundaryOperator bu(random_unitary(rng, 2));
  const Eigen::MatrixXcd dm = discretize(bu, 64).matrix;
  rec("discretization skew-adjointness",
      (Eigen::MatrixXcd(dm) + Eigen::MatrixXcd(dm).adjoint()).norm(), 1e-13);

  // eigenvalue convergence on a rotation operator
  const double lam = 0.3;
  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(2 * kPi * lam), -std::sin(2 * kPi * lam),
      std::sin(2 * kPi * lam), std::cos(2 * kPi * lam);
  const BoundaryOperator br(rot);
  const auto lines = analytic_spectrum(br, -6, 6);
  double prev_err = 0.0;
  for (Eigen::Index big : {p.grid / 2, p.grid}) {
    const auto modes = smallest_magnitude_modes(discretize(br, big), 6);
    std::vector<double> exact;
    for (const auto& l : lines) exact.push_back(std::abs(l.eigenvalue.imag()));
    std::sort(exact.begin(), exact.end());
    double err = 0.0;
    Eigen::VectorXd mags = modes.lambdas.cwiseAbs();
    std::sort(mags.data(), mags.data() + mags.size());
    for (int i = 0; i < 6; ++i)
      err = std::max(err, std::abs(mags(i) - exact[i]) / exact[i]);
    if (big == p.grid) {
      rec("discretized eigenvalue relative error", err, 1e-3);
      rec.flag("O(h^2) convergence ratio", prev_err / std::max(err, 1e-300) >=
                                               3.5);
    }
    prev_err = err;
  }

  // kernel law at A = -I
  const BoundaryOperator bneg(Eigen::MatrixXd(-Eigen::MatrixXd::Identity(2,
                                                                         2)));
  const auto kmodes = smallest_magnitude_modes(discretize(bneg, 200), 4);
  int zero_count = 0;
  for (Eigen::Index i = 0; i < kmodes.lambdas.size(); ++i)
    if (std::abs(kmodes.lambdas(i)) <= 1e-6) ++zero_count;
  rec.flag("discrete kernel matches ker(A+I)",
           zero_count == static_cast<int>(kernel_dim(bneg)));

  // HS dichotomy
  const BoundaryOperator b1(Eigen::MatrixXd(Eigen::MatrixXd::Identity(1, 1)));
  const BoundaryOperator b2(Eigen::MatrixXd(-Eigen::MatrixXd::Identity(1, 1)));
  rec.flag("HS divergence for A != A'",
           hs_divergence_diagnostic(b1, b2, p.hs_m).divergent);
  rec.flag("HS bounded for A = A'",
           !hs_divergence_diagnostic(b1, b1, p.hs_m).divergent);

  // finite-dimensional J perturbation bound
  double worst_excess = 0.0;
  for (int t = 0; t < p.trials; ++t) {
    const Eigen::Index d = 4 + 2 * (rng.integer() % 4);
    const Eigen::MatrixXcd dd = random_antihermitian(rng, d);
    Eigen::VectorXd spec =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(
            Eigen::MatrixXcd(std::complex<double>(0, -1) * dd))
            .eigenvalues();
    if (spec.cwiseAbs().minCoeff() < 0.15) continue;
    const Eigen::MatrixXcd q = random_antihermitian(rng, d, 0.05);
    const auto [lhs, rhs] = finite_hs_bound(dd, q);
    worst_excess = std::max(worst_excess, lhs - rhs);
  }
  rec("J perturbation bound excess", worst_excess, 0.0);

  rec("integral representation residual",
      integral_representation_residual(
          Eigen::MatrixXcd(random_antihermitian(rng, 6) +
                           std::complex<double>(0, 1) *
                               Eigen::MatrixXcd::Identity(6, 6))),
      1e-6);

  // resolvent continuity at modest grid size
  double worst_res = 0.0;
  for (int t = 0; t < 3; ++t) {
    const BoundaryOperator b(random_unitary(rng, 2));
    const Eigen::MatrixXcd a = random_antihermitian(rng, 2, 0.25);
    const auto [lhs, rhs] = resolvent_continuity(b, a, 128);
    worst_res = std::max(worst_res, lhs - rhs);
  }
  rec("resolvent continuity bound excess", worst_res, 0.0);
}

void fock_suite(Rng& rng, const SuiteParams& p, Recorder rec) {
  // CAR relations, exact integer arithmetic
  const WedgeWindow w(p.window);
  bool car_ok = true;
  const std::uint64_t dim = w.dim();
  for (int k = -p.window; k <= p.window && car_ok; ++k)
    for (int l = -p.window; l <= p.window && car_ok; ++l)
      for (std::uint64_t s = 0; s < dim; ++s) {
        auto apply2 = [&](bool c1, int m1, bool c2, int m2,
                          std::uint64_t in) -> std::pair<int, std::uint64_t> {
          std::uint64_t mid = 0, fin = 0;
          const int s1 = c2 ? w.create(m2, in, &mid) : w.annihilate(m2, in, &mid);
          if (s1 == 0) return {0, 0};
          const int s2 =
              c1 ? w.create(m1, mid, &fin) : w.annihilate(m1, mid, &fin);
          return {s1 * s2, fin};
        };
        // {eps_k, iota_l} = delta_kl
        auto [sa, ma] = apply2(true, k, false, l, s);
        auto [sb, mb] = apply2(false, l, true, k, s);
        if (k == l) {
          // exactly one composition survives, returning s with sign +1
          if ((sa == 0) == (sb == 0)) car_ok = false;
          if (sa + sb != 1 || (sa != 0 ? ma : mb) != s) car_ok = false;
        } else {
          if ((sa == 0) != (sb == 0)) car_ok = false;
          if (sa != 0 && (ma != mb || sa + sb != 0)) car_ok = false;
        }
        // {eps_k, eps_l} = 0
        auto [sc, mc] = apply2(true, k, true, l, s);
        auto [sd, md] = apply2(true, l, true, k, s);
        if (sc != 0 && sd != 0 && !(mc == md && sc == -sd)) car_ok = false;
        if ((sc == 0) != (sd == 0)) car_ok = false;
      }
  rec.flag("CAR relations exact on window", car_ok);

  // Clifford relation rho(v)^2 = <v,v> I
  const Eigen::Index d = 6;
  const SpinorModule sm{complex_structure_from_skew(
      random_invertible_skew(rng, d))};
  double worst_cliff = 0.0, worst_grade = 0.0;
  const Eigen::MatrixXd gr = grading(sm);
  for (int t = 0; t < p.trials; ++t) {
    const Eigen::VectorXcd v =
        random_matrix(rng, d, 1).cast<std::complex<double>>();
    const Eigen::MatrixXcd rho = clifford_action(sm, v);
    const std::complex<double> vv = (v.transpose() * v)(0, 0);
    worst_cliff = std::max(
        worst_cliff,
        (rho * rho - vv * Eigen::MatrixXcd::Identity(rho.rows(), rho.cols()))
            .norm());
    worst_grade = std::max(worst_grade, (gr * rho + rho * gr).norm());
  }
  rec("rho(v)^2 = <v,v> residual", worst_cliff, 1e-9);
  rec("grading anticommutation residual", worst_grade, 1e-10);

  // kernel evenness and ss parity
  bool even_ok = true;
  for (int t = 0; t < p.trials; ++t) {
    const ComplexStructure j1 =
        complex_structure_from_skew(random_invertible_skew(rng, d));
    const ComplexStructure j2 =
        complex_structure_from_skew(random_invertible_skew(rng, d));
    try {
      (void)ss_parity(j1, j2);
    } catch (const OddKernel&) {
      even_ok = false;
    }
  }
  rec.flag("dim ker(J1+J2) even", even_ok);

  // weight / shift law
  bool shift_ok = true;
  for (int t = 0; t < 1000; ++t) {
    std::vector<int> added, removed;
    for (int i = 0; i < 3; ++i)
      if (rng.uniform() < 0.5)
        added.push_back(1 + static_cast<int>(rng.integer() % 8));
    for (int i = 0; i < 3; ++i)
      if (rng.uniform() < 0.5)
        removed.push_back(-static_cast<int>(rng.integer() % 8));
    const WedgeState k = WedgeState::make(added, removed);
    if (weight(shift(k)) != weight(k) + 1) shift_ok = false;
  }
  rec.flag("weight(shift(K)) = weight(K) + 1", shift_ok);

  // tau conjugation away from the edge
  bool tau_ok = true;
  for (int k = -p.window; k < p.window; ++k)
    for (std::uint64_t s = 0; s < dim; ++s) {
      std::uint64_t ts = 0;
      if (w.tau(s, &ts) == 0) continue;
      std::uint64_t lhs_m = 0, rhs_m = 0;
      std::uint64_t tmp = 0;
      const int s_in = w.create(k, s, &tmp);
      const int lhs = s_in == 0 ? 0 : s_in * w.tau(tmp, &lhs_m);
      const int rhs = w.create(k + 1, ts, &rhs_m);
      if (lhs != rhs || (lhs != 0 && lhs_m != rhs_m)) tau_ok = false;
    }
  rec.flag("tau rho(f_k) tau^{-1} = rho(f_{k+1})", tau_ok);

  // s = 1 ladder is the s = 0 ladder shifted by one
  const So2Report r0 = so2_model(0.0, p.window);
  const So2Report r1 = so2_model(1.0, p.window);
  bool ladder_ok = r1.spectral_flow == 1 &&
                   r1.min_weight == r0.min_weight + 1 &&
                   r0.weight_histogram.size() == r1.weight_histogram.size();
  if (ladder_ok)
    for (size_t i = 0; i < r0.weight_histogram.size(); ++i)
      if (r1.weight_histogram[i] != r0.weight_histogram[i])
        ladder_ok = false;
  rec.flag("SO(2) weight ladder shifts by one at s = 1", ladder_ok);
  rec("SO(2) ladder matches boundary spectrum", r1.ladder_match_residual,
      1e-9);
}

void qham_suite(Rng& rng, const SuiteParams& p, Recorder rec) {
  for (const GroupContext& ctx : {GroupContext::su2(), GroupContext::so3()}) {
    const std::string tag = ctx.tag == GroupTag::SU2 ? "su2" : "so3";
    rec(tag + " invariant inner product residual", ctx.invariance_residual(),
        1e-12);
    rec(tag + " Cartan-Dirac at e is g*",
        principal_angle_gap(
            cartan_dirac_at(ctx, Eigen::MatrixXcd::Identity(ctx.rep_dim,
                                                            ctx.rep_dim))
                .E,
            DiracStructure::cotangent(ctx.lie_dim).E),
        1e-12);

    double worst_gap = 0.0;
    bool all_ok = true;
    std::vector<PointedQHam> points;
    for (int t = 0; t < 5; ++t) {
      const Eigen::VectorXd xi =
          (0.4 + 0.4 * rng.uniform()) *
          Eigen::VectorXd(random_matrix(rng, ctx.lie_dim, 1)).normalized();
      const auto cc = conjugacy_class_data(ctx, ctx.exp(xi));
      const QHamReport rep = verify_qham(ctx, cc.p);
      all_ok = all_ok && rep.is_dirac_morphism && rep.is_strong &&
               rep.parity_ok;
      worst_gap = std::max(worst_gap, rep.image_gap);
      points.push_back(cc.p);
    }
    rec.flag(tag + " conjugacy classes verify", all_ok);
    rec(tag + " conjugacy image gap", worst_gap, 1e-9);

    const QHamReport fused =
        verify_qham(ctx, fusion(ctx, points[0], points[1]));
    rec.flag(tag + " fusion of verified points verifies",
             fused.is_dirac_morphism && fused.is_strong && fused.parity_ok);

    const Eigen::VectorXd mu =
        0.7 * Eigen::VectorXd(random_matrix(rng, ctx.lie_dim, 1));
    const QHamReport expd =
        verify_qham(ctx, exponential_point(ctx, coadjoint_orbit_data(ctx,
                                                                     mu)));
    rec.flag(tag + " exponential of a coadjoint orbit verifies",
             expd.is_dirac_morphism && expd.is_strong && expd.parity_ok);
  }

  // reduction build-then-recover
  const GroupContext ctx = GroupContext::su2();
  double worst_block = 0.0, worst_rec = 0.0;
  for (int t = 0; t < p.trials; ++t) {
    const Eigen::Index m_red = 2 + 2 * (rng.integer() % 3);
    const Eigen::MatrixXd wred = random_invertible_skew(rng, m_red);
    const Eigen::MatrixXd l =
        random_invertible(rng, m_red + 2 * ctx.lie_dim, 0.2);
    const ReductionInstance inst =
        build_reduction_instance(ctx, m_red, wred, l);
    const ReductionResult res = reduction_normal_form(inst.p);
    worst_block = std::max({worst_block, res.block_offdiag_residual,
                            res.fprime_isotropy_residual,
                            res.pairing_match_residual});
    const Eigen::MatrixXd c =
        (l.inverse() * res.vred_basis).topRows(m_red);
    worst_rec = std::max(
        worst_rec,
        (c.transpose() * wred * c - res.omega_red).norm() /
            std::max(1.0, wred.norm()));
  }
  rec("reduction block residual", worst_block, 1e-9);
  rec("reduction omega_red recovery residual", worst_rec, 1e-9);
}

}  // namespace

bool RunReport::all_pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["seed"] = seed;
  j["wall_seconds"] = wall_seconds;
  j["all_pass"] = all_pass();
  j["records"] = nlohmann::json::array();
  for (const auto& r : records)
    j["records"].push_back({{"name", r.name},
                            {"status", r.pass ? "pass" : "fail"},
                            {"residual", r.residual},
                            {"tolerance", r.tolerance}});
  return j;
}

RunReport run_suite(const std::string& name, std::uint64_t seed,
                    const SuiteParams& params) {
  RunReport report;
  report.command = "suite " + name;
  report.seed = seed;
  Recorder rec{&report.records};
  const auto start = std::chrono::steady_clock::now();
  bool known = false;
  if (name == "dirac" || name == "all") {
    Rng rng(seed);
    dirac_suite(rng, params, rec);
    known = true;
  }
  if (name == "orth" || name == "all") {
    Rng rng(seed + 1);
    orth_suite(rng, params, rec);
    known = true;
  }
  if (name == "spectral" || name == "all") {
    Rng rng(seed + 2);
    spectral_suite(rng, params, rec);
    known = true;
  }
  if (name == "fock" || name == "all") {
    Rng rng(seed + 3);
    fock_suite(rng, params, rec);
    known = true;
  }
  if (name == "qham" || name == "all") {
    Rng rng(seed + 4);
    qham_suite(rng, params, rec);
    known = true;
  }
  if (!known) throw std::invalid_argument("unknown suite: " + name);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

nlohmann::json generate_instance(const std::string& kind, std::uint64_t seed,
                                 Eigen::Index n) {
  Rng rng(seed);
  nlohmann::json j;
  j["kind"] = kind;
  j["seed"] = seed;
  if (kind == "orthogonal") {
    j["A"] = matrix_to_json(random_orthogonal(rng, n));
  } else if (kind == "skew") {
    j["a"] = matrix_to_json(random_skew(rng, n));
  } else if (kind == "dirac-morphism") {
    const DiracStructure d = random_dirac_structure(rng, n);
    j["structure"] = dirac_structure_to_json(d);
    j["morphism"] =
        dirac_morphism_to_json(random_strong_morphism(rng, n + 1, d));
  } else if (kind == "qham-conjugacy") {
    const GroupContext ctx = GroupContext::su2();
    const Eigen::VectorXd xi =
        (0.3 + rng.uniform()) *
        Eigen::VectorXd(random_matrix(rng, ctx.lie_dim, 1)).normalized();
    j["group"] = "su2";
    j["instance"] = qham_to_json(conjugacy_class_data(ctx, ctx.exp(xi)).p);
  } else if (kind == "qham-reduction") {
    const GroupContext ctx = GroupContext::su2();
    const Eigen::Index m_red = std::max<Eigen::Index>(2, n);
    const Eigen::MatrixXd wred = random_invertible_skew(rng, m_red + (m_red % 2));
    const Eigen::MatrixXd l = random_invertible(
        rng, wred.rows() + 2 * ctx.lie_dim, 0.2);
    const ReductionInstance inst =
        build_reduction_instance(ctx, wred.rows(), wred, l);
    j["group"] = "su2";
    j["instance"] = qham_to_json(inst.p);
    j["ground_truth"] = {{"omega_red", matrix_to_json(inst.planted_omega_red)},
                         {"scramble", matrix_to_json(inst.scramble)}};
  } else {
    throw std::invalid_argument("unsupported instance kind: " + kind);
  }
  return j;
}

}  // namespace lagdirac
