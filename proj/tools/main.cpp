#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "lagdirac/fock.hpp"
#include "lagdirac/json_io.hpp"
#include "lagdirac/orthogonal.hpp"
#include "lagdirac/qham.hpp"
#include "lagdirac/random.hpp"
#include "lagdirac/spectral.hpp"
#include "lagdirac/suite.hpp"

namespace {

using lagdirac::json;

struct Common {
  double tol = lagdirac::kDefaultTol;
  std::uint64_t seed = 0;
  std::string out = "-";
};

void add_common(CLI::App* cmd, Common* c) {
  cmd->add_option("--tol", c->tol, "numerical tolerance");
  cmd->add_option("--seed", c->seed, "RNG seed");
  cmd->add_option("--out", c->out, "output path, '-' for stdout");
  cmd->add_flag("--json", "emit JSON (always on; accepted for compatibility)");
}

lagdirac::GroupContext context_for(const json& j) {
  const std::string name = j.value("group", "su2");
  if (name == "su2") return lagdirac::GroupContext::su2();
  if (name == "so3") return lagdirac::GroupContext::so3();
  throw CLI::ValidationError("group must be su2 or so3");
}

const char* parity_name(lagdirac::Parity p) {
  return p == lagdirac::Parity::Even ? "even" : "odd";
}

json qham_report_json(const lagdirac::QHamReport& r) {
  return {{"is_dirac_morphism", r.is_dirac_morphism},
          {"is_strong", r.is_strong},
          {"parity_ok", r.parity_ok},
          {"image_gap", r.image_gap},
          {"image_dim", r.image_dim},
          {"pass", r.is_dirac_morphism && r.is_strong && r.parity_ok}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac-structure linear algebra toolkit"};
  app.require_subcommand(1);

  Common c;
  json output;
  int status = 0;

  // dirac ------------------------------------------------------------------
  auto* dirac = app.add_subcommand("dirac", "Dirac structures and morphisms");
  dirac->require_subcommand(1);
  {
    auto* img = dirac->add_subcommand("image", "forward image of a structure");
    auto s_path = std::make_shared<std::string>();
    auto m_path = std::make_shared<std::string>();
    img->add_option("--structure", *s_path, "DiracStructure JSON")->required();
    img->add_option("--morphism", *m_path, "DiracMorphism JSON")->required();
    add_common(img, &c);
    img->callback([&, s_path, m_path] {
      const auto d = lagdirac::json_to_dirac_structure(
          lagdirac::load_json_file(*s_path), c.tol);
      const auto m = lagdirac::json_to_dirac_morphism(
          lagdirac::load_json_file(*m_path));
      const auto image = lagdirac::forward_image(m, d);
      const auto iso = lagdirac::isotropic_check(image.E, image.pairing());
      output = {{"command", "dirac image"},
                {"image", lagdirac::dirac_structure_to_json(image)},
                {"strong", lagdirac::is_strong(m, d)},
                {"source_parity", parity_name(lagdirac::parity(d))},
                {"image_parity", parity_name(lagdirac::parity(image))},
                {"isotropy_residual", iso.residual}};
    });

    auto* par = dirac->add_subcommand("parity", "parity of a structure");
    auto p_path = std::make_shared<std::string>();
    par->add_option("--structure", *p_path, "DiracStructure JSON")->required();
    add_common(par, &c);
    par->callback([&, p_path] {
      const auto d = lagdirac::json_to_dirac_structure(
          lagdirac::load_json_file(*p_path), c.tol);
      const auto iso = lagdirac::isotropic_check(d.E, d.pairing());
      output = {{"command", "dirac parity"},
                {"n", d.n},
                {"dim", d.E.dim()},
                {"parity", parity_name(lagdirac::parity(d))},
                {"isotropy_residual", iso.residual}};
    });
  }

  // orth -------------------------------------------------------------------
  auto* orth = app.add_subcommand(
      "orth", "orthogonal-group / Lagrangian dictionary");
  orth->require_subcommand(1);
  {
    auto* tolag = orth->add_subcommand("to-lag", "E_A from A");
    auto a_path = std::make_shared<std::string>();
    tolag->add_option("--A", *a_path, "orthogonal matrix JSON")->required();
    add_common(tolag, &c);
    tolag->callback([&, a_path] {
      const lagdirac::OrthogonalPoint a(
          lagdirac::json_to_real_matrix(lagdirac::load_json_file(*a_path)),
          c.tol);
      const auto d = lagdirac::lag_from_orth(a, c.tol);
      output = {{"command", "orth to-lag"},
                {"structure", lagdirac::dirac_structure_to_json(d)},
                {"parity", parity_name(lagdirac::parity(d))},
                {"det", a.A.determinant()}};
    });

    auto* fromlag = orth->add_subcommand("from-lag", "A from a Lagrangian");
    auto s_path = std::make_shared<std::string>();
    fromlag->add_option("--structure", *s_path, "DiracStructure JSON")
        ->required();
    add_common(fromlag, &c);
    fromlag->callback([&, s_path] {
      const auto d = lagdirac::json_to_dirac_structure(
          lagdirac::load_json_file(*s_path), c.tol);
      const auto a = lagdirac::orth_from_lag(d);
      const double ortho_res =
          (a.A.transpose() * a.A -
           Eigen::MatrixXd::Identity(a.n(), a.n()))
              .norm();
      const double gap = lagdirac::principal_angle_gap(
          d.E, lagdirac::lag_from_orth(a, c.tol).E);
      output = {{"command", "orth from-lag"},
                {"A", lagdirac::matrix_to_json(a.A)},
                {"orthogonality_residual", ortho_res},
                {"round_trip_gap", gap},
                {"parity", parity_name(lagdirac::parity(d))}};
    });

    auto* lift = orth->add_subcommand("exp-lift", "exponential lift of a skew");
    auto sk_path = std::make_shared<std::string>();
    lift->add_option("--a", *sk_path, "skew matrix JSON")->required();
    add_common(lift, &c);
    lift->callback([&, sk_path] {
      const lagdirac::SkewPoint a(
          lagdirac::json_to_real_matrix(lagdirac::load_json_file(*sk_path)),
          c.tol);
      const auto l = lagdirac::exp_lift(a, c.tol);
      output = {{"command", "orth exp-lift"},
                {"A", lagdirac::matrix_to_json(l.group_point.A)},
                {"theta", lagdirac::matrix_to_json(l.morphism.theta)},
                {"omega", lagdirac::matrix_to_json(l.morphism.omega)},
                {"strong", l.strong},
                {"smallest_singular_value", l.smallest_singular_value}};
    });

    auto* gauge = orth->add_subcommand("gauge", "gauge transform of E_A");
    auto ga_path = std::make_shared<std::string>();
    auto gw_path = std::make_shared<std::string>();
    gauge->add_option("--A", *ga_path, "orthogonal matrix JSON")->required();
    gauge->add_option("--omega", *gw_path, "skew matrix JSON")->required();
    add_common(gauge, &c);
    gauge->callback([&, ga_path, gw_path] {
      const lagdirac::OrthogonalPoint a(
          lagdirac::json_to_real_matrix(lagdirac::load_json_file(*ga_path)),
          c.tol);
      const lagdirac::SkewPoint w(
          lagdirac::json_to_real_matrix(lagdirac::load_json_file(*gw_path)),
          c.tol);
      const auto d = lagdirac::lag_from_orth(a, c.tol);
      const auto shifted = lagdirac::gauge_transform(d, w);
      output = {{"command", "orth gauge"},
                {"A_omega",
                 lagdirac::matrix_to_json(lagdirac::orth_from_lag(shifted).A)},
                {"closed_form_residual",
                 lagdirac::gauge_formula_residual(d, w)},
                {"parity", parity_name(lagdirac::parity(shifted))}};
    });
  }

  // spectral ---------------------------------------------------------------
  auto* spectral = app.add_subcommand("spectral", "boundary-operator spectra");
  spectral->require_subcommand(1);
  {
    auto* analytic = spectral->add_subcommand("analytic", "eigenvalue ladder");
    auto a_path = std::make_shared<std::string>();
    auto kmin = std::make_shared<int>(-5);
    auto kmax = std::make_shared<int>(5);
    analytic->add_option("--A", *a_path, "boundary matrix JSON")->required();
    analytic->add_option("--kmin", *kmin, "lowest ladder index");
    analytic->add_option("--kmax", *kmax, "highest ladder index");
    add_common(analytic, &c);
    analytic->callback([&, a_path, kmin, kmax] {
      const lagdirac::BoundaryOperator b(
          lagdirac::json_to_complex_matrix(lagdirac::load_json_file(*a_path)),
          c.tol);
      json lines = json::array();
      for (const auto& l : lagdirac::analytic_spectrum(b, *kmin, *kmax))
        lines.push_back({{"imag", l.eigenvalue.imag()},
                         {"lambda", l.lambda},
                         {"k", l.k},
                         {"r", l.r}});
      output = {{"command", "spectral analytic"},
                {"kernel_dim", lagdirac::kernel_dim(b)},
                {"lines", std::move(lines)}};
    });

    auto* disc = spectral->add_subcommand("discretize", "midpoint scheme");
    auto d_path = std::make_shared<std::string>();
    auto npts = std::make_shared<Eigen::Index>(2000);
    auto nev = std::make_shared<int>(10);
    auto report = std::make_shared<std::string>();
    disc->add_option("--A", *d_path, "boundary matrix JSON")->required();
    disc->add_option("--N", *npts, "grid size");
    disc->add_option("--modes", *nev, "eigenpairs to extract");
    disc->add_option("--report", *report, "alias for --out");
    add_common(disc, &c);
    disc->callback([&, d_path, npts, nev, report] {
      if (!report->empty()) c.out = *report;
      const lagdirac::BoundaryOperator b(
          lagdirac::json_to_complex_matrix(lagdirac::load_json_file(*d_path)),
          c.tol);
      const auto op = lagdirac::discretize(b, *npts);
      const auto modes = lagdirac::smallest_magnitude_modes(op, *nev);
      json evals = json::array(), residuals = json::array();
      for (Eigen::Index i = 0; i < modes.lambdas.size(); ++i) {
        evals.push_back(modes.lambdas(i));
        residuals.push_back(modes.residuals(i));
      }
      json exact = json::array();
      for (const auto& l : lagdirac::analytic_spectrum(b, -(*nev), *nev))
        exact.push_back(l.eigenvalue.imag());
      output = {{"command", "spectral discretize"},
                {"N", op.N},
                {"h", op.h},
                {"eigenvalues_imag", std::move(evals)},
                {"residuals", std::move(residuals)},
                {"analytic_imag", std::move(exact)}};
    });

    auto* hs = spectral->add_subcommand("hs-test", "HS dichotomy diagnostic");
    auto h_path = std::make_shared<std::string>();
    auto hp_path = std::make_shared<std::string>();
    auto big_m = std::make_shared<long long>(100000);
    hs->add_option("--A", *h_path, "boundary matrix JSON")->required();
    hs->add_option("--Aprime", *hp_path, "second boundary matrix JSON")
        ->required();
    hs->add_option("--M", *big_m, "truncation index");
    add_common(hs, &c);
    hs->callback([&, h_path, hp_path, big_m] {
      const lagdirac::BoundaryOperator b1(
          lagdirac::json_to_complex_matrix(lagdirac::load_json_file(*h_path)),
          c.tol);
      const lagdirac::BoundaryOperator b2(
          lagdirac::json_to_complex_matrix(lagdirac::load_json_file(*hp_path)),
          c.tol);
      const auto diag = lagdirac::hs_divergence_diagnostic(b1, b2, *big_m);
      output = {{"command", "spectral hs-test"},
                {"checkpoints", diag.checkpoints},
                {"partial_sums", diag.partial_sums},
                {"slope", diag.slope},
                {"threshold", diag.threshold},
                {"divergent", diag.divergent}};
    });
  }

  // fock -------------------------------------------------------------------
  auto* fock = app.add_subcommand("fock", "Clifford / wedge modules");
  fock->require_subcommand(1);
  {
    auto* car = fock->add_subcommand("car-check", "CAR relations on a window");
    auto window = std::make_shared<int>(6);
    car->add_option("--window", *window, "half-width N of the mode window");
    add_common(car, &c);
    car->callback([&, window] {
      const auto report =
          lagdirac::run_suite("fock", c.seed, [&] {
            lagdirac::SuiteParams p;
            p.window = *window;
            return p;
          }());
      output = report.to_json();
      output["command"] = "fock car-check";
      if (!report.all_pass()) status = 1;
    });

    auto* weights = fock->add_subcommand("weights", "SO(2) weight ladder");
    auto s_val = std::make_shared<double>(0.0);
    auto w_win = std::make_shared<int>(8);
    weights->add_option("--s", *s_val, "rotation parameter");
    weights->add_option("--window", *w_win, "half-width N of the mode window");
    add_common(weights, &c);
    weights->callback([&, s_val, w_win] {
      const auto r = lagdirac::so2_model(*s_val, *w_win, c.tol);
      output = {{"command", "fock weights"},
                {"s", r.s},
                {"window", r.window},
                {"ladder", r.ladder},
                {"vplus_modes", r.vplus_modes},
                {"spectral_flow", r.spectral_flow},
                {"kernel_crossing", r.kernel_crossing},
                {"min_weight", r.min_weight},
                {"weight_histogram", r.weight_histogram},
                {"ladder_match_residual", r.ladder_match_residual}};
    });
  }

  // qham -------------------------------------------------------------------
  auto* qham = app.add_subcommand("qham", "pointwise q-Hamiltonian checks");
  qham->require_subcommand(1);
  {
    auto* verify = qham->add_subcommand("verify", "verify one instance");
    auto i_path = std::make_shared<std::string>();
    verify->add_option("--instance", *i_path, "PointedQHam JSON")->required();
    add_common(verify, &c);
    verify->callback([&, i_path] {
      const json j = lagdirac::load_json_file(*i_path);
      const auto ctx = context_for(j);
      const auto p = lagdirac::json_to_qham(j.at("instance"));
      const auto r = lagdirac::verify_qham(ctx, p, c.tol);
      output = qham_report_json(r);
      output["command"] = "qham verify";
      if (!output["pass"].get<bool>()) status = 1;
    });

    auto* fuse = qham->add_subcommand("fuse", "fuse two instances");
    auto a_path = std::make_shared<std::string>();
    auto b_path = std::make_shared<std::string>();
    fuse->add_option("--a", *a_path, "first PointedQHam JSON")->required();
    fuse->add_option("--b", *b_path, "second PointedQHam JSON")->required();
    add_common(fuse, &c);
    fuse->callback([&, a_path, b_path] {
      const json ja = lagdirac::load_json_file(*a_path);
      const json jb = lagdirac::load_json_file(*b_path);
      const auto ctx = context_for(ja);
      const auto fused =
          lagdirac::fusion(ctx, lagdirac::json_to_qham(ja.at("instance")),
                           lagdirac::json_to_qham(jb.at("instance")));
      const auto r = lagdirac::verify_qham(ctx, fused, c.tol);
      output = {{"command", "qham fuse"},
                {"fused", lagdirac::qham_to_json(fused)},
                {"report", qham_report_json(r)}};
      if (!(r.is_dirac_morphism && r.is_strong && r.parity_ok)) status = 1;
    });

    auto* reduce = qham->add_subcommand("reduce", "reduction normal form");
    auto r_path = std::make_shared<std::string>();
    reduce->add_option("--instance", *r_path, "PointedQHam JSON")->required();
    add_common(reduce, &c);
    reduce->callback([&, r_path] {
      const json j = lagdirac::load_json_file(*r_path);
      const auto p = lagdirac::json_to_qham(j.at("instance"));
      const auto r = lagdirac::reduction_normal_form(p, c.tol);
      output = {{"command", "qham reduce"},
                {"omega_red", lagdirac::matrix_to_json(r.omega_red)},
                {"vred_basis", lagdirac::matrix_to_json(r.vred_basis)},
                {"fprime_isotropy_residual", r.fprime_isotropy_residual},
                {"block_offdiag_residual", r.block_offdiag_residual},
                {"pairing_match_residual", r.pairing_match_residual}};
    });
  }

  // suite ------------------------------------------------------------------
  auto* suite = app.add_subcommand("suite", "seeded property suites");
  {
    auto name = std::make_shared<std::string>();
    auto params = std::make_shared<lagdirac::SuiteParams>();
    suite->add_option("name", *name, "dirac|orth|spectral|fock|qham|all")
        ->required();
    suite->add_option("--nmax", params->nmax, "max ambient dimension");
    suite->add_option("--grid", params->grid, "discretization size");
    suite->add_option("--hs-m", params->hs_m, "HS truncation index");
    suite->add_option("--window", params->window, "wedge window half-width");
    suite->add_option("--trials", params->trials, "trials per property");
    add_common(suite, &c);
    suite->callback([&, name, params] {
      params->tol = c.tol;
      const auto report = lagdirac::run_suite(*name, c.seed, *params);
      output = report.to_json();
      if (!report.all_pass()) status = 1;
    });
  }

  // gen --------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "seeded instance generators");
  {
    auto kind = std::make_shared<std::string>();
    auto n = std::make_shared<Eigen::Index>(4);
    gen->add_option("kind", *kind,
                    "orthogonal|skew|dirac-morphism|qham-conjugacy|"
                    "qham-reduction")
        ->required();
    gen->add_option("--n", *n, "instance dimension");
    add_common(gen, &c);
    gen->callback(
        [&, kind, n] { output = lagdirac::generate_instance(*kind, c.seed, *n); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }

  try {
    lagdirac::write_json_output(output, c.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return status;
}
