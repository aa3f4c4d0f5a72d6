#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "lagdirac/json_io.hpp"
#include "lagdirac/orthogonal.hpp"
#include "lagdirac/qham.hpp"
#include "lagdirac/random.hpp"
#include "lagdirac/suite.hpp"

using namespace lagdirac;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LAGDIRAC_CLI_PATH) + " " + args;
  const int raw = std::system(cmd.c_str());
#ifdef _WIN32
  return raw;
#else
  return WEXITSTATUS(raw);
#endif
}

std::string write_temp(const json& j, const std::string& name) {
  const std::string path = std::string("/tmp/lagdirac_test_") + name + ".json";
  std::ofstream out(path);
  out << j.dump();
  return path;
}

}  // namespace

TEST_CASE("matrix JSON round trips") {
  Rng rng(1);
  const Eigen::MatrixXd m = random_matrix(rng, 3, 4);
  CHECK((json_to_real_matrix(matrix_to_json(m)) - m).norm() == 0.0);
  const Eigen::MatrixXcd c = random_complex_matrix(rng, 2, 5);
  CHECK((json_to_complex_matrix(matrix_to_json(c)) - c).norm() == 0.0);
  CHECK_THROWS(json_to_real_matrix(matrix_to_json(c)));
}

TEST_CASE("subspace, structure, morphism, qham round trips") {
  Rng rng(2);
  const DiracStructure d = random_dirac_structure(rng, 4);
  const DiracStructure d2 =
      json_to_dirac_structure(dirac_structure_to_json(d));
  CHECK(principal_angle_gap(d.E, d2.E) <= 1e-12);

  const DiracMorphism m = random_strong_morphism(rng, 5, d);
  const DiracMorphism m2 = json_to_dirac_morphism(dirac_morphism_to_json(m));
  CHECK((m.theta - m2.theta).norm() == 0.0);
  CHECK((m.omega - m2.omega).norm() == 0.0);

  const GroupContext ctx = GroupContext::su2();
  const auto cc = conjugacy_class_data(
      ctx, ctx.exp(Eigen::VectorXd(random_matrix(rng, 3, 1))));
  const PointedQHam p2 = json_to_qham(qham_to_json(cc.p));
  CHECK((p2.dPhi - cc.p.dPhi).norm() == 0.0);
  CHECK((p2.omega - cc.p.omega).norm() == 0.0);
  CHECK((p2.generators - cc.p.generators).norm() == 0.0);
  CHECK((p2.g - cc.p.g).norm() == 0.0);
}

TEST_CASE("suite runner determinism and generators") {
  SuiteParams small;
  small.trials = 4;
  small.grid = 120;
  small.hs_m = 4000;
  small.window = 3;
  const RunReport a = run_suite("dirac", 42, small);
  const RunReport b = run_suite("dirac", 42, small);
  json ja = a.to_json(), jb = b.to_json();
  ja.erase("wall_seconds");
  jb.erase("wall_seconds");
  CHECK(ja.dump() == jb.dump());
  CHECK(a.all_pass());
  CHECK_THROWS_AS(run_suite("nope", 1, small), std::invalid_argument);

  const json orth_inst = generate_instance("orthogonal", 1, 4);
  const Eigen::MatrixXd aa = json_to_real_matrix(orth_inst.at("A"));
  CHECK((aa.transpose() * aa - Eigen::MatrixXd::Identity(4, 4)).norm() <=
        1e-12);

  const json conj = generate_instance("qham-conjugacy", 3, 3);
  const auto rep = verify_qham(GroupContext::su2(),
                               json_to_qham(conj.at("instance")));
  CHECK(rep.is_dirac_morphism);
  CHECK(rep.is_strong);
  CHECK(rep.parity_ok);

  CHECK_THROWS_AS(generate_instance("bogus", 1, 4), std::invalid_argument);
}

TEST_CASE("CLI binary: exit codes and JSON output") {
  CHECK(run_cli("suite orth --seed 42 --trials 5 --out /tmp/lagdirac_suite.json") == 0);
  const json rep = load_json_file("/tmp/lagdirac_suite.json");
  CHECK(rep.at("all_pass").get<bool>());
  CHECK(rep.at("seed").get<std::uint64_t>() == 42);

  CHECK(run_cli("suite nonsense 2>/dev/null") == 2);
  CHECK(run_cli("definitely-not-a-subcommand 2>/dev/null") == 2);

  const std::string a_path = write_temp(
      generate_instance("orthogonal", 7, 3).at("A"), "orth_a");
  CHECK(run_cli("orth to-lag --A " + a_path +
                " --out /tmp/lagdirac_tolag.json") == 0);
  const json tolag = load_json_file("/tmp/lagdirac_tolag.json");
  const DiracStructure d = json_to_dirac_structure(tolag.at("structure"));
  CHECK(d.n == 3);

  const std::string inst_path = write_temp(
      generate_instance("qham-conjugacy", 9, 3), "qc");
  CHECK(run_cli("qham verify --instance " + inst_path +
                " --out /tmp/lagdirac_verify.json") == 0);
  CHECK(load_json_file("/tmp/lagdirac_verify.json").at("pass").get<bool>());

  CHECK(run_cli("spectral hs-test --A " + a_path + " --Aprime " + a_path +
                " --M 2000 --out /tmp/lagdirac_hs.json") == 0);
  CHECK_FALSE(load_json_file("/tmp/lagdirac_hs.json").at("divergent").get<bool>());
}
