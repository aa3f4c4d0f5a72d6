#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lagdirac {

struct CheckRecord {
  std::string name;
  bool pass;
  double residual;
  double tolerance;
};

struct RunReport {
  std::string command;
  std::uint64_t seed;
  std::vector<CheckRecord> records;
  double wall_seconds = 0.0;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

struct SuiteParams {
  Eigen::Index nmax = 6;
  Eigen::Index grid = 500;
  long long hs_m = 20000;
  int window = 5;
  int trials = 20;
  double tol = 1e-9;
};

/// Executes the per-module invariant checks; name in
/// {dirac, orth, spectral, fock, qham, all}. Deterministic for fixed seed.
RunReport run_suite(const std::string& name, std::uint64_t seed,
                    const SuiteParams& params = {});

/// kind in {orthogonal, skew, dirac-morphism, qham-conjugacy, qham-reduction}.
nlohmann::json generate_instance(const std::string& kind, std::uint64_t seed,
                                 Eigen::Index n);

}  // namespace lagdirac
