#pragma once

#include <nlohmann/json.hpp>

#include "lagdirac/dirac.hpp"
#include "lagdirac/qham.hpp"
#include "lagdirac/spectral.hpp"

namespace lagdirac {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m);
/// Complex entries are emitted as [re, im] pairs.
json matrix_to_json(const Eigen::MatrixXcd& m);
/// Accepts plain numbers or [re, im] pairs per entry.
Eigen::MatrixXcd json_to_complex_matrix(const json& j);
/// Rejects entries with a nonzero imaginary part.
Eigen::MatrixXd json_to_real_matrix(const json& j);

json subspace_to_json(const Subspace& s);
Subspace json_to_subspace(const json& j, double tol = kDefaultTol);

json dirac_structure_to_json(const DiracStructure& d);
DiracStructure json_to_dirac_structure(const json& j,
                                       double tol = kDefaultTol);

json dirac_morphism_to_json(const DiracMorphism& m);
DiracMorphism json_to_dirac_morphism(const json& j);

json qham_to_json(const PointedQHam& p);
PointedQHam json_to_qham(const json& j);

json load_json_file(const std::string& path);
void write_json_output(const json& j, const std::string& out_path);

}  // namespace lagdirac
