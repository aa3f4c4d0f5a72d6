#include "lagdirac/json_io.hpp"

#include <fstream>
#include <iostream>

namespace lagdirac {

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd json_to_complex_matrix(const json& j) {
  if (!j.is_array())
    throw std::invalid_argument("matrix JSON must be an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = 0;
  if (rows > 0) cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix JSON rows have uneven lengths");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const json& e = row.at(k);
      if (e.is_number())
        m(i, k) = e.get<double>();
      else if (e.is_array() && e.size() == 2)
        m(i, k) = std::complex<double>(e.at(0).get<double>(),
                                       e.at(1).get<double>());
      else
        throw std::invalid_argument(
            "matrix entries must be numbers or [re, im] pairs");
    }
  }
  return m;
}

Eigen::MatrixXd json_to_real_matrix(const json& j) {
  const Eigen::MatrixXcd m = json_to_complex_matrix(j);
  if (m.imag().norm() != 0.0)
    throw std::invalid_argument("expected a real matrix");
  return m.real();
}

json subspace_to_json(const Subspace& s) {
  json j;
  j["ambient_dim"] = s.ambient_dim();
  j["field"] = s.field() == Field::Real ? "real" : "complex";
  j["frame"] = matrix_to_json(s.frame());
  return j;
}

Subspace json_to_subspace(const json& j, double tol) {
  const Eigen::Index ambient = j.at("ambient_dim").get<Eigen::Index>();
  const std::string field_name = j.at("field").get<std::string>();
  Field field;
  if (field_name == "real")
    field = Field::Real;
  else if (field_name == "complex")
    field = Field::Complex;
  else
    throw std::invalid_argument("field must be \"real\" or \"complex\"");
  Eigen::MatrixXcd frame = json_to_complex_matrix(j.at("frame"));
  if (frame.rows() != ambient && !(frame.size() == 0 && ambient >= 0))
    throw DimensionMismatch("subspace frame does not match ambient_dim");
  if (frame.size() == 0) frame = Eigen::MatrixXcd(ambient, 0);
  return Subspace::from_span(frame, field, tol);
}

json dirac_structure_to_json(const DiracStructure& d) {
  json j;
  j["n"] = d.n;
  j["E"] = subspace_to_json(d.E);
  return j;
}

DiracStructure json_to_dirac_structure(const json& j, double tol) {
  return DiracStructure(j.at("n").get<Eigen::Index>(),
                        json_to_subspace(j.at("E"), tol));
}

json dirac_morphism_to_json(const DiracMorphism& m) {
  json j;
  j["theta"] = matrix_to_json(m.theta);
  j["omega"] = matrix_to_json(m.omega);
  return j;
}

DiracMorphism json_to_dirac_morphism(const json& j) {
  return DiracMorphism(json_to_real_matrix(j.at("theta")),
                       json_to_real_matrix(j.at("omega")));
}

json qham_to_json(const PointedQHam& p) {
  json j;
  j["g"] = matrix_to_json(p.g);
  j["T_dim"] = p.m;
  j["dPhi"] = matrix_to_json(p.dPhi);
  j["omega"] = matrix_to_json(p.omega);
  j["generators"] = matrix_to_json(p.generators);
  return j;
}

PointedQHam json_to_qham(const json& j) {
  PointedQHam p;
  p.g = json_to_complex_matrix(j.at("g"));
  p.m = j.at("T_dim").get<Eigen::Index>();
  p.dPhi = json_to_real_matrix(j.at("dPhi"));
  p.omega = json_to_real_matrix(j.at("omega"));
  p.generators = json_to_real_matrix(j.at("generators"));
  if (p.dPhi.cols() != p.m || p.omega.rows() != p.m || p.omega.cols() != p.m ||
      p.generators.rows() != p.m)
    throw DimensionMismatch("PointedQHam JSON: inconsistent T_dim");
  return p;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_output(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << std::endl;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << j.dump(2) << std::endl;
}

}  // namespace lagdirac
