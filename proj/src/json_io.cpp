#include "rkhs/json_io.hpp"

#include "rkhs/error.hpp"

namespace rkhs::json_io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<double> real_list(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InvalidInput(std::string(what) + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
  return out;
}

json to_json(const MultiIndex& a) { return json(a.entries()); }

json to_json(const MultiplierSymbol& s) {
  json terms = json::array();
  for (const auto& [alpha, coeff] : s.terms()) terms.push_back({{"alpha", to_json(alpha)}, {"coeff", to_json(coeff)}});
  return {{"terms", terms}};
}

cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InvalidInput("complex values must be numbers or [re, im] pairs");
}

Eigen::MatrixXcd matrix_from(const json& j) {
  if (!j.is_array()) throw InvalidInput("matrices must be nested arrays");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Eigen::MatrixXcd(0, 0);
  if (!j[0].is_array()) throw InvalidInput("matrices must be nested arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw InvalidInput("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

MultiIndex multi_index_from(const json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw InvalidInput("multi-index must be an array of length " + std::to_string(n));
  }
  std::vector<int> e;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0) throw InvalidInput("multi-index entries must be nonnegative integers");
    e.push_back(v.get<int>());
  }
  return MultiIndex(std::move(e));
}

MultiplierSymbol symbol_from(const json& j, int num_vars, int coeff_dim) {
  MultiplierSymbol s(num_vars, coeff_dim);
  const json& terms = require(j, "terms");
  if (!terms.is_array()) throw InvalidInput("symbol terms must be an array");
  for (const auto& t : terms) {
    const MultiIndex alpha = multi_index_from(require(t, "alpha"), num_vars);
    const json& c = require(t, "coeff");
    const bool scalar = c.is_number() || (c.is_array() && c.size() == 2 && c[0].is_number());
    if (scalar) s.add_term(alpha, complex_from(c));
    else s.add_term(alpha, matrix_from(c));
  }
  return s;
}

TruncatedBasis::Ptr SpaceDescriptor::basis() const {
  if (geometry == Geometry::ball) return TruncatedBasis::ball(ball, degree_cap, coeff_dim);
  return TruncatedBasis::polydisc(n, factor, degree_cap, coeff_dim);
}

PowerSeries SpaceDescriptor::series(int L) const {
  if (geometry == Geometry::ball) return diagonal_series(ball, L);
  return diagonal_series(factor, L);
}

json SpaceDescriptor::describe() const {
  json j{{"geometry", geometry == Geometry::ball ? "ball" : "polydisc"},
         {"n", n},
         {"degree_cap", degree_cap},
         {"coeff_dim", coeff_dim}};
  j["kernel"] = geometry == Geometry::ball ? to_string(ball) : to_string(factor);
  return j;
}

SpaceDescriptor space_from(const json& j) {
  if (!j.is_object()) throw InvalidInput("space must be an object");
  SpaceDescriptor d;
  const std::string geometry = require(j, "geometry").get<std::string>();
  const std::string family = require(j, "family").get<std::string>();
  d.n = int_field(j, "n", 1);
  d.degree_cap = int_field(j, "degree_cap", 0);
  d.coeff_dim = int_field(j, "coeff_dim", 1);
  if (d.n < 1) throw InvalidInput("space needs n >= 1");
  if (geometry == "polydisc") {
    d.geometry = Geometry::polydisc;
    if (family == "hardy") d.factor = KernelSpec1D::hardy();
    else if (family == "bergman") d.factor = KernelSpec1D::bergman();
    else if (family == "dirichlet") d.factor = KernelSpec1D::dirichlet();
    else if (family == "weighted_bergman") d.factor = KernelSpec1D::weighted_bergman(require(j, "alpha").get<double>());
    else if (family == "custom") d.factor = KernelSpec1D::custom(real_list(require(j, "coeffs"), "coeffs"));
    else throw InvalidInput("unknown polydisc family \"" + family + "\"");
  } else if (geometry == "ball") {
    d.geometry = Geometry::ball;
    if (family == "hm") d.ball = BallKernelSpec::hm(d.n, int_field(j, "m", 1));
    else if (family == "drury_arveson") d.ball = BallKernelSpec::drury_arveson(d.n);
    else if (family == "custom") d.ball = BallKernelSpec::custom(d.n, real_list(require(j, "coeffs"), "coeffs"));
    else throw InvalidInput("unknown ball family \"" + family + "\"");
  } else {
    throw InvalidInput("geometry must be \"polydisc\" or \"ball\"");
  }
  return d;
}

BCLTriple triple_from(const json& j) {
  BCLTriple t;
  t.U = matrix_from(require(j, "U"));
  t.P = matrix_from(require(j, "P"));
  t.e_dim = static_cast<int>(t.U.rows());
  t.axis = int_field(j, "axis", 0);
  t.validate();
  return t;
}

json to_json(const BCLTriple& t) { return {{"U", to_json(t.U)}, {"P", to_json(t.P)}, {"axis", t.axis}}; }

Colligation colligation_from(const json& j) {
  const json& hd = require(j, "h_dims");
  std::vector<int> h_dims;
  for (const auto& v : hd) {
    if (!v.is_number_integer()) throw InvalidInput("h_dims must be integers");
    h_dims.push_back(v.get<int>());
  }
  Colligation c;
  if (j.contains("matrix")) {
    c = Colligation::from_matrix(matrix_from(j.at("matrix")), int_field(j, "e_dim", 0), h_dims);
  } else {
    c.A = matrix_from(require(j, "A"));
    c.B = matrix_from(require(j, "B"));
    c.C = matrix_from(require(j, "C"));
    c.D = matrix_from(require(j, "D"));
    c.e_dim = static_cast<int>(c.A.rows());
    c.h_dims = h_dims;
  }
  c.validate();
  return c;
}

}  // namespace rkhs::json_io
