#pragma once

// JSON conversions. Complex numbers are [re, im] pairs and matrices are
// row-major nested arrays of them; a bare number is accepted wherever a
// complex value is expected.

#include <Eigen/Dense>
#include <vector>

#include "json.hpp"
#include "rkhs/dilation.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/spaces.hpp"
#include "rkhs/symbol.hpp"

namespace rkhs::json_io {

using json = nlohmann::json;

json to_json(cplx z);
json to_json(const Eigen::MatrixXcd& m);
json to_json(const Eigen::VectorXcd& v);
json to_json(const MultiIndex& a);
json to_json(const MultiplierSymbol& s);

cplx complex_from(const json& j);
Eigen::MatrixXcd matrix_from(const json& j);
MultiIndex multi_index_from(const json& j, int n);

/// {"terms": [{"alpha": [...], "coeff": complex | matrix}]}; scalar
/// coefficients are multiplied by the identity on E.
MultiplierSymbol symbol_from(const json& j, int num_vars, int coeff_dim);

struct SpaceDescriptor {
  Geometry geometry = Geometry::polydisc;
  int n = 1;
  int degree_cap = 0;
  int coeff_dim = 1;
  KernelSpec1D factor;   // polydisc
  BallKernelSpec ball;   // ball

  TruncatedBasis::Ptr basis() const;
  PowerSeries series(int L) const;
  json describe() const;
};

SpaceDescriptor space_from(const json& j);

BCLTriple triple_from(const json& j);
json to_json(const BCLTriple& t);

/// Either {"matrix", "e_dim", "h_dims"} or {"A", "B", "C", "D", "h_dims"}.
Colligation colligation_from(const json& j);

}  // namespace rkhs::json_io
