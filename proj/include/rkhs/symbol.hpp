#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "rkhs/multi_index.hpp"

namespace rkhs {

/// Operator-valued polynomial Phi(z) = sum_alpha Phi_alpha z^alpha with square
/// dim E x dim E coefficients.
class MultiplierSymbol {
 public:
  using Terms = std::map<MultiIndex, Eigen::MatrixXcd, GradedLess>;

  MultiplierSymbol(int num_vars, int coeff_dim);

  static MultiplierSymbol constant(int num_vars, const Eigen::MatrixXcd& value);
  static MultiplierSymbol scalar(int num_vars, const std::map<MultiIndex, std::complex<double>>& c);

  /// Adds value to the coefficient of z^alpha.
  MultiplierSymbol& add_term(const MultiIndex& alpha, const Eigen::MatrixXcd& value);
  MultiplierSymbol& add_term(const MultiIndex& alpha, std::complex<double> scalar_value);

  int num_vars() const { return n_; }
  int coeff_dim() const { return e_; }
  /// Largest |alpha| with a nonzero coefficient (0 for the zero symbol).
  int degree() const;
  const Terms& terms() const { return terms_; }

  Eigen::MatrixXcd coefficient(const MultiIndex& alpha) const;
  Eigen::MatrixXcd at_zero() const { return coefficient(MultiIndex(static_cast<std::size_t>(n_))); }
  Eigen::MatrixXcd evaluate(const std::vector<std::complex<double>>& z) const;

  MultiplierSymbol operator*(const MultiplierSymbol& o) const;
  MultiplierSymbol operator+(const MultiplierSymbol& o) const;
  MultiplierSymbol scaled(std::complex<double> s) const;
  /// W Phi W^* for a unitary W.
  MultiplierSymbol conjugated(const Eigen::MatrixXcd& w) const;
  /// phi (x) I_E for a scalar symbol.
  MultiplierSymbol tensor_identity(int coeff_dim) const;

 private:
  int n_;
  int e_;
  Terms terms_;
};

/// Largest entrywise coefficient difference between two symbols.
double max_coeff_diff(const MultiplierSymbol& a, const MultiplierSymbol& b);

/// Phi with z_axis := 0, re-indexed on the remaining n - 1 variables.
MultiplierSymbol slice_symbol(const MultiplierSymbol& phi, int axis);

}  // namespace rkhs
