#include "rkhs/symbol.hpp"

#include "rkhs/error.hpp"
#include "rkhs/spaces.hpp"

namespace rkhs {

MultiplierSymbol::MultiplierSymbol(int num_vars, int coeff_dim) : n_(num_vars), e_(coeff_dim) {
  if (num_vars < 1) throw InvalidInput("symbol needs at least one variable");
  if (coeff_dim < 1) throw InvalidInput("symbol coefficient dimension must be positive");
}

MultiplierSymbol MultiplierSymbol::constant(int num_vars, const Eigen::MatrixXcd& value) {
  if (value.rows() != value.cols()) throw InvalidInput("symbol coefficients must be square");
  MultiplierSymbol s(num_vars, static_cast<int>(value.rows()));
  s.add_term(MultiIndex(static_cast<std::size_t>(num_vars)), value);
  return s;
}

MultiplierSymbol MultiplierSymbol::scalar(int num_vars,
                                          const std::map<MultiIndex, std::complex<double>>& c) {
  MultiplierSymbol s(num_vars, 1);
  for (const auto& [alpha, v] : c) s.add_term(alpha, v);
  return s;
}

MultiplierSymbol& MultiplierSymbol::add_term(const MultiIndex& alpha,
                                             const Eigen::MatrixXcd& value) {
  if (alpha.size() != static_cast<std::size_t>(n_)) {
    throw InvalidInput("multi-index " + alpha.str() + " has the wrong number of variables");
  }
  for (int v : alpha.entries())
    if (v < 0) throw InvalidInput("negative exponent in " + alpha.str());
  if (value.rows() != e_ || value.cols() != e_) {
    throw InvalidInput("coefficient of " + alpha.str() + " has the wrong shape");
  }
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(alpha, value);
  } else {
    it->second += value;
  }
  return *this;
}

MultiplierSymbol& MultiplierSymbol::add_term(const MultiIndex& alpha,
                                             std::complex<double> scalar_value) {
  return add_term(alpha, Eigen::MatrixXcd::Identity(e_, e_) * scalar_value);
}

int MultiplierSymbol::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_)
    if (c.cwiseAbs().maxCoeff() > 0.0) d = std::max(d, alpha.total());
  return d;
}

Eigen::MatrixXcd MultiplierSymbol::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  if (it == terms_.end()) return Eigen::MatrixXcd::Zero(e_, e_);
  return it->second;
}

Eigen::MatrixXcd MultiplierSymbol::evaluate(const std::vector<std::complex<double>>& z) const {
  if (z.size() != static_cast<std::size_t>(n_)) throw InvalidInput("point has wrong dimension");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(e_, e_);
  for (const auto& [alpha, c] : terms_) out += monomial_value(alpha, z) * c;
  return out;
}

MultiplierSymbol MultiplierSymbol::operator*(const MultiplierSymbol& o) const {
  if (n_ != o.n_ || e_ != o.e_) throw InvalidInput("symbol shapes differ");
  MultiplierSymbol out(n_, e_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) out.add_term(a + b, ca * cb);
  return out;
}

MultiplierSymbol MultiplierSymbol::operator+(const MultiplierSymbol& o) const {
  if (n_ != o.n_ || e_ != o.e_) throw InvalidInput("symbol shapes differ");
  MultiplierSymbol out = *this;
  for (const auto& [b, cb] : o.terms_) out.add_term(b, cb);
  return out;
}

MultiplierSymbol MultiplierSymbol::scaled(std::complex<double> s) const {
  MultiplierSymbol out = *this;
  for (auto& [a, c] : out.terms_) c *= s;
  return out;
}

MultiplierSymbol MultiplierSymbol::conjugated(const Eigen::MatrixXcd& w) const {
  if (w.rows() != e_ || w.cols() != e_) throw InvalidInput("conjugating matrix has wrong shape");
  MultiplierSymbol out = *this;
  for (auto& [a, c] : out.terms_) c = w * c * w.adjoint();
  return out;
}

MultiplierSymbol MultiplierSymbol::tensor_identity(int coeff_dim) const {
  if (e_ != 1) throw InvalidInput("tensor_identity expects a scalar symbol");
  MultiplierSymbol out(n_, coeff_dim);
  for (const auto& [a, c] : terms_) out.add_term(a, c(0, 0));
  return out;
}

double max_coeff_diff(const MultiplierSymbol& a, const MultiplierSymbol& b) {
  if (a.num_vars() != b.num_vars() || a.coeff_dim() != b.coeff_dim()) {
    throw InvalidInput("symbol shapes differ");
  }
  double worst = 0.0;
  for (const auto& [alpha, c] : a.terms())
    worst = std::max(worst, (c - b.coefficient(alpha)).cwiseAbs().maxCoeff());
  for (const auto& [alpha, c] : b.terms())
    worst = std::max(worst, (c - a.coefficient(alpha)).cwiseAbs().maxCoeff());
  return worst;
}

MultiplierSymbol slice_symbol(const MultiplierSymbol& phi, int axis) {
  const int n = phi.num_vars();
  if (axis < 0 || axis >= n) throw InvalidInput("slice axis out of range");
  if (n < 2) throw InvalidInput("cannot slice a one-variable symbol");
  MultiplierSymbol out(n - 1, phi.coeff_dim());
  for (const auto& [alpha, c] : phi.terms()) {
    if (alpha[static_cast<std::size_t>(axis)] != 0) continue;
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n; ++i)
      if (i != axis) rest.push_back(alpha[static_cast<std::size_t>(i)]);
    out.add_term(MultiIndex(std::move(rest)), c);
  }
  return out;
}

}  // namespace rkhs
