#include "rkhs/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rkhs/error.hpp"

namespace rkhs {

double Rng::normal() {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(engine_);
}

double Rng::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(engine_);
}

int Rng::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(engine_);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) / std::numbers::sqrt2;
}

Eigen::MatrixXcd Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  // Fill column by column so the draw order does not depend on storage.
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = complex_normal();
  return m;
}

Eigen::MatrixXcd haar_unitary(Rng& rng, Eigen::Index n) {
  const Eigen::MatrixXcd z = rng.gaussian(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

Eigen::MatrixXcd random_projection(Rng& rng, Eigen::Index n, Eigen::Index rank) {
  if (rank < 0 || rank > n) throw InvalidInput("projection rank out of range");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const int j = rng.uniform_int(0, static_cast<int>(i));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < rank; ++k) diag(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]) = 1.0;
  const Eigen::MatrixXcd w = haar_unitary(rng, n);
  Eigen::MatrixXcd p = w * diag * w.adjoint();
  return 0.5 * (p + p.adjoint());
}

MultiplierSymbol random_symbol(Rng& rng, int num_vars, int coeff_dim, int degree) {
  MultiplierSymbol s(num_vars, coeff_dim);
  for (const auto& alpha : enumerate_indices(num_vars, degree)) s.add_term(alpha, rng.gaussian(coeff_dim, coeff_dim));
  return s;
}

MultiplierSymbol random_contractive_symbol(Rng& rng, const TruncatedBasis::Ptr& space, int d_max, int degree) {
  const MultiplierSymbol s = random_symbol(rng, space->num_vars(), space->coeff_dim(), degree);
  const double norm = padded_multiplier_norm(s, space, d_max);
  if (!(norm > 0.0)) throw RangeError("random symbol has zero norm");
  return s.scaled(kSymbolSafety / norm);
}

MultiplierSymbol forced_unitary_symbol(Rng& rng, const TruncatedBasis::Ptr& space, int d_max, int degree) {
  const int n = space->num_vars();
  const int e = space->coeff_dim();
  if (e == 1) {
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    Eigen::MatrixXcd c(1, 1);
    c(0, 0) = std::polar(1.0, theta);
    return MultiplierSymbol::constant(n, c);
  }
  const int k0 = rng.uniform_int(1, e - 1);
  const Eigen::MatrixXcd u0 = haar_unitary(rng, k0);
  const MultiplierSymbol psi = random_contractive_symbol(rng, space->with_coeff_dim(e - k0), d_max, degree);
  MultiplierSymbol s(n, e);
  Eigen::MatrixXcd c0 = Eigen::MatrixXcd::Zero(e, e);
  c0.topLeftCorner(k0, k0) = u0;
  s.add_term(MultiIndex(static_cast<std::size_t>(n)), c0);
  for (const auto& [alpha, coeff] : psi.terms()) {
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(e, e);
    block.bottomRightCorner(e - k0, e - k0) = coeff;
    s.add_term(alpha, block);
  }
  return s.conjugated(haar_unitary(rng, e));
}

BCLTriple random_bcl_triple(Rng& rng, int e_dim, int axis, int rank) {
  if (e_dim < 1) throw InvalidInput("BCL triple needs dim E >= 1");
  BCLTriple t;
  t.e_dim = e_dim;
  t.axis = axis;
  t.U = haar_unitary(rng, e_dim);
  const int r = rank < 0 ? rng.uniform_int(0, e_dim) : rank;
  t.P = random_projection(rng, e_dim, r);
  return t;
}

Colligation random_colligation(Rng& rng, int e_dim, const std::vector<int>& h_dims) {
  const int h = std::accumulate(h_dims.begin(), h_dims.end(), 0);
  return Colligation::from_matrix(haar_unitary(rng, e_dim + h), e_dim, h_dims);
}

}  // namespace rkhs
