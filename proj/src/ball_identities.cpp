#include "rkhs/ball_identities.hpp"

#include <cmath>

#include "rkhs/error.hpp"
#include "rkhs/linalg.hpp"

namespace rkhs {

namespace {

void require_ball(const TruncatedBasis& basis) {
  if (basis.geometry() != Geometry::ball) throw InvalidInput("expected a ball basis");
}

Eigen::MatrixXcd constants_projection(const TruncatedBasis& basis) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int j = 0; j < basis.coeff_dim(); ++j) p(j, j) = 1.0;
  return p;
}

// M^alpha as a product of compressed shifts.
Eigen::MatrixXcd shift_power(const std::vector<OperatorMatrix>& s, const MultiIndex& alpha) {
  const Eigen::Index dim = s.front().data.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) out = s[i].data * out;
  return out;
}

Eigen::MatrixXcd row_sum(const std::vector<OperatorMatrix>& s, int j, const GammaTable& gamma) {
  const Eigen::Index dim = s.front().data.rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& alpha : homogeneous_indices(static_cast<int>(s.size()), j)) {
    const Eigen::MatrixXcd p = shift_power(s, alpha);
    sum += static_cast<double>(gamma.at(alpha)) * (p * p.adjoint());
  }
  return sum;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("multinomial coefficient overflows 64 bits");
  return r;
}

double binomial(int m, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  return std::round(r);
}

}  // namespace

std::uint64_t GammaTable::at(const MultiIndex& alpha) const {
  auto it = values.find(alpha);
  if (it == values.end()) throw RangeError("multi-index " + alpha.str() + " outside the gamma table");
  return it->second;
}

GammaTable gamma_coeffs(int n, int m) {
  if (n < 1) throw InvalidInput("gamma_coeffs needs n >= 1");
  if (m < 1) throw InvalidInput("gamma_coeffs needs m >= 1");
  GammaTable t;
  t.n = n;
  t.m = m;
  for (const auto& alpha : enumerate_indices(n, m)) {
    // Product of binomials C(a_1 + ... + a_i, a_i) keeps intermediates small.
    std::uint64_t g = 1;
    int running = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      for (int k = 1; k <= alpha[i]; ++k) {
        ++running;
        g = checked_mul(g, static_cast<std::uint64_t>(running));
        g /= static_cast<std::uint64_t>(k);
      }
    }
    t.values.emplace(alpha, g);
  }
  return t;
}

Eigen::MatrixXcd homogeneous_row_sum(const TruncatedBasis::Ptr& basis, int j, const GammaTable& gamma) {
  return row_sum(shift_tuple(basis), j, gamma);
}

IdentityResidual defect_identity_residual(const TruncatedBasis::Ptr& basis, double tol) {
  require_ball(*basis);
  const BallKernelSpec& spec = basis->ball_spec();
  if (spec.family != BallFamily::hm) throw InvalidInput("defect identity needs an H_m(B_n) basis");
  const int m = spec.m;
  const auto s = shift_tuple(basis);
  const GammaTable gamma = gamma_coeffs(basis->num_vars(), m);

  const Eigen::Index dim = basis->dim();
  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(dim, dim);
  IdentityResidual out;
  for (int j = 0; j < m; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    lhs -= sign * binomial(m, j + 1) * row_sum(s, j + 1, gamma);
    out.term_count += static_cast<int>(homogeneous_indices(basis->num_vars(), j + 1).size());
  }
  out.residual_norm = linalg::spectral_norm(lhs - constants_projection(*basis));
  out.certified_block = basis->degree_cap();
  out.pass = out.residual_norm <= tol;
  return out;
}

IdentityResidual chen_identity_residual(const TruncatedBasis::Ptr& basis, double tol) {
  require_ball(*basis);
  const int d = basis->degree_cap();
  const ChenCoefficients chen = chen_coeffs(basis->ball_spec(), d);
  for (std::size_t j = 1; j < chen.c.length(); ++j) {
    if (chen.c[j] > 1e-12) throw NotCnp(j, chen.c[j]);
  }
  const int n = basis->num_vars();
  const auto s = shift_tuple(basis);
  const GammaTable gamma = gamma_coeffs(n, std::max(d, 1));
  const Eigen::Index dim = basis->dim();

  // Deterministic probe vector: the normalized all-ones coordinate vector.
  const Eigen::VectorXcd h = Eigen::VectorXcd::Ones(dim) / std::sqrt(static_cast<double>(dim));

  IdentityResidual out;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(dim, dim);  // c_0 = 1, beta = 0
  out.term_count = 1;
  out.min_step_eigenvalue = std::numeric_limits<double>::infinity();
  double running = 0.0;
  for (int j = 1; j <= d; ++j) {
    const Eigen::MatrixXcd term = chen.c[static_cast<std::size_t>(j)] * row_sum(s, j, gamma);
    sum += term;
    out.term_count += static_cast<int>(homogeneous_indices(n, j).size());
    const double next = running + (h.adjoint() * term * h)(0, 0).real();
    out.partial_sums.push_back(next);
    out.max_increase = std::max(out.max_increase, next - running);
    out.min_step_eigenvalue = std::min(out.min_step_eigenvalue, linalg::min_hermitian_eigenvalue(-term));
    running = next;
  }
  if (d == 0) out.min_step_eigenvalue = 0.0;
  out.residual_norm = linalg::spectral_norm(sum - constants_projection(*basis));
  out.certified_block = d;
  out.pass = out.residual_norm <= tol && out.max_increase <= 1e-12;
  return out;
}

RegularWanderingReport regular_wandering_check(const TruncatedBasis::Ptr& basis, const SubspaceFrame& m,
                                               double tol) {
  if (m.columns.rows() != basis->dim()) throw InvalidInput("frame does not live in the basis");
  const auto s = shift_tuple(basis);
  const Eigen::MatrixXcd& q = m.columns;

  RegularWanderingReport rep;
  rep.m_dim = m.dim();
  if (rep.m_dim == 0) {
    rep.wandering = SubspaceFrame{Eigen::MatrixXcd(basis->dim(), 0)};
    rep.consistent = true;
    return rep;
  }
  if (m.orthonormality_residual() > 1e-12) throw InvalidInput("frame columns are not orthonormal");
  for (const auto& op : s) {
    const Eigen::MatrixXcd leak = op.data * q - q * (q.adjoint() * op.data * q);
    rep.invariance_residual = std::max(rep.invariance_residual, linalg::spectral_norm(leak));
  }
  if (rep.invariance_residual > tol) throw PreconditionViolation("subspace is not shift invariant");

  // W(M_z|_M) = M minus the closed span of z_i M: the joint kernel of the
  // compressed adjoints P_M M_{z_i}^*|_M, expressed in frame coordinates.
  Eigen::MatrixXcd stacked(q.cols() * static_cast<Eigen::Index>(s.size()), q.cols());
  for (std::size_t i = 0; i < s.size(); ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * q.cols(), q.cols()) = q.adjoint() * s[i].data.adjoint() * q;
  }
  rep.wandering = SubspaceFrame{q * linalg::null_space(stacked)};
  rep.w_dim = rep.wandering.dim();
  rep.consistent = (rep.m_dim > 0) == (rep.w_dim > 0);
  return rep;
}

}  // namespace rkhs
