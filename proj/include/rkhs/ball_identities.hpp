#pragma once

// Operator identities for unitarily invariant spaces on the ball, assembled
// from compressed shifts. Every product M^alpha M^{*alpha} is exact on the
// whole truncation V_D: the adjoint lowers degree by |alpha| and the shift
// raises it back, so no column ever leaves V_D.

#include <cstdint>
#include <map>
#include <vector>

#include "rkhs/operators.hpp"

namespace rkhs {

struct GammaTable {
  int n = 0;
  int m = 0;
  std::map<MultiIndex, std::uint64_t, GradedLess> values;  // |alpha|! / alpha!

  std::uint64_t at(const MultiIndex& alpha) const;
};

/// gamma_alpha for all |alpha| <= m. Throws RangeError on 64-bit overflow.
GammaTable gamma_coeffs(int n, int m);

struct IdentityResidual {
  double residual_norm = 0.0;
  int certified_block = 0;
  int term_count = 0;
  bool pass = false;
  // Chen identity only: <sum_{1 <= |beta| <= N} ... h, h> for N = 1..D.
  std::vector<double> partial_sums;
  double max_increase = 0.0;       // largest step up in partial_sums
  double min_step_eigenvalue = 0.0;  // smallest eigenvalue of -(degree-N term), N >= 1
};

/// sum_{|alpha| = j} gamma_alpha M^alpha M^{*alpha} on V_D.
Eigen::MatrixXcd homogeneous_row_sum(const TruncatedBasis::Ptr& basis, int j, const GammaTable& gamma);

/// || I - sum_{j=0}^{m-1} (-1)^j C(m, j+1) sum_{|alpha|=j+1} gamma_alpha M^alpha M^{*alpha} - P_E ||
/// on V_D for a basis of H_m(B_n, E). Throws InvalidInput for other families.
IdentityResidual defect_identity_residual(const TruncatedBasis::Ptr& basis, double tol = 1e-10);

/// || sum_{|beta| <= D} c_{|beta|} gamma_beta M^beta M^{*beta} - P_E || on V_D
/// with c the coefficients of 1/k. Throws NotCnp when some c_j > 0.
IdentityResidual chen_identity_residual(const TruncatedBasis::Ptr& basis, double tol = 1e-10);

struct RegularWanderingReport {
  Eigen::Index m_dim = 0;
  Eigen::Index w_dim = 0;
  SubspaceFrame wandering;  // W(M_z|_M), in coordinates of V_D
  double invariance_residual = 0.0;
  bool consistent = false;  // m_dim > 0 <=> w_dim > 0
};

/// Finite form of "M != {0} iff W(M_z|_M) != {0}" for a shift-invariant M.
/// Throws PreconditionViolation when M is not invariant within tol.
RegularWanderingReport regular_wandering_check(const TruncatedBasis::Ptr& basis, const SubspaceFrame& m,
                                               double tol = 1e-10);

}  // namespace rkhs
