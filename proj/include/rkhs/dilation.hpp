#pragma once

// Transfer-function realizations and commuting isometric dilations.
//
// A colligation U = [[A, B], [C, D]] on E (+) H_1 (+) ... (+) H_k defines
//   Phi(z) = A + B E(z) (I - D E(z))^{-1} C,   E(z) = diag(z_i I_{H_i}).
// A BCL triple (E, U, P) gives the pair of inner degree-one symbols
//   Phi_p(z) = (P + z_p P^perp) U^*,   Phi_q(z) = U (P^perp + z_p P),
// whose product in either order is z_p I.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rkhs/purity.hpp"

namespace rkhs {

struct Colligation {
  Eigen::MatrixXcd A, B, C, D;
  std::vector<int> h_dims;
  int e_dim = 0;

  int num_vars() const { return static_cast<int>(h_dims.size()); }
  int h_total() const;
  Eigen::MatrixXcd matrix() const;
  /// Throws InvalidInput on inconsistent shapes or a non-unitary block matrix.
  void validate(double tol = 1e-10) const;

  static Colligation from_matrix(const Eigen::MatrixXcd& u, int e_dim, std::vector<int> h_dims);
  /// The colligation of U^*.
  Colligation adjoint() const;
};

/// Phi(z). Throws InvalidInput unless max |z_i| < 1.
Eigen::MatrixXcd transfer_eval(const Colligation& c, const std::vector<cplx>& z);

/// Taylor coefficients of Phi up to total degree d as a polynomial symbol,
/// from Phi_0 = A and Phi_beta = B G_beta C with
///   G_beta = sum_{i : beta_i > 0} P_i (delta_{beta, e_i} I + D G_{beta - e_i}).
MultiplierSymbol taylor_jet(const Colligation& c, int d);

struct BCLTriple {
  int e_dim = 0;
  Eigen::MatrixXcd U;
  Eigen::MatrixXcd P;
  int axis = 0;

  /// Throws InvalidInput if U is not unitary (1e-10) or P not a projection (1e-12).
  void validate() const;
};

struct BCLPair {
  MultiplierSymbol phi_p;
  MultiplierSymbol phi_q;
};

/// The BCL symbols as polynomials in num_vars variables (degree one in z_axis).
BCLPair bcl_pair(const BCLTriple& t, int num_vars);

struct BCLReport {
  double product_error = 0.0;         // max coefficient error of both products against z_p I
  double max_commutator = 0.0;        // pairwise, columns of degree <= D - 2
  double max_isometry_residual = 0.0;  // columns of degree <= D - 1
  double rho_p0 = 0.0;                // rho(P U^*)
  double rho_q0 = 0.0;                // rho(U P^perp)
  PurityReport purity_p;
  PurityReport purity_q;
  bool verdicts_match = false;
  std::vector<std::string> failures;
  bool pass = false;
};

/// Builds (M_{z_i} for i != p, M_{Phi_p}, M_{Phi_q}) on the Hardy space of
/// D^{n-1} (x) E truncated at degree d and certifies it on exactness blocks.
BCLReport bcl_dilation_certify(const BCLTriple& t, int n, int d, double tol = 1e-10,
                               double purity_tol = kPurityTol);

struct SchurAglerReport {
  PurityReport purity;  // of the degree-d jet, jet-certified to degree d
  double rho_a = 0.0;
  int jet_degree = 0;
  bool consistent = false;  // rho(A) < 1 - tol <=> every compression radius < 1 - tol
};

SchurAglerReport schur_agler_purity(const Colligation& c, int d, double tol = kPurityTol);

struct DefectColligation {
  Colligation colligation;
  Eigen::MatrixXcd defect_root;   // D_{X_hat}, acting on the ambient space
  Eigen::MatrixXcd defect_frame;  // orthonormal basis of its range, columns = E coordinates
  std::vector<Eigen::MatrixXcd> f_roots;
  std::vector<Eigen::MatrixXcd> f_frames;
  double graph_residual = 0.0;  // ||V^* V - W^* W||
};

/// (I - C_{X_1}) ... (I - C_{X_k}) applied to g, with C_X(g) = X g X^*; the
/// factor for index `skip` is omitted.
Eigen::MatrixXcd defect_product(const std::vector<Eigen::MatrixXcd>& x, const Eigen::MatrixXcd& g,
                                int skip = -1);

/// Colligation assembled from the graph map
///   (D h, F_1 X_1^* h, ..., F_k X_k^* h) -> (D X_n^* h, F_1 h, ..., F_k h),
/// k = n - 1, D = (prod_{j<n} (I - C_{X_j})(I))^{1/2}, F_i = S_X(G_i)^{1/2}.
/// Throws PreconditionViolation when the defect conditions fail and
/// NoUnitaryExtension when the graph complements cannot be matched.
DefectColligation colligation_from_defects(const std::vector<Eigen::MatrixXcd>& x,
                                           const std::vector<Eigen::MatrixXcd>& g, double tol = 1e-10);

struct IntertwiningReport {
  std::vector<double> shift_residuals;  // ||Pi X_i^* - M_{z_i}^* Pi||, i < n
  double symbol_residual = 0.0;         // ||Pi X_n^* - M_Psi^* Pi||
  double max_residual = 0.0;
};

/// Checks the intertwinings of Pi h = sum_alpha z^alpha (x) D X_hat^{*alpha} h
/// on V_d of the Hardy space of D^{n-1} (x) E, where Psi is the transfer
/// function of the adjoint colligation. Exact when X_hat is nilpotent of
/// order <= d; otherwise the truncation tail enters.
IntertwiningReport intertwining_check(const DefectColligation& dc, const std::vector<Eigen::MatrixXcd>& x,
                                      int d);

}  // namespace rkhs
