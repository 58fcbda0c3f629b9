#pragma once

// Matrix models of shifts, polynomial multipliers and the objects built from
// them. Every OperatorMatrix is a compression P_D T|_{V_d} and carries the
// degree d* up to which its columns agree with the untruncated operator.
//
// Propagation rule for exactness under composition A * B:
//   d*(A B) = min(d*(B), d*(A) - lift(B)),   lift(A B) = lift(A) + lift(B),
// where lift is the largest degree an operator can raise. Adjoints of
// multiplier compressions are exact on all of V_D because M_Phi^* lowers
// degree, which is why several checks below work with adjoints.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "rkhs/spaces.hpp"
#include "rkhs/symbol.hpp"

namespace rkhs {

struct OperatorMatrix {
  Eigen::MatrixXcd data;
  TruncatedBasis::Ptr domain;
  TruncatedBasis::Ptr codomain;
  int exactness_degree = -1;
  int lift = 0;
  bool adjoint_exact = false;

  OperatorMatrix adjoint() const;
  /// Keeps the columns of degree <= d (a leading block) with a domain capped at d.
  OperatorMatrix restrict_domain(int d) const;
  /// Restriction to the certified columns.
  OperatorMatrix exact_block() const { return restrict_domain(exactness_degree); }
  /// Zero-pads the domain back up to the codomain's truncation.
  OperatorMatrix pad_to_square() const;

  OperatorMatrix operator*(const OperatorMatrix& rhs) const;
  SpaceVector apply(const SpaceVector& v) const;
};

OperatorMatrix identity_operator(const TruncatedBasis::Ptr& basis);

/// M_{z_i} compressed to V_D.
OperatorMatrix shift_matrix(const TruncatedBasis::Ptr& basis, int axis);
std::vector<OperatorMatrix> shift_tuple(const TruncatedBasis::Ptr& basis);

/// P_D M_Phi |_{V_D}.
OperatorMatrix multiplier_matrix(const TruncatedBasis::Ptr& basis, const MultiplierSymbol& phi);

/// Default bounded-below threshold on sigma_min.
inline constexpr double kLeftInvertibleTol = 1e-8;

/// T (T^* T)^{-1}. Throws NotBoundedBelow when sigma_min(T) <= tol.
OperatorMatrix cauchy_dual(const OperatorMatrix& t, double tol = kLeftInvertibleTol);

/// T (T^* T)^{-1} T^*, the orthogonal projection onto the range of T.
OperatorMatrix range_projection(const OperatorMatrix& t, double tol = kLeftInvertibleTol);

/// Cauchy dual of a square truncated operator, computed on its exact block
/// and zero-padded back to V_D.
OperatorMatrix truncated_cauchy_dual(const OperatorMatrix& t, double tol = kLeftInvertibleTol);

struct SubspaceFrame {
  Eigen::MatrixXcd columns;  // orthonormal

  Eigen::Index dim() const { return columns.cols(); }
  Eigen::MatrixXcd projector() const { return columns * columns.adjoint(); }
  double orthonormality_residual() const;

  static SubspaceFrame span_of(const Eigen::MatrixXcd& vectors);
};

/// Joint kernel of the adjoints, intersect_i ker X_i^*.
SubspaceFrame wandering_subspace(const std::vector<OperatorMatrix>& x);

/// span{ X^m w : w in frame, |m| <= max_degree }.
SubspaceFrame generated_subspace(const std::vector<OperatorMatrix>& x, const Eigen::MatrixXcd& vectors,
                                 int max_degree);

/// span{e_alpha (x) xi : alpha divisible by some generator}, a monomial ideal
/// truncated to V_D. Invariant under the compressed shifts.
SubspaceFrame monomial_ideal(const TruncatedBasis::Ptr& basis, const std::vector<MultiIndex>& generators);

/// span{P_D (z^m f (x) xi)}: the truncation of the invariant subspace
/// generated by a scalar polynomial f. Requires f(0) = 0 so the frame stays
/// orthogonal to the constants.
SubspaceFrame generated_by_polynomial(const TruncatedBasis::Ptr& basis, const MultiplierSymbol& f);

struct UnionProjection {
  Eigen::MatrixXcd projection;   // I - prod (I - P_i)
  double block_form_residual;    // against sum_k P_k prod_{j>k} (I - P_j)
};

/// Projection onto the closed sum of the ranges of commuting projections.
/// Throws PreconditionViolation for non-commuting or non-projection input.
UnionProjection union_projection(const std::vector<Eigen::MatrixXcd>& projections,
                                 double tol = 1e-10);
Eigen::MatrixXcd union_projection_block_form(const std::vector<Eigen::MatrixXcd>& projections);

struct DoublyCommutingReport {
  double max_commutator = 0.0;        // ||X_i X_j - X_j X_i||
  double max_cross_commutator = 0.0;  // ||X_i^* X_j - X_j X_i^*||, i != j
  int budget = 0;
  bool pass = false;
};

/// Evaluated on the columns of degree <= D - 2 max(lift).
DoublyCommutingReport doubly_commuting_check(const std::vector<OperatorMatrix>& x, double tol = 1e-10);

struct WandererWitness {
  bool found = false;
  std::size_t h_index = 0;
  MultiIndex m_tilde;
  SpaceVector eta;
  std::vector<double> residuals;  // ||P_M X_i^* eta||
  double max_residual = 0.0;
};

/// Search for eta in M with X_i^* eta in M^perp for all i. The multi-index is
/// chosen by minimizing m_1, then m_2, ... over those m with |m| <= budget
/// for which X'^m h is not orthogonal to M, scanning h through the frame of
/// W(X) in order. Returns found = false if the budget is exhausted.
WandererWitness wandering_witness(const std::vector<OperatorMatrix>& x, const SubspaceFrame& m,
                                  int budget, double tol = 1e-8);

}  // namespace rkhs
