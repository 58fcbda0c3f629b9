#pragma once

// Purity diagnostics for multiplication operators. At a finite truncation a
// contraction is pure exactly when its spectral radius is below one; the
// adjoint compression M_Phi^*|_{V_D} is exact, so a unimodular eigenvalue of
// any compression is a genuine non-decaying vector of M_Phi^*.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "rkhs/operators.hpp"

namespace rkhs {

inline constexpr double kPurityTol = 1e-8;

enum class Verdict { pure, not_pure, inconsistent };
std::string to_string(Verdict v);

struct PurityReport {
  std::vector<double> per_degree_rho;  // entry D is the spectral radius at cap D
  double phi0_rho = 0.0;
  Verdict verdict = Verdict::inconsistent;
  // Some spectral radius sits in [1 - 100 tol, 1 - tol): the classification
  // is tolerance-sensitive and should be read as indeterminate.
  bool near_boundary = false;
  double contractivity_norm = 0.0;
  int d_max = 0;
  double tol = kPurityTol;
  std::optional<std::vector<std::vector<double>>> decay_samples;
};

Verdict classify(const std::vector<double>& per_degree_rho, double phi0_rho, double tol);

/// M_Phi^* restricted to V_D; exact on all of V_D.
OperatorMatrix adjoint_compression(const MultiplierSymbol& phi, const TruncatedBasis::Ptr& basis);

/// (||T^m h||)_{m = 0..m_max}. Throws NotContractive if ||T|| > 1 + 1e-10.
std::vector<double> decay_curve(const OperatorMatrix& t, const SpaceVector& h, int m_max);

/// ||M_Phi|_{V_d}|| computed on a truncation padded by deg Phi, so every
/// column is exact. A lower bound for the multiplier norm.
double padded_multiplier_norm(const MultiplierSymbol& phi, const TruncatedBasis::Ptr& space, int d);

enum class ContractivityCheck {
  padded,       // ||M_Phi|_{V_{D_max}}|| <= 1 + tol on the padded truncation
  compression,  // ||P_D M_Phi|_{V_D}|| <= 1 + tol (used for Taylor jets)
};

struct PurityOptions {
  double tol = kPurityTol;
  ContractivityCheck contractivity = ContractivityCheck::padded;
  int decay_steps = 0;  // > 0 records decay curves of the constants at D_max
};

/// Spectral radii of the adjoint compressions for D = 0..d_max together with
/// rho(Phi(0)). The degree cap of `space` is ignored. Throws NotContractive.
PurityReport multiplier_purity_verdict(const MultiplierSymbol& phi, const TruncatedBasis::Ptr& space,
                                       int d_max, const PurityOptions& opts = {});

struct ATEstimate {
  int m = 0;
  Eigen::MatrixXcd matrix;        // T^m T^{*m}
  double monotone_min_eig = 0.0;  // min over k <= m of lambda_min(A_{k-1} - A_k)
};

ATEstimate a_operator_estimate(const Eigen::MatrixXcd& t, int m);

struct NagyFoiasSplit {
  SubspaceFrame unitary_part;  // E0
  SubspaceFrame cnu_part;      // E1
  double commute_residual = 0.0;
  double unitary_residual = 0.0;
  double cnu_spectral_radius = 0.0;
  bool pure() const { return unitary_part.dim() == 0; }
};

/// Throws CertificationFailure naming the offending eigenvalue when the
/// decomposition cannot be certified at tol.
NagyFoiasSplit nagy_foias_split(const Eigen::MatrixXcd& t, double tol = kPurityTol);

struct RestrictionTestReport {
  std::vector<double> terms;   // ||P_S M_phi^{*m} P_S 1||, m = 0..m_max
  std::vector<double> ratios;  // terms[m] / terms[m-1] where defined
  double expected_ratio = 0.0;  // |phi(0)|
  double max_ratio_error = 0.0;
  double measured_constant = 0.0;  // terms[0]
  int certified_m = 0;
  bool pass = false;
};

/// Checks that ||P_S M_phi^{*m} P_S 1|| decays geometrically with ratio
/// |phi(0)| on S = theta H^2_E(D^n) for an inner polynomial theta with
/// theta(0) != 0. `basis` must be a Hardy polydisc truncation with dim E
/// equal to theta's and degree cap at least 2 deg(theta).
RestrictionTestReport invariant_restriction_test(const MultiplierSymbol& phi,
                                                 const MultiplierSymbol& theta,
                                                 const TruncatedBasis::Ptr& basis, int m_max,
                                                 double tol = 1e-8);

struct SliceConsistencyReport {
  Verdict full = Verdict::inconsistent;
  std::vector<Verdict> sliced;  // one per axis
  bool consistent = false;
};

SliceConsistencyReport slice_purity_consistency(const MultiplierSymbol& phi, int d_max,
                                                const PurityOptions& opts = {});

}  // namespace rkhs
