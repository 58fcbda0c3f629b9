#include "rkhs/purity.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "rkhs/error.hpp"
#include "rkhs/linalg.hpp"

namespace rkhs {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pure: return "pure";
    case Verdict::not_pure: return "not_pure";
    case Verdict::inconsistent: return "inconsistent";
  }
  return "unknown";
}

Verdict classify(const std::vector<double>& per_degree_rho, double phi0_rho, double tol) {
  bool all_below = true;
  for (double r : per_degree_rho) all_below = all_below && r < 1.0 - tol;
  const bool phi0_below = phi0_rho < 1.0 - tol;
  if (all_below && phi0_below) return Verdict::pure;
  if (!phi0_below && !all_below) return Verdict::not_pure;
  return Verdict::inconsistent;
}

OperatorMatrix adjoint_compression(const MultiplierSymbol& phi, const TruncatedBasis::Ptr& basis) {
  return multiplier_matrix(basis, phi).adjoint();
}

std::vector<double> decay_curve(const OperatorMatrix& t, const SpaceVector& h, int m_max) {
  const double norm = linalg::spectral_norm(t.data);
  if (norm > 1.0 + 1e-10) throw NotContractive(norm, 1e-10);
  if (h.coords.size() != t.data.cols()) throw InvalidInput("vector does not live in the domain");
  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(m_max) + 1);
  Eigen::VectorXcd v = h.coords;
  for (int m = 0; m <= m_max; ++m) {
    curve.push_back(v.norm());
    v = t.data * v;
  }
  return curve;
}

double padded_multiplier_norm(const MultiplierSymbol& phi, const TruncatedBasis::Ptr& space, int d) {
  auto padded = space->with_degree_cap(d + phi.degree());
  const OperatorMatrix m = multiplier_matrix(padded, phi);
  return linalg::spectral_norm(m.data.leftCols(padded->block_size(d)));
}

PurityReport multiplier_purity_verdict(const MultiplierSymbol& phi, const TruncatedBasis::Ptr& space,
                                       int d_max, const PurityOptions& opts) {
  if (d_max < 0) throw InvalidInput("d_max must be nonnegative");
  PurityReport rep;
  rep.d_max = d_max;
  rep.tol = opts.tol;
  if (opts.contractivity == ContractivityCheck::padded) {
    rep.contractivity_norm = padded_multiplier_norm(phi, space, d_max);
  } else {
    rep.contractivity_norm =
        linalg::spectral_norm(multiplier_matrix(space->with_degree_cap(d_max), phi).data);
  }
  if (rep.contractivity_norm > 1.0 + opts.tol) throw NotContractive(rep.contractivity_norm, opts.tol);

  rep.phi0_rho = linalg::spectral_radius(phi.at_zero());
  for (int d = 0; d <= d_max; ++d) {
    const OperatorMatrix a = adjoint_compression(phi, space->with_degree_cap(d));
    rep.per_degree_rho.push_back(linalg::spectral_radius(a.data));
  }
  rep.verdict = classify(rep.per_degree_rho, rep.phi0_rho, opts.tol);
  auto in_band = [&](double r) { return r >= 1.0 - 100.0 * opts.tol && r < 1.0 - opts.tol; };
  rep.near_boundary = in_band(rep.phi0_rho);
  for (double r : rep.per_degree_rho) rep.near_boundary = rep.near_boundary || in_band(r);

  if (opts.decay_steps > 0) {
    auto basis = space->with_degree_cap(d_max);
    const OperatorMatrix a = adjoint_compression(phi, basis);
    std::vector<std::vector<double>> curves;
    for (int j = 0; j < basis->coeff_dim(); ++j) {
      SpaceVector h{basis, Eigen::VectorXcd::Zero(basis->dim())};
      h.coords(j) = 1.0;
      curves.push_back(decay_curve(a, h, opts.decay_steps));
    }
    rep.decay_samples = std::move(curves);
  }
  return rep;
}

ATEstimate a_operator_estimate(const Eigen::MatrixXcd& t, int m) {
  if (t.rows() != t.cols()) throw InvalidInput("a_operator_estimate needs a square matrix");
  if (m < 0) throw InvalidInput("iterate count must be nonnegative");
  const double norm = linalg::spectral_norm(t);
  if (norm > 1.0 + 1e-10) throw NotContractive(norm, 1e-10);

  ATEstimate est;
  est.m = m;
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(t.rows(), t.cols());
  Eigen::MatrixXcd prev = power * power.adjoint();
  est.monotone_min_eig = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= m; ++k) {
    power = t * power;
    Eigen::MatrixXcd cur = power * power.adjoint();
    est.monotone_min_eig = std::min(est.monotone_min_eig, linalg::min_hermitian_eigenvalue(prev - cur));
    prev = std::move(cur);
  }
  if (m == 0) est.monotone_min_eig = 0.0;
  est.matrix = prev;
  return est;
}

NagyFoiasSplit nagy_foias_split(const Eigen::MatrixXcd& t, double tol) {
  if (t.rows() != t.cols()) throw InvalidInput("nagy_foias_split needs a square matrix");
  const double norm = linalg::spectral_norm(t);
  if (norm > 1.0 + tol) throw NotContractive(norm, tol);
  const Eigen::Index n = t.rows();

  NagyFoiasSplit out;
  if (n == 0) return out;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(t);
  const Eigen::VectorXcd& ev = es.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < n; ++k)
    if (std::abs(ev(k)) >= 1.0 - tol) keep.push_back(k);

  Eigen::MatrixXcd vecs(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) vecs.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  out.unitary_part = SubspaceFrame::span_of(vecs);
  out.cnu_part = SubspaceFrame{linalg::orthogonal_complement(out.unitary_part.columns)};

  const Eigen::MatrixXcd& q0 = out.unitary_part.columns;
  const Eigen::MatrixXcd& q1 = out.cnu_part.columns;
  const Eigen::MatrixXcd p0 = out.unitary_part.projector();
  out.commute_residual = linalg::spectral_norm(t * p0 - p0 * t);
  out.unitary_residual = q0.cols() ? linalg::unitary_residual(q0.adjoint() * t * q0) : 0.0;
  out.cnu_spectral_radius = q1.cols() ? linalg::spectral_radius(q1.adjoint() * t * q1) : 0.0;

  auto fail = [&](const std::string& why) {
    // Report the eigenvalue closest to the unit circle from inside.
    cplx worst = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double g = std::abs(1.0 - std::abs(ev(k)));
      if (g < gap) gap = g, worst = ev(k);
    }
    throw CertificationFailure("Nagy-Foias split not certified (" + why + "); eigenvalue " +
                               format_number(worst.real()) + (worst.imag() < 0 ? "" : "+") +
                               format_number(worst.imag()) + "i");
  };
  if (out.commute_residual > tol) fail("E0 not reducing");
  if (out.unitary_residual > tol) fail("T|E0 not unitary");
  if (!(out.cnu_spectral_radius < 1.0 - tol)) fail("T|E1 not strictly contractive");
  return out;
}

RestrictionTestReport invariant_restriction_test(const MultiplierSymbol& phi,
                                                 const MultiplierSymbol& theta,
                                                 const TruncatedBasis::Ptr& basis, int m_max,
                                                 double tol) {
  if (basis->geometry() != Geometry::polydisc) throw InvalidInput("restriction test needs a polydisc basis");
  for (const auto& f : basis->factors())
    if (f.family != Family1D::hardy) throw InvalidInput("restriction test needs the Hardy space");
  if (phi.coeff_dim() != 1) throw InvalidInput("phi must be scalar");
  if (phi.num_vars() != basis->num_vars() || theta.num_vars() != basis->num_vars()) {
    throw InvalidInput("symbol and basis differ in variables");
  }
  if (theta.coeff_dim() != basis->coeff_dim()) throw InvalidInput("theta and basis differ in dim E");
  if (m_max < 1) throw InvalidInput("m_max must be at least 1");

  const int k = theta.degree();
  if (basis->degree_cap() < 2 * k) {
    throw RangeError("exactness budget too small: need degree cap >= 2 deg(theta) = " +
                     std::to_string(2 * k));
  }
  const Eigen::MatrixXcd theta0 = theta.at_zero();
  if (linalg::spectral_norm(theta0) <= 1e-12) throw PreconditionViolation("theta(0) = 0");

  const OperatorMatrix m_theta = multiplier_matrix(basis, theta);
  const double inner_residual = linalg::isometry_residual(m_theta.exact_block().data);
  if (inner_residual > 1e-10) throw PreconditionViolation("theta is not inner on the certified block");

  const MultiplierSymbol phi_e = phi.tensor_identity(basis->coeff_dim());
  if (padded_multiplier_norm(phi_e, basis, basis->degree_cap()) > 1.0 + tol) {
    throw NotContractive(padded_multiplier_norm(phi_e, basis, basis->degree_cap()), tol);
  }
  const Eigen::MatrixXcd a_theta = m_theta.data.adjoint();
  const Eigen::MatrixXcd a_phi = multiplier_matrix(basis, phi_e).data.adjoint();
  const Eigen::Index exact_cols = basis->block_size(basis->degree_cap() - k);

  // P_S f = M_theta M_theta^* f; valid here because every vector involved
  // has degree <= k and M_theta is exact on V_{D-k}.
  auto project = [&](const Eigen::VectorXcd& f) -> Eigen::VectorXcd {
    Eigen::VectorXcd g = a_theta * f;
    return m_theta.data.leftCols(exact_cols) * g.head(exact_cols);
  };

  // xi: direction maximizing ||theta(0)^* xi||.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(theta0, Eigen::ComputeFullU);
  Eigen::VectorXcd one = Eigen::VectorXcd::Zero(basis->dim());
  one.head(basis->coeff_dim()) = svd.matrixU().col(0);

  RestrictionTestReport rep;
  rep.expected_ratio = std::abs(phi.at_zero()(0, 0));
  Eigen::VectorXcd v = project(one);
  for (int m = 0; m <= m_max; ++m) {
    rep.terms.push_back(project(v).norm());
    v = a_phi * v;
  }
  rep.measured_constant = rep.terms.front();
  const double floor = 1e-12 * std::max(rep.terms.front(), 1e-300);
  rep.pass = rep.terms.front() > 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const double prev = rep.terms[static_cast<std::size_t>(m - 1)];
    const double cur = rep.terms[static_cast<std::size_t>(m)];
    if (prev > floor) {
      const double ratio = cur / prev;
      rep.ratios.push_back(ratio);
      rep.max_ratio_error = std::max(rep.max_ratio_error, std::abs(ratio - rep.expected_ratio));
    } else if (cur > tol * rep.terms.front()) {
      rep.pass = false;
    }
  }
  rep.certified_m = m_max;
  rep.pass = rep.pass && rep.max_ratio_error <= tol;
  return rep;
}

SliceConsistencyReport slice_purity_consistency(const MultiplierSymbol& phi, int d_max,
                                                const PurityOptions& opts) {
  const int n = phi.num_vars();
  if (n < 2) throw InvalidInput("slice consistency needs at least two variables");
  auto hardy = TruncatedBasis::polydisc(n, KernelSpec1D::hardy(), d_max, phi.coeff_dim());
  SliceConsistencyReport rep;
  rep.full = multiplier_purity_verdict(phi, hardy, d_max, opts).verdict;
  rep.consistent = rep.full != Verdict::inconsistent;
  for (int i = 0; i < n; ++i) {
    const MultiplierSymbol s = slice_symbol(phi, i);
    auto sliced_basis = TruncatedBasis::polydisc(n - 1, KernelSpec1D::hardy(), d_max, phi.coeff_dim());
    const Verdict v = multiplier_purity_verdict(s, sliced_basis, d_max, opts).verdict;
    rep.sliced.push_back(v);
    rep.consistent = rep.consistent && v == rep.full;
  }
  return rep;
}

}  // namespace rkhs
