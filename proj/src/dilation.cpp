#include "rkhs/dilation.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <map>
#include <numeric>

#include "rkhs/error.hpp"
#include "rkhs/linalg.hpp"

namespace rkhs {

namespace {

Eigen::MatrixXcd block_projection(const std::vector<int>& dims, std::size_t i) {
  const int total = std::accumulate(dims.begin(), dims.end(), 0);
  const int offset = std::accumulate(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(i), 0);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(total, total);
  for (int k = 0; k < dims[i]; ++k) p(offset + k, offset + k) = 1.0;
  return p;
}

void require_square(const Eigen::MatrixXcd& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) throw InvalidInput(std::string(what) + " has the wrong shape");
}

}  // namespace

int Colligation::h_total() const { return std::accumulate(h_dims.begin(), h_dims.end(), 0); }

Eigen::MatrixXcd Colligation::matrix() const {
  const int h = h_total();
  Eigen::MatrixXcd u(e_dim + h, e_dim + h);
  u.topLeftCorner(e_dim, e_dim) = A;
  u.topRightCorner(e_dim, h) = B;
  u.bottomLeftCorner(h, e_dim) = C;
  u.bottomRightCorner(h, h) = D;
  return u;
}

void Colligation::validate(double tol) const {
  if (e_dim < 1) throw InvalidInput("colligation needs dim E >= 1");
  if (h_dims.empty()) throw InvalidInput("colligation needs at least one internal space");
  for (int d : h_dims)
    if (d < 0) throw InvalidInput("negative internal dimension");
  const int h = h_total();
  if (A.rows() != e_dim || A.cols() != e_dim || B.rows() != e_dim || B.cols() != h || C.rows() != h ||
      C.cols() != e_dim || D.rows() != h || D.cols() != h) {
    throw InvalidInput("colligation blocks have inconsistent shapes");
  }
  const double r = linalg::unitary_residual(matrix());
  if (r > tol) throw InvalidInput("colligation is not unitary (residual " + format_number(r) + ")");
}

Colligation Colligation::from_matrix(const Eigen::MatrixXcd& u, int e_dim, std::vector<int> h_dims) {
  Colligation c;
  c.e_dim = e_dim;
  c.h_dims = std::move(h_dims);
  const int h = c.h_total();
  if (u.rows() != e_dim + h || u.cols() != e_dim + h) throw InvalidInput("colligation matrix has the wrong size");
  c.A = u.topLeftCorner(e_dim, e_dim);
  c.B = u.topRightCorner(e_dim, h);
  c.C = u.bottomLeftCorner(h, e_dim);
  c.D = u.bottomRightCorner(h, h);
  return c;
}

Colligation Colligation::adjoint() const { return from_matrix(matrix().adjoint(), e_dim, h_dims); }

Eigen::MatrixXcd transfer_eval(const Colligation& c, const std::vector<cplx>& z) {
  if (static_cast<int>(z.size()) != c.num_vars()) throw InvalidInput("point has the wrong number of coordinates");
  for (const auto& zi : z)
    if (!(std::abs(zi) < 1.0)) throw InvalidInput("point is not inside the open polydisc");
  const int h = c.h_total();
  Eigen::MatrixXcd ez = Eigen::MatrixXcd::Zero(h, h);
  int offset = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (int k = 0; k < c.h_dims[i]; ++k) ez(offset + k, offset + k) = z[i];
    offset += c.h_dims[i];
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(h, h);
  return c.A + c.B * ez * (id - c.D * ez).partialPivLu().solve(c.C);
}

MultiplierSymbol taylor_jet(const Colligation& c, int d) {
  if (d < 0) throw InvalidInput("jet degree must be nonnegative");
  const int k = c.num_vars();
  const int h = c.h_total();
  std::vector<Eigen::MatrixXcd> proj;
  for (int i = 0; i < k; ++i) proj.push_back(block_projection(c.h_dims, static_cast<std::size_t>(i)));

  MultiplierSymbol jet(k, c.e_dim);
  jet.add_term(MultiIndex(static_cast<std::size_t>(k)), c.A);
  std::map<MultiIndex, Eigen::MatrixXcd> g;
  for (const auto& beta : enumerate_indices(k, d)) {
    if (beta.total() == 0) continue;
    Eigen::MatrixXcd gb = Eigen::MatrixXcd::Zero(h, h);
    for (int i = 0; i < k; ++i) {
      if (beta[static_cast<std::size_t>(i)] == 0) continue;
      const MultiIndex prev = beta.minus(MultiIndex::unit(static_cast<std::size_t>(k), static_cast<std::size_t>(i)));
      Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(h, h);
      if (prev.total() == 0) inner.setIdentity();
      else inner = c.D * g.at(prev);
      gb += proj[static_cast<std::size_t>(i)] * inner;
    }
    const Eigen::MatrixXcd coeff = c.B * gb * c.C;
    if (!coeff.allFinite()) throw RangeError("Taylor jet coefficients are not finite");
    g.emplace(beta, std::move(gb));
    if (coeff.cwiseAbs().maxCoeff() > 0.0) jet.add_term(beta, coeff);
  }
  return jet;
}

void BCLTriple::validate() const {
  if (e_dim < 1) throw InvalidInput("BCL triple needs dim E >= 1");
  require_square(U, e_dim, "U");
  require_square(P, e_dim, "P");
  if (axis < 0) throw InvalidInput("BCL axis must be nonnegative");
  const double ur = linalg::unitary_residual(U);
  if (ur > 1e-10) throw InvalidInput("U is not unitary (residual " + format_number(ur) + ")");
  const double pr = std::max(linalg::spectral_norm(P * P - P), linalg::spectral_norm(P - P.adjoint()));
  if (pr > 1e-12) throw InvalidInput("P is not an orthogonal projection (residual " + format_number(pr) + ")");
}

BCLPair bcl_pair(const BCLTriple& t, int num_vars) {
  t.validate();
  if (t.axis >= num_vars) throw InvalidInput("BCL axis out of range");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(t.e_dim, t.e_dim);
  const Eigen::MatrixXcd perp = id - t.P;
  const MultiIndex zero(static_cast<std::size_t>(num_vars));
  const MultiIndex zp = MultiIndex::unit(static_cast<std::size_t>(num_vars), static_cast<std::size_t>(t.axis));
  BCLPair out{MultiplierSymbol(num_vars, t.e_dim), MultiplierSymbol(num_vars, t.e_dim)};
  out.phi_p.add_term(zero, t.P * t.U.adjoint());
  out.phi_p.add_term(zp, perp * t.U.adjoint());
  out.phi_q.add_term(zero, t.U * perp);
  out.phi_q.add_term(zp, t.U * t.P);
  return out;
}

BCLReport bcl_dilation_certify(const BCLTriple& t, int n, int d, double tol, double purity_tol) {
  if (n < 2) throw InvalidInput("BCL dilation needs n >= 2");
  if (d < 2) throw InvalidInput("BCL dilation needs degree cap >= 2");
  const int k = n - 1;
  const BCLPair pair = bcl_pair(t, k);
  BCLReport rep;

  MultiplierSymbol zp(k, t.e_dim);
  zp.add_term(MultiIndex::unit(static_cast<std::size_t>(k), static_cast<std::size_t>(t.axis)),
              Eigen::MatrixXcd::Identity(t.e_dim, t.e_dim));
  rep.product_error = std::max(max_coeff_diff(pair.phi_p * pair.phi_q, zp), max_coeff_diff(pair.phi_q * pair.phi_p, zp));
  if (rep.product_error > 1e-12) rep.failures.push_back("BCL product identity");

  auto basis = TruncatedBasis::polydisc(k, KernelSpec1D::hardy(), d, t.e_dim);
  std::vector<OperatorMatrix> tuple;
  for (int i = 0; i < k; ++i) {
    if (i == t.axis) continue;
    tuple.push_back(shift_matrix(basis, i));
  }
  tuple.push_back(multiplier_matrix(basis, pair.phi_p));
  tuple.push_back(multiplier_matrix(basis, pair.phi_q));

  const Eigen::Index comm_cols = basis->block_size(d - 2);
  const Eigen::Index iso_cols = basis->block_size(d - 1);
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const auto& a = tuple[i].data;
    rep.max_isometry_residual = std::max(rep.max_isometry_residual, linalg::isometry_residual(a.leftCols(iso_cols)));
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      const auto& b = tuple[j].data;
      rep.max_commutator = std::max(rep.max_commutator, linalg::spectral_norm((a * b - b * a).leftCols(comm_cols)));
    }
  }
  if (rep.max_commutator > tol) rep.failures.push_back("commutator residual");
  if (rep.max_isometry_residual > tol) rep.failures.push_back("isometry residual");

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(t.e_dim, t.e_dim);
  rep.rho_p0 = linalg::spectral_radius(t.P * t.U.adjoint());
  rep.rho_q0 = linalg::spectral_radius(t.U * (id - t.P));
  PurityOptions opts;
  opts.tol = purity_tol;
  rep.purity_p = multiplier_purity_verdict(pair.phi_p, basis, d, opts);
  rep.purity_q = multiplier_purity_verdict(pair.phi_q, basis, d, opts);
  const bool expect_p = rep.rho_p0 < 1.0 - purity_tol;
  const bool expect_q = rep.rho_q0 < 1.0 - purity_tol;
  auto matches = [](const PurityReport& r, bool expect_pure) {
    return r.verdict == (expect_pure ? Verdict::pure : Verdict::not_pure);
  };
  rep.verdicts_match = matches(rep.purity_p, expect_p) && matches(rep.purity_q, expect_q);
  if (!rep.verdicts_match) rep.failures.push_back("purity verdict mismatch");
  rep.pass = rep.failures.empty();
  return rep;
}

SchurAglerReport schur_agler_purity(const Colligation& c, int d, double tol) {
  c.validate();
  SchurAglerReport rep;
  rep.jet_degree = d;
  const MultiplierSymbol jet = taylor_jet(c, d);
  auto basis = TruncatedBasis::polydisc(c.num_vars(), KernelSpec1D::hardy(), d, c.e_dim);
  PurityOptions opts;
  opts.tol = tol;
  opts.contractivity = ContractivityCheck::compression;
  rep.purity = multiplier_purity_verdict(jet, basis, d, opts);
  rep.rho_a = linalg::spectral_radius(c.A);
  const bool a_pure = rep.rho_a < 1.0 - tol;
  bool all_below = true;
  for (double r : rep.purity.per_degree_rho) all_below = all_below && r < 1.0 - tol;
  rep.consistent = a_pure == all_below;
  return rep;
}

Eigen::MatrixXcd defect_product(const std::vector<Eigen::MatrixXcd>& x, const Eigen::MatrixXcd& g, int skip) {
  Eigen::MatrixXcd out = g;
  for (int j = static_cast<int>(x.size()) - 1; j >= 0; --j) {
    if (j == skip) continue;
    const auto& xj = x[static_cast<std::size_t>(j)];
    out = (out - xj * out * xj.adjoint()).eval();
  }
  return out;
}

DefectColligation colligation_from_defects(const std::vector<Eigen::MatrixXcd>& x,
                                           const std::vector<Eigen::MatrixXcd>& g, double tol) {
  const std::size_t n = x.size();
  if (n < 2) throw InvalidInput("need a tuple of at least two operators");
  if (g.size() != n - 1) throw InvalidInput("need exactly n - 1 defect operators");
  const Eigen::Index h = x.front().rows();
  for (const auto& xi : x) require_square(xi, h, "tuple operator");
  for (const auto& gi : g) require_square(gi, h, "defect operator");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (linalg::spectral_norm(x[i] * x[j] - x[j] * x[i]) > tol) {
        throw PreconditionViolation("tuple does not commute");
      }

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(h, h);
  const Eigen::MatrixXcd& xn = x.back();
  Eigen::MatrixXcd split = id - xn * xn.adjoint();
  for (const auto& gi : g) {
    if (linalg::spectral_norm(gi - gi.adjoint()) > tol || linalg::min_hermitian_eigenvalue(gi) < -tol) {
      throw PreconditionViolation("defect operators must be positive");
    }
    split -= gi;
  }
  if (linalg::spectral_norm(split) > tol) {
    throw PreconditionViolation("I - X_n X_n^* differs from sum G_i by " + format_number(linalg::spectral_norm(split)));
  }

  const std::vector<Eigen::MatrixXcd> xhat(x.begin(), x.end() - 1);
  const Eigen::MatrixXcd delta = defect_product(xhat, id);
  if (linalg::min_hermitian_eigenvalue(delta) < -tol) throw PreconditionViolation("Szego defect is not positive");

  DefectColligation out;
  out.defect_root = linalg::psd_sqrt(delta);
  out.defect_frame = linalg::orthonormal_range(out.defect_root);
  const Eigen::Index e = out.defect_frame.cols();
  if (e == 0) throw PreconditionViolation("defect space is trivial");

  std::vector<int> h_dims;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Eigen::MatrixXcd s = defect_product(xhat, g[i], static_cast<int>(i));
    if (linalg::min_hermitian_eigenvalue(s) < -tol) {
      throw PreconditionViolation("S_X(G_" + std::to_string(i + 1) + ") is not positive");
    }
    out.f_roots.push_back(linalg::psd_sqrt(s));
    out.f_frames.push_back(linalg::orthonormal_range(out.f_roots.back()));
    h_dims.push_back(static_cast<int>(out.f_frames.back().cols()));
  }
  const Eigen::Index total = e + std::accumulate(h_dims.begin(), h_dims.end(), Eigen::Index{0});

  // Graph pair in coordinates of ran D (+) ran F_1 (+) ... (+) ran F_k.
  Eigen::MatrixXcd v(total, h), w(total, h);
  v.topRows(e) = out.defect_frame.adjoint() * out.defect_root;
  w.topRows(e) = out.defect_frame.adjoint() * out.defect_root * xn.adjoint();
  Eigen::Index row = e;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& q = out.f_frames[i];
    const auto& f = out.f_roots[i];
    v.middleRows(row, q.cols()) = q.adjoint() * f * x[i].adjoint();
    w.middleRows(row, q.cols()) = q.adjoint() * f;
    row += q.cols();
  }
  out.graph_residual = linalg::spectral_norm(v.adjoint() * v - w.adjoint() * w);
  if (out.graph_residual > tol) {
    throw PreconditionViolation("graph map is not isometric (residual " + format_number(out.graph_residual) + ")");
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cut = linalg::kRankThreshold * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  const Eigen::MatrixXcd qv = svd.matrixU().leftCols(r);
  const Eigen::MatrixXcd qw =
      w * svd.matrixV().leftCols(r) * sv.head(r).cwiseInverse().asDiagonal();
  const Eigen::MatrixXcd cv = linalg::orthogonal_complement(qv);
  const Eigen::MatrixXcd cw = linalg::orthogonal_complement(qw);
  if (cv.cols() != cw.cols()) {
    throw NoUnitaryExtension("no unitary extension at this truncation: complements have dimensions " +
                             std::to_string(cv.cols()) + " and " + std::to_string(cw.cols()));
  }
  const Eigen::MatrixXcd u = qw * qv.adjoint() + cw * cv.adjoint();
  out.colligation = Colligation::from_matrix(u, static_cast<int>(e), h_dims);
  try {
    out.colligation.validate(std::max(tol, 1e-10));
  } catch (const InvalidInput& err) {
    throw NoUnitaryExtension(std::string("assembled map is not unitary: ") + err.what());
  }
  return out;
}

IntertwiningReport intertwining_check(const DefectColligation& dc, const std::vector<Eigen::MatrixXcd>& x,
                                      int d) {
  const Colligation& c = dc.colligation;
  const int k = c.num_vars();
  if (static_cast<int>(x.size()) != k + 1) throw InvalidInput("tuple length does not match the colligation");
  auto basis = TruncatedBasis::polydisc(k, KernelSpec1D::hardy(), d, c.e_dim);
  const Eigen::Index h = x.front().rows();

  // Pi, one block row per monomial (Hardy monomials have norm one).
  const Eigen::MatrixXcd top = dc.defect_frame.adjoint() * dc.defect_root;
  Eigen::MatrixXcd pi(basis->dim(), h);
  for (std::size_t p = 0; p < basis->num_monomials(); ++p) {
    const MultiIndex& alpha = basis->indices()[p];
    Eigen::MatrixXcd block = top;
    for (int i = 0; i < k; ++i)
      for (int s = 0; s < alpha[static_cast<std::size_t>(i)]; ++s) block = block * x[static_cast<std::size_t>(i)].adjoint();
    pi.middleRows(basis->coord(p, 0), c.e_dim) = block;
  }

  IntertwiningReport rep;
  for (int i = 0; i < k; ++i) {
    const Eigen::MatrixXcd lhs = pi * x[static_cast<std::size_t>(i)].adjoint();
    const Eigen::MatrixXcd rhs = shift_matrix(basis, i).data.adjoint() * pi;
    rep.shift_residuals.push_back(linalg::spectral_norm(lhs - rhs));
    rep.max_residual = std::max(rep.max_residual, rep.shift_residuals.back());
  }
  const MultiplierSymbol psi = taylor_jet(c.adjoint(), d);
  const Eigen::MatrixXcd m_psi_adj = multiplier_matrix(basis, psi).data.adjoint();
  rep.symbol_residual = linalg::spectral_norm(pi * x.back().adjoint() - m_psi_adj * pi);
  rep.max_residual = std::max(rep.max_residual, rep.symbol_residual);
  return rep;
}

}  // namespace rkhs
