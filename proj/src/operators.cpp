#include "rkhs/operators.hpp"

#include <algorithm>
#include <cmath>

#include "rkhs/error.hpp"
#include "rkhs/linalg.hpp"

namespace rkhs {

namespace {

bool diagonal_in_basis(const Eigen::MatrixXcd& g) {
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  Eigen::MatrixXcd off = g;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

void require_same_space(const TruncatedBasis& a, const TruncatedBasis& b, const char* what) {
  if (!a.same_space(b)) throw InvalidInput(std::string(what) + ": operators act on different spaces");
}

}  // namespace

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix out;
  out.data = data.adjoint();
  out.domain = codomain;
  out.codomain = domain;
  out.exactness_degree = adjoint_exact ? codomain->degree_cap() : -1;
  out.lift = 0;
  out.adjoint_exact = false;
  return out;
}

OperatorMatrix OperatorMatrix::restrict_domain(int d) const {
  if (d < 0 || d > domain->degree_cap()) throw InvalidInput("restriction degree out of range");
  OperatorMatrix out = *this;
  out.domain = domain->with_degree_cap(d);
  out.data = data.leftCols(domain->block_size(d));
  out.exactness_degree = std::min(exactness_degree, d);
  return out;
}

OperatorMatrix OperatorMatrix::pad_to_square() const {
  OperatorMatrix out = *this;
  out.domain = domain->with_degree_cap(codomain->degree_cap());
  out.data = Eigen::MatrixXcd::Zero(codomain->dim(), out.domain->dim());
  out.data.leftCols(data.cols()) = data;
  return out;
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& rhs) const {
  require_same_space(*domain, *rhs.codomain, "compose");
  OperatorMatrix out;
  out.data = data * rhs.data;
  out.domain = rhs.domain;
  out.codomain = codomain;
  out.exactness_degree = std::min(rhs.exactness_degree, exactness_degree - rhs.lift);
  out.lift = lift + rhs.lift;
  out.adjoint_exact = adjoint_exact && rhs.adjoint_exact;
  return out;
}

SpaceVector OperatorMatrix::apply(const SpaceVector& v) const {
  if (v.coords.size() != data.cols()) throw InvalidInput("vector does not live in the domain");
  return SpaceVector{codomain, data * v.coords};
}

OperatorMatrix identity_operator(const TruncatedBasis::Ptr& basis) {
  OperatorMatrix out;
  out.data = Eigen::MatrixXcd::Identity(basis->dim(), basis->dim());
  out.domain = out.codomain = basis;
  out.exactness_degree = basis->degree_cap();
  out.adjoint_exact = true;
  return out;
}

OperatorMatrix shift_matrix(const TruncatedBasis::Ptr& basis, int axis) {
  const int n = basis->num_vars();
  if (axis < 0 || axis >= n) throw InvalidInput("shift axis out of range");
  const int e = basis->coeff_dim();
  const MultiIndex step = MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(axis));

  OperatorMatrix out;
  out.data = Eigen::MatrixXcd::Zero(basis->dim(), basis->dim());
  out.domain = out.codomain = basis;
  out.exactness_degree = basis->degree_cap() - 1;
  out.lift = 1;
  out.adjoint_exact = true;
  for (std::size_t p = 0; p < basis->num_monomials(); ++p) {
    auto q = basis->position(basis->indices()[p] + step);
    if (!q) continue;  // raised past the cap
    const double w = basis->norm_at(*q) / basis->norm_at(p);
    for (int j = 0; j < e; ++j) out.data(basis->coord(*q, j), basis->coord(p, j)) = w;
  }
  return out;
}

std::vector<OperatorMatrix> shift_tuple(const TruncatedBasis::Ptr& basis) {
  std::vector<OperatorMatrix> out;
  for (int i = 0; i < basis->num_vars(); ++i) out.push_back(shift_matrix(basis, i));
  return out;
}

OperatorMatrix multiplier_matrix(const TruncatedBasis::Ptr& basis, const MultiplierSymbol& phi) {
  if (phi.num_vars() != basis->num_vars()) throw InvalidInput("symbol and basis differ in variables");
  if (phi.coeff_dim() != basis->coeff_dim()) {
    throw InvalidInput("symbol and basis differ in coefficient dimension");
  }
  const int e = basis->coeff_dim();
  OperatorMatrix out;
  out.data = Eigen::MatrixXcd::Zero(basis->dim(), basis->dim());
  out.domain = out.codomain = basis;
  out.lift = phi.degree();
  out.exactness_degree = basis->degree_cap() - out.lift;
  out.adjoint_exact = true;
  for (std::size_t p = 0; p < basis->num_monomials(); ++p) {
    const MultiIndex& alpha = basis->indices()[p];
    for (const auto& [beta, coeff] : phi.terms()) {
      auto q = basis->position(alpha + beta);
      if (!q) continue;
      const double w = basis->norm_at(*q) / basis->norm_at(p);
      out.data.block(basis->coord(*q, 0), basis->coord(p, 0), e, e) += w * coeff;
    }
  }
  return out;
}

OperatorMatrix cauchy_dual(const OperatorMatrix& t, double tol) {
  const double smin = linalg::min_singular_value(t.data);
  if (!(smin > tol)) throw NotBoundedBelow(smin, tol);
  const Eigen::MatrixXcd gram = t.data.adjoint() * t.data;
  OperatorMatrix out = t;
  // (T^* T)^{-1} T^* then take the adjoint.
  out.data = gram.ldlt().solve(t.data.adjoint()).adjoint();
  const bool diagonal = diagonal_in_basis(gram);
  const bool fully_exact = t.exactness_degree >= t.domain->degree_cap();
  out.exactness_degree = (diagonal && fully_exact) ? t.exactness_degree : -1;
  out.adjoint_exact = t.adjoint_exact && diagonal && fully_exact;
  return out;
}

OperatorMatrix range_projection(const OperatorMatrix& t, double tol) {
  const double smin = linalg::min_singular_value(t.data);
  if (!(smin > tol)) throw NotBoundedBelow(smin, tol);
  const Eigen::MatrixXcd gram = t.data.adjoint() * t.data;
  OperatorMatrix out;
  out.data = t.data * gram.ldlt().solve(t.data.adjoint());
  out.data = 0.5 * (out.data + out.data.adjoint()).eval();
  out.domain = out.codomain = t.codomain;
  const bool exact = diagonal_in_basis(gram) && t.adjoint_exact &&
                     t.exactness_degree >= t.domain->degree_cap();
  out.exactness_degree = exact ? t.codomain->degree_cap() : -1;
  out.adjoint_exact = exact;
  return out;
}

OperatorMatrix truncated_cauchy_dual(const OperatorMatrix& t, double tol) {
  if (t.exactness_degree < 0) throw InvalidInput("operator has no certified block");
  return cauchy_dual(t.exact_block(), tol).pad_to_square();
}

double SubspaceFrame::orthonormality_residual() const { return linalg::isometry_residual(columns); }

SubspaceFrame SubspaceFrame::span_of(const Eigen::MatrixXcd& vectors) {
  return SubspaceFrame{linalg::orthonormal_range(vectors)};
}

SubspaceFrame wandering_subspace(const std::vector<OperatorMatrix>& x) {
  if (x.empty()) throw InvalidInput("empty tuple");
  const Eigen::Index dim = x.front().codomain->dim();
  Eigen::Index rows = 0;
  for (const auto& op : x) {
    require_same_space(*op.codomain, *x.front().codomain, "wandering_subspace");
    rows += op.data.cols();
  }
  Eigen::MatrixXcd stacked(rows, dim);
  Eigen::Index r = 0;
  for (const auto& op : x) {
    stacked.middleRows(r, op.data.cols()) = op.data.adjoint();
    r += op.data.cols();
  }
  return SubspaceFrame{linalg::null_space(stacked)};
}

SubspaceFrame generated_subspace(const std::vector<OperatorMatrix>& x, const Eigen::MatrixXcd& vectors,
                                 int max_degree) {
  std::vector<Eigen::MatrixXcd> layers{vectors};
  Eigen::MatrixXcd all = vectors;
  for (int d = 1; d <= max_degree; ++d) {
    // Each new layer is X_i applied to the previous layer; repeats are
    // harmless because only the span is kept.
    Eigen::MatrixXcd next(vectors.rows(), 0);
    for (const auto& op : x) {
      Eigen::MatrixXcd img = op.data * layers.back();
      Eigen::MatrixXcd grown(next.rows(), next.cols() + img.cols());
      grown << next, img;
      next = linalg::orthonormal_range(grown);
    }
    layers.push_back(next);
    Eigen::MatrixXcd grown(all.rows(), all.cols() + next.cols());
    grown << all, next;
    all = linalg::orthonormal_range(grown);
  }
  return SubspaceFrame{linalg::orthonormal_range(all)};
}

SubspaceFrame monomial_ideal(const TruncatedBasis::Ptr& basis, const std::vector<MultiIndex>& generators) {
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != basis->num_vars()) throw InvalidInput("generator has the wrong length");
  std::vector<Eigen::Index> coords;
  for (std::size_t p = 0; p < basis->num_monomials(); ++p) {
    const MultiIndex& alpha = basis->indices()[p];
    const bool inside = std::any_of(generators.begin(), generators.end(),
                                    [&](const MultiIndex& g) { return g.divides(alpha); });
    if (!inside) continue;
    for (int j = 0; j < basis->coeff_dim(); ++j) coords.push_back(basis->coord(p, j));
  }
  Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(basis->dim(), static_cast<Eigen::Index>(coords.size()));
  for (std::size_t k = 0; k < coords.size(); ++k) cols(coords[k], static_cast<Eigen::Index>(k)) = 1.0;
  return SubspaceFrame{cols};
}

SubspaceFrame generated_by_polynomial(const TruncatedBasis::Ptr& basis, const MultiplierSymbol& f) {
  if (f.coeff_dim() != 1) throw InvalidInput("generator polynomial must be scalar");
  if (std::abs(f.at_zero()(0, 0)) != 0.0) throw InvalidInput("generator polynomial must vanish at 0");
  const OperatorMatrix m = multiplier_matrix(basis, f.tensor_identity(basis->coeff_dim()));
  return SubspaceFrame::span_of(m.data);
}

Eigen::MatrixXcd union_projection_block_form(const std::vector<Eigen::MatrixXcd>& p) {
  if (p.empty()) throw InvalidInput("no projections");
  const Eigen::Index n = p.front().rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < p.size(); ++k) {
    Eigen::MatrixXcd term = p[k];
    for (std::size_t j = k + 1; j < p.size(); ++j) term = term * (id - p[j]);
    sum += term;
  }
  return sum;
}

UnionProjection union_projection(const std::vector<Eigen::MatrixXcd>& p, double tol) {
  if (p.empty()) throw InvalidInput("no projections");
  const Eigen::Index n = p.front().rows();
  for (const auto& pi : p) {
    if (pi.rows() != n || pi.cols() != n) throw InvalidInput("projection shapes differ");
    if (linalg::spectral_norm(pi * pi - pi) > tol || linalg::spectral_norm(pi - pi.adjoint()) > tol) {
      throw PreconditionViolation("input is not an orthogonal projection");
    }
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (linalg::spectral_norm(p[i] * p[j] - p[j] * p[i]) > tol) {
        throw PreconditionViolation("projections do not commute");
      }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd prod = id;
  for (const auto& pi : p) prod = prod * (id - pi);
  UnionProjection out;
  out.projection = id - prod;
  out.block_form_residual = linalg::spectral_norm(out.projection - union_projection_block_form(p));
  return out;
}

DoublyCommutingReport doubly_commuting_check(const std::vector<OperatorMatrix>& x, double tol) {
  if (x.empty()) throw InvalidInput("empty tuple");
  const auto& basis = x.front().domain;
  int max_lift = 0;
  for (const auto& op : x) {
    require_same_space(*op.domain, *basis, "doubly_commuting_check");
    require_same_space(*op.codomain, *basis, "doubly_commuting_check");
    max_lift = std::max(max_lift, op.lift);
  }
  DoublyCommutingReport rep;
  rep.budget = basis->degree_cap() - 2 * max_lift;
  if (rep.budget < 0) throw InvalidInput("truncation too small for a doubly-commuting check");
  const Eigen::Index cols = basis->block_size(rep.budget);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j) continue;
      const auto& a = x[i].data;
      const auto& b = x[j].data;
      const Eigen::MatrixXcd comm = (a * b - b * a).leftCols(cols);
      const Eigen::MatrixXcd cross = (a.adjoint() * b - b * a.adjoint()).leftCols(cols);
      rep.max_commutator = std::max(rep.max_commutator, linalg::spectral_norm(comm));
      rep.max_cross_commutator = std::max(rep.max_cross_commutator, linalg::spectral_norm(cross));
    }
  }
  rep.pass = rep.max_commutator <= tol && rep.max_cross_commutator <= tol;
  return rep;
}

WandererWitness wandering_witness(const std::vector<OperatorMatrix>& x, const SubspaceFrame& m,
                                  int budget, double tol) {
  if (x.empty()) throw InvalidInput("empty tuple");
  const auto& basis = x.front().codomain;
  const Eigen::Index dim = basis->dim();
  const int n = static_cast<int>(x.size());
  if (m.columns.rows() != dim) throw InvalidInput("frame does not live in the tuple's space");
  if (m.dim() == 0) throw PreconditionViolation("subspace is {0}");
  if (m.dim() >= dim) throw PreconditionViolation("subspace is the whole space (not proper)");
  if (m.orthonormality_residual() > 1e-12) throw InvalidInput("frame columns are not orthonormal");

  const Eigen::MatrixXcd& q = m.columns;
  for (const auto& op : x) {
    const Eigen::MatrixXcd leak = op.data * q - q * (q.adjoint() * op.data * q);
    if (linalg::spectral_norm(leak) > tol) throw PreconditionViolation("subspace is not invariant");
  }
  const SubspaceFrame w = wandering_subspace(x);
  if (linalg::spectral_norm(q.adjoint() * w.columns) > tol) {
    throw PreconditionViolation("W(X) is not orthogonal to the subspace");
  }

  std::vector<OperatorMatrix> dual;
  for (const auto& op : x) dual.push_back(truncated_cauchy_dual(op));

  const auto indices = enumerate_indices(n, std::max(budget, 0));
  WandererWitness out;
  for (Eigen::Index h = 0; h < w.dim(); ++h) {
    // X'^m h for every |m| <= budget, built up in graded order.
    std::vector<Eigen::VectorXcd> images(indices.size());
    std::map<MultiIndex, std::size_t> where;
    std::vector<MultiIndex> hits;
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const MultiIndex& mi = indices[k];
      where.emplace(mi, k);
      if (mi.total() == 0) {
        images[k] = w.columns.col(h);
      } else {
        std::size_t i = 0;
        while (mi[i] == 0) ++i;
        MultiIndex prev = mi;
        prev[i] -= 1;
        images[k] = dual[i].data * images[where.at(prev)];
      }
      const double scale = std::max(1.0, images[k].norm());
      if ((q.adjoint() * images[k]).norm() > linalg::kRankThreshold * scale) hits.push_back(mi);
    }
    if (hits.empty()) continue;

    // Recursive coordinate minimization.
    std::vector<MultiIndex> candidates = hits;
    for (int i = 0; i < n; ++i) {
      int best = candidates.front()[static_cast<std::size_t>(i)];
      for (const auto& c : candidates) best = std::min(best, c[static_cast<std::size_t>(i)]);
      std::erase_if(candidates, [&](const MultiIndex& c) { return c[static_cast<std::size_t>(i)] != best; });
    }
    out.found = true;
    out.h_index = static_cast<std::size_t>(h);
    out.m_tilde = candidates.front();
    out.eta = SpaceVector{basis, q * (q.adjoint() * images[where.at(out.m_tilde)])};
    for (const auto& op : x) {
      const double r = (q.adjoint() * (op.data.adjoint() * out.eta.coords)).norm();
      out.residuals.push_back(r);
      out.max_residual = std::max(out.max_residual, r);
    }
    return out;
  }
  return out;
}

}  // namespace rkhs
