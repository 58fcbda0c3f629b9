#include "rkhs/spaces.hpp"

#include <cmath>
#include <sstream>

#include "rkhs/error.hpp"

namespace rkhs {

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

namespace {

void append_homogeneous(int n, int d, std::size_t pos, MultiIndex& cur,
                        std::vector<MultiIndex>& out) {
  if (pos + 1 == static_cast<std::size_t>(n)) {
    cur[pos] = d;
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (int k = 0; k <= d; ++k) {
    cur[pos] = k;
    append_homogeneous(n, d - k, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> homogeneous_indices(int n, int d) {
  if (n < 1 || d < 0) throw InvalidInput("homogeneous_indices needs n >= 1 and d >= 0");
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(n));
  append_homogeneous(n, d, 0, cur, out);
  return out;
}

std::vector<MultiIndex> enumerate_indices(int n, int D) {
  if (n < 1 || D < 0) throw InvalidInput("enumerate_indices needs n >= 1 and D >= 0");
  std::vector<MultiIndex> out;
  out.reserve(count_indices(n, D));
  for (int d = 0; d <= D; ++d) {
    auto block = homogeneous_indices(n, d);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

std::size_t count_indices(int n, int D) {
  // C(n + D, n), exact since each partial product is itself a binomial.
  std::size_t c = 1;
  for (int k = 1; k <= n; ++k) c = c * static_cast<std::size_t>(D + k) / static_cast<std::size_t>(k);
  return c;
}

double factorial_product(const MultiIndex& a) {
  double p = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 2; k <= a[i]; ++k) p *= k;
  return p;
}

double multinomial(const MultiIndex& a) {
  // Product of binomials C(a_1 + ... + a_i, a_i) keeps intermediates integral.
  double value = 1.0;
  int running = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int k = 1; k <= a[i]; ++k) {
      ++running;
      value = value * running / k;
    }
  }
  return std::round(value);
}

TruncatedBasis::Ptr TruncatedBasis::polydisc(std::vector<KernelSpec1D> factors, int degree_cap,
                                             int coeff_dim, int max_coeff_dim) {
  if (factors.empty()) throw InvalidInput("polydisc basis needs at least one factor");
  auto b = std::shared_ptr<TruncatedBasis>(new TruncatedBasis());
  b->geometry_ = Geometry::polydisc;
  b->n_ = static_cast<int>(factors.size());
  b->factors_ = std::move(factors);
  b->degree_cap_ = degree_cap;
  b->coeff_dim_ = coeff_dim;
  b->max_coeff_dim_ = max_coeff_dim;
  b->build();
  return b;
}

TruncatedBasis::Ptr TruncatedBasis::polydisc(int n, const KernelSpec1D& factor, int degree_cap,
                                             int coeff_dim, int max_coeff_dim) {
  if (n < 1) throw InvalidInput("polydisc dimension must be positive");
  return polydisc(std::vector<KernelSpec1D>(static_cast<std::size_t>(n), factor), degree_cap,
                  coeff_dim, max_coeff_dim);
}

TruncatedBasis::Ptr TruncatedBasis::ball(const BallKernelSpec& spec, int degree_cap,
                                         int coeff_dim, int max_coeff_dim) {
  if (spec.n < 1) throw InvalidInput("ball dimension must be positive");
  if (ball_coeff(spec, 0) != 1.0) throw InvalidInput("ball kernel must satisfy a_0 = 1");
  auto b = std::shared_ptr<TruncatedBasis>(new TruncatedBasis());
  b->geometry_ = Geometry::ball;
  b->n_ = spec.n;
  b->ball_spec_ = spec;
  b->degree_cap_ = degree_cap;
  b->coeff_dim_ = coeff_dim;
  b->max_coeff_dim_ = max_coeff_dim;
  b->build();
  return b;
}

void TruncatedBasis::build() {
  if (degree_cap_ < 0 || degree_cap_ > kMaxSeriesOrder) {
    throw RangeError("degree cap must lie in [0, " + std::to_string(kMaxSeriesOrder) + "]");
  }
  if (coeff_dim_ < 1 || coeff_dim_ > max_coeff_dim_) {
    throw InvalidInput("coefficient dimension must lie in [1, " + std::to_string(max_coeff_dim_) +
                       "]");
  }
  indices_ = enumerate_indices(n_, degree_cap_);
  norms_.resize(indices_.size());
  lookup_.clear();
  for (std::size_t p = 0; p < indices_.size(); ++p) {
    const MultiIndex& a = indices_[p];
    double sq = 1.0;
    if (geometry_ == Geometry::polydisc) {
      for (int i = 0; i < n_; ++i) sq /= coeff_1d(factors_[static_cast<std::size_t>(i)], a[i]);
    } else {
      sq = 1.0 / (multinomial(a) * ball_coeff(ball_spec_, a.total()));
    }
    // Regularity: monomials must carry finite positive norms.
    if (!std::isfinite(sq) || sq <= 0.0) {
      throw RangeError("monomial " + a.str() + " has no finite positive norm");
    }
    norms_[p] = std::sqrt(sq);
    lookup_.emplace(a, p);
  }
}

TruncatedBasis::Ptr TruncatedBasis::with_degree_cap(int degree_cap) const {
  auto b = std::shared_ptr<TruncatedBasis>(new TruncatedBasis(*this));
  b->degree_cap_ = degree_cap;
  b->build();
  return b;
}

TruncatedBasis::Ptr TruncatedBasis::with_coeff_dim(int coeff_dim) const {
  auto b = std::shared_ptr<TruncatedBasis>(new TruncatedBasis(*this));
  b->coeff_dim_ = coeff_dim;
  b->build();
  return b;
}

double TruncatedBasis::monomial_norm(const MultiIndex& alpha) const {
  auto p = position(alpha);
  if (!p) throw RangeError("multi-index " + alpha.str() + " outside the truncation");
  return norms_[*p];
}

std::optional<std::size_t> TruncatedBasis::position(const MultiIndex& alpha) const {
  if (alpha.size() != static_cast<std::size_t>(n_)) return std::nullopt;
  auto it = lookup_.find(alpha);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Eigen::Index TruncatedBasis::block_size(int d) const {
  if (d < 0) return 0;
  if (d >= degree_cap_) return dim();
  return static_cast<Eigen::Index>(count_indices(n_, d)) * coeff_dim_;
}

bool TruncatedBasis::same_space(const TruncatedBasis& o) const {
  if (geometry_ != o.geometry_ || n_ != o.n_ || degree_cap_ != o.degree_cap_ ||
      coeff_dim_ != o.coeff_dim_) {
    return false;
  }
  return norms_ == o.norms_;
}

std::string TruncatedBasis::describe() const {
  std::ostringstream os;
  if (geometry_ == Geometry::polydisc) {
    os << "polydisc[";
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << to_string(factors_[i]);
    os << "]";
  } else {
    os << to_string(ball_spec_);
  }
  os << " D=" << degree_cap_ << " dimE=" << coeff_dim_;
  return os.str();
}

double monomial_norm(const TruncatedBasis& basis, const MultiIndex& alpha) {
  return basis.monomial_norm(alpha);
}

cplx monomial_value(const MultiIndex& alpha, const std::vector<cplx>& lambda) {
  cplx v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) v *= lambda[i];
  return v;
}

Eigen::VectorXcd SpaceVector::evaluate(const std::vector<cplx>& lambda) const {
  const int e = basis->coeff_dim();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(e);
  for (std::size_t p = 0; p < basis->num_monomials(); ++p) {
    const cplx w = monomial_value(basis->indices()[p], lambda) / basis->norm_at(p);
    for (int j = 0; j < e; ++j) out(j) += w * coords(basis->coord(p, j));
  }
  return out;
}

SpaceVector kernel_vector(const TruncatedBasis::Ptr& basis, const std::vector<cplx>& lambda,
                          const Eigen::VectorXcd& xi) {
  if (lambda.size() != static_cast<std::size_t>(basis->num_vars())) {
    throw InvalidInput("point has the wrong number of coordinates");
  }
  if (xi.size() != basis->coeff_dim()) throw InvalidInput("coefficient vector has wrong size");
  if (basis->geometry() == Geometry::polydisc) {
    for (const cplx& l : lambda)
      if (!(std::abs(l) < 1.0)) throw InvalidInput("point is not inside the open polydisc");
  } else {
    double sq = 0.0;
    for (const cplx& l : lambda) sq += std::norm(l);
    if (!(sq < 1.0)) throw InvalidInput("point is not inside the open ball");
  }
  std::vector<cplx> conj_lambda(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) conj_lambda[i] = std::conj(lambda[i]);

  SpaceVector v{basis, Eigen::VectorXcd::Zero(basis->dim())};
  for (std::size_t p = 0; p < basis->num_monomials(); ++p) {
    const cplx w = monomial_value(basis->indices()[p], conj_lambda) / basis->norm_at(p);
    for (int j = 0; j < basis->coeff_dim(); ++j) v.coords(basis->coord(p, j)) = w * xi(j);
  }
  return v;
}

}  // namespace rkhs
