#pragma once

// Graded truncations V_D = span{z^alpha : |alpha| <= D} (x) E of quasi-scalar
// reproducing kernel Hilbert spaces on the polydisc and the ball.
//
// Coordinates are always taken in the normalized basis e_alpha (x) xi_j with
// e_alpha = z^alpha / ||z^alpha||. The ordering is graded lexicographic in
// alpha with the coefficient index j running fastest, so V_d for d <= D is
// the leading block of length count_indices(n, d) * dim E.

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "rkhs/kernels.hpp"
#include "rkhs/multi_index.hpp"

namespace rkhs {

using cplx = std::complex<double>;

/// Default ceiling on dim E.
inline constexpr int kMaxCoeffDim = 8;

enum class Geometry { polydisc, ball };

class TruncatedBasis {
 public:
  using Ptr = std::shared_ptr<const TruncatedBasis>;

  static Ptr polydisc(std::vector<KernelSpec1D> factors, int degree_cap, int coeff_dim = 1,
                      int max_coeff_dim = kMaxCoeffDim);
  static Ptr polydisc(int n, const KernelSpec1D& factor, int degree_cap, int coeff_dim = 1,
                      int max_coeff_dim = kMaxCoeffDim);
  static Ptr ball(const BallKernelSpec& spec, int degree_cap, int coeff_dim = 1,
                  int max_coeff_dim = kMaxCoeffDim);

  /// Same space and coefficient dimension, different degree cap.
  Ptr with_degree_cap(int degree_cap) const;
  /// Same space and degree cap, different coefficient dimension.
  Ptr with_coeff_dim(int coeff_dim) const;

  Geometry geometry() const { return geometry_; }
  int num_vars() const { return n_; }
  int degree_cap() const { return degree_cap_; }
  int coeff_dim() const { return coeff_dim_; }
  std::size_t num_monomials() const { return indices_.size(); }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(indices_.size()) * coeff_dim_; }

  const std::vector<MultiIndex>& indices() const { return indices_; }
  const std::vector<KernelSpec1D>& factors() const { return factors_; }
  const BallKernelSpec& ball_spec() const { return ball_spec_; }

  /// ||z^alpha||; throws RangeError when |alpha| exceeds the cap.
  double monomial_norm(const MultiIndex& alpha) const;
  double norm_at(std::size_t pos) const { return norms_[pos]; }

  std::optional<std::size_t> position(const MultiIndex& alpha) const;
  Eigen::Index coord(std::size_t monomial_pos, int j) const {
    return static_cast<Eigen::Index>(monomial_pos) * coeff_dim_ + j;
  }
  /// Number of coordinates with degree <= d (the leading V_d block).
  Eigen::Index block_size(int d) const;
  int degree_of_coord(Eigen::Index k) const {
    return indices_[static_cast<std::size_t>(k / coeff_dim_)].total();
  }

  bool same_space(const TruncatedBasis& o) const;
  std::string describe() const;

 private:
  TruncatedBasis() = default;
  void build();

  Geometry geometry_ = Geometry::polydisc;
  int n_ = 1;
  int degree_cap_ = 0;
  int coeff_dim_ = 1;
  int max_coeff_dim_ = kMaxCoeffDim;
  std::vector<KernelSpec1D> factors_;
  BallKernelSpec ball_spec_;
  std::vector<MultiIndex> indices_;
  std::vector<double> norms_;
  std::map<MultiIndex, std::size_t> lookup_;
};

/// ||z^alpha|| computed from the kernel description alone.
double monomial_norm(const TruncatedBasis& basis, const MultiIndex& alpha);

struct SpaceVector {
  TruncatedBasis::Ptr basis;
  Eigen::VectorXcd coords;

  double norm() const { return coords.norm(); }
  /// Value at a point, f(lambda) in E.
  Eigen::VectorXcd evaluate(const std::vector<cplx>& lambda) const;
};

/// Truncation to V_D of the kernel function K(., lambda) xi.
SpaceVector kernel_vector(const TruncatedBasis::Ptr& basis, const std::vector<cplx>& lambda,
                          const Eigen::VectorXcd& xi);

/// Monomial power lambda^alpha.
cplx monomial_value(const MultiIndex& alpha, const std::vector<cplx>& lambda);

}  // namespace rkhs
