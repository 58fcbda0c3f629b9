#pragma once

// Seeded generators for test and sweep inputs. All draws go through one
// mt19937_64 so a seed fixes the whole sequence.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "rkhs/dilation.hpp"

namespace rkhs {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal();
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
  cplx complex_normal();
  Eigen::MatrixXcd gaussian(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
Eigen::MatrixXcd haar_unitary(Rng& rng, Eigen::Index n);

/// W diag(1_S) W^* for a random subset S of the given rank and Haar W.
Eigen::MatrixXcd random_projection(Rng& rng, Eigen::Index n, Eigen::Index rank);

/// Gaussian coefficients on every |alpha| <= degree.
MultiplierSymbol random_symbol(Rng& rng, int num_vars, int coeff_dim, int degree);

inline constexpr double kSymbolSafety = 0.99;

/// Random symbol rescaled so its padded multiplier norm on `space` at d_max
/// equals kSymbolSafety.
MultiplierSymbol random_contractive_symbol(Rng& rng, const TruncatedBasis::Ptr& space, int d_max,
                                           int degree);

/// Contractive symbol whose constant term has a unimodular eigenvalue. For
/// dim E = 1 it is a unimodular constant; otherwise W (U_0 (+) Psi) W^* with
/// U_0 a Haar unitary on a random number of coordinates and Psi a random
/// contractive symbol on the rest.
MultiplierSymbol forced_unitary_symbol(Rng& rng, const TruncatedBasis::Ptr& space, int d_max, int degree);

/// Haar U, P of the given rank (random in [0, e_dim] when rank < 0).
BCLTriple random_bcl_triple(Rng& rng, int e_dim, int axis, int rank = -1);

/// Colligation whose block matrix is Haar unitary.
Colligation random_colligation(Rng& rng, int e_dim, const std::vector<int>& h_dims);

}  // namespace rkhs
