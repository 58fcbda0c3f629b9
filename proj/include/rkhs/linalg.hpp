#pragma once

// Dense complex helpers shared by the operator modules. Null spaces, ranges
// and principal angles all go through a singular value decomposition.

#include <Eigen/Dense>

namespace rkhs::linalg {

/// Singular values below this (relative to max(1, sigma_max)) count as zero.
inline constexpr double kRankThreshold = 1e-10;

double spectral_norm(const Eigen::MatrixXcd& m);
double min_singular_value(const Eigen::MatrixXcd& m);

/// Orthonormal basis of ker m.
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& m, double threshold = kRankThreshold);
/// Orthonormal basis of the column span of m.
Eigen::MatrixXcd orthonormal_range(const Eigen::MatrixXcd& m, double threshold = kRankThreshold);
/// Orthonormal basis of the orthogonal complement of span(q) in C^{q.rows()}.
Eigen::MatrixXcd orthogonal_complement(const Eigen::MatrixXcd& q, double threshold = kRankThreshold);

Eigen::Index numerical_rank(const Eigen::MatrixXcd& m, double threshold = kRankThreshold);

/// Largest principal angle between two subspaces given by orthonormal
/// columns, computed from sines so that tiny angles stay accurate. Returns
/// pi/2 when the dimensions differ.
double max_principal_angle(const Eigen::MatrixXcd& q1, const Eigen::MatrixXcd& q2);

double spectral_radius(const Eigen::MatrixXcd& m);
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& m);

/// Hermitian part is assumed; negative eigenvalues are clamped to zero.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& h);
double min_hermitian_eigenvalue(const Eigen::MatrixXcd& h);

/// ||m^* m - I|| in spectral norm.
double isometry_residual(const Eigen::MatrixXcd& m);
/// max(||u^* u - I||, ||u u^* - I||).
double unitary_residual(const Eigen::MatrixXcd& u);

}  // namespace rkhs::linalg
