#include "rkhs/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace rkhs::linalg {

namespace {

double cutoff(const Eigen::VectorXd& s, double threshold) {
  const double top = s.size() > 0 ? s(0) : 0.0;
  return threshold * std::max(1.0, top);
}

}  // namespace

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value(const Eigen::MatrixXcd& m) {
  if (m.cols() == 0) return std::numeric_limits<double>::infinity();
  if (m.rows() < m.cols()) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Eigen::Index numerical_rank(const Eigen::MatrixXcd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  const double cut = cutoff(s, threshold);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& m, double threshold) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Eigen::MatrixXcd::Identity(n, n);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = cutoff(s, threshold);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXcd orthonormal_range(const Eigen::MatrixXcd& m, double threshold) {
  if (m.cols() == 0) return Eigen::MatrixXcd(m.rows(), 0);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = cutoff(s, threshold);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXcd orthogonal_complement(const Eigen::MatrixXcd& q, double threshold) {
  if (q.cols() == 0) return Eigen::MatrixXcd::Identity(q.rows(), q.rows());
  return null_space(q.adjoint(), threshold);
}

double max_principal_angle(const Eigen::MatrixXcd& q1, const Eigen::MatrixXcd& q2) {
  if (q1.cols() != q2.cols()) return std::numbers::pi / 2;
  if (q1.cols() == 0) return 0.0;
  const Eigen::MatrixXcd residual = q1 - q2 * (q2.adjoint() * q1);
  const double s = std::min(1.0, spectral_norm(residual));
  return std::asin(s);
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return Eigen::VectorXcd(0);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  return es.eigenvalues();
}

double spectral_radius(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  return eigenvalues(m).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return h;
  const Eigen::MatrixXcd herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return 0.0;
  const Eigen::MatrixXcd herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double isometry_residual(const Eigen::MatrixXcd& m) {
  if (m.cols() == 0) return 0.0;
  return spectral_norm(m.adjoint() * m - Eigen::MatrixXcd::Identity(m.cols(), m.cols()));
}

double unitary_residual(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return std::max(spectral_norm(u.adjoint() * u - id), spectral_norm(u * u.adjoint() - id));
}

}  // namespace rkhs::linalg
