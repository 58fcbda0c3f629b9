#pragma once

// Diagonal power-series descriptions of the kernels used throughout the
// library. A one-variable kernel is k(z, w) = sum_m c_m (z conj(w))^m; a
// unitarily invariant ball kernel is k(z, w) = sum_j a_j <z, w>^j.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rkhs {

/// Largest coefficient index any kernel routine will produce.
inline constexpr int kMaxSeriesOrder = 64;

enum class Family1D { hardy, bergman, weighted_bergman, dirichlet, custom };

struct KernelSpec1D {
  Family1D family = Family1D::hardy;
  double alpha = 0.0;                 // weighted_bergman only
  std::vector<double> custom_coeffs;  // custom only

  static KernelSpec1D hardy() { return {Family1D::hardy, 0.0, {}}; }
  static KernelSpec1D bergman() { return {Family1D::bergman, 0.0, {}}; }
  static KernelSpec1D weighted_bergman(double alpha);
  static KernelSpec1D dirichlet() { return {Family1D::dirichlet, 0.0, {}}; }
  static KernelSpec1D custom(std::vector<double> coeffs);

  // Weighted Bergman guarantees for the wandering-subspace results only
  // extend to alpha in (-1, 0]; other parameters are usable but uncertified.
  bool theorem_certified() const;
};

enum class BallFamily { hm, unitarily_invariant_custom };

struct BallKernelSpec {
  int n = 1;
  BallFamily family = BallFamily::hm;
  int m = 1;
  std::vector<double> a_coeffs;

  static BallKernelSpec hm(int n, int m);
  static BallKernelSpec drury_arveson(int n) { return hm(n, 1); }
  static BallKernelSpec custom(int n, std::vector<double> a);
};

std::string to_string(Family1D f);
std::string to_string(const KernelSpec1D& spec);
std::string to_string(const BallKernelSpec& spec);

/// c_m of a one-variable kernel. Throws RangeError when m exceeds the cap or
/// the coefficient is not a finite positive number.
double coeff_1d(const KernelSpec1D& spec, int m);

/// a_j of a unitarily invariant ball kernel.
double ball_coeff(const BallKernelSpec& spec, int j);

class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t length() const { return coeffs_.size(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  // Truncated Cauchy product; both operands must have the same length.
  PowerSeries operator*(const PowerSeries& other) const;
  PowerSeries operator-(const PowerSeries& other) const;

  static PowerSeries one(std::size_t length);

 private:
  std::vector<double> coeffs_;
};

/// Coefficients c_0..c_L of the diagonal series.
PowerSeries diagonal_series(const KernelSpec1D& spec, int L);
PowerSeries diagonal_series(const BallKernelSpec& spec, int L);

/// r with c * r = 1 + O(x^length). Throws InvalidInput if c_0 == 0.
PowerSeries reciprocal_series(const PowerSeries& c);

struct CnpCertificate {
  bool is_cnp_to_order = false;
  int order = 0;
  PowerSeries b;  // coefficients of 1 - 1/k
  std::optional<std::size_t> first_violation;
};

/// Checks b_j >= -tol for 1 <= j <= L where 1 - 1/k = sum b_j x^j. The input
/// must be normalized (k_0 == 1) and carry at least L + 1 coefficients.
CnpCertificate cnp_certificate(const PowerSeries& k, int L, double tol = 1e-12);

struct ChenCoefficients {
  PowerSeries c;  // coefficients of 1/k, c_0 = 1
  bool signs_ok = false;
};

ChenCoefficients chen_coeffs(const BallKernelSpec& spec, int L, double tol = 1e-12);

}  // namespace rkhs
