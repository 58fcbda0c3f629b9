#include "rkhs/kernels.hpp"

#include <cmath>
#include <sstream>

#include "rkhs/error.hpp"

namespace rkhs {

namespace {

void check_index(int m) {
  if (m < 0 || m > kMaxSeriesOrder) {
    throw RangeError("coefficient index " + std::to_string(m) + " outside [0, " +
                     std::to_string(kMaxSeriesOrder) + "]");
  }
}

double checked(double value, int m) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw RangeError("kernel coefficient " + std::to_string(m) +
                     " is not a finite positive number");
  }
  return value;
}

// Coefficient of x^m in (1 - x)^{-s}: the rising factorial (s)_m / m!.
double binomial_series_coeff(double s, int m) {
  double value = 1.0;
  // Multiply before dividing: exact for integer s while values fit in 53 bits.
  for (int k = 0; k < m; ++k) value = value * (s + k) / (k + 1);
  return value;
}

}  // namespace

KernelSpec1D KernelSpec1D::weighted_bergman(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw InvalidInput("weighted Bergman parameter must satisfy alpha > -1");
  }
  return {Family1D::weighted_bergman, alpha, {}};
}

KernelSpec1D KernelSpec1D::custom(std::vector<double> coeffs) {
  if (coeffs.empty()) throw InvalidInput("custom kernel needs at least one coefficient");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!std::isfinite(coeffs[i]) || coeffs[i] <= 0.0) {
      throw InvalidInput("custom kernel coefficient " + std::to_string(i) + " must be positive");
    }
  }
  return {Family1D::custom, 0.0, std::move(coeffs)};
}

bool KernelSpec1D::theorem_certified() const {
  switch (family) {
    case Family1D::hardy:
    case Family1D::bergman:
    case Family1D::dirichlet:
      return true;
    case Family1D::weighted_bergman:
      return alpha > -1.0 && alpha <= 0.0;
    case Family1D::custom:
      return false;
  }
  return false;
}

BallKernelSpec BallKernelSpec::hm(int n, int m) {
  if (n < 1) throw InvalidInput("ball dimension must be positive");
  if (m < 1) throw InvalidInput("H_m parameter must be a positive integer");
  return {n, BallFamily::hm, m, {}};
}

BallKernelSpec BallKernelSpec::custom(int n, std::vector<double> a) {
  if (n < 1) throw InvalidInput("ball dimension must be positive");
  if (a.empty() || a[0] != 1.0) throw InvalidInput("unitarily invariant kernel needs a_0 = 1");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || a[i] <= 0.0) {
      throw InvalidInput("ball kernel coefficient a_" + std::to_string(i) + " must be positive");
    }
  }
  return {n, BallFamily::unitarily_invariant_custom, 0, std::move(a)};
}

std::string to_string(Family1D f) {
  switch (f) {
    case Family1D::hardy: return "hardy";
    case Family1D::bergman: return "bergman";
    case Family1D::weighted_bergman: return "weighted_bergman";
    case Family1D::dirichlet: return "dirichlet";
    case Family1D::custom: return "custom";
  }
  return "unknown";
}

std::string to_string(const KernelSpec1D& spec) {
  std::ostringstream os;
  os << to_string(spec.family);
  if (spec.family == Family1D::weighted_bergman) os << "(alpha=" << spec.alpha << ")";
  return os.str();
}

std::string to_string(const BallKernelSpec& spec) {
  std::ostringstream os;
  if (spec.family == BallFamily::hm) {
    os << "H_" << spec.m << "(B_" << spec.n << ")";
  } else {
    os << "custom(B_" << spec.n << ")";
  }
  return os.str();
}

double coeff_1d(const KernelSpec1D& spec, int m) {
  check_index(m);
  switch (spec.family) {
    case Family1D::hardy:
      return 1.0;
    case Family1D::bergman:
      return m + 1.0;
    case Family1D::weighted_bergman:
      // (1 - x)^{alpha - 2}; non-positive coefficients appear once alpha >= 2.
      return checked(binomial_series_coeff(2.0 - spec.alpha, m), m);
    case Family1D::dirichlet:
      return 1.0 / (m + 1.0);
    case Family1D::custom:
      if (static_cast<std::size_t>(m) >= spec.custom_coeffs.size()) {
        throw RangeError("custom kernel has no coefficient " + std::to_string(m));
      }
      return checked(spec.custom_coeffs[m], m);
  }
  throw InvalidInput("unknown kernel family");
}

double ball_coeff(const BallKernelSpec& spec, int j) {
  check_index(j);
  if (spec.family == BallFamily::hm) {
    // C(j + m - 1, j)
    return checked(binomial_series_coeff(spec.m, j), j);
  }
  if (static_cast<std::size_t>(j) >= spec.a_coeffs.size()) {
    throw RangeError("ball kernel has no coefficient a_" + std::to_string(j));
  }
  return checked(spec.a_coeffs[j], j);
}

PowerSeries PowerSeries::operator*(const PowerSeries& other) const {
  if (length() != other.length()) throw InvalidInput("series length mismatch");
  std::vector<double> out(length(), 0.0);
  for (std::size_t i = 0; i < length(); ++i) {
    for (std::size_t j = 0; i + j < length(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator-(const PowerSeries& other) const {
  if (length() != other.length()) throw InvalidInput("series length mismatch");
  std::vector<double> out(length());
  for (std::size_t i = 0; i < length(); ++i) out[i] = coeffs_[i] - other.coeffs_[i];
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::one(std::size_t length) {
  std::vector<double> c(length, 0.0);
  if (length > 0) c[0] = 1.0;
  return PowerSeries(std::move(c));
}

PowerSeries diagonal_series(const KernelSpec1D& spec, int L) {
  check_index(L);
  std::vector<double> c(L + 1);
  for (int m = 0; m <= L; ++m) c[m] = coeff_1d(spec, m);
  return PowerSeries(std::move(c));
}

PowerSeries diagonal_series(const BallKernelSpec& spec, int L) {
  check_index(L);
  std::vector<double> c(L + 1);
  for (int j = 0; j <= L; ++j) c[j] = ball_coeff(spec, j);
  return PowerSeries(std::move(c));
}

PowerSeries reciprocal_series(const PowerSeries& c) {
  if (c.length() == 0 || c[0] == 0.0) {
    throw InvalidInput("reciprocal series needs a nonzero constant term");
  }
  std::vector<double> r(c.length(), 0.0);
  r[0] = 1.0 / c[0];
  for (std::size_t j = 1; j < c.length(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= j; ++i) acc += c[i] * r[j - i];
    r[j] = -acc / c[0];
  }
  return PowerSeries(std::move(r));
}

CnpCertificate cnp_certificate(const PowerSeries& k, int L, double tol) {
  if (L < 0 || static_cast<std::size_t>(L) + 1 > k.length()) {
    throw InvalidInput("cnp certificate order exceeds the supplied series");
  }
  if (k[0] != 1.0) throw InvalidInput("cnp certificate requires a normalized kernel (k_0 = 1)");
  std::vector<double> head(k.coeffs().begin(), k.coeffs().begin() + L + 1);
  PowerSeries b = PowerSeries::one(L + 1) - reciprocal_series(PowerSeries(std::move(head)));

  CnpCertificate cert;
  cert.order = L;
  cert.is_cnp_to_order = true;
  for (int j = 1; j <= L; ++j) {
    if (b[j] < -tol) {
      cert.is_cnp_to_order = false;
      cert.first_violation = static_cast<std::size_t>(j);
      break;
    }
  }
  cert.b = std::move(b);
  return cert;
}

ChenCoefficients chen_coeffs(const BallKernelSpec& spec, int L, double tol) {
  if (ball_coeff(spec, 0) != 1.0) throw InvalidInput("ball kernel must satisfy a_0 = 1");
  ChenCoefficients out;
  out.c = reciprocal_series(diagonal_series(spec, L));
  out.signs_ok = true;
  for (int j = 1; j <= L; ++j) {
    if (out.c[j] > tol) {
      out.signs_ok = false;
      break;
    }
  }
  return out;
}

}  // namespace rkhs
