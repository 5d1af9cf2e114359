#include "scarfcs/specfun.hpp"

#include <cmath>
#include <string>

#include "scarfcs/error.hpp"

namespace scarfcs::specfun {

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " +
                      std::to_string(x));
  }
#if defined(__GLIBC__)
  // Reentrant variant: std::lgamma writes the global signgam.
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

namespace {

void check_jacobi_args(int n, double a, double b) {
  if (n < 0) throw DomainError("jacobi_p: degree must be nonnegative");
  if (!(a > -1.0) || !(b > -1.0)) {
    throw DomainError("jacobi_p: parameters must exceed -1");
  }
}

// P_{k+1} from P_k and P_{k-1}, k >= 1.
inline double jacobi_step(int k, double a, double b, double x, double p_k,
                          double p_km1) {
  const double kk = k;
  const double s = 2.0 * kk + a + b;
  const double c1 = 2.0 * (kk + 1.0) * (kk + a + b + 1.0) * s;
  const double c2 = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b);
  const double c3 = 2.0 * (kk + a) * (kk + b) * (s + 2.0);
  return (c2 * p_k - c3 * p_km1) / c1;
}

}  // namespace

double jacobi_p(int n, double a, double b, double x) {
  check_jacobi_args(n, a, b);
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 1; k < n; ++k) {
    const double next = jacobi_step(k, a, b, x, p, p_prev);
    p_prev = p;
    p = next;
  }
  return p;
}

void jacobi_p_all(double a, double b, double x, std::span<double> out) {
  if (out.empty()) return;
  check_jacobi_args(static_cast<int>(out.size()) - 1, a, b);
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    out[k + 1] = jacobi_step(static_cast<int>(k), a, b, x, out[k], out[k - 1]);
  }
}

double x1_jacobi_combine(int n, double alpha, double beta, double s, double p_n,
                         double p_nm1) {
  if (!(beta > 0.0) || !(beta < alpha - 1.0)) {
    throw DomainError("x1_jacobi: requires 0 < beta < alpha - 1");
  }
  if (n < 0) throw DomainError("x1_jacobi: index must be nonnegative");
  const double k = (2.0 * alpha - 1.0) / (2.0 * beta);
  const double prev = n == 0 ? 0.0 : p_nm1;
  return -0.5 * (s - k) * p_n + (k * p_n - prev) / (2.0 * alpha - 1.0 + 2.0 * n);
}

double x1_jacobi(int n, double alpha, double beta, double s) {
  const double a = alpha - beta - 0.5;
  const double b = alpha + beta - 0.5;
  if (!(beta > 0.0) || !(beta < alpha - 1.0)) {
    throw DomainError("x1_jacobi: requires 0 < beta < alpha - 1");
  }
  const double p_n = jacobi_p(n, a, b, s);
  const double p_nm1 = n == 0 ? 0.0 : jacobi_p(n - 1, a, b, s);
  return x1_jacobi_combine(n, alpha, beta, s, p_n, p_nm1);
}

namespace {

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && std::floor(v) == v;
}

}  // namespace

void HypergeometricSpec::validate() const {
  for (double b : denominator) {
    if (!std::isfinite(b) || is_nonpositive_integer(b)) {
      throw DomainError("hypergeometric: denominator parameter " + std::to_string(b) +
                        " is a pole of the series");
    }
  }
  for (double a : numerator) {
    if (!std::isfinite(a)) throw DomainError("hypergeometric: non-finite parameter");
  }
  if (numerator.size() > denominator.size() + 1) {
    throw DomainError("hypergeometric: p > q + 1 series diverge for z != 0");
  }
}

HypergeometricSpec HypergeometricSpec::shifted(int k) const {
  HypergeometricSpec out = *this;
  for (double& a : out.numerator) a += k;
  for (double& b : out.denominator) b += k;
  return out;
}

SeriesResult hypergeometric(const HypergeometricSpec& spec, double z) {
  spec.validate();
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError("hypergeometric: argument must be finite and >= 0");
  }
  if (spec.is_gauss_type() && z >= 1.0) {
    throw DomainError("hypergeometric: p = q + 1 series evaluated only for z < 1");
  }
  if (z == 0.0) return {1.0, 1, 0.0};

  const double log_z = std::log(z);
  double log_mag = 0.0;  // log |term_n|
  int sign = 1;
  double sum = 1.0;
  for (int n = 0; n < kSeriesMaxTerms; ++n) {
    // term_{n+1} / term_n = prod(a_i + n) / prod(b_j + n) * z / (n + 1)
    for (double a : spec.numerator) {
      const double f = a + n;
      if (f == 0.0) return {sum, n + 1, 0.0};  // terminating series
      log_mag += std::log(std::fabs(f));
      if (f < 0.0) sign = -sign;
    }
    for (double b : spec.denominator) {
      const double f = b + n;
      log_mag -= std::log(std::fabs(f));
      if (f < 0.0) sign = -sign;
    }
    log_mag += log_z - std::log(n + 1.0);
    const double term = sign * std::exp(log_mag);
    if (n + 1 >= kSeriesMinTerms &&
        std::fabs(term) < kSeriesRelativeTolerance * std::fabs(sum)) {
      return {sum, n + 1, std::fabs(term)};
    }
    sum += term;
    if (!std::isfinite(sum)) {
      throw ConvergenceError("hypergeometric: partial sum overflowed");
    }
  }
  throw ConvergenceError("hypergeometric: no convergence within " +
                         std::to_string(kSeriesMaxTerms) + " terms");
}

double hypergeometric_derivative(const HypergeometricSpec& spec, double z, int order) {
  if (order != 1 && order != 2) {
    throw DomainError("hypergeometric_derivative: order must be 1 or 2");
  }
  spec.validate();
  double factor = 1.0;
  for (int k = 0; k < order; ++k) {
    for (double a : spec.numerator) factor *= a + k;
    for (double b : spec.denominator) factor /= b + k;
  }
  if (factor == 0.0) return 0.0;
  return factor * hypergeometric(spec.shifted(order), z).value;
}

}  // namespace scarfcs::specfun
