#pragma once

#include <span>
#include <vector>

namespace scarfcs::specfun {

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// Classical Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence.
double jacobi_p(int n, double a, double b, double x);

/// Fills out[k] = P_k^{(a,b)}(x) for k = 0 .. out.size()-1 in one recurrence pass.
void jacobi_p_all(double a, double b, double x, std::span<double> out);

/// X1 exceptional Jacobi polynomial P~_{n+1}^{(a,b)}(s), a = alpha-beta-1/2,
/// b = alpha+beta-1/2, built from P_n and P_{n-1} with P_{-1} = 0:
///
///   P~_{n+1} = -1/2 (s - k) P_n + (k P_n - P_{n-1}) / (2 alpha - 1 + 2n),
///   k = (2 alpha - 1) / (2 beta).
///
/// Requires 0 < beta < alpha - 1.
double x1_jacobi(int n, double alpha, double beta, double s);

/// Same combination, taking P_n and P_{n-1} already evaluated at s.
double x1_jacobi_combine(int n, double alpha, double beta, double s, double p_n,
                         double p_nm1);

/// Parameter tuple of a generalized hypergeometric series pFq.
struct HypergeometricSpec {
  std::vector<double> numerator;
  std::vector<double> denominator;

  /// Throws DomainError on a denominator pole (zero or negative integer) or p > q + 1.
  void validate() const;
  /// (a+k; b+k): the series whose value gives the k-th derivative up to a constant.
  [[nodiscard]] HypergeometricSpec shifted(int k) const;
  [[nodiscard]] bool is_gauss_type() const {
    return numerator.size() == denominator.size() + 1;
  }
};

struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  /// Magnitude of the first term not added to the sum.
  double truncation_error_estimate = 0.0;
};

inline constexpr double kSeriesRelativeTolerance = 1e-16;
inline constexpr int kSeriesMinTerms = 8;
inline constexpr int kSeriesMaxTerms = 10000;

/// Sum_{n} prod(a_i)_n / prod(b_j)_n z^n / n! for z >= 0.
///
/// Term magnitudes are carried as logarithms with a separate sign so that
/// large Pochhammer ratios do not overflow before they meet z^n / n!.
/// Stops once |term| < 1e-16 |partial sum| after at least 8 terms; throws
/// ConvergenceError after 10000 terms and DomainError for p = q + 1, z >= 1.
SeriesResult hypergeometric(const HypergeometricSpec& spec, double z);

/// d^order/dz^order of pFq at z (order 1 or 2), via
/// d/dz pFq(a; b; z) = (prod a / prod b) pFq(a+1; b+1; z).
double hypergeometric_derivative(const HypergeometricSpec& spec, double z, int order);

}  // namespace scarfcs::specfun
