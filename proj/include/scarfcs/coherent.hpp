#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "scarfcs/eigensystem.hpp"
#include "scarfcs/specfun.hpp"

namespace scarfcs {

/// The four generalized coherent-state families.
///
///   GCS1  Z_j constant                     N = 1F2(2a; a, a+1/2; z/4)
///   GCS2  Perelomov type                   N = 2F1(2a, a+1; a; z)
///   GCS3  Barut-Girardello type            N ~ 2F2(2a, a+1; a, 2a+2; z)
///   GCS4  sigma family, sigma = -a - d/2   N ~ 1F1(2-sigma; 2; z)
///
/// The 2F1 above has numerator {2a, a+1} and denominator {a}; the printed
/// "2F1(2a; a+1, a; z)" puts the semicolon one slot early.
enum class GcsKind { Gcs1 = 1, Gcs2 = 2, Gcs3 = 3, Gcs4 = 4 };

GcsKind gcs_kind_from_int(int k);

class GcsSpec {
 public:
  /// sigma is only used by GCS4, where 2 - sigma must be positive so that
  /// every weight Gamma(n + 2 - sigma) / Gamma(2 - sigma) is finite and positive.
  explicit GcsSpec(GcsKind kind, double sigma = 0.0, double alpha_tilde = 0.0);

  [[nodiscard]] GcsKind kind() const { return kind_; }
  [[nodiscard]] double sigma() const { return sigma_; }
  [[nodiscard]] double alpha_tilde() const { return alpha_tilde_; }

 private:
  GcsKind kind_;
  double sigma_;
  double alpha_tilde_;
};

/// Coherent-state label zeta = modulus * exp(i phase).
struct Zeta {
  double modulus = 0.0;
  double phase = 0.0;

  [[nodiscard]] double z() const { return modulus * modulus; }
};

/// Throws DomainError if zeta is invalid for the family (modulus < 0, or
/// modulus >= 1 for GCS2, whose normalization diverges on the unit circle).
void check_zeta(const GcsSpec& spec, const Zeta& zeta);
void check_z(const GcsSpec& spec, double z);

/// ln(1/|h_n|^2), the log of the n-th coefficient of N(z) = sum_n z^n / |h_n|^2.
/// Always 0 at n = 0.
double log_inverse_weight_sq(const GcsSpec& spec, const PotentialParams& params, int n);
double inverse_weight_sq(const GcsSpec& spec, const PotentialParams& params, int n);

enum class NormalizationMethod { DirectSum, ClosedForm };

/// Closed form of N(z) as a pFq evaluated at scale * z, normalized so that N(0) = 1.
struct NormalizationSeries {
  specfun::HypergeometricSpec series;
  double argument_scale = 1.0;
  /// The constant in front of the printed closed form (1 for GCS1/GCS2,
  /// Gamma(2a+1)^2 / Gamma(2a+2) for GCS3, Gamma(2 - sigma) for GCS4).
  double printed_prefactor = 1.0;
};

NormalizationSeries normalization_series(const GcsSpec& spec, const PotentialParams& params);

/// N(z) with N(0) = 1. DirectSum adds z^n inverse_weight_sq(n) under the
/// series truncation policy; ClosedForm evaluates the hypergeometric form.
double normalization(const GcsSpec& spec, const PotentialParams& params, double z,
                     NormalizationMethod method);

/// The closed form including its printed prefactor (N(0) != 1 for GCS3/GCS4).
double printed_normalization(const GcsSpec& spec, const PotentialParams& params, double z);

/// N(z), N'(z), N''(z) from the closed form and its parameter-shifted derivatives.
struct NormalizationDerivatives {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

NormalizationDerivatives normalization_derivatives(const GcsSpec& spec,
                                                   const PotentialParams& params, double z);

/// P_n = |<psi_n|zeta>|^2 = z^n / |h_n|^2 / N(z) for n = 0 .. n_max.
std::vector<double> photon_distribution(const GcsSpec& spec, const PotentialParams& params,
                                        const Zeta& zeta, int n_max);

struct TruncationPolicy {
  /// Always keep at least levels 0 .. min_n_max.
  int min_n_max = 0;
  /// When set, keep exactly levels 0 .. n and renormalize the kept coefficients.
  std::optional<int> fixed_n_max;
  double tail_tolerance = 1e-14;
  int max_terms = 10000;

  static TruncationPolicy adaptive(int min_n_max = 0) { return {min_n_max, std::nullopt}; }
  static TruncationPolicy fixed(int n_max) { return {0, n_max}; }
};

/// c_n = exp(i n phase) exp(-i alpha_tilde E_n) |zeta|^n / (h_n sqrt(N)), n = 0 .. n_max.
struct CoherentExpansion {
  GcsSpec spec;
  PotentialParams params;
  Zeta zeta;
  std::vector<std::complex<double>> coefficients;
  /// N(|zeta|^2) in the N(0) = 1 convention.
  double normalization = 1.0;
  int n_max = 0;
  /// Upper bound on the probability weight of levels above n_max.
  double tail_bound = 0.0;
  /// True when a fixed truncation rescaled the kept coefficients to unit norm.
  bool renormalized = false;

  [[nodiscard]] double norm_sq() const;
  [[nodiscard]] double energy(int n) const { return scarfcs::energy(params, n); }
};

/// Throws ConvergenceError if the adaptive tail does not fall below the
/// tolerance within max_terms levels.
CoherentExpansion expansion(const GcsSpec& spec, const PotentialParams& params,
                            const Zeta& zeta,
                            const TruncationPolicy& policy = TruncationPolicy::adaptive());

}  // namespace scarfcs
