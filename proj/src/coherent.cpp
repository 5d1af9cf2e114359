#include "scarfcs/coherent.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "scarfcs/error.hpp"

namespace scarfcs {

using specfun::log_gamma;

GcsKind gcs_kind_from_int(int k) {
  if (k < 1 || k > 4) throw DomainError("GCS family must be 1, 2, 3 or 4, got " + std::to_string(k));
  return static_cast<GcsKind>(k);
}

GcsSpec::GcsSpec(GcsKind kind, double sigma, double alpha_tilde)
    : kind_(kind), sigma_(sigma), alpha_tilde_(alpha_tilde) {
  if (!std::isfinite(sigma) || !std::isfinite(alpha_tilde)) {
    throw DomainError("GcsSpec: sigma and alpha_tilde must be finite");
  }
  if (kind == GcsKind::Gcs4 && !(2.0 - sigma > 0.0)) {
    throw DomainError("GcsSpec: GCS4 requires sigma < 2 (got sigma = " + std::to_string(sigma) +
                      "); otherwise Gamma(n + 2 - sigma) has poles or sign changes");
  }
}

void check_z(const GcsSpec& spec, double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("z = |zeta|^2 must be finite and >= 0");
  if (spec.kind() == GcsKind::Gcs2 && !(z < 1.0)) {
    throw DomainError("GCS2 lives on the unit disk: |zeta|^2 must be < 1, got " + std::to_string(z));
  }
}

void check_zeta(const GcsSpec& spec, const Zeta& zeta) {
  if (!(zeta.modulus >= 0.0) || !std::isfinite(zeta.modulus) || !std::isfinite(zeta.phase)) {
    throw DomainError("zeta modulus must be finite and >= 0");
  }
  check_z(spec, zeta.z());
}

double log_inverse_weight_sq(const GcsSpec& spec, const PotentialParams& params, int n) {
  if (n < 0) throw DomainError("weight index must be nonnegative");
  if (n == 0) return 0.0;
  const double a2 = 2.0 * params.alpha();
  const double nn = n;
  switch (spec.kind()) {
    case GcsKind::Gcs1:
      return log_gamma(a2 + nn) - log_gamma(nn + 1.0) - log_gamma(a2 + 2.0 * nn);
    case GcsKind::Gcs2:
      return log_gamma(a2 + nn) + log_gamma(a2 + 2.0 * nn + 1.0) - log_gamma(nn + 1.0) -
             log_gamma(a2 + 2.0 * nn) - log_gamma(a2 + 1.0);
    case GcsKind::Gcs3: {
      auto printed = [&](double m) {
        return log_gamma(a2 + 2.0 * m + 1.0) + log_gamma(a2 + m) + log_gamma(a2 + 1.0) -
               log_gamma(a2 + 2.0 * m) - log_gamma(a2 + m + 2.0) - log_gamma(m + 1.0);
      };
      return printed(nn) - printed(0.0);
    }
    case GcsKind::Gcs4: {
      const double s = spec.sigma();
      return log_gamma(nn + 2.0 - s) - log_gamma(nn + 2.0) - log_gamma(nn + 1.0) -
             log_gamma(2.0 - s);
    }
  }
  throw DomainError("unknown GCS family");
}

double inverse_weight_sq(const GcsSpec& spec, const PotentialParams& params, int n) {
  return std::exp(log_inverse_weight_sq(spec, params, n));
}

NormalizationSeries normalization_series(const GcsSpec& spec, const PotentialParams& params) {
  const double a = params.alpha();
  switch (spec.kind()) {
    case GcsKind::Gcs1:
      return {{{2.0 * a}, {a, a + 0.5}}, 0.25, 1.0};
    case GcsKind::Gcs2:
      return {{{2.0 * a, a + 1.0}, {a}}, 1.0, 1.0};
    case GcsKind::Gcs3:
      return {{{2.0 * a, a + 1.0}, {a, 2.0 * a + 2.0}},
              1.0,
              std::exp(2.0 * log_gamma(2.0 * a + 1.0) - log_gamma(2.0 * a + 2.0))};
    case GcsKind::Gcs4:
      return {{{2.0 - spec.sigma()}, {2.0}}, 1.0, std::exp(log_gamma(2.0 - spec.sigma()))};
  }
  throw DomainError("unknown GCS family");
}

namespace {

double direct_sum(const GcsSpec& spec, const PotentialParams& params, double z) {
  if (z == 0.0) return 1.0;
  const double log_z = std::log(z);
  double sum = 1.0;
  for (int n = 1; n < specfun::kSeriesMaxTerms; ++n) {
    const double term = std::exp(n * log_z + log_inverse_weight_sq(spec, params, n));
    if (n >= specfun::kSeriesMinTerms && term < specfun::kSeriesRelativeTolerance * sum) {
      return sum;
    }
    sum += term;
  }
  throw ConvergenceError("normalization: direct sum did not converge");
}

}  // namespace

double normalization(const GcsSpec& spec, const PotentialParams& params, double z,
                     NormalizationMethod method) {
  check_z(spec, z);
  if (method == NormalizationMethod::DirectSum) return direct_sum(spec, params, z);
  const NormalizationSeries ns = normalization_series(spec, params);
  return specfun::hypergeometric(ns.series, ns.argument_scale * z).value;
}

double printed_normalization(const GcsSpec& spec, const PotentialParams& params, double z) {
  const NormalizationSeries ns = normalization_series(spec, params);
  return ns.printed_prefactor * normalization(spec, params, z, NormalizationMethod::ClosedForm);
}

NormalizationDerivatives normalization_derivatives(const GcsSpec& spec,
                                                   const PotentialParams& params, double z) {
  check_z(spec, z);
  const NormalizationSeries ns = normalization_series(spec, params);
  const double s = ns.argument_scale;
  const double arg = s * z;
  return {specfun::hypergeometric(ns.series, arg).value,
          s * specfun::hypergeometric_derivative(ns.series, arg, 1),
          s * s * specfun::hypergeometric_derivative(ns.series, arg, 2)};
}

std::vector<double> photon_distribution(const GcsSpec& spec, const PotentialParams& params,
                                        const Zeta& zeta, int n_max) {
  check_zeta(spec, zeta);
  if (n_max < 0) throw DomainError("photon_distribution: n_max must be nonnegative");
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1, 0.0);
  const double z = zeta.z();
  if (z == 0.0) {
    p[0] = 1.0;
    return p;
  }
  const double log_norm = std::log(normalization(spec, params, z, NormalizationMethod::ClosedForm));
  const double log_z = std::log(z);
  for (int n = 0; n <= n_max; ++n) {
    p[static_cast<std::size_t>(n)] =
        std::exp(n * log_z + log_inverse_weight_sq(spec, params, n) - log_norm);
  }
  return p;
}

double CoherentExpansion::norm_sq() const {
  double s = 0.0;
  for (const auto& c : coefficients) s += std::norm(c);
  return s;
}

namespace {

// Probability of level n in the untruncated state.
struct LevelProbability {
  const GcsSpec& spec;
  const PotentialParams& params;
  double log_z;
  double log_norm;

  double operator()(int n) const {
    return std::exp(n * log_z + log_inverse_weight_sq(spec, params, n) - log_norm);
  }
};

// Geometric bound on sum_{m > n} P_m. Consecutive-term ratios of all four
// families are products of factors decreasing in n, so once two successive
// ratios are below one and nonincreasing the tail is dominated by
// P_{n+1} / (1 - r). Returns infinity while that regime is not reached.
double tail_bound_after(const LevelProbability& prob, int n) {
  const double p1 = prob(n + 1);
  if (p1 == 0.0) return 0.0;
  const double p2 = prob(n + 2);
  const double p3 = prob(n + 3);
  const double r1 = p2 / p1;
  const double r2 = p2 > 0.0 ? p3 / p2 : 0.0;
  if (!(r1 < 1.0) || r2 > r1) return std::numeric_limits<double>::infinity();
  return p1 / (1.0 - r1);
}

}  // namespace

CoherentExpansion expansion(const GcsSpec& spec, const PotentialParams& params,
                            const Zeta& zeta, const TruncationPolicy& policy) {
  check_zeta(spec, zeta);
  if (policy.fixed_n_max && *policy.fixed_n_max < 0) {
    throw DomainError("expansion: fixed n_max must be nonnegative");
  }
  const double z = zeta.z();
  CoherentExpansion out{spec, params, zeta, {}, 1.0, 0, 0.0, false};

  auto coefficient = [&](int n, double probability) {
    const double phase = n * zeta.phase - spec.alpha_tilde() * energy(params, n);
    return std::polar(std::sqrt(probability), phase);
  };

  if (z == 0.0) {
    const int n_max = policy.fixed_n_max.value_or(policy.min_n_max);
    out.coefficients.assign(static_cast<std::size_t>(n_max) + 1, {0.0, 0.0});
    out.coefficients[0] = coefficient(0, 1.0);
    out.n_max = n_max;
    return out;
  }

  out.normalization = normalization(spec, params, z, NormalizationMethod::ClosedForm);
  const LevelProbability prob{spec, params, std::log(z), std::log(out.normalization)};

  if (policy.fixed_n_max) {
    const int n_max = *policy.fixed_n_max;
    double kept = 0.0;
    std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
      p[static_cast<std::size_t>(n)] = prob(n);
      kept += p[static_cast<std::size_t>(n)];
    }
    // Weight of the dropped levels, summed until the remainder is negligible.
    double tail = 0.0;
    for (int n = n_max + 1; n < policy.max_terms; ++n) {
      tail += prob(n);
      if (tail_bound_after(prob, n) <= 1e-16 * tail) break;
    }
    for (int n = 0; n <= n_max; ++n) {
      out.coefficients.push_back(coefficient(n, p[static_cast<std::size_t>(n)] / kept));
    }
    out.n_max = n_max;
    out.tail_bound = tail;
    out.renormalized = true;
    return out;
  }

  for (int n = 0;; ++n) {
    if (n >= policy.max_terms) {
      throw ConvergenceError("expansion: tail did not fall below " +
                             std::to_string(policy.tail_tolerance) + " within " +
                             std::to_string(policy.max_terms) + " levels");
    }
    out.coefficients.push_back(coefficient(n, prob(n)));
    if (n < policy.min_n_max) continue;
    const double bound = tail_bound_after(prob, n);
    if (bound < policy.tail_tolerance) {
      out.n_max = n;
      out.tail_bound = bound;
      return out;
    }
  }
}

}  // namespace scarfcs
