#pragma once

#include <complex>
#include <vector>

#include "scarfcs/coherent.hpp"

namespace scarfcs {

/// Photon-number statistics and the Fubini-Study metric factor at z = |zeta|^2.
/// All four depend on the family and alpha only, never on the phase of zeta
/// or on alpha_tilde.
struct StatsReport {
  double z = 0.0;
  double g2 = 0.0;
  double mandel_q = 0.0;
  double mean_photon = 0.0;
  double metric_factor = 0.0;
};

/// g2 = N'' N / N'^2. At z = 0 returns the limit 2 t2 t0 / t1^2 from the
/// first three series coefficients.
double g2(const GcsSpec& spec, const PotentialParams& params, double z);

/// Q = z (N''/N' - N'/N).
double mandel_q(const GcsSpec& spec, const PotentialParams& params, double z);

/// <n> = z N'/N.
double mean_photon(const GcsSpec& spec, const PotentialParams& params, double z);

/// omega = N'/N + z (N''/N - N'^2/N^2) = d<n>/dz.
double metric_factor(const GcsSpec& spec, const PotentialParams& params, double z);

StatsReport stats(const GcsSpec& spec, const PotentialParams& params, double z);

/// A(t) = <zeta; t | zeta; 0> = sum_n |c_n|^2 exp(+i E_n t). Uses weights and
/// energies only, so both models give the same trace.
std::complex<double> autocorrelation(const CoherentExpansion& state, double t);

std::complex<double> autocorrelation(const GcsSpec& spec, const PotentialParams& params,
                                     const Zeta& zeta, double t);

/// A(t) on a batch of times, evaluated in parallel; output order matches `times`.
std::vector<std::complex<double>> autocorrelation_trace(const CoherentExpansion& state,
                                                        const std::vector<double>& times,
                                                        unsigned threads = 1);

}  // namespace scarfcs
