#include "scarfcs/observables.hpp"

#include <algorithm>
#include <thread>

#include "scarfcs/error.hpp"

namespace scarfcs {

namespace {

// Log-derivative ratios f = N'/N and u = N''/N.
struct Ratios {
  double f;
  double u;
};

Ratios ratios(const GcsSpec& spec, const PotentialParams& params, double z) {
  const NormalizationDerivatives d = normalization_derivatives(spec, params, z);
  return {d.first / d.value, d.second / d.value};
}

}  // namespace

double g2(const GcsSpec& spec, const PotentialParams& params, double z) {
  check_z(spec, z);
  if (z == 0.0) {
    const double t1 = inverse_weight_sq(spec, params, 1);
    const double t2 = inverse_weight_sq(spec, params, 2);
    return 2.0 * t2 / (t1 * t1);
  }
  const Ratios r = ratios(spec, params, z);
  return r.u / (r.f * r.f);
}

double mandel_q(const GcsSpec& spec, const PotentialParams& params, double z) {
  check_z(spec, z);
  if (z == 0.0) return 0.0;
  const Ratios r = ratios(spec, params, z);
  return z * (r.u / r.f - r.f);
}

double mean_photon(const GcsSpec& spec, const PotentialParams& params, double z) {
  check_z(spec, z);
  if (z == 0.0) return 0.0;
  return z * ratios(spec, params, z).f;
}

double metric_factor(const GcsSpec& spec, const PotentialParams& params, double z) {
  check_z(spec, z);
  if (z == 0.0) return inverse_weight_sq(spec, params, 1);
  const Ratios r = ratios(spec, params, z);
  return r.f + z * (r.u - r.f * r.f);
}

StatsReport stats(const GcsSpec& spec, const PotentialParams& params, double z) {
  return {z, g2(spec, params, z), mandel_q(spec, params, z), mean_photon(spec, params, z),
          metric_factor(spec, params, z)};
}

std::complex<double> autocorrelation(const CoherentExpansion& state, double t) {
  std::complex<double> a{0.0, 0.0};
  for (std::size_t n = 0; n < state.coefficients.size(); ++n) {
    const double p = std::norm(state.coefficients[n]);
    if (p == 0.0) continue;
    a += std::polar(p, state.energy(static_cast<int>(n)) * t);
  }
  return a;
}

std::complex<double> autocorrelation(const GcsSpec& spec, const PotentialParams& params,
                                     const Zeta& zeta, double t) {
  return autocorrelation(expansion(spec, params, zeta), t);
}

std::vector<std::complex<double>> autocorrelation_trace(const CoherentExpansion& state,
                                                        const std::vector<double>& times,
                                                        unsigned threads) {
  std::vector<std::complex<double>> out(times.size());
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, times.size()));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = autocorrelation(state, times[i]);
  };
  if (workers == 1) {
    work(0, times.size());
    return out;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (times.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(times.size(), begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  pool.clear();  // joins
  return out;
}

}  // namespace scarfcs
