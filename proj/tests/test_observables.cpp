#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "scarfcs/coherent.hpp"
#include "scarfcs/error.hpp"
#include "scarfcs/observables.hpp"

using namespace scarfcs;
constexpr double kPi = std::numbers::pi;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

PotentialParams params_for(double alpha) { return {alpha, (alpha - 1) / 2}; }

// Moments of the number distribution, straight from |c_n|^2.
struct Moments {
  double mean = 0.0;
  double second = 0.0;
};

Moments moments(const CoherentExpansion& e) {
  Moments m;
  for (std::size_t n = 0; n < e.coefficients.size(); ++n) {
    const double p = std::norm(e.coefficients[n]);
    m.mean += n * p;
    m.second += static_cast<double>(n) * (n - 1.0) * p;
  }
  return m;
}

}  // namespace

TEST_CASE("stats: reference values") {
  // mpmath at 30 digits from the hypergeometric closed forms
  struct Row {
    GcsSpec spec;
    double alpha, z, g2, q, mean, omega;
  };
  const Row rows[] = {
      {GcsSpec(GcsKind::Gcs1), 5, 1, 0.78092058476377878, -0.019522851782986647, 0.089113127136733661,
       0.087373384763724764},
      {GcsSpec(GcsKind::Gcs3), 2, 1, 0.97524423540470978, -0.023919460484326565, 0.96621780322136531,
       0.94310639465795905},
      {GcsSpec(GcsKind::Gcs4, 1.5), 5, 2, 1.5380804727267604, 0.4338680823570466, 0.80632564151304315,
       0.57808230067581129},
      {GcsSpec(GcsKind::Gcs2), 10, 0.9, 1.047375, 8.9763157894736842, 189.47368421052632,
       2100.2770083102493},
  };
  for (const auto& r : rows) {
    const auto s = stats(r.spec, params_for(r.alpha), r.z);
    INFO("kind " << static_cast<int>(r.spec.kind()));
    CHECK(rel(s.g2, r.g2) < 1e-10);
    CHECK(rel(s.mandel_q, r.q) < 1e-9);
    CHECK(rel(s.mean_photon, r.mean) < 1e-10);
    CHECK(rel(s.metric_factor, r.omega) < 1e-9);
  }
}

TEST_CASE("Glauber limit: Poissonian and flat") {
  const GcsSpec glauber(GcsKind::Gcs4, 0.0);
  for (double z : {0.0, 0.3, 1.0, 4.0, 9.0}) {
    const auto s = stats(glauber, params_for(3), z);
    CHECK(std::fabs(s.g2 - 1.0) < 1e-10);
    CHECK(std::fabs(s.mandel_q) < 1e-10);
    CHECK(std::fabs(s.mean_photon - z) < 1e-10 * std::max(1.0, z));
    CHECK(std::fabs(s.metric_factor - 1.0) < 1e-10);
  }
}

TEST_CASE("GCS1: small-z limit of g2") {
  for (double a : {2.0, 5.0, 10.0}) {
    const double expected = (2 * a + 1) * (2 * a + 1) / ((2 * a + 2) * (2 * a + 3));
    CHECK(std::fabs(g2(GcsSpec(GcsKind::Gcs1), params_for(a), 0.0) - expected) < 1e-9);
    CHECK(std::fabs(g2(GcsSpec(GcsKind::Gcs1), params_for(a), 1e-6) - expected) < 1e-5);
  }
  CHECK(g2(GcsSpec(GcsKind::Gcs1), params_for(2), 0.0) == doctest::Approx(25.0 / 42.0));
}

TEST_CASE("GCS2: Mandel Q at alpha = 2, z = 1/2") {
  const GcsSpec s(GcsKind::Gcs2);
  const auto r = stats(s, params_for(2), 0.5);
  CHECK(std::fabs(r.mandel_q - 11.0 / 12.0) < 1e-9);
  CHECK(std::fabs(r.g2 - (1.0 + r.mandel_q / r.mean_photon)) < 1e-9);
}

TEST_CASE("GCS2: Q varies with alpha") {
  const GcsSpec s(GcsKind::Gcs2);
  const double q2 = mandel_q(s, params_for(2), 0.5);
  const double q5 = mandel_q(s, params_for(5), 0.5);
  const double q10 = mandel_q(s, params_for(10), 0.5);
  CHECK(q2 < q5);
  CHECK(q5 < q10);
  CHECK(q5 == doctest::Approx(0.96078).epsilon(1e-4));
}

TEST_CASE("signs: GCS1 antibunched, GCS2 super-Poissonian") {
  CHECK(mandel_q(GcsSpec(GcsKind::Gcs1), params_for(5), 1.0) < 0.0);
  for (double a : {2.0, 5.0, 10.0}) {
    for (double z = 0.25; z <= 10.0; z += 0.25) {
      CHECK(g2(GcsSpec(GcsKind::Gcs1), params_for(a), z) < 1.0);
      CHECK(mandel_q(GcsSpec(GcsKind::Gcs1), params_for(a), z) < 0.0);
    }
    for (double z = 0.05; z < 0.96; z += 0.05) CHECK(mandel_q(GcsSpec(GcsKind::Gcs2), params_for(a), z) > 0.0);
  }
}

TEST_CASE("cross-identities: Q = <n>(g2 - 1) and omega = d<n>/dz") {
  const std::vector<GcsSpec> specs = {GcsSpec(GcsKind::Gcs1), GcsSpec(GcsKind::Gcs2), GcsSpec(GcsKind::Gcs3),
                                      GcsSpec(GcsKind::Gcs4, 1.5), GcsSpec(GcsKind::Gcs4, -9.0)};
  for (const auto& s : specs) {
    for (double a : {2.0, 5.0, 10.0}) {
      for (double z : {0.05, 0.3, 0.7}) {
        const auto p = params_for(a);
        const auto r = stats(s, p, z);
        CHECK(rel(r.mandel_q, r.mean_photon * (r.g2 - 1.0)) < 1e-9);
        const double h = 1e-4;
        auto N = [&](double x) { return mean_photon(s, p, x); };
        const double fd = (-N(z + 2 * h) + 8 * N(z + h) - 8 * N(z - h) + N(z - 2 * h)) / (12 * h);
        CHECK(rel(r.metric_factor, fd) < 1e-6);
      }
    }
  }
}

TEST_CASE("observables agree with moments of the expansion and ignore phases") {
  const std::vector<GcsSpec> specs = {GcsSpec(GcsKind::Gcs1, 0, 0.4), GcsSpec(GcsKind::Gcs2, 0, 1.1),
                                      GcsSpec(GcsKind::Gcs3), GcsSpec(GcsKind::Gcs4, -1.0, 2.0)};
  for (const auto& s : specs) {
    const double modulus = s.kind() == GcsKind::Gcs2 ? 0.7 : 1.3;
    const auto p = params_for(5);
    for (double phase : {0.0, 1.0, -2.5}) {
      const auto e = expansion(s, p, {modulus, phase});
      const auto m = moments(e);
      const auto r = stats(s, p, modulus * modulus);
      CHECK(rel(r.mean_photon, m.mean) < 1e-10);
      CHECK(rel(r.g2, m.second / (m.mean * m.mean)) < 1e-9);
    }
  }
}

TEST_CASE("metric factor at z = 0 is the first coefficient") {
  for (double a : {2.0, 5.0}) {
    const GcsSpec s(GcsKind::Gcs3);
    CHECK(rel(metric_factor(s, params_for(a), 0.0), inverse_weight_sq(s, params_for(a), 1)) < 1e-12);
    CHECK(mean_photon(s, params_for(a), 0.0) == 0.0);
    CHECK(mandel_q(s, params_for(a), 0.0) == 0.0);
  }
}

TEST_CASE("autocorrelation: perfect overlap and full revival") {
  const PotentialParams p(12.0, 10.9);
  for (int k = 1; k <= 4; ++k) {
    const GcsSpec s = k == 4 ? GcsSpec(GcsKind::Gcs4, 1.5) : GcsSpec(gcs_kind_from_int(k));
    const Zeta zeta{k == 2 ? 0.8 : 1.0, 0.3};
    CHECK(std::fabs(std::norm(autocorrelation(s, p, zeta, 0.0)) - 1.0) < 1e-12);
    CHECK(std::fabs(std::norm(autocorrelation(s, p, zeta, 2 * kPi)) - 1.0) < 1e-10);
  }
}

TEST_CASE("autocorrelation: bounded and conjugate-symmetric") {
  const auto e = expansion(GcsSpec(GcsKind::Gcs1), PotentialParams(12.0, 10.9), {1.0, 0.0});
  for (double t = 0.0; t < 7.0; t += 0.37) {
    const auto a = autocorrelation(e, t);
    CHECK(std::abs(a) <= 1.0 + 1e-12);
    CHECK(std::abs(autocorrelation(e, -t) - std::conj(a)) < 1e-14);
  }
}

TEST_CASE("autocorrelation_trace: ordered and thread independent") {
  const auto e = expansion(GcsSpec(GcsKind::Gcs3), PotentialParams(7.0, 2.0), {2.0, 0.0});
  std::vector<double> times;
  for (int i = 0; i < 257; ++i) times.push_back(0.01 * i);
  const auto serial = autocorrelation_trace(e, times, 1);
  const auto parallel = autocorrelation_trace(e, times, 5);
  REQUIRE(serial.size() == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(serial[i] == autocorrelation(e, times[i]));
    CHECK(parallel[i] == serial[i]);
  }
}
