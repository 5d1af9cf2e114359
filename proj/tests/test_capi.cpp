#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "scarfcs.h"

namespace fs = std::filesystem;

namespace {

const scs_params kParams{12.0, 10.9};
const scs_gcs kGcs1{1, 0.0, 0.0};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(scs_version()) == "0.1.0");
  CHECK(std::string(scs_status_name(SCS_OK)) == "ok");
  CHECK(std::string(scs_status_name(SCS_ERR_DOMAIN)) == "domain error");
}

TEST_CASE("energies and potentials") {
  double e = 0.0;
  REQUIRE(scs_energy(kParams, 3, &e) == SCS_OK);
  CHECK(e == 225.0);
  double v = 0.0;
  REQUIRE(scs_potential(SCS_MODEL_CONVENTIONAL, kParams, 0.0, &v) == SCS_OK);
  CHECK(v == doctest::Approx(250.81));
  double w = 0.0;
  REQUIRE(scs_superpotential(SCS_MODEL_CONVENTIONAL, kParams, 0.0, &w) == SCS_OK);
  CHECK(w == doctest::Approx(-10.9));
  double r = 1.0;
  REQUIRE(scs_shape_invariance_residual(SCS_MODEL_RATIONAL, kParams, 0.3, &r) == SCS_OK);
  CHECK(std::fabs(r) < 1e-9);
}

TEST_CASE("errors map to status codes with a message") {
  double out = 0.0;
  CHECK(scs_energy({3.0, 5.0}, 0, &out) == SCS_ERR_DOMAIN);
  CHECK(std::string(scs_last_error()).find("beta") != std::string::npos);
  CHECK(scs_potential(SCS_MODEL_CONVENTIONAL, kParams, 2.0, &out) == SCS_ERR_DOMAIN);
  CHECK(scs_potential(static_cast<scs_model>(7), kParams, 0.0, &out) == SCS_ERR_DOMAIN);
  CHECK(scs_energy(kParams, 0, nullptr) == SCS_ERR_INVALID_ARGUMENT);
  CHECK(scs_stats({2, 0, 0}, kParams, 1.0, nullptr) == SCS_ERR_INVALID_ARGUMENT);
  scs_stats_report rep{};
  CHECK(scs_stats({2, 0, 0}, kParams, 1.0, &rep) == SCS_ERR_DOMAIN);
  CHECK(scs_stats({5, 0, 0}, kParams, 0.5, &rep) == SCS_ERR_DOMAIN);
  CHECK(scs_normalization({2, 0, 0}, {20, 9.5}, 0.9999, SCS_NORM_CLOSED_FORM, &out) ==
        SCS_ERR_CONVERGENCE);
  REQUIRE(scs_energy(kParams, 0, &out) == SCS_OK);
  CHECK(std::string(scs_last_error()).empty());
}

TEST_CASE("eigensystem handle") {
  scs_system* sys = nullptr;
  REQUIRE(scs_system_create(SCS_MODEL_RATIONAL, kParams, 5, &sys) == SCS_OK);
  REQUIRE(sys != nullptr);
  scs_eigen_row row{};
  REQUIRE(scs_eigen_row_get(sys, 5, 4001, 0.05, &row) == SCS_OK);
  CHECK(row.n == 5);
  CHECK(row.energy == 289.0);
  CHECK(row.closed_form_confirmed == 1);
  CHECK(std::fabs(row.norm_ratio - 1.0) < 1e-10);
  CHECK(row.schrodinger_residual < 1e-6);
  double psi = 0.0;
  CHECK(scs_eigenfunction(sys, 2, 0.1, &psi) == SCS_OK);
  CHECK(scs_eigenfunction(sys, 6, 0.1, &psi) == SCS_ERR_DOMAIN);
  CHECK(scs_eigen_row_get(nullptr, 0, 4001, 0.05, &row) == SCS_ERR_INVALID_ARGUMENT);
  scs_system_destroy(sys);
  scs_system_destroy(nullptr);

  scs_system* bad = reinterpret_cast<scs_system*>(0x1);
  CHECK(scs_system_create(SCS_MODEL_RATIONAL, {0.5, 0.1}, 5, &bad) == SCS_ERR_DOMAIN);
  CHECK(bad == nullptr);
}

TEST_CASE("statistics and distributions") {
  scs_stats_report r{};
  REQUIRE(scs_stats({2, 0, 0}, {2.0, 0.5}, 0.5, &r) == SCS_OK);
  CHECK(std::fabs(r.mandel_q - 11.0 / 12.0) < 1e-9);
  CHECK(r.z == 0.5);
  double n1 = 0.0, n2 = 0.0;
  REQUIRE(scs_normalization({2, 0, 0}, {2.0, 0.5}, 0.5, SCS_NORM_DIRECT_SUM, &n1) == SCS_OK);
  REQUIRE(scs_normalization({2, 0, 0}, {2.0, 0.5}, 0.5, SCS_NORM_CLOSED_FORM, &n2) == SCS_OK);
  CHECK(n1 == doctest::Approx(48.0));
  CHECK(n2 == doctest::Approx(48.0));

  std::vector<double> p(11);
  REQUIRE(scs_distribution({4, 0.0, 0}, kParams, 2.0, 10, p.data(), p.size()) == SCS_OK);
  CHECK(p[0] == doctest::Approx(std::exp(-4.0)));
  CHECK(scs_distribution({4, 0.0, 0}, kParams, 2.0, 10, p.data(), 10) == SCS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("state, autocorrelation and carpet") {
  scs_state* st = nullptr;
  REQUIRE(scs_state_create(kGcs1, kParams, 1.0, 0.0, 0, 20, &st) == SCS_OK);
  int n_max = 0;
  double tail = 0.0, norm = 0.0;
  REQUIRE(scs_state_info(st, &n_max, &tail, &norm) == SCS_OK);
  CHECK(n_max == 20);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));

  double re = 0.0, im = 0.0;
  REQUIRE(scs_autocorrelation(st, 2 * M_PI, &re, &im) == SCS_OK);
  CHECK(std::fabs(re * re + im * im - 1.0) < 1e-10);
  REQUIRE(scs_evolve(st, SCS_MODEL_RATIONAL, 0.3, 1.0, &re, &im) == SCS_OK);
  CHECK(std::isfinite(re));

  scs_carpet* c = nullptr;
  REQUIRE(scs_carpet_create(st, SCS_MODEL_CONVENTIONAL, {50, 40, 2 * M_PI, 0.05}, 2, &c) == SCS_OK);
  std::vector<double> density(50 * 40), norms(40);
  REQUIRE(scs_carpet_density(c, density.data(), density.size()) == SCS_OK);
  REQUIRE(scs_carpet_slice_norms(c, norms.data(), norms.size()) == SCS_OK);
  for (double s : norms) CHECK(std::fabs(s - 1.0) < 1e-6);
  CHECK(scs_carpet_density(c, density.data(), 10) == SCS_ERR_INVALID_ARGUMENT);

  const fs::path out = fs::temp_directory_path() / "scarfcs_capi_carpet.pgm";
  REQUIRE(scs_carpet_export(c, SCS_FORMAT_PGM, out.c_str(), "capi") == SCS_OK);
  CHECK(fs::file_size(out) > 50u * 40u * 2u);
  CHECK(scs_carpet_export(c, SCS_FORMAT_PGM, "", nullptr) == SCS_ERR_IO);
  CHECK(scs_carpet_create(st, SCS_MODEL_CONVENTIONAL, {1, 40, 1.0, 0.05}, 1, &c) == SCS_ERR_DOMAIN);
  CHECK(c == nullptr);

  scs_carpet_destroy(c);
  scs_state_destroy(st);
}

TEST_CASE("adaptive state creation") {
  scs_state* st = nullptr;
  REQUIRE(scs_state_create({3, 0, 0}, kParams, 2.0, 0.5, 20, -1, &st) == SCS_OK);
  int n_max = 0;
  double tail = 1.0;
  REQUIRE(scs_state_info(st, &n_max, &tail, nullptr) == SCS_OK);
  CHECK(n_max >= 20);
  CHECK(tail < 1e-12);
  scs_state_destroy(st);
  CHECK(scs_state_create({2, 0, 0}, kParams, 1.0, 0.0, 0, -1, &st) == SCS_ERR_DOMAIN);
}

TEST_CASE("validation reports every check through the callback") {
  struct Seen {
    int count = 0;
    int ids = 0;
  } seen;
  auto cb = [](void* user, int id, const char* name, int, const char* detail, double seconds) {
    auto* s = static_cast<Seen*>(user);
    ++s->count;
    s->ids |= 1 << id;
    CHECK(name[0] != '\0');
    CHECK(detail[0] != '\0');
    CHECK(seconds >= 0.0);
  };
  int all = -1;
  REQUIRE(scs_validate(2, cb, &seen, &all) == SCS_OK);
  CHECK(seen.count == 9);
  CHECK(seen.ids == 0x3fe);
  CHECK((all == 0 || all == 1));
  CHECK(scs_validate(1, nullptr, nullptr, nullptr) == SCS_ERR_INVALID_ARGUMENT);
}
