#include "scarfcs.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "scarfcs/coherent.hpp"
#include "scarfcs/dynamics.hpp"
#include "scarfcs/eigensystem.hpp"
#include "scarfcs/error.hpp"
#include "scarfcs/observables.hpp"
#include "scarfcs/oracles.hpp"
#include "scarfcs/validation.hpp"

struct scs_system {
  scarfcs::Eigensystem system;
};

struct scs_state {
  scarfcs::CoherentExpansion expansion;
};

struct scs_carpet {
  scarfcs::CarpetField field;
  std::string description;
};

namespace {

thread_local std::string last_error;

scs_status fail(scs_status status, const char* message) {
  last_error = message;
  return status;
}

// Maps exceptions from the core onto status codes.
template <typename Fn>
scs_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SCS_OK;
  } catch (const scarfcs::DomainError& e) {
    return fail(SCS_ERR_DOMAIN, e.what());
  } catch (const scarfcs::ConvergenceError& e) {
    return fail(SCS_ERR_CONVERGENCE, e.what());
  } catch (const scarfcs::IoError& e) {
    return fail(SCS_ERR_IO, e.what());
  } catch (const scarfcs::ValidationError& e) {
    return fail(SCS_ERR_VALIDATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SCS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SCS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SCS_ERR_INTERNAL, "unknown error");
  }
}

scarfcs::ModelKind to_model(scs_model m) {
  switch (m) {
    case SCS_MODEL_CONVENTIONAL:
      return scarfcs::ModelKind::Conventional;
    case SCS_MODEL_RATIONAL:
      return scarfcs::ModelKind::Rational;
  }
  throw scarfcs::DomainError("unknown model");
}

scarfcs::PotentialParams to_params(scs_params p) { return {p.alpha, p.beta}; }

scarfcs::GcsSpec to_spec(scs_gcs g) {
  return scarfcs::GcsSpec(scarfcs::gcs_kind_from_int(g.kind), g.sigma, g.alpha_tilde);
}

#define SCS_REQUIRE(ptr)                                                              \
  do {                                                                                \
    if ((ptr) == nullptr) return fail(SCS_ERR_INVALID_ARGUMENT, #ptr " must not be null"); \
  } while (0)

}  // namespace

extern "C" {

const char* scs_version(void) { return "0.1.0"; }

const char* scs_last_error(void) { return last_error.c_str(); }

const char* scs_status_name(scs_status status) {
  switch (status) {
    case SCS_OK:
      return "ok";
    case SCS_ERR_DOMAIN:
      return "domain error";
    case SCS_ERR_CONVERGENCE:
      return "convergence error";
    case SCS_ERR_IO:
      return "I/O error";
    case SCS_ERR_VALIDATION:
      return "validation error";
    case SCS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case SCS_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

scs_status scs_system_create(scs_model model, scs_params params, int max_level,
                             scs_system** out) {
  SCS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new scs_system{scarfcs::Eigensystem(to_model(model), to_params(params), max_level)};
  });
}

void scs_system_destroy(scs_system* system) { delete system; }

scs_status scs_energy(scs_params params, int n, double* out) {
  SCS_REQUIRE(out);
  return guarded([&] { *out = scarfcs::energy(to_params(params), n); });
}

scs_status scs_potential(scs_model model, scs_params params, double x, double* out) {
  SCS_REQUIRE(out);
  return guarded([&] { *out = scarfcs::potential(to_model(model), to_params(params), x); });
}

scs_status scs_superpotential(scs_model model, scs_params params, double x, double* out) {
  SCS_REQUIRE(out);
  return guarded([&] { *out = scarfcs::superpotential(to_model(model), to_params(params), x); });
}

scs_status scs_shape_invariance_residual(scs_model model, scs_params params, double x,
                                         double* out) {
  SCS_REQUIRE(out);
  return guarded(
      [&] { *out = scarfcs::shape_invariance_residual(to_model(model), to_params(params), x); });
}

scs_status scs_eigenfunction(const scs_system* system, int n, double x, double* out) {
  SCS_REQUIRE(system);
  SCS_REQUIRE(out);
  return guarded([&] { *out = system->system.wavefunction(n, x); });
}

scs_status scs_eigen_row_get(const scs_system* system, int n, int grid_points, double margin,
                             scs_eigen_row* out) {
  SCS_REQUIRE(system);
  SCS_REQUIRE(out);
  return guarded([&] {
    const scarfcs::Eigensystem& s = system->system;
    const scarfcs::NormAudit& audit = s.audit(n);
    scs_eigen_row row{};
    row.n = n;
    row.energy = s.energy(n);
    row.norm_printed = audit.closed_form;
    row.norm_quadrature = audit.quadrature;
    row.norm_ratio = audit.ratio;
    row.closed_form_confirmed = audit.closed_form_confirmed ? 1 : 0;
    row.schrodinger_residual =
        scarfcs::schrodinger_residual({s.model(), s.params(), n}, grid_points, margin);
    *out = row;
  });
}

scs_status scs_normalization(scs_gcs gcs, scs_params params, double z, scs_norm_method method,
                             double* out) {
  SCS_REQUIRE(out);
  return guarded([&] {
    const auto m = method == SCS_NORM_DIRECT_SUM ? scarfcs::NormalizationMethod::DirectSum
                                                 : scarfcs::NormalizationMethod::ClosedForm;
    *out = scarfcs::normalization(to_spec(gcs), to_params(params), z, m);
  });
}

scs_status scs_stats(scs_gcs gcs, scs_params params, double z, scs_stats_report* out) {
  SCS_REQUIRE(out);
  return guarded([&] {
    const scarfcs::StatsReport r = scarfcs::stats(to_spec(gcs), to_params(params), z);
    *out = {r.z, r.g2, r.mandel_q, r.mean_photon, r.metric_factor};
  });
}

scs_status scs_distribution(scs_gcs gcs, scs_params params, double zeta_abs, int n_max,
                            double* out, size_t out_len) {
  SCS_REQUIRE(out);
  if (n_max < 0 || out_len < static_cast<size_t>(n_max) + 1) {
    return fail(SCS_ERR_INVALID_ARGUMENT, "output buffer shorter than n_max + 1");
  }
  return guarded([&] {
    const auto p = scarfcs::photon_distribution(to_spec(gcs), to_params(params),
                                                scarfcs::Zeta{zeta_abs, 0.0}, n_max);
    std::memcpy(out, p.data(), p.size() * sizeof(double));
  });
}

scs_status scs_state_create(scs_gcs gcs, scs_params params, double zeta_abs, double zeta_phase,
                            int min_n_max, int fixed_n_max, scs_state** out) {
  SCS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto policy = fixed_n_max >= 0 ? scarfcs::TruncationPolicy::fixed(fixed_n_max)
                                         : scarfcs::TruncationPolicy::adaptive(min_n_max);
    *out = new scs_state{scarfcs::expansion(to_spec(gcs), to_params(params),
                                            scarfcs::Zeta{zeta_abs, zeta_phase}, policy)};
  });
}

void scs_state_destroy(scs_state* state) { delete state; }

scs_status scs_state_info(const scs_state* state, int* n_max, double* tail_bound,
                          double* norm_sq) {
  SCS_REQUIRE(state);
  if (n_max) *n_max = state->expansion.n_max;
  if (tail_bound) *tail_bound = state->expansion.tail_bound;
  if (norm_sq) *norm_sq = state->expansion.norm_sq();
  return SCS_OK;
}

scs_status scs_autocorrelation(const scs_state* state, double t, double* re, double* im) {
  SCS_REQUIRE(state);
  SCS_REQUIRE(re);
  SCS_REQUIRE(im);
  return guarded([&] {
    const auto a = scarfcs::autocorrelation(state->expansion, t);
    *re = a.real();
    *im = a.imag();
  });
}

scs_status scs_evolve(const scs_state* state, scs_model model, double x, double t, double* re,
                      double* im) {
  SCS_REQUIRE(state);
  SCS_REQUIRE(re);
  SCS_REQUIRE(im);
  return guarded([&] {
    const auto psi = scarfcs::evolve(to_model(model), state->expansion, x, t);
    *re = psi.real();
    *im = psi.imag();
  });
}

scs_status scs_carpet_create(const scs_state* state, scs_model model, scs_grid grid,
                             unsigned threads, scs_carpet** out) {
  SCS_REQUIRE(state);
  SCS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const scarfcs::GridSpec g{grid.x_points, grid.t_points, grid.t_max, grid.margin};
    scarfcs::CarpetOptions options;
    options.threads = threads;
    *out = new scs_carpet{scarfcs::carpet(to_model(model), state->expansion, g, options), {}};
  });
}

void scs_carpet_destroy(scs_carpet* carpet) { delete carpet; }

scs_status scs_carpet_density(const scs_carpet* carpet, double* out, size_t out_len) {
  SCS_REQUIRE(carpet);
  SCS_REQUIRE(out);
  const auto& d = carpet->field.density;
  if (out_len < d.size()) return fail(SCS_ERR_INVALID_ARGUMENT, "density buffer too short");
  std::memcpy(out, d.data(), d.size() * sizeof(double));
  return SCS_OK;
}

scs_status scs_carpet_slice_norms(const scs_carpet* carpet, double* out, size_t out_len) {
  SCS_REQUIRE(carpet);
  SCS_REQUIRE(out);
  const auto& s = carpet->field.slice_norms;
  if (out_len < s.size()) return fail(SCS_ERR_INVALID_ARGUMENT, "slice norm buffer too short");
  std::memcpy(out, s.data(), s.size() * sizeof(double));
  return SCS_OK;
}

scs_status scs_carpet_export(const scs_carpet* carpet, scs_format format, const char* path,
                             const char* description) {
  SCS_REQUIRE(carpet);
  SCS_REQUIRE(path);
  return guarded([&] {
    const auto f = format == SCS_FORMAT_CSV ? scarfcs::CarpetFormat::Csv : scarfcs::CarpetFormat::Pgm;
    scarfcs::export_carpet(carpet->field, f, path, description ? description : "");
  });
}

scs_status scs_validate(unsigned threads, scs_criterion_callback callback, void* user,
                        int* all_passed) {
  SCS_REQUIRE(all_passed);
  return guarded([&] {
    bool ok = true;
    scarfcs::validation::run_all(threads, [&](const scarfcs::validation::CriterionResult& r) {
      ok = ok && r.passed;
      if (callback) {
        callback(user, r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds);
      }
    });
    *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
