#include "scarfcs/eigensystem.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "scarfcs/error.hpp"
#include "scarfcs/specfun.hpp"

namespace scarfcs {

using specfun::log_gamma;

std::string_view to_string(ModelKind model) {
  return model == ModelKind::Conventional ? "conventional" : "rational";
}

ModelKind parse_model(std::string_view text) {
  if (text == "conventional") return ModelKind::Conventional;
  if (text == "rational") return ModelKind::Rational;
  throw DomainError("unknown model '" + std::string(text) +
                    "' (expected conventional or rational)");
}

PotentialParams::PotentialParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("PotentialParams: alpha and beta must be finite");
  }
  if (!(alpha > 1.0)) {
    throw DomainError("PotentialParams: alpha must exceed 1, got " + std::to_string(alpha));
  }
  if (!(beta > 0.0) || !(beta < alpha - 1.0)) {
    throw DomainError("PotentialParams: beta must satisfy 0 < beta < alpha - 1 (alpha = " +
                      std::to_string(alpha) + ", beta = " + std::to_string(beta) + ")");
  }
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_interior(double x) {
  if (!(std::fabs(x) < kHalfPi)) {
    throw DomainError("x = " + std::to_string(x) + " lies outside (-pi/2, pi/2)");
  }
}

// ln(1 - sin x) and ln(1 + sin x) without cancellation near the walls.
struct LogSinFactors {
  double minus;
  double plus;
};

LogSinFactors log_sin_factors(double x) {
  const double u = std::numbers::pi / 4.0 - x / 2.0;
  const double sn = std::sin(u);
  const double cs = std::cos(u);
  return {std::log(2.0 * sn * sn), std::log(2.0 * cs * cs)};
}

double log_prefactor(const PotentialParams& p, double x) {
  const auto [lm, lp] = log_sin_factors(x);
  return 0.5 * (p.alpha() - p.beta()) * lm + 0.5 * (p.alpha() + p.beta()) * lp;
}

double rational_denominator(const PotentialParams& p, double s) {
  return 2.0 * p.alpha() - 1.0 - 2.0 * p.beta() * s;
}

}  // namespace

double potential(ModelKind model, const PotentialParams& params, double x) {
  check_interior(x);
  const double a = params.alpha();
  const double b = params.beta();
  const double sec = 1.0 / std::cos(x);
  const double tan = std::tan(x);
  double v = (a * (a - 1.0) + b * b) * sec * sec - b * (2.0 * a - 1.0) * sec * tan;
  if (model == ModelKind::Rational) {
    const double d = rational_denominator(params, std::sin(x));
    const double c = 2.0 * a - 1.0;
    v += 2.0 * c / d - 2.0 * (c * c - 4.0 * b * b) / (d * d);
  }
  return v;
}

double superpotential(ModelKind model, const PotentialParams& params, double x) {
  check_interior(x);
  const double a = params.alpha();
  const double b = params.beta();
  double w = a * std::tan(x) - b / std::cos(x);
  if (model == ModelKind::Rational) {
    const double d1 = rational_denominator(params, std::sin(x));
    const double d2 = d1 + 2.0;
    w -= 2.0 * b * std::cos(x) * (1.0 / d1 - 1.0 / d2);
  }
  return w;
}

double superpotential_derivative(ModelKind model, const PotentialParams& params, double x) {
  check_interior(x);
  const double a = params.alpha();
  const double b = params.beta();
  const double sec = 1.0 / std::cos(x);
  double dw = a * sec * sec - b * sec * std::tan(x);
  if (model == ModelKind::Rational) {
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double d1 = rational_denominator(params, s);
    const double d2 = d1 + 2.0;
    dw += 2.0 * b * s * (1.0 / d1 - 1.0 / d2) -
          4.0 * b * b * c * c * (1.0 / (d1 * d1) - 1.0 / (d2 * d2));
  }
  return dw;
}

double energy(const PotentialParams& params, int n) {
  if (n < 0) throw DomainError("energy: level index must be nonnegative");
  const double v = n + params.alpha();
  return v * v;
}

double level_spacing(const PotentialParams& params, int k) {
  if (k < 1) throw DomainError("level_spacing: k must be >= 1");
  return 2.0 * (params.alpha() + k) - 1.0;
}

namespace {

double log_conventional_norm(const PotentialParams& p, int n, double factor) {
  const double a = p.alpha();
  const double b = p.beta();
  return 0.5 * (log_gamma(n + 1.0) + std::log(factor) + log_gamma(n + 2.0 * a) -
                2.0 * a * std::numbers::ln2 - log_gamma(a - b + n + 0.5) -
                log_gamma(a + b + n + 0.5));
}

double log_rational_norm(const PotentialParams& p, int n) {
  const double a = p.alpha();
  const double b = p.beta();
  return std::log(b) - (a - 2.0) * std::numbers::ln2 +
         0.5 * (log_gamma(n + 1.0) + std::log(2.0 * n + 2.0 * a) + log_gamma(n + 2.0 * a) -
                std::log(n + a - b + 0.5) - std::log(n + a + b + 0.5) -
                log_gamma(n + a - b - 0.5) - log_gamma(n + a + b - 0.5));
}

void check_level(int n) {
  if (n < 0) throw DomainError("eigenstate index must be nonnegative");
}

}  // namespace

double log_normalization_constant(const EigenstateId& id) {
  check_level(id.n);
  if (id.model == ModelKind::Conventional) {
    return log_conventional_norm(id.params, id.n, 2.0 * id.n + id.params.alpha());
  }
  return log_rational_norm(id.params, id.n);
}

double normalization_constant(const EigenstateId& id) {
  return std::exp(log_normalization_constant(id));
}

double log_unit_normalization_constant(const EigenstateId& id) {
  check_level(id.n);
  if (id.model == ModelKind::Conventional) {
    return log_conventional_norm(id.params, id.n, 2.0 * id.n + 2.0 * id.params.alpha());
  }
  return log_rational_norm(id.params, id.n);
}

void unnormalized_eigenfunctions(ModelKind model, const PotentialParams& params, double x,
                                 std::span<double> out) {
  check_interior(x);
  if (out.empty()) return;
  const double s = std::sin(x);
  const double pre = std::exp(log_prefactor(params, x));
  std::vector<double> p(out.size());
  specfun::jacobi_p_all(params.jacobi_a(), params.jacobi_b(), s, p);
  if (model == ModelKind::Conventional) {
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = pre * p[n];
    return;
  }
  const double scale = pre / rational_denominator(params, s);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double p_nm1 = n == 0 ? 0.0 : p[n - 1];
    out[n] = scale * specfun::x1_jacobi_combine(static_cast<int>(n), params.alpha(),
                                                params.beta(), s, p[n], p_nm1);
  }
}

double unnormalized_eigenfunction(const EigenstateId& id, double x) {
  check_level(id.n);
  std::vector<double> values(static_cast<std::size_t>(id.n) + 1);
  unnormalized_eigenfunctions(id.model, id.params, x, values);
  return values.back();
}

double eigenfunction(const EigenstateId& id, double x) {
  return std::exp(log_unit_normalization_constant(id)) * unnormalized_eigenfunction(id, x);
}

double shape_invariance_residual(ModelKind model, const PotentialParams& params, double x) {
  const PotentialParams partner = params.shifted();
  const double w1 = superpotential(model, params, x);
  const double dw1 = superpotential_derivative(model, params, x);
  const double w2 = superpotential(model, partner, x);
  const double dw2 = superpotential_derivative(model, partner, x);
  // R(a_1) = E_1 - E_0 = 2 alpha + 1
  return (w1 * w1 + dw1) - (w2 * w2 - dw2) - level_spacing(params, 1);
}

Eigensystem::Eigensystem(ModelKind model, PotentialParams params, int max_level,
                         const QuadratureRule& rule)
    : model_(model), params_(params), max_level_(max_level) {
  if (max_level < 0) throw DomainError("Eigensystem: max_level must be nonnegative");
  const std::size_t levels = static_cast<std::size_t>(max_level) + 1;
  std::vector<double> norms_sq(levels, 0.0);
  std::vector<double> values(levels);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    unnormalized_eigenfunctions(model_, params_, rule.nodes()[i], values);
    for (std::size_t n = 0; n < levels; ++n) {
      norms_sq[n] += rule.weights()[i] * values[n] * values[n];
    }
  }
  audits_.reserve(levels);
  for (int n = 0; n <= max_level; ++n) {
    NormAudit a;
    a.n = n;
    a.closed_form = normalization_constant({model_, params_, n});
    a.quadrature = 1.0 / std::sqrt(norms_sq[static_cast<std::size_t>(n)]);
    a.ratio = a.quadrature / a.closed_form;
    a.closed_form_confirmed = std::fabs(a.ratio - 1.0) <= kNormAuditTolerance;
    a.used = a.closed_form_confirmed ? a.closed_form : a.quadrature;
    audits_.push_back(a);
  }
}

const NormAudit& Eigensystem::audit(int n) const {
  if (n < 0 || n > max_level_) throw DomainError("Eigensystem: level out of range");
  return audits_[static_cast<std::size_t>(n)];
}

double Eigensystem::wavefunction(int n, double x) const {
  const NormAudit& a = audit(n);
  return a.used * unnormalized_eigenfunction({model_, params_, n}, x);
}

void Eigensystem::wavefunctions(double x, std::span<double> out) const {
  if (out.size() > audits_.size()) {
    throw DomainError("Eigensystem: requested more levels than were prepared");
  }
  unnormalized_eigenfunctions(model_, params_, x, out);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= audits_[n].used;
}

}  // namespace scarfcs
