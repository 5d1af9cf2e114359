#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "scarfcs/quadrature.hpp"

namespace scarfcs {

/// Conventional trigonometric Scarf-I or its X1 rational extension.
enum class ModelKind { Conventional, Rational };

std::string_view to_string(ModelKind model);
/// Accepts "conventional" / "rational". Throws DomainError otherwise.
ModelKind parse_model(std::string_view text);

/// (alpha, beta) with alpha > 1 and 0 < beta < alpha - 1, so that
/// 2 alpha - 1 - 2 beta sin x stays positive on the whole well.
/// Units hbar = 2m = 1.
class PotentialParams {
 public:
  PotentialParams(double alpha, double beta);

  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double beta() const { return beta_; }
  /// Same beta with alpha shifted by one (the shape-invariance partner).
  [[nodiscard]] PotentialParams shifted() const { return {alpha_ + 1.0, beta_}; }
  /// Jacobi parameters (alpha - beta - 1/2, alpha + beta - 1/2).
  [[nodiscard]] double jacobi_a() const { return alpha_ - beta_ - 0.5; }
  [[nodiscard]] double jacobi_b() const { return alpha_ + beta_ - 0.5; }

 private:
  double alpha_;
  double beta_;
};

struct EigenstateId {
  ModelKind model;
  PotentialParams params;
  int n;
};

/// V^-(x) for the selected model. Throws DomainError unless |x| < pi/2.
double potential(ModelKind model, const PotentialParams& params, double x);

/// W(x); V^- - alpha^2 = W^2 - W'.
double superpotential(ModelKind model, const PotentialParams& params, double x);

/// Analytic W'(x).
///
/// Conventional: W' = alpha sec^2 x - beta sec x tan x.
/// Rational adds the derivative of -2 beta cos x (1/D1 - 1/D2) with
/// D1 = 2 alpha - 1 - 2 beta sin x, D2 = D1 + 2, dD/dx = -2 beta cos x:
///   2 beta sin x (1/D1 - 1/D2) - 4 beta^2 cos^2 x (1/D1^2 - 1/D2^2).
double superpotential_derivative(ModelKind model, const PotentialParams& params, double x);

/// E_n = (n + alpha)^2 for both models.
double energy(const PotentialParams& params, int n);

/// R(a_k) = 2(alpha + k) - 1 = E_k - E_{k-1}, k >= 1.
double level_spacing(const PotentialParams& params, int k);

/// Closed-form normalization constant as printed in the source formulas:
/// N_n with the factor (2n + alpha) for the conventional model, N~_n for
/// the rational one.
double normalization_constant(const EigenstateId& id);
double log_normalization_constant(const EigenstateId& id);

/// Closed form that actually normalizes the state. Conventional uses
/// (2n + 2 alpha), the Jacobi norm with a + b + 1 = 2 alpha; the rational
/// form is unchanged.
double log_unit_normalization_constant(const EigenstateId& id);

/// psi_n(x) without the normalization constant.
double unnormalized_eigenfunction(const EigenstateId& id, double x);

/// Normalized psi_n(x), using log_unit_normalization_constant.
double eigenfunction(const EigenstateId& id, double x);

/// [W^2(x;a) + W'(x;a)] - [W^2(x;a+1) - W'(x;a+1)] - (2 alpha + 1).
double shape_invariance_residual(ModelKind model, const PotentialParams& params, double x);

/// Printed closed-form normalization checked against 1/sqrt(int psi_unnorm^2).
struct NormAudit {
  int n = 0;
  double closed_form = 0.0;
  double quadrature = 0.0;
  /// quadrature / closed_form
  double ratio = 1.0;
  bool closed_form_confirmed = false;
  /// Constant applied by Eigensystem: closed_form if confirmed, else quadrature.
  double used = 0.0;
};

inline constexpr double kNormAuditTolerance = 1e-6;

/// Eigenfunctions psi_0..psi_{max_level} of one model with normalization
/// verified at construction. Immutable after construction.
class Eigensystem {
 public:
  Eigensystem(ModelKind model, PotentialParams params, int max_level,
              const QuadratureRule& rule = default_rule());

  [[nodiscard]] ModelKind model() const { return model_; }
  [[nodiscard]] const PotentialParams& params() const { return params_; }
  [[nodiscard]] int max_level() const { return max_level_; }
  [[nodiscard]] const NormAudit& audit(int n) const;
  [[nodiscard]] const std::vector<NormAudit>& audits() const { return audits_; }

  [[nodiscard]] double energy(int n) const { return scarfcs::energy(params_, n); }
  [[nodiscard]] double wavefunction(int n, double x) const;
  /// out[k] = psi_k(x), k = 0 .. out.size()-1 (at most max_level + 1 entries).
  void wavefunctions(double x, std::span<double> out) const;

 private:
  ModelKind model_;
  PotentialParams params_;
  int max_level_;
  std::vector<NormAudit> audits_;
};

/// Evaluates unnormalized psi_0..psi_{out.size()-1} at x in one pass.
void unnormalized_eigenfunctions(ModelKind model, const PotentialParams& params, double x,
                                 std::span<double> out);

}  // namespace scarfcs
