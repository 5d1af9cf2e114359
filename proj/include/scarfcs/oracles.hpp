#pragma once

#include <optional>

#include "scarfcs/eigensystem.hpp"
#include "scarfcs/quadrature.hpp"

namespace scarfcs {

inline constexpr int kDefaultResidualGridPoints = 4001;
inline constexpr double kDefaultMargin = 0.05;

/// Relative sup-norm of (-d^2/dx^2 + V - E_n) psi_n on a uniform grid over
/// [-pi/2 + margin, pi/2 - margin], with a 5-point second-derivative stencil,
/// divided by max |E_n psi_n|. `energy_override` replaces E_n (used to check
/// that the residual actually detects a wrong eigenvalue).
double schrodinger_residual(const EigenstateId& id,
                            int grid_points = kDefaultResidualGridPoints,
                            double margin = kDefaultMargin,
                            std::optional<double> energy_override = std::nullopt);

/// max_{m,n <= max_level} |<psi_m|psi_n> - delta_mn| under the given rule,
/// using the unit closed-form normalization (no quadrature rescaling).
double orthonormality_defect(ModelKind model, const PotentialParams& params, int max_level,
                             const QuadratureRule& rule = default_rule());

}  // namespace scarfcs
