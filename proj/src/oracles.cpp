#include "scarfcs/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "scarfcs/error.hpp"

namespace scarfcs {

double schrodinger_residual(const EigenstateId& id, int grid_points, double margin,
                            std::optional<double> energy_override) {
  if (grid_points < 101) throw DomainError("schrodinger_residual: need at least 101 grid points");
  if (!(margin > 0.0) || !(margin < 0.5)) {
    throw DomainError("schrodinger_residual: margin must lie in (0, 0.5)");
  }
  const double lo = -std::numbers::pi / 2.0 + margin;
  const double h = (std::numbers::pi - 2.0 * margin) / (grid_points - 1);
  const double e = energy_override.value_or(energy(id.params, id.n));

  std::vector<double> psi(static_cast<std::size_t>(grid_points));
  for (int j = 0; j < grid_points; ++j) psi[j] = eigenfunction(id, lo + j * h);

  double max_residual = 0.0;
  double max_scale = 0.0;
  for (int j = 2; j + 2 < grid_points; ++j) {
    const double x = lo + j * h;
    const double d2 = (-psi[j - 2] + 16.0 * psi[j - 1] - 30.0 * psi[j] + 16.0 * psi[j + 1] -
                       psi[j + 2]) /
                      (12.0 * h * h);
    const double r = -d2 + (potential(id.model, id.params, x) - e) * psi[j];
    max_residual = std::max(max_residual, std::fabs(r));
    max_scale = std::max(max_scale, std::fabs(e * psi[j]));
  }
  return max_residual / max_scale;
}

double orthonormality_defect(ModelKind model, const PotentialParams& params, int max_level,
                             const QuadratureRule& rule) {
  const std::size_t levels = static_cast<std::size_t>(max_level) + 1;
  std::vector<double> norms(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    norms[n] = std::exp(log_unit_normalization_constant({model, params, static_cast<int>(n)}));
  }
  std::vector<double> gram(levels * levels, 0.0);
  std::vector<double> values(levels);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    unnormalized_eigenfunctions(model, params, rule.nodes()[i], values);
    for (std::size_t n = 0; n < levels; ++n) values[n] *= norms[n];
    for (std::size_t m = 0; m < levels; ++m) {
      for (std::size_t n = 0; n < levels; ++n) {
        gram[m * levels + n] += rule.weights()[i] * values[m] * values[n];
      }
    }
  }
  double defect = 0.0;
  for (std::size_t m = 0; m < levels; ++m) {
    for (std::size_t n = 0; n < levels; ++n) {
      defect = std::max(defect, std::fabs(gram[m * levels + n] - (m == n ? 1.0 : 0.0)));
    }
  }
  return defect;
}

}  // namespace scarfcs
