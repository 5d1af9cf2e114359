#include "scarfcs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "scarfcs/error.hpp"

namespace scarfcs {

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size() || nodes_.empty()) {
    throw DomainError("QuadratureRule: node and weight lists must be nonempty and equal length");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw DomainError("QuadratureRule: weights must be positive");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw DomainError("QuadratureRule: nodes must be strictly increasing");
    }
  }
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 2000) throw DomainError("gauss_legendre: order must be in [1, 2000]");
  constexpr double kPi = std::numbers::pi;
  constexpr double kHalfWidth = kPi / 2.0;
  std::vector<double> nodes(n);
  std::vector<double> weights(n);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-14) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw ConvergenceError("gauss_legendre: Newton iteration failed for order " +
                             std::to_string(n));
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - 1 - i] = kHalfWidth * x;
    nodes[i] = -kHalfWidth * x;
    weights[i] = weights[n - 1 - i] = kHalfWidth * w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return QuadratureRule(std::move(nodes), std::move(weights));
}

const QuadratureRule& default_rule() {
  static const QuadratureRule rule = gauss_legendre(kDefaultQuadratureOrder);
  return rule;
}

double inner_product(const RealFunction& f, const RealFunction& g,
                     const QuadratureRule& rule) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes()[i];
    const double fx = f(x);
    const double gx = g(x);
    if (!std::isfinite(fx) || !std::isfinite(gx)) {
      throw ValidationError("inner_product: non-finite sample at x = " + std::to_string(x));
    }
    sum += rule.weights()[i] * fx * gx;
  }
  return sum;
}

double integrate(const RealFunction& f, const QuadratureRule& rule) {
  return inner_product(f, [](double) { return 1.0; }, rule);
}

}  // namespace scarfcs
