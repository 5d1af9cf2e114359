#pragma once

#include <functional>
#include <vector>

namespace scarfcs {

/// Gauss-Legendre rule mapped onto the well interval (-pi/2, pi/2).
/// Nodes strictly increasing, weights positive and summing to pi.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights);

  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline constexpr int kDefaultQuadratureOrder = 400;

/// n-point Gauss-Legendre rule on (-pi/2, pi/2), 1 <= n <= 2000. Nodes are
/// Newton-refined roots of P_n to 1e-14.
QuadratureRule gauss_legendre(int n);

/// Shared immutable 400-point rule.
const QuadratureRule& default_rule();

using RealFunction = std::function<double(double)>;

/// sum_i w_i f(x_i) g(x_i). Throws ValidationError on a non-finite sample.
double inner_product(const RealFunction& f, const RealFunction& g,
                     const QuadratureRule& rule);

double integrate(const RealFunction& f, const QuadratureRule& rule);

}  // namespace scarfcs
