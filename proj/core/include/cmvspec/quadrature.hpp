#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cmvspec {

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; cached per n.
const GaussRule& gauss_legendre(std::size_t n);

/// Integrates f over [a, b] after tau = a + (b - a)(1 - cos phi)/2, which
/// clusters nodes at both ends and absorbs inverse square-root edge behavior.
template <class F>
auto integrate_cosine_map(F&& f, double a, double b, std::size_t n) {
  const GaussRule& g = gauss_legendre(n);
  using R = decltype(f(a));
  R sum{};
  constexpr double pi = 3.141592653589793238462643383279;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double phi = 0.5 * pi * (g.nodes[i] + 1.0);
    const double tau = a + 0.5 * (b - a) * (1.0 - std::cos(phi));
    const double jac = 0.25 * pi * (b - a) * std::sin(phi);
    sum += f(tau) * (g.weights[i] * jac);
  }
  return sum;
}

}  // namespace cmvspec
