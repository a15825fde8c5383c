#include "cmvspec/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

namespace cmvspec {

namespace {

GaussRule build_rule(std::size_t n) {
  const unsigned order = static_cast<unsigned>(n);
  // Non-negative zeros in ascending order; mirror for the negative half.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(static_cast<int>(order));
  std::vector<double> x;
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it != 0.0) x.push_back(-*it);
  }
  for (double v : half) x.push_back(v);
  GaussRule r;
  r.nodes = x;
  for (double xi : x) {
    const double dp = boost::math::legendre_p_prime<double>(static_cast<int>(order), xi);
    r.weights.push_back(2.0 / ((1.0 - xi * xi) * dp * dp));
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

}  // namespace cmvspec
