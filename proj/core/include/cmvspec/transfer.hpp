#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cmvspec/word.hpp"

namespace cmvspec {

struct SpectralParameter {
  cplx z;
  std::optional<double> tau;

  /// Throws Error(ZeroSpectralParameter) for z = 0.
  explicit SpectralParameter(cplx z_value);
  static SpectralParameter on_circle(double tau);
  bool is_on_circle(double tol = 1e-14) const { return std::abs(std::abs(z) - 1.0) <= tol; }
};

/// Product Y(to-1) ... Y(from). The true product is matrix * exp(log_scale).
struct CocycleProduct {
  Mat2C matrix;
  index_t from_index = 0;
  index_t to_index = 0;
  int det_parity = 1;
  double log_scale = 0.0;

  Mat2C unscaled() const { return std::exp(log_scale) * matrix; }
};

/// (1/rho) [[-conj alpha, 1/lambda], [lambda, -alpha]].
Mat2C gz_p(const VerblunskyPair& pair, const SpectralParameter& z);
/// (1/rho) [[-alpha, lambda/z], [z/lambda, -conj alpha]].
Mat2C gz_q(const VerblunskyPair& pair, const SpectralParameter& z);

/// Y(n) = P for odd n and Q for even n.
Mat2C gz_step(const VerblunskyWord& word, index_t n, const SpectralParameter& z);

/// Z(n, m; z); Z(m, m) = I and Z(n, m) = Z(m, n)^{-1} for n < m. Products
/// longer than kScaleThreshold factors are renormalized as they accumulate.
CocycleProduct cocycle(const VerblunskyWord& word, index_t n, index_t m, const SpectralParameter& z);

inline constexpr index_t kScaleThreshold = 500;

/// T_j = P(alpha_{j+1}) Q(alpha_j), closed form. Throws Error(OddIndex) for odd j.
Mat2C two_step(const VerblunskyWord& word, index_t j, const SpectralParameter& z);

/// T_j^{-1} dT_j/dtau at z = e^{i tau}. Throws Error(OffCircle) for |z| != 1.
Mat2C t_inv_dt(const VerblunskyWord& word, index_t j, const SpectralParameter& z);

/// The su(1,1) coordinates (w, z) of t_inv_dt: [[i w, z], [conj z, -i w]].
struct LieCoords {
  double w;
  cplx z;
};
LieCoords t_inv_dt_coords(const VerblunskyWord& word, index_t j, const SpectralParameter& z);

/// Phi = T_{q-2} ... T_0 with scale tracking.
CocycleProduct monodromy_scaled(const VerblunskyWord& word, const SpectralParameter& z);
Mat2C monodromy(const VerblunskyWord& word, const SpectralParameter& z);

/// Phi_k = T_{k-2} ... T_0 T_{q-2} ... T_k for even k in [0, q).
Mat2C shifted_monodromy(const VerblunskyWord& word, index_t k, const SpectralParameter& z);

/// All Phi_{2l}, l = 0 .. q/2 - 1, from prefix and suffix products in O(q).
std::vector<Mat2C> all_shifted_monodromies(const VerblunskyWord& word, const SpectralParameter& z);

/// tr Phi(z). Real on the circle up to rounding.
cplx discriminant(const VerblunskyWord& word, const SpectralParameter& z);

/// Re Delta(e^{i tau}).
double discriminant_on_circle(const VerblunskyWord& word, double tau);

/// (1/q) log spr Phi(z) from the trace-determinant quadratic; exactly 0 on
/// the circle when |Delta| <= 2.
double lyapunov(const VerblunskyWord& word, const SpectralParameter& z);

/// Precomputed two-step coefficients T_j(z) = A0_j + z A1_j + A2_j / z, for
/// repeated monodromy evaluation on one word.
class TransferEvaluator {
 public:
  explicit TransferEvaluator(const VerblunskyWord& word);

  index_t q() const { return q_; }
  Mat2C two_step(index_t l, cplx z) const;
  CocycleProduct monodromy(cplx z) const;
  double discriminant(double tau) const;
  /// Delta(e^{i tau}) and dDelta/dtau = sum_l tr(T_l^{-1} T_l' Phi_{2l}), both real.
  std::pair<double, double> discriminant_and_derivative(double tau) const;
  /// sign(Delta) log(1 + |Delta|) and the same for dDelta/dtau, finite at any period.
  double compressed_discriminant(double tau) const;
  double compressed_derivative(double tau) const;

 private:
  struct ScaledPair {
    double delta = 0.0;
    double delta_scale = 0.0;
    double deriv = 0.0;
    double deriv_scale = 0.0;
  };
  ScaledPair scaled_discriminant_and_derivative(double tau) const;

  index_t q_;
  std::vector<Mat2C> a0_, a1_, a2_;
};

/// Spectral radius of a 2x2 matrix e^{log_scale} m, returned as a logarithm.
double log_spectral_radius(const Mat2C& m, double log_scale = 0.0);

}  // namespace cmvspec
