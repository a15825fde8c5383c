#include "cmvspec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmvspec {

namespace {

// x e^{log_scale}, saturated at +-kSaturation instead of overflowing.
constexpr double kSaturation = 1e300;

double scaled_value(double x, double log_scale) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  if (std::log(std::abs(x)) + log_scale >= std::log(kSaturation)) return x > 0 ? kSaturation : -kSaturation;
  return x * std::exp(log_scale);
}

// sign(v) log(1 + |v|) for v = x e^{log_scale}, without forming v.
double compressed_value(double x, double log_scale) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const double l = std::log(std::abs(x)) + log_scale;
  const double c = l < 30.0 ? std::log1p(std::exp(l)) : l + std::log1p(std::exp(-l));
  return std::copysign(c, x);
}

}  // namespace

SpectralParameter::SpectralParameter(cplx z_value) : z(z_value) {
  if (z == 0.0) throw Error(ErrorCode::ZeroSpectralParameter, "z = 0");
}

SpectralParameter SpectralParameter::on_circle(double tau) {
  SpectralParameter s(std::polar(1.0, tau));
  s.tau = tau;
  return s;
}

Mat2C gz_p(const VerblunskyPair& pair, const SpectralParameter&) {
  const cplx a = pair.alpha.value();
  const cplx l = pair.lambda();
  const double ir = 1.0 / pair.rho();
  return {-std::conj(a) * ir, std::conj(l) * ir, l * ir, -a * ir};
}

Mat2C gz_q(const VerblunskyPair& pair, const SpectralParameter& z) {
  const cplx a = pair.alpha.value();
  const cplx l = pair.lambda();
  const double ir = 1.0 / pair.rho();
  return {-a * ir, l / z.z * ir, z.z * std::conj(l) * ir, -std::conj(a) * ir};
}

Mat2C gz_step(const VerblunskyWord& word, index_t n, const SpectralParameter& z) {
  return pmod(n, 2) == 1 ? gz_p(word.at(n), z) : gz_q(word.at(n), z);
}

namespace {

void renormalize(Mat2C& m, double& log_scale) {
  const double s = m.max_abs();
  if (s > 0.0 && std::isfinite(s)) {
    m *= 1.0 / s;
    log_scale += std::log(s);
  }
}

}  // namespace

CocycleProduct cocycle(const VerblunskyWord& word, index_t n, index_t m, const SpectralParameter& z) {
  CocycleProduct out;
  out.from_index = m;
  out.to_index = n;
  out.det_parity = (pmod(n - m, 2) == 0) ? 1 : -1;
  out.matrix = Mat2C::identity();
  const bool scaled = std::abs(n - m) > kScaleThreshold;
  if (n >= m) {
    for (index_t k = m; k < n; ++k) {
      out.matrix = gz_step(word, k, z) * out.matrix;
      if (scaled && (k - m) % 16 == 15) renormalize(out.matrix, out.log_scale);
    }
  } else {
    // Z(n, m) = Z(m, n)^{-1} = Y(n)^{-1} ... Y(m-1)^{-1}
    for (index_t k = n; k < m; ++k) {
      out.matrix = out.matrix * gz_step(word, k, z).inverse();
      if (scaled && (k - n) % 16 == 15) renormalize(out.matrix, out.log_scale);
    }
  }
  if (scaled) renormalize(out.matrix, out.log_scale);
  return out;
}

Mat2C two_step(const VerblunskyWord& word, index_t j, const SpectralParameter& z) {
  if (pmod(j, 2) != 0) throw Error(ErrorCode::OddIndex, "two_step needs an even index");
  const cplx a = word.alpha(j + 1);
  const cplx l = word.lambda(j + 1);
  const cplx b = word.alpha(j);
  const cplx mu = word.lambda(j);
  const cplx zeta = z.z;
  const double s = 1.0 / (word.rho(j + 1) * word.rho(j));
  const cplx ca = std::conj(a);
  const cplx cl = std::conj(l);
  const cplx cmu = std::conj(mu);
  return {s * (ca * b + zeta * cmu * cl), s * (-ca * mu / zeta - std::conj(b) * cl),
          s * (-b * l - a * zeta * cmu), s * (mu * l / zeta + a * std::conj(b))};
}

LieCoords t_inv_dt_coords(const VerblunskyWord& word, index_t j, const SpectralParameter& z) {
  if (pmod(j, 2) != 0) throw Error(ErrorCode::OddIndex, "t_inv_dt needs an even index");
  if (!z.is_on_circle(1e-12)) throw Error(ErrorCode::OffCircle, "|z| != 1");
  const cplx a = word.alpha(j);
  const double ir2 = 1.0 / (1.0 - std::norm(a));
  // i * (-conj(a) lambda / z) = (-i conj(a) lambda / z)
  return {ir2, -kI * std::conj(a) * word.lambda(j) / z.z * ir2};
}

Mat2C t_inv_dt(const VerblunskyWord& word, index_t j, const SpectralParameter& z) {
  const LieCoords c = t_inv_dt_coords(word, j, z);
  return {kI * c.w, c.z, std::conj(c.z), -kI * c.w};
}

CocycleProduct monodromy_scaled(const VerblunskyWord& word, const SpectralParameter& z) {
  CocycleProduct out;
  out.from_index = 0;
  out.to_index = word.q();
  out.matrix = Mat2C::identity();
  const bool scaled = word.q() > kScaleThreshold;
  for (index_t j = 0; j < word.q(); j += 2) {
    out.matrix = two_step(word, j, z) * out.matrix;
    if (scaled && j % 32 == 30) renormalize(out.matrix, out.log_scale);
  }
  if (scaled) renormalize(out.matrix, out.log_scale);
  return out;
}

Mat2C monodromy(const VerblunskyWord& word, const SpectralParameter& z) {
  return monodromy_scaled(word, z).unscaled();
}

Mat2C shifted_monodromy(const VerblunskyWord& word, index_t k, const SpectralParameter& z) {
  if (pmod(k, 2) != 0) throw Error(ErrorCode::OddIndex, "shift must be even");
  k = pmod(k, word.q());
  Mat2C out = Mat2C::identity();
  for (index_t j = k; j < k + word.q(); j += 2) out = two_step(word, j, z) * out;
  return out;
}

std::vector<Mat2C> all_shifted_monodromies(const VerblunskyWord& word, const SpectralParameter& z) {
  const auto h = static_cast<std::size_t>(word.q() / 2);
  std::vector<Mat2C> t(h);
  for (std::size_t l = 0; l < h; ++l) t[l] = two_step(word, 2 * static_cast<index_t>(l), z);
  // prefix[l] = T_{2l-2} ... T_0, suffix[l] = T_{q-2} ... T_{2l}
  std::vector<Mat2C> prefix(h + 1, Mat2C::identity());
  std::vector<Mat2C> suffix(h + 1, Mat2C::identity());
  for (std::size_t l = 0; l < h; ++l) prefix[l + 1] = t[l] * prefix[l];
  for (std::size_t l = h; l-- > 0;) suffix[l] = suffix[l + 1] * t[l];
  std::vector<Mat2C> out(h);
  for (std::size_t l = 0; l < h; ++l) out[l] = prefix[l] * suffix[l];
  return out;
}

cplx discriminant(const VerblunskyWord& word, const SpectralParameter& z) {
  const CocycleProduct m = monodromy_scaled(word, z);
  return m.matrix.trace() * std::exp(m.log_scale);
}

double discriminant_on_circle(const VerblunskyWord& word, double tau) {
  return discriminant(word, SpectralParameter::on_circle(tau)).real();
}

TransferEvaluator::TransferEvaluator(const VerblunskyWord& word) : q_(word.q()) {
  const auto h = static_cast<std::size_t>(q_ / 2);
  a0_.resize(h);
  a1_.resize(h);
  a2_.resize(h);
  for (std::size_t l = 0; l < h; ++l) {
    const auto j = 2 * static_cast<index_t>(l);
    const cplx a = word.alpha(j + 1);
    const cplx lam = word.lambda(j + 1);
    const cplx b = word.alpha(j);
    const cplx mu = word.lambda(j);
    const double s = 1.0 / (word.rho(j + 1) * word.rho(j));
    const cplx ca = std::conj(a);
    const cplx cl = std::conj(lam);
    const cplx cmu = std::conj(mu);
    a0_[l] = {s * ca * b, -s * std::conj(b) * cl, -s * b * lam, s * a * std::conj(b)};
    a1_[l] = {s * cmu * cl, 0.0, -s * a * cmu, 0.0};
    a2_[l] = {0.0, -s * ca * mu, 0.0, s * mu * lam};
  }
}

Mat2C TransferEvaluator::two_step(index_t l, cplx z) const {
  const auto i = static_cast<std::size_t>(l);
  const cplx iz = 1.0 / z;
  const Mat2C& c0 = a0_[i];
  const Mat2C& c1 = a1_[i];
  const Mat2C& c2 = a2_[i];
  return {c0.a + z * c1.a, c0.b + iz * c2.b, c0.c + z * c1.c, c0.d + iz * c2.d};
}

CocycleProduct TransferEvaluator::monodromy(cplx z) const {
  CocycleProduct out;
  out.to_index = q_;
  out.matrix = Mat2C::identity();
  const index_t h = q_ / 2;
  const bool scaled = q_ > kScaleThreshold;
  for (index_t l = 0; l < h; ++l) {
    out.matrix = two_step(l, z) * out.matrix;
    if (scaled && l % 16 == 15) renormalize(out.matrix, out.log_scale);
  }
  if (scaled) renormalize(out.matrix, out.log_scale);
  return out;
}

double TransferEvaluator::discriminant(double tau) const {
  const CocycleProduct m = monodromy(std::polar(1.0, tau));
  return scaled_value(m.matrix.trace().real(), m.log_scale);
}

TransferEvaluator::ScaledPair TransferEvaluator::scaled_discriminant_and_derivative(double tau) const {
  const cplx z = std::polar(1.0, tau);
  const auto h = static_cast<std::size_t>(q_ / 2);
  // Scaled prefix P_l = T_{l-1} ... T_0 and suffix S_l = T_{h-1} ... T_l.
  std::vector<Mat2C> pre(h + 1, Mat2C::identity());
  std::vector<Mat2C> suf(h + 1, Mat2C::identity());
  std::vector<double> pre_s(h + 1, 0.0);
  std::vector<double> suf_s(h + 1, 0.0);
  const bool scaled = q_ > kScaleThreshold;
  for (std::size_t l = 0; l < h; ++l) {
    pre[l + 1] = two_step(static_cast<index_t>(l), z) * pre[l];
    pre_s[l + 1] = pre_s[l];
    if (scaled) renormalize(pre[l + 1], pre_s[l + 1]);
  }
  for (std::size_t l = h; l-- > 0;) {
    suf[l] = suf[l + 1] * two_step(static_cast<index_t>(l), z);
    suf_s[l] = suf_s[l + 1];
    if (scaled) renormalize(suf[l], suf_s[l]);
  }
  const cplx iz = 1.0 / z;
  std::vector<double> terms(h), scales(h);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < h; ++l) {
    // dT/dtau = i (z A1 - A2 / z)
    const Mat2C dt{kI * z * a1_[l].a, -kI * iz * a2_[l].b, kI * z * a1_[l].c, -kI * iz * a2_[l].d};
    const Mat2C prod = dt * pre[l] * suf[l + 1];
    terms[l] = prod.trace().real();
    scales[l] = pre_s[l] + suf_s[l + 1];
    if (terms[l] != 0.0) top = std::max(top, scales[l]);
  }
  ScaledPair out;
  out.delta = pre[h].trace().real();
  out.delta_scale = pre_s[h];
  out.deriv_scale = std::isfinite(top) ? top : 0.0;
  for (std::size_t l = 0; l < h; ++l) out.deriv += terms[l] * std::exp(scales[l] - out.deriv_scale);
  return out;
}

std::pair<double, double> TransferEvaluator::discriminant_and_derivative(double tau) const {
  const ScaledPair s = scaled_discriminant_and_derivative(tau);
  return {scaled_value(s.delta, s.delta_scale), scaled_value(s.deriv, s.deriv_scale)};
}

double TransferEvaluator::compressed_discriminant(double tau) const {
  const CocycleProduct m = monodromy(std::polar(1.0, tau));
  return compressed_value(m.matrix.trace().real(), m.log_scale);
}

double TransferEvaluator::compressed_derivative(double tau) const {
  const ScaledPair s = scaled_discriminant_and_derivative(tau);
  return compressed_value(s.deriv, s.deriv_scale);
}

double log_spectral_radius(const Mat2C& m, double log_scale) {
  const cplx t = m.trace();
  const cplx det = m.det();
  const cplx r = std::sqrt(0.25 * t * t - det);
  const cplx half = 0.5 * t;
  const cplx mu = std::abs(half + r) >= std::abs(half - r) ? half + r : half - r;
  const double a = std::abs(mu);
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(a) + log_scale;
}

double lyapunov(const VerblunskyWord& word, const SpectralParameter& z) {
  const CocycleProduct m = monodromy_scaled(word, z);
  if (z.is_on_circle()) {
    const double delta = m.matrix.trace().real() * std::exp(m.log_scale);
    if (std::abs(delta) <= 2.0) return 0.0;
  }
  const double l = log_spectral_radius(m.matrix, m.log_scale) / static_cast<double>(word.q());
  return std::max(0.0, l);
}

}  // namespace cmvspec
