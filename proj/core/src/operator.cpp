#include "cmvspec/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmvspec {

Mat2C theta_block(cplx alpha, cplx lambda) {
  const double rho = std::sqrt(1.0 - std::norm(alpha));
  return lambda * Mat2C{std::conj(alpha), rho, rho, -alpha};
}

Mat2C theta_block(const VerblunskyPair& pair) { return theta_block(pair.alpha.value(), pair.lambda()); }

cplx OperatorWindow::entry(index_t n, index_t m) const {
  if (n < lo || n > hi || m < lo || m > hi || std::abs(n - m) > 2) return 0.0;
  return rows[static_cast<std::size_t>(n - lo)][static_cast<std::size_t>(m - n + 2)];
}

std::vector<cplx> OperatorWindow::dense() const {
  const index_t s = size();
  std::vector<cplx> out(static_cast<std::size_t>(s * s));
  for (index_t n = lo; n <= hi; ++n) {
    for (index_t m = std::max(lo, n - 2); m <= std::min(hi, n + 2); ++m) {
      out[static_cast<std::size_t>((n - lo) * s + (m - lo))] = entry(n, m);
    }
  }
  return out;
}

OperatorWindow assemble_window(const VerblunskyWord& word, index_t lo, index_t hi) {
  return assemble_window_from([&](index_t n) { return word.alpha(n); },
                              [&](index_t n) { return word.lambda(n); }, lo, hi);
}

cplx WindowVector::at(index_t n) const {
  if (n < lo || n > hi()) return 0.0;
  return values[static_cast<std::size_t>(n - lo)];
}

double WindowVector::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return std::sqrt(s);
}

WindowVector WindowVector::delta(index_t n, index_t pad) {
  WindowVector v{n - pad, std::vector<cplx>(static_cast<std::size_t>(2 * pad + 1))};
  v.values[static_cast<std::size_t>(pad)] = 1.0;
  return v;
}

namespace {

// Applies the block-diagonal factor whose blocks start at sites of the given
// parity, in place on a window that already contains the image.
void apply_factor(const VerblunskyWord& word, WindowVector& v, index_t parity, bool adjoint) {
  const index_t hi = v.hi();
  for (index_t k = v.lo - pmod(v.lo - parity, 2); k <= hi; k += 2) {
    const cplx x0 = v.at(k);
    const cplx x1 = v.at(k + 1);
    if (x0 == 0.0 && x1 == 0.0) continue;
    Mat2C t = theta_block(word.at(k));
    if (adjoint) t = t.adjoint();
    const cplx y0 = t.a * x0 + t.b * x1;
    const cplx y1 = t.c * x0 + t.d * x1;
    if (k >= v.lo) v.values[static_cast<std::size_t>(k - v.lo)] = y0;
    if (k + 1 <= hi) v.values[static_cast<std::size_t>(k + 1 - v.lo)] = y1;
  }
}

}  // namespace

WindowVector apply_operator(const VerblunskyWord& word, const WindowVector& psi, bool adjoint,
                            bool auto_grow) {
  index_t first = std::numeric_limits<index_t>::max();
  index_t last = std::numeric_limits<index_t>::min();
  for (index_t n = psi.lo; n <= psi.hi(); ++n) {
    if (psi.at(n) != 0.0) {
      first = std::min(first, n);
      last = std::max(last, n);
    }
  }
  if (first > last) return psi;
  WindowVector v;
  if (auto_grow) {
    v.lo = std::min(psi.lo, first - 2);
    const index_t hi = std::max(psi.hi(), last + 2);
    v.values.assign(static_cast<std::size_t>(hi - v.lo + 1), 0.0);
    for (index_t n = first; n <= last; ++n) v.values[static_cast<std::size_t>(n - v.lo)] = psi.at(n);
  } else {
    if (first - psi.lo < 2 || psi.hi() - last < 2) {
      throw Error(ErrorCode::SupportTouchesBoundary, "support within two sites of the window edge");
    }
    v = psi;
  }
  // E = L M with L blocks on {2j, 2j+1} and M blocks on {2j+1, 2j+2}.
  if (!adjoint) {
    apply_factor(word, v, 1, false);
    apply_factor(word, v, 0, false);
  } else {
    apply_factor(word, v, 0, true);
    apply_factor(word, v, 1, true);
  }
  return v;
}

cplx diagonal_moment(const VerblunskyWord& word, int k) {
  cplx s = 0.0;
  for (index_t n = 0; n < word.q(); ++n) {
    WindowVector v = WindowVector::delta(n, 2);
    for (int i = 0; i < k; ++i) v = apply_operator(word, v, false);
    s += v.at(n);
  }
  return s / static_cast<double>(word.q());
}

GaugedWord::GaugedWord(const VerblunskyWord& word) : word_(word) {
  const index_t q = word.q();
  gamma_.assign(static_cast<std::size_t>(q + 2), 1.0);
  for (index_t n = 2; n <= q + 1; ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (n % 2 == 0) {
      gamma_[i] = word.lambda(n - 1) * word.lambda(n - 2) * gamma_[i - 2];
    } else {
      gamma_[i] = std::conj(word.lambda(n - 1) * word.lambda(n - 2)) * gamma_[i - 2];
    }
  }
  omega_even_ = std::arg(gamma_[static_cast<std::size_t>(q)]);
  omega_odd_ = std::arg(gamma_[static_cast<std::size_t>(q + 1)]);

  // alpha'_{n+q} = e^{i(omega_odd - omega_even)} alpha'_n for either parity.
  bool all_zero = true;
  for (const auto& p : word.pairs()) all_zero = all_zero && p.alpha.value() == 0.0;
  const cplx chi = std::polar(1.0, omega_odd_ - omega_even_);
  constexpr double tol = 1e-12;
  if (all_zero || std::abs(chi - 1.0) <= tol) {
    period_ = q;
  } else if (std::abs(chi * chi - 1.0) <= tol) {
    period_ = 2 * q;
  }
}

cplx GaugedWord::gamma(index_t n) const {
  const index_t q = word_.q();
  const index_t r = pmod(n, q);
  const index_t k = fdiv(n, q);
  const double omega = (pmod(n, 2) == 0) ? omega_even_ : omega_odd_;
  return gamma_[static_cast<std::size_t>(r)] * std::polar(1.0, static_cast<double>(k) * omega);
}

cplx GaugedWord::alpha(index_t n) const {
  if (pmod(n, 2) == 1) {
    return word_.lambda(n + 1) * word_.lambda(n) * gamma(n + 2) * std::conj(gamma(n + 1)) *
           word_.alpha(n);
  }
  return std::conj(word_.lambda(n) * word_.lambda(n - 1) * gamma(n)) * gamma(n - 1) *
         word_.alpha(n);
}

VerblunskyWord GaugedWord::to_word() const {
  if (!periodic()) throw Error(ErrorCode::InvalidWord, "gauged coefficients are not periodic");
  std::vector<VerblunskyPair> pairs;
  for (index_t n = 0; n < period_; ++n) pairs.push_back({DiskPoint(alpha(n)), 0.0});
  return VerblunskyWord(std::move(pairs), word_.r());
}

GaugedWord gauge_to_standard(const VerblunskyWord& word) { return GaugedWord(word); }

double gordon_log_defect(const VerblunskyWord& word, index_t p, double c) {
  double worst = 0.0;
  for (index_t n = -p + 1; n <= p; ++n) {
    worst = std::max(worst, std::abs(word.alpha(n) - word.alpha(n + p)) +
                                std::abs(word.lambda(n) - word.lambda(n + p)));
  }
  if (worst == 0.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(p) * std::log(c) + std::log(worst);
}

GordonReport gordon_check(const std::vector<VerblunskyWord>& tower, const std::vector<double>& c_list) {
  GordonReport rep;
  rep.c_list = c_list;
  if (tower.empty()) return rep;
  for (const auto& w : tower) rep.scales.push_back(w.q());
  const VerblunskyWord& limit = tower.back();
  for (double c : c_list) {
    std::vector<double> d;
    std::vector<double> ld;
    for (index_t p : rep.scales) {
      const double l = gordon_log_defect(limit, p, c);
      ld.push_back(l);
      d.push_back(std::exp(l));
    }
    rep.defects.push_back(std::move(d));
    rep.log_defects.push_back(std::move(ld));
  }
  return rep;
}

}  // namespace cmvspec
