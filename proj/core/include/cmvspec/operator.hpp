#pragma once

#include <array>
#include <vector>

#include "cmvspec/word.hpp"

namespace cmvspec {

/// lambda [[conj alpha, rho], [rho, -alpha]].
Mat2C theta_block(const VerblunskyPair& pair);
Mat2C theta_block(cplx alpha, cplx lambda);

/// Rows lo..hi of E = L M restricted to columns lo..hi. E is pentadiagonal,
/// so each row stores columns n-2..n+2.
struct OperatorWindow {
  index_t lo = 0;
  index_t hi = 0;
  std::vector<std::array<cplx, 5>> rows;

  index_t size() const { return hi - lo + 1; }
  /// Entry <delta_n, E delta_m>; zero outside the band or the window.
  cplx entry(index_t n, index_t m) const;
  /// Row-major dense copy.
  std::vector<cplx> dense() const;
};

/// Throws Error(WindowTooSmall) when hi - lo < 4.
OperatorWindow assemble_window(const VerblunskyWord& word, index_t lo, index_t hi);

/// Same for arbitrary (non-periodic) coefficient sequences.
template <class AlphaFn, class LambdaFn>
OperatorWindow assemble_window_from(AlphaFn alpha, LambdaFn lambda, index_t lo, index_t hi);

/// Finitely supported vector on sites lo .. lo + values.size() - 1.
struct WindowVector {
  index_t lo = 0;
  std::vector<cplx> values;

  index_t hi() const { return lo + static_cast<index_t>(values.size()) - 1; }
  cplx at(index_t n) const;
  double norm() const;
  static WindowVector delta(index_t n, index_t pad = 2);
};

/// E psi (or E* psi). With auto_grow the window is extended so the result is
/// exact; otherwise Error(SupportTouchesBoundary) is thrown when the support
/// comes within two sites of an edge.
WindowVector apply_operator(const VerblunskyWord& word, const WindowVector& psi, bool adjoint,
                            bool auto_grow = true);

/// (1/q) sum_{n<q} <delta_n, E^k delta_n> by repeated apply_operator (k >= 0).
cplx diagonal_moment(const VerblunskyWord& word, int k);

/// Coefficients of the standard CMV operator Gamma E Gamma* (all lambda = 1),
/// produced on demand from per-period data.
class GaugedWord {
 public:
  explicit GaugedWord(const VerblunskyWord& word);

  cplx gamma(index_t n) const;
  cplx alpha(index_t n) const;
  /// q or 2q when alpha' repeats with that period, 0 otherwise.
  index_t period() const { return period_; }
  bool periodic() const { return period_ != 0; }
  /// The gauged coefficients as a word with lambda = 1. Requires periodic().
  VerblunskyWord to_word() const;

 private:
  VerblunskyWord word_;
  std::vector<cplx> gamma_;  // gamma_0 .. gamma_{q+1}
  double omega_even_ = 0.0;  // gamma_{n+q} = e^{i omega} gamma_n by parity
  double omega_odd_ = 0.0;
  index_t period_ = 0;
};

GaugedWord gauge_to_standard(const VerblunskyWord& word);

struct GordonReport {
  std::vector<index_t> scales;
  std::vector<double> c_list;
  /// defects[i][k] for C = c_list[i] at scale q_k; +inf on overflow.
  std::vector<std::vector<double>> defects;
  /// log of the same values (-inf for an exact zero).
  std::vector<std::vector<double>> log_defects;
};

/// Defects of the last (finest) word of the tower at each tower period.
GordonReport gordon_check(const std::vector<VerblunskyWord>& tower,
                          const std::vector<double>& c_list);

/// Defect C^p max_{-p+1 <= n <= p}(|alpha_n - alpha_{n+p}| + |lambda_n - lambda_{n+p}|), in log form.
double gordon_log_defect(const VerblunskyWord& word, index_t p, double c);

template <class AlphaFn, class LambdaFn>
OperatorWindow assemble_window_from(AlphaFn alpha, LambdaFn lambda, index_t lo, index_t hi) {
  if (hi - lo < 4) throw Error(ErrorCode::WindowTooSmall, "window needs hi - lo >= 4");
  // Block k of L (k even) or M (k odd) acts on sites {k, k+1}.
  auto block = [&](index_t k) { return theta_block(alpha(k), lambda(k)); };
  auto factor_entry = [&](index_t first, index_t n, index_t m) -> cplx {
    // first = parity of the factor's block starts.
    const index_t k = n - pmod(n - first, 2);
    if (m < k || m > k + 1) return 0.0;
    const Mat2C t = block(k);
    const index_t i = n - k;
    const index_t j = m - k;
    return i == 0 ? (j == 0 ? t.a : t.b) : (j == 0 ? t.c : t.d);
  };
  OperatorWindow w;
  w.lo = lo;
  w.hi = hi;
  w.rows.resize(static_cast<std::size_t>(hi - lo + 1));
  for (index_t n = lo; n <= hi; ++n) {
    auto& row = w.rows[static_cast<std::size_t>(n - lo)];
    const index_t k = n - pmod(n, 2);
    for (index_t m = n - 2; m <= n + 2; ++m) {
      cplx s = 0.0;
      for (index_t l = k; l <= k + 1; ++l) s += factor_entry(0, n, l) * factor_entry(1, l, m);
      row[static_cast<std::size_t>(m - n + 2)] = (m >= lo && m <= hi) ? s : cplx(0.0);
    }
  }
  return w;
}

}  // namespace cmvspec
