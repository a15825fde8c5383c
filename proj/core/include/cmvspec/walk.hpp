#pragma once

#include <string>
#include <vector>

#include "cmvspec/operator.hpp"

namespace cmvspec {

/// Local unitary [[q11, q12], [q21, q22]].
struct Coin {
  cplx q11{1.0};
  cplx q12{0.0};
  cplx q21{0.0};
  cplx q22{1.0};

  Mat2C matrix() const { return {q11, q12, q21, q22}; }
  double unitarity_defect() const;
};

/// Periodic coin assignment; position n uses coins[n mod period].
class CoinSequence {
 public:
  /// Throws Error(DegenerateCoin) for q11 = 0 or q22 = 0 and
  /// Error(Config) for a non-unitary coin (defect above 1e-10).
  explicit CoinSequence(std::vector<Coin> coins);

  index_t period() const { return static_cast<index_t>(coins_.size()); }
  const Coin& at(index_t n) const { return coins_[static_cast<std::size_t>(pmod(n, period()))]; }
  const std::vector<Coin>& coins() const { return coins_; }

 private:
  std::vector<Coin> coins_;
};

Coin hadamard_coin();

/// Amplitudes psi^+_n, psi^-_n for n in [lo, lo + size).
struct WalkState {
  index_t lo = 0;
  std::vector<cplx> plus;
  std::vector<cplx> minus;
  index_t time = 0;

  index_t hi() const { return lo + static_cast<index_t>(plus.size()) - 1; }
  cplx at(index_t n, int spin) const;
  double norm() const;
  static WalkState localized(index_t n, cplx plus_amp, cplx minus_amp);
};

/// U = S C. The window grows by one site per side.
WalkState step(const WalkState& state, const CoinSequence& coins);
/// U* = C* S*, one step backwards in time.
WalkState step_adjoint(const WalkState& state, const CoinSequence& coins);

/// Matrix of U in the ordered basis phi_{2m} = delta_m^+, phi_{2m+1} =
/// delta_m^-, rows and columns k in [lo, hi]. Dense, row-major.
struct WalkMatrixWindow {
  index_t lo = 0;
  index_t hi = 0;
  std::vector<cplx> entries;

  index_t size() const { return hi - lo + 1; }
  cplx entry(index_t k, index_t l) const;
};

/// Throws Error(WindowTooSmall) when hi - lo < 4.
WalkMatrixWindow update_matrix_window(const CoinSequence& coins, index_t lo, index_t hi);

/// CMV site n corresponds to basis vector phi_{n+1}: n = 2m is delta_m^-
/// and n = 2m + 1 is delta_{m+1}^+. Coin m pairs with alpha_{2m-1}.
inline index_t cmv_site_to_walk_basis(index_t n) { return n + 1; }

struct WalkCmv {
  VerblunskyWord word;
  /// Gamma U Gamma* = E_word with gamma_n = e^{i psi floor(n / 2) * 2 / q},
  /// so gamma_0 = gamma_1 = 1 and gamma_{n+q} = e^{i psi} gamma_n.
  double psi = 0.0;
  cplx gamma(index_t n) const;
};

/// Word of period 2 * period with alpha_even = 0 and lambda_0 = 1.
WalkCmv coins_to_cmv(const CoinSequence& coins, double r = kDefaultRadius);

/// Coins with U = E_word (trivial gauge). Throws Error(NotWalkShaped) when
/// some even-index alpha is nonzero.
CoinSequence cmv_from_coins_inverse(const VerblunskyWord& word);

struct RageReport {
  index_t j_radius = 0;
  index_t horizon = 0;
  /// p_n for n = -N .. N (index n + N).
  std::vector<double> survival;
  /// Cesaro and Wiener averages at each horizon checkpoint.
  std::vector<index_t> checkpoints;
  std::vector<double> cesaro;
  std::vector<double> wiener;
  /// Least-squares slope of log cesaro against log N over the checkpoints.
  double cesaro_log_slope = 0.0;
};

/// Survival p_n = sum_{|j| <= J} sum_spin |<delta_j^spin, U^n psi0>|^2 for
/// |n| <= N (negative times through U*), its Cesaro average and the Wiener
/// average of |<psi0, U^n psi0>|^2 over [-N', N'] for each checkpoint N'.
/// Checkpoints default to the powers of two up to N.
RageReport rage_diagnostics(const CoinSequence& coins, const WalkState& psi0, index_t j_radius,
                            index_t horizon, std::vector<index_t> checkpoints = {});

/// {"period": int, "coins": [[[re, im] x 4], ...]} in order q11, q12, q21, q22.
CoinSequence coins_from_json(const std::string& text);
std::string coins_to_json(const CoinSequence& coins);
CoinSequence read_coin_file(const std::string& path);

}  // namespace cmvspec
