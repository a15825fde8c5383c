#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cmvspec/su11.hpp"

namespace cmvspec {

using index_t = std::int64_t;

/// Floor modulus, always in [0, m).
inline index_t pmod(index_t n, index_t m) {
  const index_t r = n % m;
  return r < 0 ? r + m : r;
}

/// Floor division matching pmod.
inline index_t fdiv(index_t n, index_t m) { return (n - pmod(n, m)) / m; }

struct VerblunskyPair {
  DiskPoint alpha{0.0};
  /// lambda = e^{i lambda_arg}
  double lambda_arg = 0.0;

  cplx lambda() const { return std::polar(1.0, lambda_arg); }
  double rho() const { return std::sqrt(1.0 - alpha.abs2()); }
};

inline constexpr double kDefaultRadius = 0.99;

/// Even-period word of (alpha, lambda) pairs. Position n in Z reads pairs[n mod q].
class VerblunskyWord {
 public:
  /// Throws Error(InvalidWord) when q is odd or zero, r is outside (0, 1),
  /// or some |alpha| exceeds r.
  explicit VerblunskyWord(std::vector<VerblunskyPair> pairs, double r = kDefaultRadius);

  index_t q() const { return static_cast<index_t>(pairs_.size()); }
  double r() const { return r_; }
  const std::vector<VerblunskyPair>& pairs() const { return pairs_; }

  const VerblunskyPair& at(index_t n) const { return pairs_[static_cast<std::size_t>(pmod(n, q()))]; }
  cplx alpha(index_t n) const { return at(n).alpha.value(); }
  cplx lambda(index_t n) const { return at(n).lambda(); }
  double lambda_arg(index_t n) const { return at(n).lambda_arg; }
  double rho(index_t n) const { return at(n).rho(); }

  /// log rho_inf = (1/2q) sum_n log(1 - |alpha_n|^2).
  double log_rho_inf() const;

  /// The same coefficients read as a word of period k q.
  VerblunskyWord repeated(index_t k) const;

  /// Sup over one common period of |alpha_n - beta_n| + |lambda_n - mu_n|.
  double distance(const VerblunskyWord& other) const;

  bool operator==(const VerblunskyWord& other) const;

 private:
  std::vector<VerblunskyPair> pairs_;
  double r_;
};

/// alpha = 0, lambda = 1.
VerblunskyWord free_word(index_t q = 2);

/// Every pair equal to (alpha, e^{i lambda_arg}).
VerblunskyWord constant_word(cplx alpha, index_t q = 2, double lambda_arg = 0.0,
                             double r = kDefaultRadius);

/// {"q": int, "r": float, "pairs": [{"alpha": [re, im], "lambda_arg": float}, ...]}
std::string word_to_json(const VerblunskyWord& word);
VerblunskyWord word_from_json(const std::string& text);
VerblunskyWord read_word_file(const std::string& path);
void write_word_file(const VerblunskyWord& word, const std::string& path);

}  // namespace cmvspec
