#pragma once

#include <array>
#include <random>

#include "cmvspec/word.hpp"

namespace cmvspec::testing {

inline constexpr double kTau = 6.283185307179586476925286766559;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(gen); }
  index_t pick(index_t lo, index_t hi) { return std::uniform_int_distribution<index_t>(lo, hi)(gen); }
  cplx disk(double amax) { return std::polar(amax * uniform(), uniform(0.0, kTau)); }
};

inline VerblunskyWord random_word(Rng& rng, index_t q, double amax = 0.8) {
  std::vector<VerblunskyPair> p;
  for (index_t i = 0; i < q; ++i) p.push_back({DiskPoint(rng.disk(amax)), rng.uniform(0.0, kTau)});
  return VerblunskyWord(std::move(p));
}

inline VerblunskyWord walk_shaped_word(Rng& rng, index_t q, double amax = 0.9) {
  std::vector<VerblunskyPair> p;
  for (index_t i = 0; i < q; ++i) {
    p.push_back({DiskPoint(i % 2 == 0 ? cplx(0.0) : rng.disk(amax)), rng.uniform(0.0, kTau)});
  }
  return VerblunskyWord(std::move(p));
}

// Explicit 2x2 product, independent of the library's operators.
inline std::array<cplx, 4> mul2(const std::array<cplx, 4>& x, const std::array<cplx, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

}  // namespace cmvspec::testing
