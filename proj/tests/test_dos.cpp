#include <gtest/gtest.h>

#include "cmvspec/dos.hpp"
#include "cmvspec/operator.hpp"
#include "cmvspec/potential.hpp"
#include "test_util.hpp"

namespace cmvspec {
namespace {

using testing::Rng;

struct OpenGapWord {
  VerblunskyWord word;
  BandList bands;
};

OpenGapWord open_gap_word(Rng& rng, index_t q) {
  for (;;) {
    VerblunskyWord w = testing::random_word(rng, q, 0.8);
    BandList b = band_list(w);
    if (static_cast<index_t>(b.gaps.size()) == q) return {w, b};
  }
}

double interior(Rng& rng, const BandList& b) {
  const Arc& a = b.bands[static_cast<std::size_t>(rng.pick(0, static_cast<index_t>(b.bands.size()) - 1))];
  return wrap_angle(a.left + a.length() * rng.uniform(0.05, 0.95));
}

TEST(Density, FreeWordIsUniform) {
  for (double tau : {0.3, 1.7, 4.0}) {
    EXPECT_NEAR(dos_density(free_word(2), tau, DosRoute::ITrace), 1.0 / kTwoPi, 1e-12);
    EXPECT_NEAR(dos_density(free_word(2), tau, DosRoute::Numeric), 1.0 / kTwoPi, 1e-8);
  }
}

TEST(Density, RoutesAgree) {
  Rng rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const OpenGapWord ow = open_gap_word(rng, 2 * rng.pick(1, 4));
    const double tau = interior(rng, ow.bands);
    const double a = dos_density(ow.word, ow.bands, tau, DosRoute::ITrace);
    const double n = dos_density(ow.word, ow.bands, tau, DosRoute::Numeric);
    EXPECT_NEAR(a, n, 1e-6 * std::max(1.0, a));
  }
}

TEST(Density, GapPointsRejected) {
  const VerblunskyWord w = constant_word(0.5, 2);
  const BandList b = band_list(w);
  const double gap = b.gaps[0].left + 0.5 * b.gaps[0].length();
  EXPECT_THROW(dos_density(w, b, gap, DosRoute::ITrace), Error);
  EXPECT_THROW(dos_density(w, b, gap, DosRoute::Numeric), Error);
  EXPECT_THROW(schur_values(w, gap), Error);
}

TEST(Density, InequalityChain) {
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const OpenGapWord ow = open_gap_word(rng, 2 * rng.pick(1, 4));
    const DosSample s = dos_sample(ow.word, interior(rng, ow.bands));
    EXPECT_GE(s.density, s.schur_bound - 1e-10);
    EXPECT_GE(s.schur_bound, s.lower_bound - 1e-10);
    EXPECT_GT(s.lower_bound, 0.0);
  }
}

TEST(Density, BandMassesAreOneOverQ) {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const index_t q = 2 * rng.pick(1, 4);
    const OpenGapWord ow = open_gap_word(rng, q);
    for (double m : band_masses(ow.word, ow.bands)) EXPECT_NEAR(m, 1.0 / q, 1e-8);
    EXPECT_NEAR(dos_measure(ow.word, ow.bands, Arc{0.0, kTwoPi}), 1.0, 1e-12);
  }
}

TEST(Density, CdfMonotoneAndNormalized) {
  Rng rng(54);
  const OpenGapWord ow = open_gap_word(rng, 6);
  const TransferEvaluator ev(ow.word);
  double prev = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double f = dos_cdf(ev, ow.bands, kTwoPi * i / 400.0);
    EXPECT_GE(f, prev - 1e-14);
    prev = f;
  }
  EXPECT_NEAR(prev, 1.0, 1e-12);
}

TEST(Density, ProfileZeroInGaps) {
  const VerblunskyWord w = constant_word(0.5, 2);
  const BandList b = band_list(w);
  const DOSProfile p = dos_profile(w, b, uniform_tau_grid(256));
  ASSERT_EQ(p.density.size(), 256u);
  for (std::size_t i = 0; i < p.tau_grid.size(); ++i) {
    if (!b.contains(p.tau_grid[i])) EXPECT_EQ(p.density[i], 0.0);
    else EXPECT_GE(p.density[i], p.schur_bound[i] - 1e-10);
  }
}

TEST(Moments, AgreeWithOperatorDiagonal) {
  Rng rng(55);
  for (int trial = 0; trial < 6; ++trial) {
    const VerblunskyWord w = testing::random_word(rng, 2 * rng.pick(1, 4));
    const BandList b = band_list(w);
    for (int k = 0; k <= 6; ++k) EXPECT_LT(std::abs(dos_moment(w, b, k) - diagonal_moment(w, k)), 1e-8);
  }
}

TEST(Schur, FreeWordVanishes) {
  for (cplx s : schur_values(free_word(4), 1.3).values) EXPECT_LT(std::abs(s), 1e-14);
}

TEST(Schur, FixedPointAndEigenvectorRoutesAgree) {
  Rng rng(56);
  for (int trial = 0; trial < 30; ++trial) {
    const OpenGapWord ow = open_gap_word(rng, 4);
    const double tau = interior(rng, ow.bands);
    const SchurSample s = schur_values(ow.word, tau);
    for (index_t l = 0; l < 2; ++l) {
      const cplx e = schur_value_eigenvector(ow.word, tau, 2 * l, 1e-7);
      EXPECT_LT(std::abs(s.values[static_cast<std::size_t>(l)] - e), 1e-4);
      EXPECT_LT(std::abs(e), 1.0);
    }
  }
}

TEST(Thouless, ResidualVanishesOffCircle) {
  Rng rng(57);
  for (int trial = 0; trial < 5; ++trial) {
    const VerblunskyWord w = testing::random_word(rng, 4);
    const BandList b = band_list(w);
    for (double r : {0.4, 0.9, 1.2, 3.0}) {
      const ThoulessResult t = thouless_check(w, b, std::polar(r, rng.uniform(0.0, kTwoPi)), 1e-10);
      EXPECT_LT(std::abs(t.residual), 1e-8);
    }
  }
}

TEST(Thouless, NonConvergenceReported) {
  const VerblunskyWord w = constant_word(0.5, 2);
  const BandList b = band_list(w);
  try {
    (void)thouless_check(w, b, std::polar(1.001, 2.0), 0.0, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureNotConverged);
  }
}

TEST(CraigSimon, SlackNonNegativeAndLongArcsRejected) {
  Rng rng(58);
  const VerblunskyWord w = testing::random_word(rng, 6);
  const BandList b = band_list(w);
  std::vector<Arc> arcs;
  for (int i = 0; i < 300; ++i) {
    const double l = rng.uniform(0.0, kTwoPi);
    arcs.push_back({l, l + 0.49 * rng.uniform()});
  }
  const CraigSimonReport rep = craig_simon_check(w, b, arcs);
  EXPECT_NEAR(rep.c, std::log(2.0) - w.log_rho_inf(), 1e-15);
  EXPECT_GE(rep.worst_slack, -1e-9);
  EXPECT_THROW(craig_simon_check(w, b, {Arc{0.0, 0.6}}), Error);
}

}  // namespace
}  // namespace cmvspec
