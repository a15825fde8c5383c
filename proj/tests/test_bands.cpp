#include <gtest/gtest.h>

#include "acceptance.hpp"
#include "cmvspec/bands.hpp"
#include "cmvspec/construction.hpp"
#include "test_util.hpp"

namespace cmvspec {
namespace {

using testing::Rng;

TEST(Arc, ContainsAndWrap) {
  const Arc a{6.0, 6.0 + 1.0};
  EXPECT_TRUE(a.contains(0.5));
  EXPECT_TRUE(a.contains(6.1));
  EXPECT_FALSE(a.contains(2.0));
  EXPECT_NEAR(wrap_angle(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_angle(kTwoPi + 0.25), 0.25, 1e-15);
}

TEST(BandList, FreeWordIsOneFullBand) {
  for (index_t q : {2, 4, 8}) {
    const BandList b = band_list(free_word(q));
    ASSERT_EQ(b.bands.size(), 1u);
    EXPECT_NEAR(b.bands[0].length(), kTwoPi, 1e-12);
    EXPECT_EQ(b.gaps.size(), 0u);
    EXPECT_EQ(static_cast<index_t>(b.touch_points.size()), q);
    EXPECT_EQ(static_cast<index_t>(b.pieces.size()), q);
  }
}

// Constant coefficient alpha: spectrum is the arc |sin(tau/2)| >= |alpha|
// rotated so that the gap is centred at tau = 0.
TEST(BandList, ConstantAlphaArc) {
  for (double a : {0.2, 0.5, 0.8}) {
    const BandList b = band_list(constant_word(a, 2));
    ASSERT_EQ(b.gaps.size(), 1u);
    EXPECT_NEAR(b.gaps[0].length(), 4.0 * std::asin(a), 1e-9);
    EXPECT_NEAR(b.measure(), kTwoPi - 4.0 * std::asin(a), 1e-9);
  }
}

TEST(BandList, RandomWordsHaveQPiecesAndEdgeResiduals) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const index_t q = 2 * rng.pick(1, 5);
    const VerblunskyWord w = testing::random_word(rng, q);
    const BandList b = band_list(w);
    EXPECT_EQ(static_cast<index_t>(b.pieces.size()), q);
    EXPECT_EQ(b.gaps.size() + b.touch_points.size(), static_cast<std::size_t>(q));
    for (double r : b.edge_residuals) EXPECT_LT(std::abs(r), 1e-8);
    double total = 0.0;
    for (const auto& g : b.gaps) total += g.length();
    EXPECT_NEAR(total + b.measure(), kTwoPi, 1e-10);
    // Delta is inside [-2, 2] in bands and outside in gaps.
    for (const auto& band : b.bands) {
      EXPECT_LE(std::abs(discriminant_on_circle(w, band.left + 0.5 * band.length())), 2.0 + 1e-9);
    }
    for (const auto& g : b.gaps) {
      EXPECT_GT(std::abs(discriminant_on_circle(w, g.left + 0.5 * g.length())), 2.0);
    }
  }
}

TEST(BandList, PiecesAreMonotone) {
  Rng rng(42);
  const VerblunskyWord w = testing::random_word(rng, 6);
  const BandList b = band_list(w);
  const TransferEvaluator ev(w);
  for (const auto& p : b.pieces) {
    double prev = piece_theta(ev, p, p.arc.left);
    EXPECT_EQ(prev, p.theta_left());
    for (int i = 1; i <= 20; ++i) {
      const double th = piece_theta(ev, p, p.arc.left + p.arc.length() * i / 20.0);
      if (p.sign_left > 0) EXPECT_GE(th, prev - 1e-12);
      else EXPECT_LE(th, prev + 1e-12);
      prev = th;
    }
  }
}

TEST(BandList, RotationShiftsBands) {
  Rng rng(43);
  const VerblunskyWord w = testing::random_word(rng, 4);
  const BandList b = band_list(w);
  const BandList r = band_list(rotate_spectrum(w, 0.3));
  ASSERT_EQ(b.bands.size(), r.bands.size());
  EXPECT_NEAR(b.measure(), r.measure(), 1e-10);
  for (const auto& band : b.bands) {
    EXPECT_TRUE(r.contains(band.left + 0.3 + 0.5 * band.length()));
  }
}

TEST(BandList, GridLimitReported) {
  BandOptions o;
  o.max_grid = 32;
  try {
    (void)band_list(constant_word(0.5, 16), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridTooCoarse);
  }
}

TEST(RotationAngle, InsideAndOutside) {
  const VerblunskyWord w = constant_word(0.5, 2);
  const BandList b = band_list(w);
  EXPECT_THROW(rotation_angle(w, b.gaps[0].left + 0.5 * b.gaps[0].length()), Error);
  EXPECT_NEAR(rotation_angle(free_word(2), 1.0), 1.0, 1e-12);
}

TEST(PeriodicRestriction, MatchesDenseOracle) {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const index_t q = 2 * rng.pick(1, 3);
    const index_t n = rng.pick(1, 4);
    const VerblunskyWord w = testing::random_word(rng, q, 0.9);
    const auto lib = expand_multiplicity(periodic_restriction_spectrum(w, n));
    const auto oracle = acceptance::dense_eigen_angles(acceptance::periodic_cmv_dense(w, n), n * q);
    ASSERT_EQ(lib.size(), oracle.size());
    for (double t : oracle) {
      double best = 10.0;
      for (double s : lib) best = std::min(best, std::abs(std::polar(1.0, t) - std::polar(1.0, s)));
      EXPECT_LT(best, 1e-8);
    }
  }
  EXPECT_THROW(periodic_restriction_spectrum(free_word(2), 0), Error);
}

TEST(PeriodicRestriction, FreeWordDoublePoints) {
  const auto pts = periodic_restriction_spectrum(free_word(2), 4);
  int total = 0;
  for (const auto& p : pts) {
    EXPECT_EQ(p.multiplicity, 2);
    total += p.multiplicity;
  }
  EXPECT_EQ(total, 8);
}

}  // namespace
}  // namespace cmvspec
