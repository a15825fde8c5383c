#include <gtest/gtest.h>

#include "acceptance.hpp"
#include "cmvspec/bands.hpp"
#include "cmvspec/transfer.hpp"
#include "test_util.hpp"

namespace cmvspec {
namespace {

using testing::Rng;

TEST(SpectralParameter, ZeroRejected) {
  EXPECT_THROW(SpectralParameter(cplx(0.0)), Error);
  EXPECT_TRUE(SpectralParameter::on_circle(1.0).is_on_circle());
  EXPECT_FALSE(SpectralParameter(cplx(0.5)).is_on_circle());
}

TEST(TwoStep, ClosedFormMatchesStepProduct) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const VerblunskyWord w = testing::random_word(rng, 6, 0.95);
    const SpectralParameter z(std::polar(rng.uniform(0.5, 1.5), rng.uniform(0.0, testing::kTau)));
    for (index_t j = 0; j < 6; j += 2) {
      const Mat2C direct = gz_step(w, j + 1, z) * gz_step(w, j, z);
      EXPECT_LT(max_abs_diff(two_step(w, j, z), direct), 1e-12 * direct.max_abs());
    }
  }
  EXPECT_THROW(two_step(free_word(2), 1, SpectralParameter(cplx(1.0))), Error);
}

TEST(TwoStep, JUnitaryOnCircle) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const VerblunskyWord w = testing::random_word(rng, 2, 0.99);
    const Mat2C t = two_step(w, 0, SpectralParameter::on_circle(rng.uniform(0.0, testing::kTau)));
    EXPECT_LT(j_unitarity_defect(t), 1e-10);
    EXPECT_NEAR(std::abs(t.det()), 1.0, 1e-12);
  }
}

TEST(Cocycle, InverseAndIdentity) {
  Rng rng(33);
  const VerblunskyWord w = testing::random_word(rng, 4);
  const SpectralParameter z(cplx(0.3, 0.9));
  EXPECT_LT(max_abs_diff(cocycle(w, 5, 5, z).unscaled(), Mat2C::identity()), 0.0 + 1e-300);
  const Mat2C fwd = cocycle(w, 7, -3, z).unscaled();
  const Mat2C back = cocycle(w, -3, 7, z).unscaled();
  EXPECT_LT(max_abs_diff(fwd * back, Mat2C::identity()), 1e-10);
  const Mat2C split = cocycle(w, 7, 2, z).unscaled() * cocycle(w, 2, -3, z).unscaled();
  EXPECT_LT(max_abs_diff(split, fwd), 1e-10 * fwd.max_abs());
}

TEST(Monodromy, ScaledAgreesWithPlainProduct) {
  Rng rng(34);
  const VerblunskyWord w = testing::random_word(rng, 1200, 0.3);
  const SpectralParameter z = SpectralParameter::on_circle(0.4);
  Mat2C plain = Mat2C::identity();
  for (index_t j = 0; j < w.q(); j += 2) plain = two_step(w, j, z) * plain;
  const CocycleProduct s = monodromy_scaled(w, z);
  EXPECT_LT(max_abs_diff(s.unscaled(), plain), 1e-9 * plain.max_abs());
  EXPECT_NEAR(discriminant_on_circle(w, 0.4), plain.trace().real(), 1e-9 * plain.max_abs());
}

TEST(Monodromy, ShiftedMonodromiesShareTrace) {
  Rng rng(35);
  const VerblunskyWord w = testing::random_word(rng, 8);
  const SpectralParameter z = SpectralParameter::on_circle(2.2);
  const auto all = all_shifted_monodromies(w, z);
  ASSERT_EQ(all.size(), 4u);
  for (index_t l = 0; l < 4; ++l) {
    EXPECT_LT(max_abs_diff(all[l], shifted_monodromy(w, 2 * l, z)), 1e-12);
    EXPECT_NEAR(all[l].trace().real(), all[0].trace().real(), 1e-12);
  }
}

TEST(Discriminant, FreeCase) {
  for (double tau = 0.0; tau < testing::kTau; tau += 0.1) {
    EXPECT_NEAR(discriminant_on_circle(free_word(2), tau), 2.0 * std::cos(tau), 1e-14);
    EXPECT_NEAR(discriminant_on_circle(free_word(6), tau), 2.0 * std::cos(3.0 * tau), 1e-13);
  }
}

TEST(Discriminant, RealOnCircle) {
  Rng rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const VerblunskyWord w = testing::random_word(rng, 2 * rng.pick(1, 4), 0.9);
    const cplx d = discriminant(w, SpectralParameter::on_circle(rng.uniform(0.0, testing::kTau)));
    EXPECT_LT(std::abs(d.imag()), 1e-11 * std::max(1.0, std::abs(d)));
  }
}

// Eigenvalues of the q-site periodic matrix solve Delta = 2, those of the
// 2q-site one Delta = +-2.
TEST(Discriminant, DenseFloquetOracle) {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const index_t q = 2 * rng.pick(1, 4);
    const VerblunskyWord w = testing::random_word(rng, q, 0.9);
    for (double t : acceptance::dense_eigen_angles(acceptance::periodic_cmv_dense(w, 1), q)) {
      EXPECT_NEAR(discriminant_on_circle(w, t), 2.0, 1e-8);
    }
    for (double t : acceptance::dense_eigen_angles(acceptance::periodic_cmv_dense(w, 2), 2 * q)) {
      EXPECT_NEAR(std::abs(discriminant_on_circle(w, t)), 2.0, 1e-8);
    }
  }
}

TEST(Discriminant, DerivativeMatchesFiniteDifference) {
  Rng rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    const VerblunskyWord w = testing::random_word(rng, 2 * rng.pick(1, 5));
    const TransferEvaluator ev(w);
    const double tau = rng.uniform(0.0, testing::kTau);
    const double h = 1e-5;
    const double fd = (ev.discriminant(tau + h) - ev.discriminant(tau - h)) / (2.0 * h);
    const auto [d, dd] = ev.discriminant_and_derivative(tau);
    EXPECT_NEAR(d, ev.discriminant(tau), 1e-12 * std::max(1.0, std::abs(d)));
    EXPECT_NEAR(dd, fd, 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Discriminant, SaturatesInsteadOfOverflowing) {
  const VerblunskyWord w = constant_word(0.99, 4000);
  const double d = TransferEvaluator(w).discriminant(kPi / 2);
  EXPECT_TRUE(std::isfinite(d));
  EXPECT_GT(std::abs(d), 1e299);
}

TEST(TInvDt, OffCircleRejected) {
  EXPECT_THROW(t_inv_dt(constant_word(0.5, 2), 0, SpectralParameter(cplx(0.5))), Error);
  const LieCoords c = t_inv_dt_coords(constant_word(0.5, 2), 0, SpectralParameter::on_circle(1.0));
  EXPECT_TRUE(std::isfinite(c.w));
}

TEST(TInvDt, MatchesDerivativeOfTwoStep) {
  Rng rng(39);
  const VerblunskyWord w = testing::random_word(rng, 4);
  const double tau = 0.8, h = 1e-6;
  const Mat2C t = two_step(w, 2, SpectralParameter::on_circle(tau));
  const Mat2C dt = (two_step(w, 2, SpectralParameter::on_circle(tau + h)) -
                    two_step(w, 2, SpectralParameter::on_circle(tau - h))) *
                   cplx(0.5 / h);
  EXPECT_LT(max_abs_diff(t_inv_dt(w, 2, SpectralParameter::on_circle(tau)), t.inverse() * dt), 1e-7);
}

TEST(Lyapunov, ZeroInBandsPositiveInGaps) {
  const VerblunskyWord w = constant_word(0.5, 2);
  const BandList b = band_list(w);
  ASSERT_EQ(b.gaps.size(), 1u);
  const double gap_mid = b.gaps[0].left + 0.5 * b.gaps[0].length();
  EXPECT_GT(lyapunov(w, SpectralParameter::on_circle(gap_mid)), 0.0);
  const double band_mid = b.bands[0].left + 0.5 * b.bands[0].length();
  EXPECT_EQ(lyapunov(w, SpectralParameter::on_circle(band_mid)), 0.0);
  EXPECT_GT(lyapunov(w, SpectralParameter(cplx(0.2))), 0.0);
}

TEST(Lyapunov, FreeOffCircle) {
  // Delta = z + 1/z for the free word; spectral radius max(|z|, 1/|z|) per two steps.
  for (double r : {0.3, 0.7, 1.5, 4.0}) {
    EXPECT_NEAR(lyapunov(free_word(2), SpectralParameter(std::polar(r, 0.4))), 0.5 * std::abs(std::log(r)), 1e-12);
  }
}

}  // namespace
}  // namespace cmvspec
