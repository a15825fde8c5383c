#include <gtest/gtest.h>

#include "acceptance.hpp"
#include "cmvspec/operator.hpp"
#include "test_util.hpp"

namespace cmvspec {
namespace {

using testing::Rng;

TEST(VerblunskyWord, Validation) {
  EXPECT_THROW(VerblunskyWord({{DiskPoint(0.1), 0.0}}), Error);
  EXPECT_THROW(VerblunskyWord(std::vector<VerblunskyPair>{}), Error);
  EXPECT_THROW(VerblunskyWord({{DiskPoint(0.995), 0.0}, {DiskPoint(0.0), 0.0}}), Error);
  EXPECT_NO_THROW(VerblunskyWord({{DiskPoint(0.995), 0.0}, {DiskPoint(0.0), 0.0}}, 0.999));
  EXPECT_THROW(VerblunskyWord({{DiskPoint(0.1), 0.0}, {DiskPoint(0.0), 0.0}}, 1.0), Error);
}

TEST(VerblunskyWord, PeriodicIndexing) {
  Rng rng(21);
  const VerblunskyWord w = testing::random_word(rng, 6);
  for (index_t n = -20; n < 20; ++n) {
    EXPECT_EQ(w.alpha(n), w.alpha(n + 6));
    EXPECT_EQ(w.lambda_arg(n), w.lambda_arg(n - 12));
  }
  EXPECT_EQ(pmod(-1, 6), 5);
  EXPECT_EQ(fdiv(-1, 2), -1);
  EXPECT_EQ(fdiv(3, 2), 1);
}

TEST(VerblunskyWord, RepeatedAndDistance) {
  Rng rng(22);
  const VerblunskyWord w = testing::random_word(rng, 4);
  const VerblunskyWord w3 = w.repeated(3);
  EXPECT_EQ(w3.q(), 12);
  EXPECT_EQ(w.distance(w3), 0.0);
  std::vector<VerblunskyPair> p = w.pairs();
  p[1].alpha = DiskPoint(p[1].alpha.value() + 0.01);
  EXPECT_NEAR(w.distance(VerblunskyWord(p)), 0.01, 1e-15);
  EXPECT_NEAR(free_word(2).distance(free_word(4)), 0.0, 0.0);
}

TEST(VerblunskyWord, LogRhoInf) {
  const VerblunskyWord w = constant_word(0.6, 4);
  EXPECT_NEAR(w.log_rho_inf(), std::log(0.8), 1e-15);
  EXPECT_EQ(free_word(2).log_rho_inf(), 0.0);
}

TEST(VerblunskyWord, JsonRoundTrip) {
  Rng rng(23);
  const VerblunskyWord w = testing::random_word(rng, 8);
  EXPECT_TRUE(word_from_json(word_to_json(w)) == w);
  EXPECT_THROW(word_from_json("{\"q\": 2}"), Error);
  EXPECT_THROW(word_from_json("not json"), Error);
  EXPECT_THROW(word_from_json(R"({"q": 4, "r": 0.99, "pairs": [{"alpha": [0, 0], "lambda_arg": 0},
                                  {"alpha": [0, 0], "lambda_arg": 0}]})"),
               Error);
}

TEST(ThetaBlock, UnitaryAndExplicit) {
  const cplx a(0.3, 0.4);
  const cplx lam = std::polar(1.0, 0.7);
  const Mat2C t = theta_block(a, lam);
  EXPECT_LT(max_abs_diff(t.adjoint() * t, Mat2C::identity()), 1e-15);
  EXPECT_LT(std::abs(t.a - lam * std::conj(a)), 1e-16);
  EXPECT_LT(std::abs(t.b - lam * std::sqrt(0.75)), 1e-15);
  EXPECT_LT(std::abs(t.d + lam * a), 1e-16);
}

// The dense periodic restriction agrees with the window away from the wrap.
TEST(OperatorWindow, MatchesIndependentDenseProduct) {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const index_t q = 2 * rng.pick(1, 4);
    const VerblunskyWord w = testing::random_word(rng, q, 0.95);
    const index_t n = 4;
    const index_t size = n * q;
    const auto dense = acceptance::periodic_cmv_dense(w, n);
    const OperatorWindow win = assemble_window(w, 0, size - 1);
    for (index_t i = 2; i < size - 2; ++i) {
      for (index_t j = 2; j < size - 2; ++j) {
        EXPECT_LT(std::abs(win.entry(i, j) - dense[static_cast<std::size_t>(i * size + j)]), 1e-14);
      }
    }
  }
}

TEST(OperatorWindow, Pentadiagonal) {
  Rng rng(25);
  const VerblunskyWord w = testing::random_word(rng, 4);
  const OperatorWindow win = assemble_window(w, -6, 9);
  for (index_t i = -6; i <= 9; ++i) {
    for (index_t j = -6; j <= 9; ++j) {
      if (std::abs(i - j) > 2) EXPECT_EQ(win.entry(i, j), cplx(0.0));
    }
  }
  EXPECT_THROW(assemble_window(w, 0, 3), Error);
}

TEST(ApplyOperator, AdjointPairing) {
  Rng rng(26);
  const VerblunskyWord w = testing::random_word(rng, 6);
  WindowVector phi{-3, {}}, psi{-2, {}};
  for (int i = 0; i < 7; ++i) phi.values.push_back(rng.disk(1.0));
  for (int i = 0; i < 5; ++i) psi.values.push_back(rng.disk(1.0));
  const WindowVector ephi = apply_operator(w, phi, false);
  const WindowVector estar_psi = apply_operator(w, psi, true);
  cplx lhs = 0.0, rhs = 0.0;
  for (index_t n = -20; n <= 20; ++n) {
    lhs += std::conj(psi.at(n)) * ephi.at(n);
    rhs += std::conj(estar_psi.at(n)) * phi.at(n);
  }
  EXPECT_LT(std::abs(lhs - rhs), 1e-13);
  EXPECT_NEAR(ephi.norm(), phi.norm(), 1e-13);
}

TEST(ApplyOperator, BoundaryContact) {
  const VerblunskyWord w = constant_word(0.5, 2);
  const WindowVector tight{0, {1.0, 0.0, 0.0}};
  EXPECT_THROW(apply_operator(w, tight, false, false), Error);
  EXPECT_NO_THROW(apply_operator(w, WindowVector::delta(0), false, false));
}

TEST(DiagonalMoment, FreeAndTrivial) {
  Rng rng(27);
  const VerblunskyWord w = testing::random_word(rng, 4);
  EXPECT_LT(std::abs(diagonal_moment(w, 0) - 1.0), 1e-15);
  // The free operator moves every site by two.
  for (int k = 1; k <= 6; ++k) EXPECT_LT(std::abs(diagonal_moment(free_word(2), k)), 1e-15);
}

TEST(Gauge, ConjugationGivesStandardCmv) {
  Rng rng(28);
  for (int trial = 0; trial < 10; ++trial) {
    const VerblunskyWord w = testing::random_word(rng, 2 * rng.pick(1, 4));
    const GaugedWord g = gauge_to_standard(w);
    const index_t lo = -9, hi = 17;
    const OperatorWindow e = assemble_window(w, lo, hi);
    const OperatorWindow std_e = assemble_window_from([&](index_t n) { return g.alpha(n); },
                                                      [](index_t) { return cplx(1.0); }, lo, hi);
    for (index_t i = lo; i <= hi; ++i) {
      EXPECT_NEAR(std::abs(g.gamma(i)), 1.0, 1e-14);
      for (index_t j = std::max(lo, i - 2); j <= std::min(hi, i + 2); ++j) {
        const cplx conj_entry = g.gamma(i) * e.entry(i, j) * std::conj(g.gamma(j));
        EXPECT_LT(std::abs(conj_entry - std_e.entry(i, j)), 1e-12) << i << "," << j;
      }
    }
  }
}

TEST(Gauge, LambdaFreeWordIsFixed) {
  const VerblunskyWord w = constant_word(cplx(0.2, 0.1), 4);
  const GaugedWord g = gauge_to_standard(w);
  ASSERT_TRUE(g.periodic());
  EXPECT_LT(w.distance(g.to_word()), 1e-14);
}

TEST(Gordon, DefectOfExactRepetition) {
  Rng rng(29);
  const VerblunskyWord w = testing::random_word(rng, 4);
  EXPECT_EQ(gordon_log_defect(w.repeated(3), 4, 2.0), -std::numeric_limits<double>::infinity());
  const GordonReport rep = gordon_check({w, w.repeated(2)}, {2.0});
  ASSERT_EQ(rep.scales.size(), 2u);
  for (double d : rep.defects[0]) EXPECT_EQ(d, 0.0);
}

TEST(Gordon, PerturbedDefectScales) {
  std::vector<VerblunskyPair> p(8, VerblunskyPair{DiskPoint(0.3), 0.0});
  p[2].alpha = DiskPoint(0.3 + 1e-3);
  const VerblunskyWord w(p);
  // The window -1..2 compares alpha_0 and alpha_2 against their shifts.
  EXPECT_NEAR(gordon_log_defect(w, 2, 3.0), 2.0 * std::log(3.0) + std::log(1e-3), 1e-9);
}

}  // namespace
}  // namespace cmvspec
