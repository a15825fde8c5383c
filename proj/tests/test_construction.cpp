#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "cmvspec/construction.hpp"
#include "cmvspec/dos.hpp"
#include "test_util.hpp"

namespace cmvspec {
namespace {

using testing::Rng;

// Strongly coupled q = 8 seed with every gap open; refines with n' = 1 and a
// three-member cover.
VerblunskyWord open_seed() {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, testing::kTau);
  std::vector<VerblunskyPair> p;
  for (int i = 0; i < 8; ++i) {
    const cplx a = std::polar(0.9, u(gen));
    p.push_back({DiskPoint(a), u(gen)});
  }
  return VerblunskyWord(p);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Config;
}

TEST(GapOpening, WeightsBoundedAndAperiodic) {
  std::set<double> seen;
  for (index_t m = 0; m < 64; ++m) {
    const double w = gap_opening_weight(m);
    EXPECT_LE(std::abs(w), 1.0);
    seen.insert(w);
  }
  EXPECT_EQ(seen.size(), 64u);
}

TEST(GapOpening, OpenWordReturnedUnchanged) {
  const VerblunskyWord w = open_seed();
  const GapOpenResult r = open_gaps(w, 0.1);
  EXPECT_EQ(r.eps_used, 0.0);
  EXPECT_EQ(r.sign, 0);
  EXPECT_TRUE(r.word == w);
  EXPECT_EQ(r.band_count, 8);
}

TEST(GapOpening, OpensClosedGapsOfConstantWord) {
  const VerblunskyWord w = constant_word(0.5, 4);
  ASSERT_LT(band_list(w).gaps.size(), 4u);
  const GapOpenResult r = open_gaps(w, 0.5);
  EXPECT_EQ(r.band_count, 4);
  EXPECT_EQ(r.bands.gaps.size(), 4u);
  EXPECT_GT(r.min_gap, 0.0);
  EXPECT_LE(w.distance(r.word), 0.5 + 1e-12);
  for (index_t n = 0; n < 4; n += 2) EXPECT_EQ(w.lambda_arg(n), r.word.lambda_arg(n));
}

// A single odd phase only rotates the spectrum, so q = 2 gaps never open.
TEST(GapOpening, FreeWordFails) {
  GapOpenOptions o;
  o.ladder_depth = 4;
  EXPECT_EQ(code_of([&] { open_gaps(free_word(2), 0.5, o); }), ErrorCode::GapOpeningFailed);
}

TEST(RotateSpectrum, EvenPhasesOnly) {
  Rng rng(71);
  const VerblunskyWord w = testing::random_word(rng, 4);
  const VerblunskyWord r = rotate_spectrum(w, 0.25);
  for (index_t n = 0; n < 4; ++n) {
    EXPECT_EQ(r.alpha(n), w.alpha(n));
    EXPECT_NEAR(std::remainder(r.lambda_arg(n) - w.lambda_arg(n) - (n % 2 == 0 ? 0.25 : 0.0), kTwoPi), 0.0, 1e-15);
  }
}

TEST(Cover, ParametersFollowRules) {
  const BandList b = band_list(open_seed());
  const CoverParameters m = cover_parameters(b, 1.0, CoverRule::Measured);
  EXPECT_NEAR(m.gamma, std::min(1.0 / 6.0, m.min_gap / 2.0), 1e-15);
  EXPECT_GT(2.0 * m.k * m.gamma, m.max_band);
  EXPECT_LE(2.0 * (m.k - 1) * m.gamma, m.max_band);
  const CoverParameters p = cover_parameters(b, 1.0, CoverRule::Analytic);
  EXPECT_EQ(p.k, static_cast<index_t>(std::ceil(1.0 / (6.0 * p.gamma))));
  EXPECT_EQ(code_of([&] { cover_parameters(b, 1e-3, CoverRule::Analytic); }), ErrorCode::CoverCertificationFailed);
}

TEST(Cover, FamilyIsCertifiedAndCloseToBase) {
  const VerblunskyWord w = open_seed();
  const CoverFamily f = cover_family(w, 1.0);
  EXPECT_EQ(f.size(), 2 * f.k + 1);
  for (const auto& m : f.members) EXPECT_LE(w.distance(m), 0.5 + 1e-12);
  // No grid point is in every member's spectrum.
  std::vector<BandList> bl;
  for (const auto& m : f.members) bl.push_back(band_list(m));
  for (double tau : uniform_tau_grid(2048)) {
    bool outside_one = false;
    for (const auto& b : bl) outside_one = outside_one || !b.contains(tau);
    EXPECT_TRUE(outside_one) << tau;
  }
}

TEST(Concatenation, LayoutArithmetic) {
  EXPECT_EQ(code_of([] { concatenation_layout(3, 1, 8, 12); }), ErrorCode::NTooSmall);
  const ConcatenationLayout l = concatenation_layout(3, 1, 8, 13);
  EXPECT_EQ(l.repeats, 4);
  ASSERT_EQ(l.starts.size(), 4u);
  EXPECT_EQ(l.starts[0], 0);
  EXPECT_EQ(l.starts[1], 32);
  EXPECT_EQ(l.starts[2], 64);
  EXPECT_EQ(l.starts[3], 104);
  EXPECT_EQ(minimal_multiplier(3, 1), 13);
  EXPECT_EQ(minimal_multiplier(5, 2), 41);
}

TEST(Concatenation, BlocksCopyMembers) {
  const CoverFamily f = cover_family(open_seed(), 1.0);
  const index_t n = minimal_multiplier(f.size(), f.n_prime);
  const VerblunskyWord c = concatenate_cover(f, n);
  const ConcatenationLayout l = concatenation_layout(f.size(), f.n_prime, 8, n);
  ASSERT_EQ(c.q(), n * 8);
  for (std::size_t j = 0; j + 1 < l.starts.size(); ++j) {
    for (index_t s = l.starts[j]; s < l.starts[j + 1]; ++s) {
      EXPECT_EQ(c.alpha(s), f.members[j].alpha(s));
      EXPECT_EQ(c.lambda_arg(s), f.members[j].lambda_arg(s));
    }
  }
}

TEST(Refinement, CertificateHoldsAndSpectrumThins) {
  const VerblunskyWord w = open_seed();
  const RefinementPlan plan = plan_refinement(w, 0.5);
  EXPECT_GT(plan.eta, 0.0);
  const RefinementCertificate a = finish_refinement(w, 0.5, plan, 0);
  EXPECT_EQ(a.n, minimal_multiplier(a.ell, a.n_prime));
  EXPECT_TRUE(a.certified);
  EXPECT_LE(a.distance, 0.5);
  EXPECT_LT(a.leb, 1e-3 * band_list(w).measure());
  EXPECT_NEAR(a.c, a.eta / (4.0 * a.ell), 1e-15);
  EXPECT_NEAR(a.log_bound, std::log(4.0 * kPi * a.n * 8) - a.n * 8 * a.eta / (2.0 * a.ell), 1e-9);
  EXPECT_EQ(a.band_count, static_cast<index_t>(a.bands.bands.size()));
}

TEST(Refinement, CapIsEnforced) {
  RefineOptions o;
  o.qcap = 50;
  EXPECT_EQ(code_of([&] { thin_refine(open_seed(), 0.5, 0, o); }), ErrorCode::ScheduleInfeasible);
  EXPECT_EQ(code_of([&] { thin_refine(open_seed(), -1.0, 0); }), ErrorCode::Config);
}

TEST(Tower, ModeNames) {
  for (TowerMode m : {TowerMode::ZeroMeasure, TowerMode::ZeroHausdorff, TowerMode::Olhc}) {
    EXPECT_EQ(tower_mode_from_string(to_string(m)), m);
  }
  EXPECT_THROW(tower_mode_from_string("fast"), Error);
}

TEST(Tower, ModulusFunction) {
  ModulusFunction h;
  EXPECT_NEAR(h.h(std::exp(-10.0)), 0.01, 1e-15);
  EXPECT_NEAR(h.g(std::exp(-10.0)), 0.1, 1e-15);
  EXPECT_TRUE(h.vanishes_faster_than_log());
  h.power = 1.0;
  EXPECT_FALSE(h.vanishes_faster_than_log());
}

TEST(Tower, OneLevelZeroMeasure) {
  TowerSchedule s;
  s.seed = open_seed();
  s.eps0 = 1.0;
  std::vector<index_t> seen;
  TowerCallbacks cb;
  cb.on_level = [&](const TowerLevel& l) { seen.push_back(l.level); };
  const TowerResult t = build_tower(s, 1, cb);
  ASSERT_EQ(t.levels.size(), 1u);
  EXPECT_EQ(seen, std::vector<index_t>{1});
  EXPECT_NEAR(t.levels[0].eps, 0.5, 1e-15);
  EXPECT_LT(t.levels[0].leb, band_list(s.seed).measure());
  EXPECT_LE(t.levels[0].distance_to_seed, s.eps0);
  EXPECT_EQ(t.levels[0].hausdorff_content.size(), std::size(kHausdorffExponents));
  EXPECT_EQ(code_of([&] { build_tower(s, 0); }), ErrorCode::Config);
}

TEST(Tower, InfeasibleLevelReported) {
  TowerSchedule s;
  s.seed = open_seed();
  s.eps0 = 1.0;
  s.refine.qcap = 200;
  int levels = 0;
  TowerCallbacks cb;
  cb.on_level = [&](const TowerLevel&) { ++levels; };
  EXPECT_EQ(code_of([&] { build_tower(s, 2, cb); }), ErrorCode::ScheduleInfeasible);
  EXPECT_EQ(levels, 1);
}

TEST(Tower, BudgetBelowBandFloorRejected) {
  TowerSchedule s;
  s.seed = open_seed();
  s.eps0 = 10.0 * kBandResolutionFloor;
  EXPECT_EQ(code_of([&] { build_tower(s, 1); }), ErrorCode::ScheduleInfeasible);
}

}  // namespace
}  // namespace cmvspec
