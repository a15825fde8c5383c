#include "acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cmvspec/construction.hpp"
#include "cmvspec/dos.hpp"
#include "cmvspec/operator.hpp"
#include "cmvspec/potential.hpp"
#include "cmvspec/walk.hpp"

namespace cmvspec::acceptance {

namespace {

// Pinned tolerances.
constexpr double kUnitarityTol = 1e-12;
constexpr double kUnitarityBudget = 5.0;
constexpr double kJUnitaryTol = 1e-10;
constexpr double kImDeltaTol = 1e-10;
constexpr double kFreeTol = 1e-9;
constexpr double kBandMassTol = 1e-6;
constexpr double kBandMassBudget = 60.0;
constexpr double kChainTol = 1e-8;
constexpr double kRouteTol = 1e-6;
constexpr double kSchurRadiusEps = 1e-6;
constexpr double kSchurTol = 1e-4;
constexpr double kMomentTol = 1e-6;
constexpr double kOracleTol = 1e-8;
constexpr double kThoulessTol = 1e-4;
constexpr double kThoulessFloor = 1e-10;
constexpr double kCraigSimonSlack = -1e-9;
constexpr double kThinBudget = 600.0;
constexpr double kNormDriftTol = 1e-10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3g", v); }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(gen); }
  index_t pick(index_t lo, index_t hi) { return std::uniform_int_distribution<index_t>(lo, hi)(gen); }
};

VerblunskyWord random_word(Rng& rng, index_t q, double amax) {
  std::vector<VerblunskyPair> p;
  for (index_t i = 0; i < q; ++i) {
    const cplx a = std::polar(amax * rng.uniform(), rng.uniform(0.0, kTwoPi));
    p.push_back({DiskPoint(a), rng.uniform(0.0, kTwoPi)});
  }
  return VerblunskyWord(std::move(p));
}

struct OpenWord {
  VerblunskyWord word;
  BandList bands;
};

// 50 words with q in {2, 4, 6, 8}, all q gaps open.
const std::vector<OpenWord>& open_gap_words() {
  static const std::vector<OpenWord> words = [] {
    std::vector<OpenWord> out;
    Rng rng(20240601);
    const index_t qs[] = {2, 4, 6, 8};
    while (out.size() < 50) {
      const index_t q = qs[out.size() % 4];
      VerblunskyWord w = random_word(rng, q, 0.8);
      BandList b = band_list(w);
      if (static_cast<index_t>(b.gaps.size()) != q) continue;
      bool wide = true;
      for (const auto& g : b.gaps) wide = wide && g.length() > 1e-3;
      if (!wide) continue;
      out.push_back({std::move(w), std::move(b)});
    }
    return out;
  }();
  return words;
}

// Band-interior point at least 2% of the band length from either edge.
double interior_point(Rng& rng, const BandList& bands) {
  const auto& b = bands.bands[static_cast<std::size_t>(rng.pick(0, static_cast<index_t>(bands.bands.size()) - 1))];
  return wrap_angle(b.left + b.length() * rng.uniform(0.02, 0.98));
}

CriterionResult unitarity() {
  CriterionResult r{1, "unitarity suite", false, "", 0.0};
  const auto t0 = Clock::now();
  Rng rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const index_t q = 2 * rng.pick(1, 4);
    const VerblunskyWord w = random_word(rng, q, 0.99);
    for (const auto& p : w.pairs()) {
      const Mat2C t = theta_block(p);
      worst = std::max(worst, max_abs_diff(t.adjoint() * t, Mat2C::identity()));
    }
    const index_t lo = -rng.pick(3, 9);
    const index_t hi = q + rng.pick(3, 9);
    const OperatorWindow win = assemble_window(w, lo, hi);
    // Columns at least two sites from the edge carry their full support.
    for (index_t a = lo + 2; a <= hi - 2; ++a) {
      for (index_t b = lo + 2; b <= hi - 2; ++b) {
        cplx s = 0.0;
        for (index_t k = lo; k <= hi; ++k) s += std::conj(win.entry(k, a)) * win.entry(k, b);
        worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.pass = worst <= kUnitarityTol && r.seconds < kUnitarityBudget;
  r.detail = "max |A*A - I| = " + sci(worst) + " (<= 1e-12)" + (r.seconds < kUnitarityBudget ? "" : ", over the 5 s budget");
  return r;
}

CriterionResult su11_suite() {
  CriterionResult r{2, "SU(1,1) suite", false, "", 0.0};
  Rng rng(2);
  double worst_j = 0.0;
  double worst_im = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const index_t q = 2 * rng.pick(1, 4);
    const VerblunskyWord w = random_word(rng, q, 0.99);
    const auto z = SpectralParameter::on_circle(rng.uniform(0.0, kTwoPi));
    for (index_t j = 0; j < q; j += 2) worst_j = std::max(worst_j, j_unitarity_defect(two_step(w, j, z)));
    worst_im = std::max(worst_im, std::abs(discriminant(w, z).imag()));
  }
  r.pass = worst_j <= kJUnitaryTol && worst_im <= kImDeltaTol;
  r.detail = "J-defect " + sci(worst_j) + " (<= 1e-10), |Im Delta| " + sci(worst_im) + " (<= 1e-10)";
  return r;
}

CriterionResult free_golden() {
  CriterionResult r{3, "free-case golden values", false, "", 0.0};
  const VerblunskyWord w = free_word(2);
  const BandList bands = band_list(w);
  double d_err = 0.0, nu_err = 0.0, l_err = 0.0, s_err = 0.0, th_err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double tau = kTwoPi * (i + 0.37) / 200.0;
    d_err = std::max(d_err, std::abs(discriminant_on_circle(w, tau) - 2.0 * std::cos(tau)));
    nu_err = std::max(nu_err, std::abs(dos_density(w, bands, tau, DosRoute::ITrace) - 1.0 / kTwoPi));
    l_err = std::max(l_err, std::abs(lyapunov(w, SpectralParameter::on_circle(tau))));
    for (cplx s : schur_values(w, tau).values) s_err = std::max(s_err, std::abs(s));
  }
  for (cplx z : {cplx(0.3, 0.1), cplx(0.0, 0.7), cplx(1.5, -0.4), cplx(-2.5, 0.0), std::polar(1.0, 1.0),
                 std::polar(0.95, 2.0), std::polar(1.05, 4.0)}) {
    th_err = std::max(th_err, std::abs(thouless_check(w, bands, z, 1e-12).residual));
  }
  const bool one_band = bands.bands.size() == 1 && std::abs(bands.bands[0].length() - kTwoPi) < 1e-12;
  r.pass = one_band && d_err <= kFreeTol && nu_err <= kFreeTol && l_err <= kFreeTol && s_err <= kFreeTol &&
           th_err <= kFreeTol;
  r.detail = "Delta " + sci(d_err) + ", dnu " + sci(nu_err) + ", L " + sci(l_err) + ", |s| " + sci(s_err) +
             ", Thouless " + sci(th_err) + " (each <= 1e-9)" + (one_band ? "" : ", band list is not one full arc");
  return r;
}

CriterionResult band_mass() {
  CriterionResult r{4, "band mass 1/q", false, "", 0.0};
  const auto t0 = Clock::now();
  double worst = 0.0;
  double worst_exact = 0.0;
  for (const auto& ow : open_gap_words()) {
    const double target = 1.0 / static_cast<double>(ow.word.q());
    for (double m : band_masses(ow.word, ow.bands)) worst = std::max(worst, std::abs(m - target));
    for (const auto& b : ow.bands.bands) {
      worst_exact = std::max(worst_exact, std::abs(dos_measure(ow.word, ow.bands, b) - target));
    }
  }
  r.seconds = seconds_since(t0);
  r.pass = worst <= kBandMassTol && worst_exact <= kBandMassTol && r.seconds < kBandMassBudget;
  r.detail = "50 words, quadrature " + sci(worst) + ", theta route " + sci(worst_exact) + " (<= 1e-6)" +
             (r.seconds < kBandMassBudget ? "" : ", over the 60 s budget");
  return r;
}

CriterionResult dos_chain() {
  CriterionResult r{5, "DOS inequality chain", false, "", 0.0};
  Rng rng(5);
  const auto& words = open_gap_words();
  double chain = 0.0;
  double route = 0.0;
  int samples = 0;
  int skipped = 0;
  while (samples < 1000) {
    const auto& ow = words[static_cast<std::size_t>(samples % words.size())];
    const double tau = interior_point(rng, ow.bands);
    DosSample s;
    double numeric = 0.0;
    try {
      s = dos_sample(ow.word, tau);
      numeric = dos_density(ow.word, ow.bands, tau, DosRoute::Numeric);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearEdge) throw;
      ++skipped;
      continue;
    }
    chain = std::max({chain, s.schur_bound - s.density, s.lower_bound - s.schur_bound});
    route = std::max(route, std::abs(s.density - numeric) / std::max(1.0, s.density));
    ++samples;
  }
  r.pass = chain <= kChainTol && route <= kRouteTol;
  r.detail = "worst violation " + sci(chain) + " (<= 1e-8), route gap " + sci(route) + " (<= 1e-6 rel)" +
             (skipped ? ", " + std::to_string(skipped) + " near-edge resamples" : "");
  return r;
}

CriterionResult schur_cross() {
  CriterionResult r{6, "Schur cross-validation", false, "", 0.0};
  Rng rng(6);
  const auto& words = open_gap_words();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto& ow = words[static_cast<std::size_t>(i) % words.size()];
    const double tau = interior_point(rng, ow.bands);
    const SchurSample s = schur_values(ow.word, tau);
    const index_t l = rng.pick(0, static_cast<index_t>(s.values.size()) - 1);
    const cplx e = schur_value_eigenvector(ow.word, tau, 2 * l, kSchurRadiusEps);
    worst = std::max(worst, std::abs(std::abs(s.values[static_cast<std::size_t>(l)]) - std::abs(e)));
  }
  r.pass = worst <= kSchurTol;
  r.detail = "max ||s_fp| - |s_eig|| = " + sci(worst) + " (<= 1e-4)";
  return r;
}

CriterionResult moments() {
  CriterionResult r{7, "moment oracle", false, "", 0.0};
  std::vector<OpenWord> set(open_gap_words().begin(), open_gap_words().begin() + 16);
  for (auto w : {free_word(2), constant_word(0.5, 2), free_word(8)}) set.push_back({w, band_list(w)});
  double worst = 0.0;
  for (const auto& ow : set) {
    for (int k = 0; k <= 8; ++k) {
      worst = std::max(worst, std::abs(dos_moment(ow.word, ow.bands, k) - diagonal_moment(ow.word, k)));
    }
  }
  r.pass = worst <= kMomentTol;
  r.detail = std::to_string(set.size()) + " words, k <= 8, max error " + sci(worst) + " (<= 1e-6)";
  return r;
}

// Greedy matching of unit-circle points.
double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (double x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(std::polar(1.0, x) - std::polar(1.0, b[j]));
      if (d < best) {
        best = d;
        bi = j;
      }
    }
    used[bi] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

CriterionResult restriction_convergence() {
  CriterionResult r{8, "periodic-restriction convergence", false, "", 0.0};
  std::vector<OpenWord> set(open_gap_words().begin(), open_gap_words().begin() + 12);
  set.push_back({constant_word(0.5, 2), band_list(constant_word(0.5, 2))});
  double worst_ratio = 0.0;
  for (const auto& ow : set) {
    const TransferEvaluator ev(ow.word);
    for (index_t n : {8, 16, 32, 64}) {
      const auto pts = expand_multiplicity(periodic_restriction_spectrum(ow.word, n, ow.bands));
      const double total = static_cast<double>(pts.size());
      double sup = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double f = dos_cdf(ev, ow.bands, pts[i]);
        sup = std::max({sup, std::abs(f - static_cast<double>(i) / total),
                        std::abs(f - static_cast<double>(i + 1) / total)});
      }
      worst_ratio = std::max(worst_ratio, sup * static_cast<double>(n) / 3.0);
    }
  }
  const VerblunskyWord fw = free_word(2);
  const auto lib = expand_multiplicity(periodic_restriction_spectrum(fw, 4));
  const auto oracle = dense_eigen_angles(periodic_cmv_dense(fw, 4), 8);
  const double oracle_gap = multiset_distance(lib, oracle);
  r.pass = worst_ratio <= 1.0 && oracle_gap <= kOracleTol;
  r.detail = "max sup-distance * n / 3 = " + fmt("%.3f", worst_ratio) + " (<= 1), free n = 4 vs 8x8 oracle " +
             sci(oracle_gap) + " (<= 1e-8)";
  return r;
}

CriterionResult thouless() {
  CriterionResult r{9, "Thouless formula", false, "", 0.0};
  const VerblunskyWord w = constant_word(0.5, 2);
  const BandList bands = band_list(w);
  std::vector<cplx> pts;
  // Ten band-interior points on the circle.
  for (int i = 0; i < 10; ++i) {
    const auto& b = bands.bands[static_cast<std::size_t>(i % bands.bands.size())];
    pts.push_back(std::polar(1.0, b.left + b.length() * (0.1 + 0.08 * i)));
  }
  // Gap points and points off the circle.
  for (const auto& g : bands.gaps) pts.push_back(std::polar(1.0, g.left + 0.5 * g.length()));
  for (double rad : {0.3, 0.8, 0.97, 1.04, 1.5, 3.0}) pts.push_back(std::polar(rad, 0.7 + rad));
  while (pts.size() < 20) pts.push_back(std::polar(0.6, static_cast<double>(pts.size())));

  double worst = 0.0;
  int not_halving = 0;
  for (cplx z : pts) {
    double prev = std::abs(thouless_residual(w, bands, z, 8).residual);
    bool halves = true;
    for (std::size_t nodes = 16; nodes <= 128; nodes *= 2) {
      const double cur = std::abs(thouless_residual(w, bands, z, nodes).residual);
      halves = halves && (cur <= 0.5 * prev || cur <= kThoulessFloor);
      prev = cur;
    }
    worst = std::max(worst, prev);
    if (!halves) ++not_halving;
  }
  r.pass = worst <= kThoulessTol && not_halving == 0;
  r.detail = "20 points, max residual " + sci(worst) + " (<= 1e-4), " + std::to_string(not_halving) +
             " points fail to halve per node doubling over 8..128";
  return r;
}

CriterionResult craig_simon() {
  CriterionResult r{10, "Craig-Simon log-Holder bound", false, "", 0.0};
  Rng rng(10);
  std::vector<VerblunskyWord> words{constant_word(0.5, 2), open_gap_words()[1].word, open_gap_words()[3].word};
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& w : words) {
    std::vector<Arc> arcs;
    for (int i = 0; i < 1000; ++i) {
      const double left = rng.uniform(0.0, kTwoPi);
      const double len = 0.499 * std::pow(rng.uniform(), 3.0);
      arcs.push_back({left, left + len});
    }
    worst = std::min(worst, craig_simon_check(w, band_list(w), arcs).worst_slack);
  }
  r.pass = worst >= kCraigSimonSlack;
  r.detail = "3 words x 1000 arcs, worst slack " + sci(worst) + " (>= -1e-9)";
  return r;
}

CriterionResult thin_spectrum() {
  CriterionResult r{11, "thin-spectrum refinement", false, "", 0.0};
  const auto t0 = Clock::now();
  const VerblunskyWord seed = constant_word(0.5, 2);
  const double delta = 0.1;
  try {
    const RefineOptions opts;
    const RefinementPlan plan = plan_refinement(seed, delta, opts);
    const RefinementCertificate a = finish_refinement(seed, delta, plan, 0, opts);
    const RefinementCertificate b = finish_refinement(seed, delta, plan, 2 * a.n, opts);
    r.seconds = seconds_since(t0);
    const bool drop = b.leb <= 0.5 * a.leb;
    r.pass = a.certified && b.certified && drop && r.seconds < kThinBudget;
    r.detail = "n = " + std::to_string(a.n) + ": Leb " + sci(a.leb) + " vs bound " + sci(a.bound) + "; n = " +
               std::to_string(b.n) + ": Leb " + sci(b.leb) + " vs bound " + sci(b.bound) + "; ratio " +
               sci(b.leb / a.leb) + " (<= 0.5)" + (r.seconds < kThinBudget ? "" : ", over the 10 min budget");
  } catch (const Error& e) {
    r.seconds = seconds_since(t0);
    r.detail = e.what();
  }
  return r;
}

// Strongly coupled seeds whose q gaps are already open, so each refinement
// level needs no repetition and a three-member cover.
VerblunskyWord tower_seed(index_t q, double a, std::uint64_t seed, bool walk_shaped) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<VerblunskyPair> p;
  for (index_t i = 0; i < q; ++i) {
    const cplx al = (walk_shaped && i % 2 == 0) ? cplx(0.0) : std::polar(a, u(gen));
    p.push_back({DiskPoint(al), u(gen)});
  }
  return VerblunskyWord(std::move(p));
}

CriterionResult tower() {
  CriterionResult r{12, "tower monotonicity", false, "", 0.0};
  const auto t0 = Clock::now();
  std::ostringstream detail;
  bool ok = true;
  for (TowerMode mode : {TowerMode::ZeroMeasure, TowerMode::ZeroHausdorff, TowerMode::Olhc}) {
    TowerSchedule s;
    s.mode = mode;
    s.seed = tower_seed(4, 0.9, 2, false);
    s.eps0 = 1.0;
    detail << to_string(mode) << ": ";
    try {
      const TowerResult t = build_tower(s, 3);
      bool mode_ok = true;
      double prev_leb = band_list(s.seed).measure();
      double prev_h = std::numeric_limits<double>::infinity();
      for (const auto& lv : t.levels) {
        mode_ok = mode_ok && lv.leb < prev_leb && lv.distance_to_seed <= s.eps0;
        if (mode == TowerMode::ZeroHausdorff) mode_ok = mode_ok && lv.hausdorff_content[0] < prev_h;
        prev_leb = lv.leb;
        prev_h = lv.hausdorff_content[0];
        detail << "Leb " << sci(lv.leb) << " ";
      }
      if (mode == TowerMode::Olhc) {
        for (std::size_t i = 1; i < t.witnesses.size(); ++i) {
          mode_ok = mode_ok && t.witnesses[i].ratio > t.witnesses[i - 1].ratio;
        }
        detail << "witness ratios";
        for (const auto& wt : t.witnesses) detail << " " << sci(wt.ratio);
        detail << " ";
      }
      ok = ok && mode_ok;
      detail << (mode_ok ? "ok; " : "not monotone; ");
    } catch (const Error& e) {
      ok = false;
      detail << e.what() << "; ";
    }
  }
  r.seconds = seconds_since(t0);
  r.pass = ok;
  r.detail = detail.str();
  return r;
}

CriterionResult walk_suite() {
  CriterionResult r{13, "walk suite", false, "", 0.0};
  std::ostringstream detail;
  Rng rng(13);

  std::vector<Coin> cs;
  for (int i = 0; i < 4; ++i) {
    const double t = rng.uniform(0.2, 1.3);
    const cplx e1 = std::polar(1.0, rng.uniform(0.0, kTwoPi));
    const cplx e2 = std::polar(1.0, rng.uniform(0.0, kTwoPi));
    cs.push_back({e1 * std::cos(t), -e2 * std::sin(t), std::conj(e2) * std::sin(t), std::conj(e1) * std::cos(t)});
  }
  const CoinSequence random_coins(cs);
  WalkState psi = WalkState::localized(0, 1.0 / std::sqrt(2.0), cplx(0.0, 1.0 / std::sqrt(2.0)));
  double drift = 0.0;
  for (int n = 0; n < 10000; ++n) {
    psi = step(psi, random_coins);
    drift = std::max(drift, std::abs(psi.norm() - 1.0));
  }
  const bool norm_ok = drift <= kNormDriftTol;
  detail << "norm drift " << sci(drift) << " (<= 1e-10); ";

  const CoinSequence shift({Coin{}});
  const RageReport pure = rage_diagnostics(shift, WalkState::localized(0, 1.0, 0.0), 3, 16);
  double tail = 0.0;
  for (index_t n = -16; n <= 16; ++n) {
    if (std::abs(n) > 3) tail = std::max(tail, pure.survival[static_cast<std::size_t>(n + 16)]);
  }
  const bool shift_ok = tail == 0.0;
  detail << "pure-shift survival beyond n = 3: " << sci(tail) << "; ";

  double round_trip = 0.0;
  for (int i = 0; i < 100; ++i) {
    const index_t q = 2 * rng.pick(1, 5);
    std::vector<VerblunskyPair> p;
    for (index_t k = 0; k < q; ++k) {
      const cplx a = (k % 2 == 0) ? cplx(0.0) : std::polar(0.95 * rng.uniform(), rng.uniform(0.0, kTwoPi));
      p.push_back({DiskPoint(a), k == 0 ? 0.0 : rng.uniform(0.0, kTwoPi)});
    }
    const VerblunskyWord w(std::move(p));
    const WalkCmv back = coins_to_cmv(cmv_from_coins_inverse(w));
    round_trip = std::max(round_trip, w.distance(back.word) + std::abs(back.psi));
  }
  const bool round_ok = round_trip <= 1e-12;
  detail << "round trip " << sci(round_trip) << " (<= 1e-12); ";

  bool slope_ok = false;
  try {
    TowerSchedule s;
    s.seed = tower_seed(8, 0.9, 1, true);
    s.eps0 = 1.0;
    const TowerResult t = build_tower(s, 2);
    const CoinSequence coins = cmv_from_coins_inverse(t.words.back());
    std::vector<index_t> checkpoints;
    for (index_t n = 32; n <= 4096; n *= 2) checkpoints.push_back(n);
    const RageReport rep = rage_diagnostics(coins, WalkState::localized(0, 1.0, 0.0), 3, 4096, checkpoints);
    slope_ok = rep.cesaro_log_slope < 0.0;
    detail << "depth-2 thin walk (period " << coins.period() << ") Cesaro slope " << sci(rep.cesaro_log_slope);
  } catch (const Error& e) {
    detail << "depth-2 thin walk: " << e.what();
  }
  r.pass = norm_ok && shift_ok && round_ok && slope_ok;
  r.detail = detail.str();
  return r;
}

CriterionResult failed(int id, const std::string& what) {
  static const char* const names[] = {"unitarity suite", "SU(1,1) suite", "free-case golden values",
                                      "band mass 1/q", "DOS inequality chain", "Schur cross-validation",
                                      "moment oracle", "periodic-restriction convergence", "Thouless formula",
                                      "Craig-Simon log-Holder bound", "thin-spectrum refinement",
                                      "tower monotonicity", "walk suite"};
  return {id, names[id - 1], false, what, 0.0};
}

}  // namespace

std::vector<cplx> periodic_cmv_dense(const VerblunskyWord& word, index_t n) {
  const index_t size = n * word.q();
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(size, size);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  for (index_t k = 0; k < size; ++k) {
    const cplx a = word.alpha(k);
    const cplx lam = word.lambda(k);
    const double rho = word.rho(k);
    Eigen::MatrixXcd& f = (k % 2 == 0) ? l : m;
    const index_t k1 = (k + 1) % size;
    f(k, k) = lam * std::conj(a);
    f(k, k1) = lam * rho;
    f(k1, k) = lam * rho;
    f(k1, k1) = -lam * a;
  }
  const Eigen::MatrixXcd e = l * m;
  std::vector<cplx> out(static_cast<std::size_t>(size * size));
  for (index_t i = 0; i < size; ++i) {
    for (index_t j = 0; j < size; ++j) out[static_cast<std::size_t>(i * size + j)] = e(i, j);
  }
  return out;
}

std::vector<double> dense_eigen_angles(const std::vector<cplx>& matrix, index_t size) {
  Eigen::MatrixXcd a(size, size);
  for (index_t i = 0; i < size; ++i) {
    for (index_t j = 0; j < size; ++j) a(i, j) = matrix[static_cast<std::size_t>(i * size + j)];
  }
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  std::vector<double> out;
  for (index_t i = 0; i < size; ++i) out.push_back(wrap_angle(std::arg(solver.eigenvalues()(i))));
  std::sort(out.begin(), out.end());
  return out;
}

CriterionResult run_criterion(int id) {
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = unitarity(); break;
      case 2: r = su11_suite(); break;
      case 3: r = free_golden(); break;
      case 4: r = band_mass(); break;
      case 5: r = dos_chain(); break;
      case 6: r = schur_cross(); break;
      case 7: r = moments(); break;
      case 8: r = restriction_convergence(); break;
      case 9: r = thouless(); break;
      case 10: r = craig_simon(); break;
      case 11: r = thin_spectrum(); break;
      case 12: r = tower(); break;
      case 13: r = walk_suite(); break;
      default: throw Error(ErrorCode::Config, "no acceptance criterion " + std::to_string(id));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config && (id < 1 || id > kCriterionCount)) throw;
    r = failed(id, e.what());
  } catch (const std::exception& e) {
    r = failed(id, e.what());
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::vector<int> ids = options.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id));
    if (options.on_result) options.on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s criterion %2d  ", r.pass ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.name + ": " + r.detail + fmt("  [%.1f s]", r.seconds);
}

}  // namespace cmvspec::acceptance
