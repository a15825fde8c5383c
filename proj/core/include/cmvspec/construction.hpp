#pragma once

// Spectral thinning of periodic words: gap opening by odd-phase
// perturbation, covers by rotation, concatenation of cover families, the
// one-step refinement certificate and the tower schedules built on it.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmvspec/bands.hpp"

namespace cmvspec {

struct GapOpenOptions {
  /// Ladder steps eps, eps/2, ..., eps/2^(ladder_depth-1).
  int ladder_depth = 40;
  BandOptions bands;
};

struct GapOpenResult {
  VerblunskyWord word;
  /// Step of the accepted ladder rung; 0 when the input already had q open gaps.
  double eps_used = 0.0;
  /// +1 or -1 for the accepted rung, 0 for the identity return.
  int sign = 0;
  index_t band_count = 0;
  /// Smallest gap arc length.
  double min_gap = 0.0;
  BandList bands;
};

/// Multiplies lambda_j for odd j by exp(i s t w_j) with a fixed aperiodic
/// weight pattern |w_j| <= 1, for t on the halving ladder starting at budget
/// and s = +1, -1, and returns the first word whose band list has q bands
/// with every gap wider than the edge tolerance. Throws
/// Error(GapOpeningFailed) when the ladder is exhausted.
GapOpenResult open_gaps(const VerblunskyWord& word, double budget, const GapOpenOptions& options = {});

/// Weight applied to the m-th odd phase of a period by open_gaps.
double gap_opening_weight(index_t m);

/// lambda_n -> e^{i phi} lambda_n for even n; the spectrum rotates by phi.
VerblunskyWord rotate_spectrum(const VerblunskyWord& word, double phi);

/// How the rotation count k of a cover is chosen.
///  Analytic: k = ceil(delta / (6 gamma)), valid when every band is shorter than delta / 6.
///  Measured: k = smallest integer with 2 k gamma > longest band.
enum class CoverRule { Analytic, Measured };

/// How the repetition count n' of the refinement is chosen.
///  Analytic: smallest n' with 4 pi / (n' q) < delta / 6.
///  Measured: smallest n' whose gap-opened repetition has every band shorter than delta / 6.
enum class RepetitionRule { Analytic, Measured };

struct CoverFamily {
  /// Rotations by j gamma for j = -k .. k, in that order.
  std::vector<VerblunskyWord> members;
  double gamma = 0.0;
  index_t k = 0;
  double min_gap = 0.0;
  double max_band = 0.0;
  /// Period of the word the family refines and the repetition count, so that
  /// members have period n_prime * seed_period.
  index_t seed_period = 0;
  index_t n_prime = 1;
  index_t certification_grid = 0;

  index_t size() const { return static_cast<index_t>(members.size()); }
};

struct CoverOptions {
  CoverRule rule = CoverRule::Measured;
  /// Minimum certification grid; raised to resolve gamma.
  index_t grid = 4096;
  BandOptions bands;
};

/// gamma = min(delta / 6, min_gap / 2) and the rotation count k of a cover
/// of a word with the given bands. Throws Error(CoverCertificationFailed)
/// when the rule's preconditions fail or k gamma exceeds delta / 2.
struct CoverParameters {
  double gamma = 0.0;
  index_t k = 0;
  double min_gap = 0.0;
  double max_band = 0.0;
};
CoverParameters cover_parameters(const BandList& bands, double delta, CoverRule rule);

/// Builds the 2k+1 rotations of base and certifies that every point of a
/// fine grid lies outside the spectrum of at least one member. Throws
/// Error(CoverCertificationFailed) if certification fails after one grid
/// refinement, or if a member would leave the delta / 2 ball.
CoverFamily cover_family(const VerblunskyWord& base, double delta, const CoverOptions& options = {},
                         index_t seed_period = 0, index_t n_prime = 1);

/// Block layout of a concatenation: block j covers [starts[j], starts[j+1]).
struct ConcatenationLayout {
  index_t repeats = 0;  // n tilde + 1
  std::vector<index_t> starts;
};

/// s_j = j (n tilde + 1) n' q with n tilde maximal subject to
/// l n' (n tilde + 1) <= n, and s_l = n q. Throws Error(NTooSmall) unless n > 4 l n'.
ConcatenationLayout concatenation_layout(index_t ell, index_t n_prime, index_t q, index_t n);

/// Period n q word taking member j's coefficients on block j.
VerblunskyWord concatenate_cover(const CoverFamily& family, index_t n);

struct RefineOptions {
  RepetitionRule repetition = RepetitionRule::Measured;
  CoverOptions cover;
  GapOpenOptions gaps;
  index_t eta_grid = 4096;
  /// eta is the grid minimum scaled by (1 - eta_margin).
  double eta_margin = 0.05;
  /// Largest period the refinement may produce.
  index_t qcap = 50000;
  /// Band search on the concatenated word.
  BandOptions output_bands;
};

struct RefinementCertificate {
  VerblunskyWord word = free_word(2);
  index_t seed_period = 0;
  index_t n_prime = 0;
  index_t n = 0;
  index_t ell = 0;
  index_t k = 0;
  double gamma = 0.0;
  double min_gap = 0.0;
  double max_band = 0.0;
  double gap_eps = 0.0;
  int gap_sign = 0;
  double eta_grid_min = 0.0;
  double eta = 0.0;
  /// eta / (4 l).
  double c = 0.0;
  double leb = 0.0;
  index_t band_count = 0;
  /// log of 4 pi n q exp(-n q eta / 2 l).
  double log_bound = 0.0;
  double bound = 0.0;
  /// exp(-c n q)
  double exp_bound = 0.0;
  bool certified = false;
  bool below_exp_bound = false;
  double distance = 0.0;
  BandList bands;
};

/// Smallest admissible multiplier 4 l n' + 1.
index_t minimal_multiplier(index_t ell, index_t n_prime);

/// The stages before concatenation: the gap-opened repetition and its cover.
struct RefinementPlan {
  CoverFamily family;
  double gap_eps = 0.0;
  int gap_sign = 0;
  double eta_grid_min = 0.0;
  double eta = 0.0;
};

/// Throws Error(ScheduleInfeasible) if n' q exceeds qcap and
/// Error(EtaNonPositive) if the cover has a point where every member is
/// non-hyperbolic on the grid.
RefinementPlan plan_refinement(const VerblunskyWord& word, double delta, const RefineOptions& options = {});

/// Concatenates a plan with multiplier n (0 selects the smallest admissible
/// one) and measures the output spectrum. Throws Error(ScheduleInfeasible)
/// when n q exceeds qcap.
RefinementCertificate finish_refinement(const VerblunskyWord& word, double delta, const RefinementPlan& plan,
                                        index_t n, const RefineOptions& options = {});

RefinementCertificate thin_refine(const VerblunskyWord& word, double delta, index_t n,
                                  const RefineOptions& options = {});

/// min over the grid of max_j L(e^{i tau}, member_j).
double cover_lyapunov_min(const CoverFamily& family, index_t grid);

enum class TowerMode { ZeroMeasure, ZeroHausdorff, Olhc };

std::string to_string(TowerMode mode);
TowerMode tower_mode_from_string(const std::string& name);

/// h(d) = log(1/d)^{-power}; g(d) = h(d) log(1/d).
struct ModulusFunction {
  double power = 2.0;
  double h(double d) const;
  double g(double d) const;
  /// g evaluated on d = 10^{-1}, ..., 10^{-decades}; true when it decreases to below tol.
  bool vanishes_faster_than_log(int decades = 300, double tol = 1e-2) const;
};

struct TowerSchedule {
  TowerMode mode = TowerMode::ZeroMeasure;
  VerblunskyWord seed = free_word(2);
  double eps0 = 0.1;
  ModulusFunction h;
  RefineOptions refine;
};

struct TowerLevel {
  index_t level = 0;
  index_t q = 0;
  double eps = 0.0;
  double leb = 0.0;
  double c = 0.0;
  /// Sum of eps_j over levels 1..level.
  double eps_sum = 0.0;
  double distance_to_seed = 0.0;
  double distance_to_previous = 0.0;
  /// Sum over bands of Leb(I)^s for s in hausdorff_exponents.
  std::vector<double> hausdorff_content;
  /// zero_hausdorff: Leb < exp(-q^{1/2}). olhc: g(exp(-c q)) <= c / (2 level).
  bool schedule_condition = true;
  RefinementCertificate certificate;
};

struct OlhcWitness {
  index_t level = 0;
  double tau_limit = 0.0;
  double tau_witness = 0.0;
  double mass = 0.0;
  double chord = 0.0;
  double ratio = 0.0;
};

struct TowerResult {
  std::vector<TowerLevel> levels;
  std::vector<OlhcWitness> witnesses;
  /// Completed levels; the last one is the deepest word built.
  std::vector<VerblunskyWord> words;
};

inline constexpr double kHausdorffExponents[] = {0.5, 0.25, 0.1};

/// About 10^3 ulps of tau. Shorter bands are not resolved by double-precision
/// transfer products; build_tower rejects levels whose cover would need them.
inline constexpr double kBandResolutionFloor = 1e-12;

struct TowerCallbacks {
  std::function<void(const TowerLevel&)> on_level;
};

/// Runs depth refinement levels. Throws Error(ScheduleInfeasible) when a
/// level's period would exceed the cap; levels finished before that point are
/// reported through callbacks.
TowerResult build_tower(const TowerSchedule& schedule, int depth, const TowerCallbacks& callbacks = {});

/// DOS-modulus witnesses at every level but the last, with the last level
/// standing in for the limit.
std::vector<OlhcWitness> olhc_witnesses(const TowerResult& tower, const ModulusFunction& h);

}  // namespace cmvspec
