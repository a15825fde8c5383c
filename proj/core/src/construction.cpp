#include "cmvspec/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmvspec/dos.hpp"
#include "cmvspec/parallel.hpp"

namespace cmvspec {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool all_gaps_open(const BandList& b, index_t q, double edge_tol) {
  if (static_cast<index_t>(b.bands.size()) != q || static_cast<index_t>(b.gaps.size()) != q) return false;
  return std::all_of(b.gaps.begin(), b.gaps.end(), [&](const Arc& g) { return g.length() > edge_tol; });
}

double min_gap(const BandList& b) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& g : b.gaps) m = std::min(m, g.length());
  return b.gaps.empty() ? 0.0 : m;
}

double max_band(const BandList& b) {
  double m = 0.0;
  for (const auto& a : b.bands) m = std::max(m, a.length());
  return m;
}

VerblunskyWord perturb_odd_phases(const VerblunskyWord& word, double t) {
  std::vector<VerblunskyPair> pairs = word.pairs();
  for (index_t j = 1; j < word.q(); j += 2) {
    pairs[static_cast<std::size_t>(j)].lambda_arg += t * gap_opening_weight((j - 1) / 2);
  }
  return VerblunskyWord(std::move(pairs), word.r());
}

// Spectrum of one member as sorted disjoint intervals of [0, 2 pi).
std::vector<std::pair<double, double>> unwrap_bands(const BandList& b) {
  std::vector<std::pair<double, double>> out;
  for (const auto& a : b.bands) {
    if (a.length() >= kTwoPi) return {{0.0, kTwoPi}};
    if (a.right <= kTwoPi) {
      out.emplace_back(a.left, a.right);
    } else {
      out.emplace_back(a.left, kTwoPi);
      out.emplace_back(0.0, a.right - kTwoPi);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Grid points tau_i = 2 pi (i + 1/2) / grid lying in every member spectrum.
index_t count_uncovered(const std::vector<std::vector<std::pair<double, double>>>& spectra, index_t grid) {
  std::vector<std::size_t> cursor(spectra.size(), 0);
  index_t bad = 0;
  for (index_t i = 0; i < grid; ++i) {
    const double tau = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    bool in_all = true;
    for (std::size_t m = 0; m < spectra.size(); ++m) {
      const auto& s = spectra[m];
      std::size_t& c = cursor[m];
      while (c < s.size() && s[c].second < tau) ++c;
      if (!(c < s.size() && s[c].first <= tau)) {
        in_all = false;
        break;
      }
    }
    if (in_all) ++bad;
  }
  return bad;
}

double lyapunov_on_circle(const TransferEvaluator& ev, double tau) {
  const CocycleProduct m = ev.monodromy(std::polar(1.0, tau));
  const double tr = std::abs(m.matrix.trace().real());
  if (tr == 0.0 || std::log(tr) + m.log_scale <= std::log(2.0)) return 0.0;
  return log_spectral_radius(m.matrix, m.log_scale) / static_cast<double>(ev.q());
}

index_t analytic_repetition(double delta, index_t q) {
  auto n = static_cast<index_t>(std::floor(24.0 * kPi / (delta * static_cast<double>(q)))) + 1;
  while (4.0 * kPi / static_cast<double>(n * q) >= delta / 6.0) ++n;
  return std::max<index_t>(n, 1);
}

}  // namespace

double gap_opening_weight(index_t m) {
  // Weyl sequence in [-1, 1): distinct weights on every odd site.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  const double x = static_cast<double>(m + 1) * g;
  return 2.0 * (x - std::floor(x)) - 1.0;
}

GapOpenResult open_gaps(const VerblunskyWord& word, double budget, const GapOpenOptions& options) {
  if (!(budget > 0.0)) throw Error(ErrorCode::Config, "gap-opening budget must be positive");
  const double tol = options.bands.edge_tol;
  BandList base = band_list(word, options.bands);
  if (all_gaps_open(base, word.q(), tol)) {
    const double g = min_gap(base);
    return {word, 0.0, 0, word.q(), g, std::move(base)};
  }
  double t = budget;
  std::size_t best_open = base.gaps.size();
  for (int rung = 0; rung < options.ladder_depth; ++rung, t *= 0.5) {
    for (int s : {1, -1}) {
      VerblunskyWord w = perturb_odd_phases(word, s * t);
      BandList b = band_list(w, options.bands);
      if (all_gaps_open(b, word.q(), tol)) {
        const double g = min_gap(b);
        return {std::move(w), t, s, word.q(), g, std::move(b)};
      }
      best_open = std::max(best_open, b.gaps.size());
    }
  }
  throw Error(ErrorCode::GapOpeningFailed, "no ladder rung opened all " + std::to_string(word.q()) +
                                               " gaps; best rung had " + std::to_string(best_open) +
                                               " open, smallest step " + fmt(2.0 * t));
}

VerblunskyWord rotate_spectrum(const VerblunskyWord& word, double phi) {
  if (phi == 0.0) return word;
  std::vector<VerblunskyPair> pairs = word.pairs();
  for (std::size_t n = 0; n < pairs.size(); n += 2) pairs[n].lambda_arg += phi;
  return VerblunskyWord(std::move(pairs), word.r());
}

CoverParameters cover_parameters(const BandList& bands, double delta, CoverRule rule) {
  CoverParameters p;
  p.min_gap = min_gap(bands);
  p.max_band = max_band(bands);
  p.gamma = std::min(delta / 6.0, p.min_gap / 2.0);
  if (rule == CoverRule::Analytic) {
    if (!(p.max_band < delta / 6.0)) {
      throw Error(ErrorCode::CoverCertificationFailed,
                  "band of length " + fmt(p.max_band) + " is not shorter than delta/6");
    }
    p.k = static_cast<index_t>(std::ceil(delta / (6.0 * p.gamma)));
  } else {
    p.k = static_cast<index_t>(std::floor(p.max_band / (2.0 * p.gamma))) + 1;
  }
  if (static_cast<double>(p.k) * p.gamma > delta / 2.0) {
    throw Error(ErrorCode::CoverCertificationFailed,
                "rotation range " + fmt(static_cast<double>(p.k) * p.gamma) + " exceeds delta/2");
  }
  return p;
}

CoverFamily cover_family(const VerblunskyWord& base, double delta, const CoverOptions& options,
                         index_t seed_period, index_t n_prime) {
  if (!(delta > 0.0)) throw Error(ErrorCode::Config, "delta must be positive");
  const BandList bl = band_list(base, options.bands);
  if (!all_gaps_open(bl, base.q(), options.bands.edge_tol)) {
    throw Error(ErrorCode::CoverCertificationFailed, "base word does not have all gaps open");
  }
  CoverFamily fam;
  fam.seed_period = seed_period > 0 ? seed_period : base.q();
  fam.n_prime = n_prime;
  if (fam.seed_period * fam.n_prime != base.q()) {
    throw Error(ErrorCode::Config, "seed period times repetition differs from the base period");
  }
  const CoverParameters p = cover_parameters(bl, delta, options.rule);
  fam.min_gap = p.min_gap;
  fam.max_band = p.max_band;
  fam.gamma = p.gamma;
  fam.k = p.k;
  for (index_t j = -fam.k; j <= fam.k; ++j) {
    fam.members.push_back(rotate_spectrum(base, static_cast<double>(j) * fam.gamma));
  }

  std::vector<std::vector<std::pair<double, double>>> spectra(fam.members.size());
  parallel_for(fam.members.size(), [&](std::size_t m) {
    spectra[m] = unwrap_bands(band_list(fam.members[m], options.bands));
  });
  index_t grid = options.grid;
  const double wanted = 8.0 * kPi / fam.gamma;
  while (static_cast<double>(grid) < wanted && grid < (index_t{1} << 22)) grid *= 2;
  index_t bad = count_uncovered(spectra, grid);
  if (bad > 0) {
    grid *= 4;
    bad = count_uncovered(spectra, grid);
  }
  fam.certification_grid = grid;
  if (bad > 0) {
    throw Error(ErrorCode::CoverCertificationFailed,
                std::to_string(bad) + " grid points lie in every member spectrum");
  }
  return fam;
}

ConcatenationLayout concatenation_layout(index_t ell, index_t n_prime, index_t q, index_t n) {
  if (ell < 1 || n_prime < 1 || q < 1) throw Error(ErrorCode::Config, "layout sizes must be positive");
  if (n <= 4 * ell * n_prime) {
    throw Error(ErrorCode::NTooSmall,
                "n = " + std::to_string(n) + " must exceed 4 l n' = " + std::to_string(4 * ell * n_prime));
  }
  ConcatenationLayout out;
  out.repeats = n / (ell * n_prime);
  for (index_t j = 0; j < ell; ++j) out.starts.push_back(j * out.repeats * n_prime * q);
  out.starts.push_back(n * q);
  return out;
}

VerblunskyWord concatenate_cover(const CoverFamily& family, index_t n) {
  if (family.members.empty()) throw Error(ErrorCode::Config, "empty cover family");
  const index_t q = family.seed_period;
  const ConcatenationLayout layout = concatenation_layout(family.size(), family.n_prime, q, n);
  std::vector<VerblunskyPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n * q));
  for (std::size_t j = 0; j < family.members.size(); ++j) {
    const VerblunskyWord& w = family.members[j];
    for (index_t m = layout.starts[j]; m < layout.starts[j + 1]; ++m) pairs.push_back(w.at(m));
  }
  return VerblunskyWord(std::move(pairs), family.members.front().r());
}

double cover_lyapunov_min(const CoverFamily& family, index_t grid) {
  std::vector<TransferEvaluator> evs;
  evs.reserve(family.members.size());
  for (const auto& m : family.members) evs.emplace_back(m);
  const std::vector<double> taus = uniform_tau_grid(static_cast<std::size_t>(grid));
  std::vector<double> best(taus.size(), 0.0);
  parallel_for(taus.size(), [&](std::size_t i) {
    double b = 0.0;
    for (const auto& ev : evs) b = std::max(b, lyapunov_on_circle(ev, taus[i]));
    best[i] = b;
  });
  return *std::min_element(best.begin(), best.end());
}

index_t minimal_multiplier(index_t ell, index_t n_prime) { return 4 * ell * n_prime + 1; }

RefinementPlan plan_refinement(const VerblunskyWord& word, double delta, const RefineOptions& options) {
  if (!(delta > 0.0)) throw Error(ErrorCode::Config, "delta must be positive");
  const index_t q = word.q();
  const index_t analytic_n = analytic_repetition(delta, q);
  // A cover has at least three members, so the output period is at least (12 n' + 1) q.
  auto check_cap = [&](index_t n_prime) {
    if (minimal_multiplier(3, n_prime) * q > options.qcap) {
      throw Error(ErrorCode::ScheduleInfeasible,
                  "n' = " + std::to_string(n_prime) + " forces an output period of at least " +
                      std::to_string(minimal_multiplier(3, n_prime) * q) + ", above the cap " +
                      std::to_string(options.qcap));
    }
  };

  std::optional<GapOpenResult> opened;
  index_t n_prime = analytic_n;
  if (options.repetition == RepetitionRule::Analytic) {
    check_cap(n_prime);
    opened = open_gaps(word.repeated(n_prime), delta / 2.0, options.gaps);
  } else {
    for (index_t m = 1; m <= analytic_n; ++m) {
      check_cap(m);
      try {
        GapOpenResult g = open_gaps(word.repeated(m), delta / 2.0, options.gaps);
        if (max_band(g.bands) < delta / 6.0 || m == analytic_n) {
          n_prime = m;
          opened = std::move(g);
          break;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GapOpeningFailed || m == analytic_n) throw;
      }
    }
  }

  const CoverParameters cp = cover_parameters(opened->bands, delta, options.cover.rule);
  const index_t ell = 2 * cp.k + 1;
  const index_t n_min = minimal_multiplier(ell, n_prime);
  if (static_cast<double>(n_min) * static_cast<double>(q) > static_cast<double>(options.qcap)) {
    throw Error(ErrorCode::ScheduleInfeasible,
                "n' = " + std::to_string(n_prime) + " and l = " + std::to_string(ell) + " (min gap " +
                    fmt(cp.min_gap) + ", longest band " + fmt(cp.max_band) +
                    ") force an output period of at least " + std::to_string(n_min * q) + ", above the cap " +
                    std::to_string(options.qcap));
  }
  RefinementPlan plan{cover_family(opened->word, delta, options.cover, q, n_prime), opened->eps_used,
                      opened->sign, 0.0, 0.0};
  plan.eta_grid_min = cover_lyapunov_min(plan.family, options.eta_grid);
  if (!(plan.eta_grid_min > 0.0)) {
    throw Error(ErrorCode::EtaNonPositive, "grid minimum of the cover Lyapunov exponent is " +
                                               fmt(plan.eta_grid_min));
  }
  plan.eta = plan.eta_grid_min * (1.0 - options.eta_margin);
  return plan;
}

RefinementCertificate finish_refinement(const VerblunskyWord& word, double delta, const RefinementPlan& plan,
                                        index_t n, const RefineOptions& options) {
  const CoverFamily& fam = plan.family;
  const index_t ell = fam.size();
  if (n == 0) n = minimal_multiplier(ell, fam.n_prime);
  const index_t q = word.q();
  if (n > 4 * ell * fam.n_prime && n * q > options.qcap) {
    throw Error(ErrorCode::ScheduleInfeasible, "output period " + std::to_string(n * q) +
                                                   " exceeds the cap " + std::to_string(options.qcap) +
                                                   " (n' = " + std::to_string(fam.n_prime) +
                                                   ", l = " + std::to_string(ell) + ")");
  }

  RefinementCertificate cert;
  cert.word = concatenate_cover(fam, n);
  cert.seed_period = q;
  cert.n_prime = fam.n_prime;
  cert.n = n;
  cert.ell = ell;
  cert.k = fam.k;
  cert.gamma = fam.gamma;
  cert.min_gap = fam.min_gap;
  cert.max_band = fam.max_band;
  cert.gap_eps = plan.gap_eps;
  cert.gap_sign = plan.gap_sign;
  cert.eta_grid_min = plan.eta_grid_min;
  cert.eta = plan.eta;
  cert.c = plan.eta / (4.0 * static_cast<double>(ell));

  cert.bands = band_list(cert.word, options.output_bands);
  cert.leb = cert.bands.measure();
  cert.band_count = static_cast<index_t>(cert.bands.bands.size());
  const double nq = static_cast<double>(n * q);
  cert.log_bound = std::log(4.0 * kPi * nq) - nq * cert.eta / (2.0 * static_cast<double>(ell));
  cert.bound = std::exp(cert.log_bound);
  cert.exp_bound = std::exp(-cert.c * nq);
  cert.certified = cert.leb <= 0.0 || std::log(cert.leb) <= cert.log_bound;
  cert.below_exp_bound = cert.leb <= cert.exp_bound;
  cert.distance = cert.word.distance(word);
  if (cert.distance > delta * (1.0 + 1e-12)) {
    throw Error(ErrorCode::CoverCertificationFailed,
                "refined word is " + fmt(cert.distance) + " from its input, above delta");
  }
  return cert;
}

RefinementCertificate thin_refine(const VerblunskyWord& word, double delta, index_t n,
                                  const RefineOptions& options) {
  const RefinementPlan plan = plan_refinement(word, delta, options);
  return finish_refinement(word, delta, plan, n, options);
}

std::string to_string(TowerMode mode) {
  switch (mode) {
    case TowerMode::ZeroMeasure: return "zero_measure";
    case TowerMode::ZeroHausdorff: return "zero_hausdorff";
    case TowerMode::Olhc: return "olhc";
  }
  return "unknown";
}

TowerMode tower_mode_from_string(const std::string& name) {
  if (name == "zero_measure") return TowerMode::ZeroMeasure;
  if (name == "zero_hausdorff") return TowerMode::ZeroHausdorff;
  if (name == "olhc") return TowerMode::Olhc;
  throw Error(ErrorCode::Config, "unknown tower mode '" + name + "'");
}

double ModulusFunction::h(double d) const {
  if (!(d > 0.0)) return 0.0;
  if (d >= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(std::log(1.0 / d), -power);
}

double ModulusFunction::g(double d) const {
  if (!(d > 0.0)) return 0.0;
  if (d >= 1.0) return std::numeric_limits<double>::infinity();
  return h(d) * std::log(1.0 / d);
}

bool ModulusFunction::vanishes_faster_than_log(int decades, double tol) const {
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= decades; ++k) {
    const double v = g(std::pow(10.0, -k));
    if (!(v < prev)) return false;
    prev = v;
  }
  return prev < tol;
}

namespace {

TowerLevel record_level(index_t level, double eps, double eps_sum, const RefinementCertificate& cert,
                        const VerblunskyWord& seed) {
  TowerLevel rec;
  rec.level = level;
  rec.q = cert.word.q();
  rec.eps = eps;
  rec.leb = cert.leb;
  rec.c = cert.c;
  rec.eps_sum = eps_sum;
  rec.distance_to_seed = cert.word.distance(seed);
  rec.distance_to_previous = cert.distance;
  for (double s : kHausdorffExponents) {
    double sum = 0.0;
    for (const auto& b : cert.bands.bands) sum += std::pow(b.length(), s);
    rec.hausdorff_content.push_back(sum);
  }
  rec.certificate = cert;
  return rec;
}

}  // namespace

TowerResult build_tower(const TowerSchedule& schedule, int depth, const TowerCallbacks& callbacks) {
  if (depth < 1) throw Error(ErrorCode::Config, "tower depth must be at least 1");
  if (!(schedule.eps0 > 0.0)) throw Error(ErrorCode::Config, "eps0 must be positive");
  if (schedule.mode == TowerMode::Olhc && !schedule.h.vanishes_faster_than_log()) {
    throw Error(ErrorCode::Config, "h(d) log(1/d) does not vanish on the decade grid");
  }
  const RefineOptions& ro = schedule.refine;
  TowerResult out;
  VerblunskyWord current = schedule.seed;
  double eps_prev = schedule.eps0;
  double leb_prev = band_list(current, ro.output_bands).measure();
  double eps_sum = 0.0;

  for (int level = 1; level <= depth; ++level) {
    const auto q_prev = static_cast<double>(current.q());
    double eps = schedule.eps0 / 2.0;
    if (level > 1) {
      switch (schedule.mode) {
        case TowerMode::ZeroMeasure: eps = std::min(eps_prev / 2.0, leb_prev / (2.0 * q_prev)); break;
        case TowerMode::ZeroHausdorff:
          eps = std::min({eps_prev / 2.0, 0.5 * std::pow(static_cast<double>(level), -q_prev), leb_prev / 4.0});
          break;
        case TowerMode::Olhc: eps = std::min(eps_prev / 2.0, leb_prev / 3.0); break;
      }
    }
    if (!(eps > 0.0)) {
      throw Error(ErrorCode::ScheduleInfeasible,
                  "level " + std::to_string(level) + ": eps underflows to zero");
    }
    if (eps / 6.0 < kBandResolutionFloor) {
      throw Error(ErrorCode::ScheduleInfeasible, "level " + std::to_string(level) + ": eps = " + fmt(eps) +
                                                     " needs bands below " + fmt(eps / 6.0) +
                                                     ", under the double-precision band floor");
    }
    RefinementPlan plan;
    try {
      plan = plan_refinement(current, eps, ro);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ScheduleInfeasible) throw;
      throw Error(ErrorCode::ScheduleInfeasible,
                  "level " + std::to_string(level) + " (eps = " + fmt(eps) + "): " + e.what());
    }
    const index_t ell = plan.family.size();
    index_t n = minimal_multiplier(ell, plan.family.n_prime);
    if (schedule.mode == TowerMode::Olhc) {
      // g(exp(-c q)) = (c q)^{1 - p} <= c / (2 level)
      const double c = plan.eta / (4.0 * static_cast<double>(ell));
      const double p = schedule.h.power;
      const double q_needed = std::pow(2.0 * level / c, 1.0 / (p - 1.0)) / c;
      const double n_needed = std::ceil(q_needed / q_prev);
      if (n_needed > static_cast<double>(ro.qcap)) {
        throw Error(ErrorCode::ScheduleInfeasible, "level " + std::to_string(level) +
                                                       ": modulus condition needs period " + fmt(q_needed));
      }
      n = std::max(n, static_cast<index_t>(n_needed));
    }
    RefinementCertificate cert;
    for (;;) {
      try {
        cert = finish_refinement(current, eps, plan, n, ro);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ScheduleInfeasible) throw;
        throw Error(ErrorCode::ScheduleInfeasible,
                    "level " + std::to_string(level) + " (eps = " + fmt(eps) + "): " + e.what());
      }
      if (schedule.mode != TowerMode::ZeroHausdorff) break;
      if (cert.leb < std::exp(-std::sqrt(static_cast<double>(cert.word.q())))) break;
      n *= 2;
    }
    eps_sum += eps;
    TowerLevel rec = record_level(level, eps, eps_sum, cert, schedule.seed);
    if (schedule.mode == TowerMode::ZeroHausdorff) {
      rec.schedule_condition = cert.leb < std::exp(-std::sqrt(static_cast<double>(rec.q)));
    } else if (schedule.mode == TowerMode::Olhc) {
      rec.schedule_condition = schedule.h.g(std::exp(-cert.c * static_cast<double>(rec.q))) <=
                               cert.c / (2.0 * level);
    }
    if (callbacks.on_level) callbacks.on_level(rec);
    current = cert.word;
    eps_prev = eps;
    leb_prev = cert.leb;
    out.words.push_back(current);
    out.levels.push_back(std::move(rec));
  }
  if (schedule.mode == TowerMode::Olhc) out.witnesses = olhc_witnesses(out, schedule.h);
  return out;
}

std::vector<OlhcWitness> olhc_witnesses(const TowerResult& tower, const ModulusFunction& h) {
  std::vector<OlhcWitness> out;
  if (tower.levels.size() < 2) return out;
  const VerblunskyWord& last = tower.words.back();
  const BandList& last_bands = tower.levels.back().certificate.bands;
  if (last_bands.bands.empty()) return out;
  const TransferEvaluator ev(last);
  const double tau_inf = wrap_angle(last_bands.bands.front().left);
  auto arc_between = [](double from, double to) {
    const double l = wrap_angle(from);
    return Arc{l, l + wrap_angle(to - from)};
  };
  for (std::size_t i = 0; i + 1 < tower.levels.size(); ++i) {
    const BandList& bl = tower.levels[i].certificate.bands;
    const double eps_next = tower.levels[i + 1].eps;
    // Band of this level containing the limit point, else the nearest one.
    const Arc* band = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : bl.bands) {
      if (b.contains(tau_inf)) {
        band = &b;
        break;
      }
      const double d = std::min(wrap_angle(b.left - tau_inf), wrap_angle(tau_inf - b.right));
      if (d < best) {
        best = d;
        band = &b;
      }
    }
    if (band == nullptr) continue;
    OlhcWitness w;
    w.level = tower.levels[i].level;
    w.tau_limit = tau_inf;
    const double left = band->left - kPi * eps_next;
    const double right = band->right + kPi * eps_next;
    const double m_left = dos_measure(ev, last_bands, arc_between(left, tau_inf));
    const double m_right = dos_measure(ev, last_bands, arc_between(tau_inf, right));
    w.tau_witness = wrap_angle(m_left >= m_right ? left : right);
    w.mass = std::max(m_left, m_right);
    w.chord = std::abs(std::polar(1.0, tau_inf) - std::polar(1.0, w.tau_witness));
    const double hv = h.h(w.chord);
    w.ratio = hv > 0.0 ? w.mass / hv : std::numeric_limits<double>::infinity();
    out.push_back(w);
  }
  return out;
}

}  // namespace cmvspec
