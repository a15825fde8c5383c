#include "cmvspec/bands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "cmvspec/parallel.hpp"

namespace cmvspec {

double wrap_angle(double tau) {
  double t = std::fmod(tau, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

bool Arc::contains(double tau) const { return offset(tau) <= length() || length() >= kTwoPi; }

double BandList::measure() const {
  double s = 0.0;
  for (const auto& b : bands) s += b.length();
  return std::min(s, kTwoPi);
}

bool BandList::contains(double tau) const {
  return std::any_of(bands.begin(), bands.end(), [&](const Arc& a) { return a.contains(tau); });
}

std::optional<std::size_t> BandList::find_piece(double tau) const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].arc.contains(tau)) return i;
  }
  return std::nullopt;
}

double BandList::edge_distance(double tau) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) {
    for (double e : {p.arc.left, p.arc.right}) {
      const double d = std::abs(wrap_angle(tau - e));
      best = std::min({best, d, kTwoPi - d});
    }
  }
  return best;
}

namespace {

int sgn(double x) { return x < 0.0 ? -1 : 1; }

// Root of f on [a, b] given f(a), f(b) of opposite sign.
template <class F>
double bracket_root(F f, double a, double b, double fa, double fb) {
  if (!std::isfinite(a) || !std::isfinite(b) || std::isnan(fa) || std::isnan(fb) || a > b) {
    throw Error(ErrorCode::RootBracketFailure, "bad bracket");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw Error(ErrorCode::RootBracketFailure, "root not bracketed");
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                   boost::math::tools::eps_tolerance<double>(52), iters);
  const double lo = r.first;
  const double hi = r.second;
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

struct GapScan {
  double left;
  double right;
  double extreme;  // s * Delta at the critical point
  int sign;
  bool open;
};

}  // namespace

BandList band_list(const VerblunskyWord& word, const BandOptions& options) {
  const TransferEvaluator ev(word);
  const index_t q = word.q();
  index_t n = std::max<index_t>({options.grid_size, 8 * q, 64});
  auto node = [&n](std::size_t i) { return kTwoPi * static_cast<double>(i) / static_cast<double>(n); };

  std::vector<double> vals;
  std::vector<std::size_t> cells;
  for (;;) {
    if (n > options.max_grid) {
      throw Error(ErrorCode::GridTooCoarse,
                  "could not resolve " + std::to_string(q) + " zeros of the discriminant (" +
                      std::to_string(cells.size()) + " sign changes at grid " + std::to_string(n / 2) + ")");
    }
    vals.assign(static_cast<std::size_t>(n), 0.0);
    parallel_for(vals.size(), [&](std::size_t i) { vals[i] = ev.discriminant(node(i)); });
    cells.clear();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (sgn(vals[i]) != sgn(vals[(i + 1) % vals.size()])) cells.push_back(i);
    }
    if (static_cast<index_t>(cells.size()) == q) break;
    n *= 2;
  }

  // Roots are bracketed on sign(x) log(1 + |x|) of Delta and Delta', which
  // stays finite and strictly monotone where Delta itself saturates.
  auto delta = [&](double t) { return ev.discriminant(t); };
  auto cdelta = [&](double t) { return ev.compressed_discriminant(t); };
  auto cderiv = [&](double t) { return ev.compressed_derivative(t); };
  std::vector<double> zeros(cells.size());
  parallel_for(cells.size(), [&](std::size_t k) {
    const std::size_t i = cells[k];
    const double a = node(i);
    const double b = node(i + 1);
    zeros[k] = bracket_root(cdelta, a, b, cdelta(a), cdelta(b));
  });

  const double log3 = std::log(3.0);
  std::vector<GapScan> gaps(cells.size());
  parallel_for(cells.size(), [&](std::size_t k) {
    const double a = zeros[k];
    double b = zeros[(k + 1) % zeros.size()];
    if (k + 1 == zeros.size()) b += kTwoPi;
    const int s = sgn(vals[(cells[k] + 1) % vals.size()]);
    const double da = cderiv(a);
    const double db = cderiv(b);
    double c = 0.5 * (a + b);
    if (sgn(da) != sgn(db)) c = bracket_root(cderiv, a, b, da, db);
    const double ext = s * delta(c);
    GapScan g{c, c, ext, s, ext > 2.0 + options.touch_tol};
    if (g.open) {
      // s Delta = 2  <=>  s cdelta = log 3
      auto f = [&](double t) { return s * cdelta(t) - log3; };
      const double fc = f(c);
      const double fa = f(a);
      const double fb = f(b);
      // a band narrower than an ulp: the edge is the zero itself
      g.left = fa < 0.0 ? bracket_root(f, a, c, fa, fc) : a;
      g.right = fb < 0.0 ? bracket_root(f, c, b, fc, fb) : b;
    }
    gaps[k] = g;
  });

  BandList out;
  out.grid_used = n;
  const std::size_t m = gaps.size();
  for (std::size_t k = 0; k < m; ++k) {
    const GapScan& prev = gaps[(k + m - 1) % m];
    const GapScan& cur = gaps[k];
    double left = prev.right;
    if (k == 0) left -= kTwoPi;
    BandPiece p;
    p.arc = {wrap_angle(left), wrap_angle(left) + std::max(0.0, cur.left - left)};
    p.sign_left = prev.sign;
    out.pieces.push_back(p);
  }
  for (const auto& g : gaps) {
    if (g.open) {
      out.gaps.push_back({wrap_angle(g.left), wrap_angle(g.left) + (g.right - g.left)});
      out.edge_residuals.push_back(std::abs(delta(g.left)) - 2.0);
      out.edge_residuals.push_back(std::abs(delta(g.right)) - 2.0);
    } else {
      out.touch_points.push_back(wrap_angle(g.left));
    }
  }
  // Merge pieces across closed gaps, starting after an open gap.
  std::size_t start = 0;
  bool any_open = false;
  for (std::size_t k = 0; k < m; ++k) {
    if (gaps[k].open) {
      start = (k + 1) % m;
      any_open = true;
      break;
    }
  }
  if (!any_open) {
    const double l = out.pieces[0].arc.left;
    out.bands.push_back({l, l + kTwoPi});
    return out;
  }
  for (std::size_t i = 0; i < m;) {
    const std::size_t k0 = (start + i) % m;
    Arc band = out.pieces[k0].arc;
    std::size_t k = k0;
    ++i;
    while (!gaps[k].open && i < m) {
      k = (start + i) % m;
      band.right = band.left + band.length() + out.pieces[k].arc.length();
      ++i;
    }
    out.bands.push_back(band);
  }
  std::sort(out.bands.begin(), out.bands.end(),
            [](const Arc& x, const Arc& y) { return x.left < y.left; });
  std::sort(out.gaps.begin(), out.gaps.end(), [](const Arc& x, const Arc& y) { return x.left < y.left; });
  return out;
}

BandList band_list(const VerblunskyWord& word, index_t grid_size, double edge_tol) {
  BandOptions o;
  o.grid_size = grid_size;
  o.edge_tol = edge_tol;
  return band_list(word, o);
}

double rotation_angle(const VerblunskyWord& word, double tau) {
  const double d = discriminant_on_circle(word, tau);
  if (std::abs(d) > 2.0 + 1e-9) {
    throw Error(ErrorCode::OutsideBand, "|Delta| = " + std::to_string(std::abs(d)) + " > 2");
  }
  return std::acos(std::clamp(0.5 * d, -1.0, 1.0));
}

double piece_theta(const TransferEvaluator& ev, const BandPiece& piece, double tau) {
  const double off = piece.arc.offset(tau);
  if (off <= 0.0) return piece.theta_left();
  if (off >= piece.arc.length()) return piece.theta_right();
  const double d = ev.discriminant(piece.arc.left + off);
  return std::acos(std::clamp(0.5 * d, -1.0, 1.0));
}

double solve_level_in_piece(const TransferEvaluator& ev, const BandPiece& piece, double level) {
  const double a = piece.arc.left;
  const double b = piece.arc.right;
  const double fa = 2.0 * piece.sign_left - level;
  const double fb = -2.0 * piece.sign_left - level;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (sgn(fa) == sgn(fb)) {
    throw Error(ErrorCode::RootBracketFailure,
                "level " + std::to_string(level) + " not bracketed on a band piece");
  }
  return bracket_root([&](double t) { return ev.discriminant(t) - level; }, a, b, fa, fb);
}

std::vector<CirclePoint> periodic_restriction_spectrum(const VerblunskyWord& word, index_t n,
                                                       const BandList& bands) {
  if (n < 1) throw Error(ErrorCode::Config, "n must be positive");
  const TransferEvaluator ev(word);
  std::vector<CirclePoint> out;
  for (index_t j = 0; 2 * j <= n; ++j) {
    const bool end_level = (j == 0) || (2 * j == n);
    if (end_level) {
      // Delta = +2 (j = 0) or -2 (j = n/2): one endpoint per piece; touch
      // points are shared by two pieces and carry a double eigenvalue.
      const int target = (j == 0) ? 1 : -1;
      for (const auto& p : bands.pieces) {
        if (p.sign_left == target) out.push_back({wrap_angle(p.arc.left), 1});
        else out.push_back({wrap_angle(p.arc.right), 1});
      }
      continue;
    }
    const double level = 2.0 * std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    for (const auto& p : bands.pieces) {
      out.push_back({wrap_angle(solve_level_in_piece(ev, p, level)), 2});
    }
  }
  std::sort(out.begin(), out.end(), [](const CirclePoint& x, const CirclePoint& y) { return x.tau < y.tau; });
  // Merge coincident endpoints (touch points) into one double point.
  std::vector<CirclePoint> merged;
  for (const auto& p : out) {
    if (!merged.empty() && p.multiplicity == 1 && merged.back().multiplicity == 1 &&
        std::abs(p.tau - merged.back().tau) <= 1e-12) {
      merged.back().multiplicity = 2;
    } else {
      merged.push_back(p);
    }
  }
  if (merged.size() > 1 && merged.front().multiplicity == 1 && merged.back().multiplicity == 1 &&
      kTwoPi - merged.back().tau + merged.front().tau <= 1e-12) {
    merged.front().multiplicity = 2;
    merged.pop_back();
  }
  return merged;
}

std::vector<CirclePoint> periodic_restriction_spectrum(const VerblunskyWord& word, index_t n) {
  return periodic_restriction_spectrum(word, n, band_list(word));
}

std::vector<double> expand_multiplicity(const std::vector<CirclePoint>& points) {
  std::vector<double> out;
  for (const auto& p : points) {
    for (int i = 0; i < p.multiplicity; ++i) out.push_back(p.tau);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cmvspec
