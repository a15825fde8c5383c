#include "cmvspec/dos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmvspec/parallel.hpp"
#include "cmvspec/quadrature.hpp"

namespace cmvspec {

namespace {

// Fixed points xi_{2l} of all even-shift monodromies at e^{i tau}.
std::vector<DiskPoint> shift_fixed_points(const VerblunskyWord& word, double tau) {
  const auto z = SpectralParameter::on_circle(tau);
  const std::vector<Mat2C> phis = all_shifted_monodromies(word, z);
  const double delta = phis.front().trace().real();
  if (std::abs(delta) > 2.0) {
    throw Error(ErrorCode::OutsideBand, "tau = " + std::to_string(tau) + " lies in a gap");
  }
  std::vector<DiskPoint> out;
  out.reserve(phis.size());
  try {
    for (const auto& p : phis) out.push_back(elliptic_fixed_point(p));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotElliptic) {
      throw Error(ErrorCode::NearEdge, "monodromy not elliptic at tau = " + std::to_string(tau));
    }
    throw;
  }
  return out;
}

double itrace_sum(const VerblunskyWord& word, double tau, const std::vector<DiskPoint>& xi) {
  const auto z = SpectralParameter::on_circle(tau);
  double s = 0.0;
  for (std::size_t l = 0; l < xi.size(); ++l) {
    const LieCoords c = t_inv_dt_coords(word, 2 * static_cast<index_t>(l), z);
    s += itrace_conjugated_su11lie(xi[l], c.w, c.z);
  }
  return s;
}

double numeric_density(const TransferEvaluator& ev, double tau, double h) {
  auto central = [&](double step) {
    return (ev.discriminant(tau + step) - ev.discriminant(tau - step)) / (2.0 * step);
  };
  const double d1 = central(h);
  const double d2 = central(0.5 * h);
  const double dprime = (4.0 * d2 - d1) / 3.0;
  const double delta = ev.discriminant(tau);
  const double denom = std::sqrt(std::max(0.0, 4.0 - delta * delta));
  return std::abs(dprime) / denom / (kPi * static_cast<double>(ev.q()));
}

// Density from the analytic dDelta/dtau; used where the elliptic
// classification margin is too tight for fixed points.
double analytic_density(const TransferEvaluator& ev, double tau) {
  const auto [delta, dprime] = ev.discriminant_and_derivative(tau);
  const double denom = std::sqrt(std::max(0.0, 4.0 - delta * delta));
  if (denom == 0.0) return 0.0;
  return std::abs(dprime) / denom / (kPi * static_cast<double>(ev.q()));
}

}  // namespace

double dos_density(const VerblunskyWord& word, const BandList& bands, double tau, DosRoute route) {
  if (route == DosRoute::ITrace) {
    const auto xi = shift_fixed_points(word, tau);
    return std::abs(itrace_sum(word, tau, xi)) / (kPi * static_cast<double>(word.q()));
  }
  const TransferEvaluator ev(word);
  if (std::abs(ev.discriminant(tau)) > 2.0 || !bands.contains(tau)) {
    throw Error(ErrorCode::OutsideBand, "tau = " + std::to_string(tau) + " lies in a gap");
  }
  const double dist = bands.edge_distance(tau);
  const double h = std::min(1e-5, dist / 8.0);
  if (h < 1e-9) throw Error(ErrorCode::NearEdge, "tau within " + std::to_string(dist) + " of an edge");
  return numeric_density(ev, tau, h);
}

double dos_density(const VerblunskyWord& word, double tau, DosRoute route) {
  if (route == DosRoute::ITrace) return dos_density(word, BandList{}, tau, route);
  return dos_density(word, band_list(word), tau, route);
}

DosSample dos_sample(const VerblunskyWord& word, double tau) {
  const auto xi = shift_fixed_points(word, tau);
  const double pq = kPi * static_cast<double>(word.q());
  DosSample s;
  s.density = std::abs(itrace_sum(word, tau, xi)) / pq;
  for (const auto& x : xi) {
    s.lower_bound += hs_norm_sq(conjugator_from_fixed_point(x).matrix());
    s.schur_bound += 1.0 / (1.0 - x.abs2());
  }
  s.lower_bound /= 4.0 * pq;
  s.schur_bound /= pq;
  return s;
}

double dos_lower_bound(const VerblunskyWord& word, double tau) { return dos_sample(word, tau).lower_bound; }

double schur_dos_bound(const VerblunskyWord& word, double tau) { return dos_sample(word, tau).schur_bound; }

SchurSample schur_values(const VerblunskyWord& word, double tau) {
  SchurSample out;
  out.tau = tau;
  out.fixed_points = shift_fixed_points(word, tau);
  const cplx rot = std::polar(1.0, -tau);
  for (const auto& x : out.fixed_points) out.values.push_back(std::conj(x.value()) * rot);
  return out;
}

cplx schur_value_eigenvector(const VerblunskyWord& word, double tau, index_t shift, double eps) {
  const cplx z = std::polar(1.0 - eps, tau);
  const Mat2C m = shifted_monodromy(word, shift, SpectralParameter(z));
  const cplx half = 0.5 * m.trace();
  const cplx r = std::sqrt(half * half - m.det());
  const cplx mu = std::abs(half + r) <= std::abs(half - r) ? half + r : half - r;
  // (a - mu) + b (z s) = 0, or c + (d - mu)(z s) = 0; use the better conditioned row.
  const cplx zs = std::abs(m.b) >= std::abs(mu - m.d) ? (mu - m.a) / m.b : m.c / (mu - m.d);
  return zs / z;
}

std::vector<double> uniform_tau_grid(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return g;
}

DOSProfile dos_profile(const VerblunskyWord& word, const BandList& bands,
                       const std::vector<double>& tau_grid) {
  DOSProfile p;
  p.tau_grid = tau_grid;
  const std::size_t n = tau_grid.size();
  p.density.assign(n, 0.0);
  p.lower_bound.assign(n, 0.0);
  p.schur_bound.assign(n, 0.0);
  p.cdf.assign(n, 0.0);
  const TransferEvaluator ev(word);
  parallel_for(n, [&](std::size_t i) {
    const double tau = tau_grid[i];
    p.cdf[i] = dos_cdf(ev, bands, tau);
    if (!bands.contains(tau)) return;
    try {
      const DosSample s = dos_sample(word, tau);
      p.density[i] = s.density;
      p.lower_bound[i] = s.lower_bound;
      p.schur_bound[i] = s.schur_bound;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearEdge && e.code() != ErrorCode::OutsideBand) throw;
    }
  });
  // Single-owner pass: the exact cdf is monotone up to rounding; enforce it.
  for (std::size_t i = 1; i < n; ++i) p.cdf[i] = std::max(p.cdf[i], p.cdf[i - 1]);
  return p;
}

double dos_measure(const TransferEvaluator& ev, const BandList& bands, const Arc& arc) {
  if (arc.length() <= 0.0) return 0.0;
  const double pq = kPi * static_cast<double>(ev.q());
  double mass = 0.0;
  for (const auto& piece : bands.pieces) {
    const double pl = piece.arc.left;
    const double pr = piece.arc.right;
    for (int k = -1; k <= 1; ++k) {
      const double al = arc.left + kTwoPi * k;
      const double ar = arc.right + kTwoPi * k;
      const double x = std::max(al, pl);
      const double y = std::min(ar, pr);
      if (y <= x) continue;
      const double tx = (x == pl) ? piece.theta_left() : piece_theta(ev, piece, x);
      const double ty = (y == pr) ? piece.theta_right() : piece_theta(ev, piece, y);
      mass += std::abs(ty - tx) / pq;
    }
  }
  return std::min(mass, 1.0);
}

double dos_measure(const VerblunskyWord& word, const BandList& bands, const Arc& arc) {
  return dos_measure(TransferEvaluator(word), bands, arc);
}

double dos_cdf(const TransferEvaluator& ev, const BandList& bands, double tau) {
  return dos_measure(ev, bands, Arc{0.0, tau});
}

namespace {

template <class F>
auto integrate_over_piece(const VerblunskyWord& word, const TransferEvaluator& ev, const BandPiece& piece,
                          F weight, std::size_t nodes) {
  auto integrand = [&](double tau) {
    double rho = 0.0;
    try {
      const auto xi = shift_fixed_points(word, tau);
      rho = std::abs(itrace_sum(word, tau, xi)) / (kPi * static_cast<double>(word.q()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearEdge && e.code() != ErrorCode::OutsideBand) throw;
      rho = analytic_density(ev, tau);
    }
    return weight(tau) * rho;
  };
  return integrate_cosine_map(integrand, piece.arc.left, piece.arc.right, nodes);
}

}  // namespace

std::vector<double> band_masses(const VerblunskyWord& word, const BandList& bands, std::size_t nodes) {
  const TransferEvaluator ev(word);
  std::vector<double> piece_mass(bands.pieces.size());
  parallel_for(piece_mass.size(), [&](std::size_t i) {
    piece_mass[i] = integrate_over_piece(word, ev, bands.pieces[i], [](double) { return 1.0; }, nodes);
  });
  std::vector<double> out(bands.bands.size(), 0.0);
  for (std::size_t i = 0; i < bands.pieces.size(); ++i) {
    const double mid = bands.pieces[i].arc.left + 0.5 * bands.pieces[i].arc.length();
    for (std::size_t b = 0; b < bands.bands.size(); ++b) {
      if (bands.bands[b].contains(mid)) {
        out[b] += piece_mass[i];
        break;
      }
    }
  }
  return out;
}

cplx dos_moment(const VerblunskyWord& word, const BandList& bands, int k, std::size_t nodes) {
  const TransferEvaluator ev(word);
  std::vector<cplx> parts(bands.pieces.size());
  parallel_for(parts.size(), [&](std::size_t i) {
    parts[i] = integrate_over_piece(
        word, ev, bands.pieces[i], [k](double t) { return std::polar(1.0, k * t); }, nodes);
  });
  cplx s = 0.0;
  for (const auto& v : parts) s += v;
  return s;
}

}  // namespace cmvspec
