#include "cmvspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmvspec/parallel.hpp"
#include "cmvspec/quadrature.hpp"

namespace cmvspec {

ThoulessResult thouless_residual(const VerblunskyWord& word, const BandList& bands, cplx z,
                                 std::size_t nodes) {
  const TransferEvaluator ev(word);
  const bool near_circle = std::abs(std::abs(z) - 1.0) < 0.1;
  const double t0 = wrap_angle(std::arg(z));
  const double pq = kPi * static_cast<double>(word.q());
  std::vector<double> parts(bands.pieces.size(), 0.0);
  parallel_for(parts.size(), [&](std::size_t i) {
    const BandPiece& p = bands.pieces[i];
    // dnu = dtheta / (pi q) on a piece, so integrate in theta with
    // tau(theta) from the level equation Delta = 2 cos theta.
    auto f = [&](double theta) {
      const double tau = solve_level_in_piece(ev, p, 2.0 * std::cos(theta));
      return std::log(std::abs(z - std::polar(1.0, tau))) / pq;
    };
    const double off = p.arc.offset(t0);
    if (near_circle && off > 0.0 && off < p.arc.length()) {
      const double th = piece_theta(ev, p, t0);
      parts[i] = integrate_cosine_map(f, 0.0, th, nodes) + integrate_cosine_map(f, th, kPi, nodes);
    } else {
      parts[i] = integrate_cosine_map(f, 0.0, kPi, nodes);
    }
  });
  ThoulessResult r;
  for (double v : parts) r.log_potential += v;
  r.lyapunov = lyapunov(word, SpectralParameter(z));
  r.half_log_abs_z = 0.5 * std::log(std::abs(z));
  r.log_rho_inf = word.log_rho_inf();
  r.residual = r.log_potential - r.lyapunov - r.half_log_abs_z - r.log_rho_inf;
  r.nodes = nodes;
  return r;
}

namespace {
std::string format_g(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}
}  // namespace

ThoulessResult thouless_check(const VerblunskyWord& word, const BandList& bands, cplx z, double tol,
                              std::size_t max_nodes) {
  ThoulessResult prev = thouless_residual(word, bands, z, 32);
  for (std::size_t n = 64; n <= max_nodes; n *= 2) {
    ThoulessResult cur = thouless_residual(word, bands, z, n);
    if (std::abs(cur.residual - prev.residual) <= tol) return cur;
    prev = cur;
  }
  throw Error(ErrorCode::QuadratureNotConverged,
              "Thouless quadrature did not settle below " + format_g(tol));
}

CraigSimonReport craig_simon_check(const VerblunskyWord& word, const BandList& bands,
                                   const std::vector<Arc>& arcs) {
  CraigSimonReport rep;
  const double log_rho = word.log_rho_inf();
  rep.c = std::log(2.0) - log_rho;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  const TransferEvaluator ev(word);
  for (const auto& a : arcs) {
    if (!(a.length() < 0.5)) throw Error(ErrorCode::ArcTooLong, "arc length " + std::to_string(a.length()));
  }
  rep.slacks.assign(arcs.size(), 0.0);
  parallel_for(arcs.size(), [&](std::size_t i) {
    const double len = arcs[i].length();
    const double bound = len > 0.0 ? rep.c / (-std::log(len)) : 0.0;
    rep.slacks[i] = bound - dos_measure(ev, bands, arcs[i]);
  });
  for (double s : rep.slacks) rep.worst_slack = std::min(rep.worst_slack, s);
  return rep;
}

}  // namespace cmvspec
