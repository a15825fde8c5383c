#pragma once

#include <vector>

#include "cmvspec/dos.hpp"

namespace cmvspec {

struct ThoulessResult {
  double residual = 0.0;  // integral - L - (1/2) log|z| - log rho_inf
  double log_potential = 0.0;  // int log|z - w| dnu(w)
  double lyapunov = 0.0;
  double half_log_abs_z = 0.0;
  double log_rho_inf = 0.0;
  std::size_t nodes = 0;
};

/// Evaluates the Thouless identity at z with a fixed number of Gauss-Legendre
/// nodes per subinterval. The DOS integral is taken in the rotation angle
/// (dnu = dtheta / (pi q) on each piece). When z is within 0.1 of the circle
/// each piece is split at arg z, so the logarithmic peak of the kernel sits
/// at a subinterval end where the cosine map clusters nodes.
ThoulessResult thouless_residual(const VerblunskyWord& word, const BandList& bands, cplx z,
                                 std::size_t nodes);

/// Doubles the node count from 32 until successive residuals differ by less
/// than tol. Throws Error(QuadratureNotConverged) past max_nodes.
ThoulessResult thouless_check(const VerblunskyWord& word, const BandList& bands, cplx z,
                              double tol = 1e-9, std::size_t max_nodes = 4096);

struct CraigSimonReport {
  double c = 0.0;  // log(2 / rho_inf)
  double worst_slack = 0.0;
  std::vector<double> slacks;  // c / (-log Leb A) - nu(A)
};

/// Throws Error(ArcTooLong) for an arc with Leb >= 1/2.
CraigSimonReport craig_simon_check(const VerblunskyWord& word, const BandList& bands,
                                   const std::vector<Arc>& arcs);

}  // namespace cmvspec
