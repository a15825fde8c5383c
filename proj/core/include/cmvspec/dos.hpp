#pragma once

#include <vector>

#include "cmvspec/bands.hpp"

namespace cmvspec {

enum class DosRoute { Numeric, ITrace };

/// dnu/dtau at an interior band point. The numeric route differentiates Delta
/// by Richardson-extrapolated central differences with step
/// min(1e-5, edge_distance / 8); the itrace route sums the conjugated
/// T^{-1} dT over even shifts.
double dos_density(const VerblunskyWord& word, const BandList& bands, double tau, DosRoute route);
double dos_density(const VerblunskyWord& word, double tau, DosRoute route);

/// (1/(4 pi q)) sum_l ||M_{xi_{2l}}||_2^2.
double dos_lower_bound(const VerblunskyWord& word, double tau);

struct SchurSample {
  double tau = 0.0;
  std::vector<cplx> values;         // s_{2j}(e^{i tau})
  std::vector<DiskPoint> fixed_points;  // xi_{2j}
};

SchurSample schur_values(const VerblunskyWord& word, double tau);

/// s_{2j} from the contracting eigenvector (1, z s)^T of Phi_{2j}(z) at
/// z = (1 - eps) e^{i tau}.
cplx schur_value_eigenvector(const VerblunskyWord& word, double tau, index_t shift, double eps);

/// (1/(pi q)) sum_j 1/(1 - |s_{2j}|^2).
double schur_dos_bound(const VerblunskyWord& word, double tau);

/// density (itrace route), HS lower bound and Schur bound from one pass.
struct DosSample {
  double density = 0.0;
  double lower_bound = 0.0;
  double schur_bound = 0.0;
};
DosSample dos_sample(const VerblunskyWord& word, double tau);

struct DOSProfile {
  std::vector<double> tau_grid;
  std::vector<double> density;
  std::vector<double> cdf;
  std::vector<double> lower_bound;
  std::vector<double> schur_bound;
};

/// Samples on tau_grid (ascending, within [0, 2 pi]). Points outside the
/// bands, at touch points, or too close to an edge for the elliptic
/// classification get zero density and bounds. The cdf is exact (from theta).
DOSProfile dos_profile(const VerblunskyWord& word, const BandList& bands,
                       const std::vector<double>& tau_grid);

/// Uniform grid of n points tau_i = 2 pi (i + 1/2) / n.
std::vector<double> uniform_tau_grid(std::size_t n);

/// nu(arc), exact through theta on each piece (mass |d theta| / (pi q)).
double dos_measure(const VerblunskyWord& word, const BandList& bands, const Arc& arc);
double dos_measure(const TransferEvaluator& ev, const BandList& bands, const Arc& arc);

/// nu([0, tau]).
double dos_cdf(const TransferEvaluator& ev, const BandList& bands, double tau);

/// Integral of the itrace density over each band by cosine-mapped
/// Gauss-Legendre on every piece.
std::vector<double> band_masses(const VerblunskyWord& word, const BandList& bands,
                                std::size_t nodes = 64);

/// int e^{i k tau} dnu(tau).
cplx dos_moment(const VerblunskyWord& word, const BandList& bands, int k, std::size_t nodes = 64);

}  // namespace cmvspec
