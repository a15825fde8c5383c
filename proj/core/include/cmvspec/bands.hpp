#pragma once

#include <optional>
#include <vector>

#include "cmvspec/transfer.hpp"

namespace cmvspec {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Reduces an angle into [0, 2 pi).
double wrap_angle(double tau);

/// Arc of the circle from left to right counterclockwise. left lies in
/// [0, 2 pi) and right may exceed 2 pi for arcs through tau = 0.
struct Arc {
  double left = 0.0;
  double right = 0.0;

  double length() const { return right - left; }
  bool contains(double tau) const;
  /// Counterclockwise offset of tau from left, in [0, 2 pi).
  double offset(double tau) const { return wrap_angle(tau - left); }
};

/// A maximal stretch on which Delta moves monotonically between 2 sign_left
/// and -2 sign_left. Every periodic word has exactly q pieces.
struct BandPiece {
  Arc arc;
  int sign_left = 1;
  /// theta at the left end: 0 when Delta = 2, pi when Delta = -2.
  double theta_left() const { return sign_left > 0 ? 0.0 : kPi; }
  double theta_right() const { return sign_left > 0 ? kPi : 0.0; }
};

struct BandOptions {
  /// Initial scan size; raised to at least 8q and doubled until every zero of
  /// Delta on the circle is resolved.
  index_t grid_size = 0;
  double edge_tol = 1e-10;
  /// A gap whose extremal |Delta| exceeds 2 by less than this is closed.
  double touch_tol = 1e-8;
  index_t max_grid = index_t{1} << 24;
};

struct BandList {
  std::vector<Arc> bands;
  std::vector<Arc> gaps;
  /// |Delta| - 2 at each open-gap edge, in gap order (left, right).
  std::vector<double> edge_residuals;
  /// Closed gaps: points where |Delta| touches 2 from inside.
  std::vector<double> touch_points;
  std::vector<BandPiece> pieces;
  index_t grid_used = 0;

  double measure() const;
  bool contains(double tau) const;
  /// Index of a piece containing tau, if any.
  std::optional<std::size_t> find_piece(double tau) const;
  /// Distance from tau to the nearest piece endpoint.
  double edge_distance(double tau) const;
};

BandList band_list(const VerblunskyWord& word, const BandOptions& options = {});
BandList band_list(const VerblunskyWord& word, index_t grid_size, double edge_tol);

/// theta = arccos(Delta / 2) in [0, pi]. Throws Error(OutsideBand) when |Delta| > 2.
double rotation_angle(const VerblunskyWord& word, double tau);

/// theta along a piece, with the exact endpoint values at the piece ends.
double piece_theta(const TransferEvaluator& ev, const BandPiece& piece, double tau);

/// Solves Delta = level inside a piece. Throws Error(RootBracketFailure).
double solve_level_in_piece(const TransferEvaluator& ev, const BandPiece& piece, double level);

struct CirclePoint {
  double tau;
  int multiplicity;
};

/// Eigenvalues of the n q periodic restriction, as angles with multiplicity.
/// Total multiplicity is n q.
std::vector<CirclePoint> periodic_restriction_spectrum(const VerblunskyWord& word, index_t n,
                                                       const BandList& bands);
std::vector<CirclePoint> periodic_restriction_spectrum(const VerblunskyWord& word, index_t n);

/// The same points with multiplicity expanded, sorted by angle in [0, 2 pi).
std::vector<double> expand_multiplicity(const std::vector<CirclePoint>& points);

}  // namespace cmvspec
