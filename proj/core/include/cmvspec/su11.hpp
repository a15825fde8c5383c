#pragma once

// Two-by-two complex matrix algebra and the SU(1,1) pieces used by the
// transfer-matrix formalism: Moebius action on the unit disk, elliptic fixed
// points, conjugation to diagonal rotations and the iTrace functional.

#include <complex>

#include "cmvspec/error.hpp"

namespace cmvspec {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Mat2C {
  cplx a{1.0};
  cplx b{0.0};
  cplx c{0.0};
  cplx d{1.0};

  static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2C zero() { return {0.0, 0.0, 0.0, 0.0}; }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  Mat2C adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  /// Throws Error(Pole) for a numerically singular matrix.
  Mat2C inverse() const;
  double max_abs() const;
  bool finite() const;

  Mat2C& operator*=(const Mat2C& rhs);
  Mat2C& operator*=(cplx s);
  Mat2C& operator+=(const Mat2C& rhs);
  Mat2C& operator-=(const Mat2C& rhs);
};

Mat2C operator*(const Mat2C& lhs, const Mat2C& rhs);
Mat2C operator*(cplx s, const Mat2C& m);
Mat2C operator*(const Mat2C& m, cplx s);
Mat2C operator+(const Mat2C& lhs, const Mat2C& rhs);
Mat2C operator-(const Mat2C& lhs, const Mat2C& rhs);

/// Entrywise sup-norm of lhs - rhs.
double max_abs_diff(const Mat2C& lhs, const Mat2C& rhs);

/// max |(M^* J M - J)_{ij}| with J = diag(1, -1).
double j_unitarity_defect(const Mat2C& m);

/// A point of the open unit disk.
class DiskPoint {
 public:
  /// Throws Error(InvalidWord) unless |value| < 1.
  explicit DiskPoint(cplx value);
  cplx value() const { return value_; }
  double abs2() const { return std::norm(value_); }

 private:
  cplx value_;
};

/// diag(e^{i theta}, e^{-i theta}); acts on the disk as rotation by 2 theta.
struct RotationElement {
  double theta = 0.0;
  Mat2C matrix() const;
};

/// Element [[p, q], [conj q, conj p]] of SU(1,1), certified on construction.
class SU11Element {
 public:
  static constexpr double kCertificationTol = 1e-10;

  /// Rejects (Error NotSU11) when | |p|^2 - |q|^2 - 1 | exceeds the
  /// certification tolerance relative to max(1, |p|^2).
  SU11Element(cplx p, cplx q);

  /// Certifies an arbitrary matrix as an SU(1,1) member: a ~ conj d,
  /// b ~ conj c and unit determinant, all relative to the entry scale.
  static SU11Element from_matrix(const Mat2C& m);
  static SU11Element from_rotation(const RotationElement& r);

  cplx p() const { return p_; }
  cplx q() const { return q_; }
  Mat2C matrix() const { return {p_, q_, std::conj(q_), std::conj(p_)}; }
  SU11Element inverse() const { return SU11Element(std::conj(p_), -q_, Unchecked{}); }
  double trace() const { return 2.0 * p_.real(); }

  friend SU11Element operator*(const SU11Element& lhs, const SU11Element& rhs);

 private:
  struct Unchecked {};
  SU11Element(cplx p, cplx q, Unchecked) : p_(p), q_(q) {}

  cplx p_;
  cplx q_;
};

// Classification threshold: elliptic means |tr| < 2 - kEllipticMargin.
inline constexpr double kEllipticMargin = 1e-9;

/// (a z + b) / (c z + d). Throws Error(Pole) when |c z + d| vanishes.
cplx mobius_apply(const Mat2C& m, cplx z);

/// (a - d) / (2i).
cplx itrace(const Mat2C& m);

/// Itr(R^{-1} M R) evaluated through the explicit product.
cplx itrace_rotation_conjugation_invariant(const Mat2C& m, const RotationElement& r);

/// Unique fixed point in the disk of an elliptic element.
DiskPoint elliptic_fixed_point(const SU11Element& a);

/// Same, for a matrix that is J-unitary with unit determinant up to rounding
/// (monodromy products). Ellipticity is judged on Re(tr).
DiskPoint elliptic_fixed_point(const Mat2C& a);

/// M_xi = (1 - |xi|^2)^{-1/2} [[1, xi], [conj xi, 1]], which moves 0 to xi.
SU11Element conjugator_from_fixed_point(const DiskPoint& xi);

struct RotationConjugation {
  SU11Element conjugator;
  /// Signed angle with conjugator^{-1} A conjugator = R_theta; |theta| = arccos(tr/2).
  double theta;
};

RotationConjugation conjugate_to_rotation(const SU11Element& a);

/// Squared Hilbert-Schmidt norm: sum of |entry|^2.
double hs_norm_sq(const Mat2C& m);

/// Itr(M_xi^{-1} A M_xi) for A = [[i w, z], [conj z, -i w]] in su(1,1).
double itrace_conjugated_su11lie(const DiskPoint& xi, double w, cplx z);

}  // namespace cmvspec
