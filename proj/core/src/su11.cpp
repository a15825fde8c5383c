#include "cmvspec/su11.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cmvspec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Pole: return "PoleError";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::NotSU11: return "NotSU11";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::SupportTouchesBoundary: return "SupportTouchesBoundary";
    case ErrorCode::ZeroSpectralParameter: return "ZeroSpectralParameter";
    case ErrorCode::OddIndex: return "OddIndex";
    case ErrorCode::OffCircle: return "OffCircle";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::OutsideBand: return "OutsideBand";
    case ErrorCode::NearEdge: return "NearEdge";
    case ErrorCode::RootBracketFailure: return "RootBracketFailure";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::ArcTooLong: return "ArcTooLong";
    case ErrorCode::GapOpeningFailed: return "GapOpeningFailed";
    case ErrorCode::CoverCertificationFailed: return "CoverCertificationFailed";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::EtaNonPositive: return "EtaNonPositive";
    case ErrorCode::ScheduleInfeasible: return "ScheduleInfeasible";
    case ErrorCode::DegenerateCoin: return "DegenerateCoin";
    case ErrorCode::NotWalkShaped: return "NotWalkShaped";
    case ErrorCode::Config: return "ConfigError";
  }
  return "UnknownError";
}

namespace {

constexpr double kPoleTol = 1e-300;

}  // namespace

Mat2C Mat2C::inverse() const {
  const cplx det_v = det();
  if (std::abs(det_v) <= kPoleTol * std::max(1.0, max_abs() * max_abs())) {
    throw Error(ErrorCode::Pole, "singular 2x2 matrix");
  }
  const cplx inv = 1.0 / det_v;
  return {d * inv, -b * inv, -c * inv, a * inv};
}

double Mat2C::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

bool Mat2C::finite() const {
  auto ok = [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  return ok(a) && ok(b) && ok(c) && ok(d);
}

Mat2C& Mat2C::operator*=(const Mat2C& rhs) {
  *this = *this * rhs;
  return *this;
}

Mat2C& Mat2C::operator*=(cplx s) {
  a *= s;
  b *= s;
  c *= s;
  d *= s;
  return *this;
}

Mat2C& Mat2C::operator+=(const Mat2C& rhs) {
  a += rhs.a;
  b += rhs.b;
  c += rhs.c;
  d += rhs.d;
  return *this;
}

Mat2C& Mat2C::operator-=(const Mat2C& rhs) {
  a -= rhs.a;
  b -= rhs.b;
  c -= rhs.c;
  d -= rhs.d;
  return *this;
}

Mat2C operator*(const Mat2C& l, const Mat2C& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
          l.c * r.b + l.d * r.d};
}

Mat2C operator*(cplx s, const Mat2C& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
Mat2C operator*(const Mat2C& m, cplx s) { return s * m; }

Mat2C operator+(const Mat2C& lhs, const Mat2C& rhs) {
  Mat2C out = lhs;
  out += rhs;
  return out;
}

Mat2C operator-(const Mat2C& lhs, const Mat2C& rhs) {
  Mat2C out = lhs;
  out -= rhs;
  return out;
}

double max_abs_diff(const Mat2C& lhs, const Mat2C& rhs) { return (lhs - rhs).max_abs(); }

double j_unitarity_defect(const Mat2C& m) {
  const Mat2C j{1.0, 0.0, 0.0, -1.0};
  return max_abs_diff(m.adjoint() * j * m, j);
}

DiskPoint::DiskPoint(cplx value) : value_(value) {
  if (!(std::norm(value) < 1.0)) {
    throw Error(ErrorCode::InvalidWord, "disk point outside the open unit disk");
  }
}

Mat2C RotationElement::matrix() const {
  return {std::polar(1.0, theta), 0.0, 0.0, std::polar(1.0, -theta)};
}

SU11Element::SU11Element(cplx p, cplx q) : p_(p), q_(q) {
  const double scale = std::max(1.0, std::norm(p));
  const double defect = std::abs(std::norm(p) - std::norm(q) - 1.0);
  if (!(defect <= kCertificationTol * scale)) {
    throw Error(ErrorCode::NotSU11,
                "|p|^2 - |q|^2 - 1 = " + std::to_string(std::norm(p) - std::norm(q) - 1.0));
  }
}

SU11Element SU11Element::from_matrix(const Mat2C& m) {
  if (!m.finite()) throw Error(ErrorCode::NotSU11, "non-finite entries");
  const double scale = std::max(1.0, m.max_abs());
  const double tol = kCertificationTol * scale;
  if (std::abs(m.a - std::conj(m.d)) > tol || std::abs(m.b - std::conj(m.c)) > tol) {
    throw Error(ErrorCode::NotSU11, "matrix is not of the form [[p, q], [conj q, conj p]]");
  }
  if (std::abs(m.det() - 1.0) > kCertificationTol * scale * scale) {
    throw Error(ErrorCode::NotSU11, "determinant differs from 1");
  }
  // Average the redundant entries so the stored pair is the nearest symmetric one.
  return SU11Element(0.5 * (m.a + std::conj(m.d)), 0.5 * (m.b + std::conj(m.c)));
}

SU11Element SU11Element::from_rotation(const RotationElement& r) {
  return SU11Element(std::polar(1.0, r.theta), 0.0, Unchecked{});
}

SU11Element operator*(const SU11Element& lhs, const SU11Element& rhs) {
  const cplx p = lhs.p_ * rhs.p_ + lhs.q_ * std::conj(rhs.q_);
  const cplx q = lhs.p_ * rhs.q_ + lhs.q_ * std::conj(rhs.p_);
  return SU11Element(p, q, SU11Element::Unchecked{});
}

cplx mobius_apply(const Mat2C& m, cplx z) {
  const cplx den = m.c * z + m.d;
  if (std::abs(den) <= 1e-14 * std::max(1.0, m.max_abs())) {
    throw Error(ErrorCode::Pole, "cz + d vanishes");
  }
  return (m.a * z + m.b) / den;
}

cplx itrace(const Mat2C& m) { return (m.a - m.d) / (2.0 * kI); }

cplx itrace_rotation_conjugation_invariant(const Mat2C& m, const RotationElement& r) {
  const Mat2C rm = r.matrix();
  const Mat2C rinv = RotationElement{-r.theta}.matrix();
  return itrace(rinv * m * rm);
}

DiskPoint elliptic_fixed_point(const Mat2C& m) {
  const double tr = m.trace().real();
  if (!(std::abs(tr) < 2.0 - kEllipticMargin)) {
    throw Error(ErrorCode::NotElliptic, "|tr| = " + std::to_string(std::abs(tr)));
  }
  // Fixed points solve c x^2 + (d - a) x - b = 0. The disk root is the
  // smaller one; write it as -2b / ((a - d) + s r) with the sign s chosen to
  // avoid cancellation, which reduces to b / (d - a) as c -> 0.
  const cplx amd = m.a - m.d;
  const cplx r = std::sqrt(amd * amd + 4.0 * m.b * m.c);
  const cplx den_p = amd + r;
  const cplx den_m = amd - r;
  const cplx den = std::abs(den_p) >= std::abs(den_m) ? den_p : den_m;
  cplx xi{0.0};
  if (std::abs(den) > 0.0) xi = -2.0 * m.b / den;
  if (std::abs(m.b) == 0.0) xi = 0.0;
  // The other root is 1/conj(xi); whichever falls inside is the answer.
  if (std::norm(xi) >= 1.0 && std::abs(xi) > 0.0) xi = 1.0 / std::conj(xi);
  if (!(std::norm(xi) < 1.0)) {
    throw Error(ErrorCode::NotElliptic, "fixed point on the unit circle");
  }
  return DiskPoint(xi);
}

DiskPoint elliptic_fixed_point(const SU11Element& a) { return elliptic_fixed_point(a.matrix()); }

SU11Element conjugator_from_fixed_point(const DiskPoint& xi) {
  const double s = 1.0 / std::sqrt(1.0 - xi.abs2());
  return SU11Element(s, s * xi.value());
}

RotationConjugation conjugate_to_rotation(const SU11Element& a) {
  const DiskPoint xi = elliptic_fixed_point(a);
  const SU11Element m = conjugator_from_fixed_point(xi);
  const SU11Element r = m.inverse() * a * m;
  // r stabilizes 0, so r = diag(e^{i theta}, e^{-i theta}) up to rounding.
  return {m, std::arg(r.p())};
}

double hs_norm_sq(const Mat2C& m) {
  return std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
}

double itrace_conjugated_su11lie(const DiskPoint& xi, double w, cplx z) {
  const double x2 = xi.abs2();
  return ((1.0 + x2) * w + 2.0 * (z * std::conj(xi.value())).imag()) / (1.0 - x2);
}

}  // namespace cmvspec
