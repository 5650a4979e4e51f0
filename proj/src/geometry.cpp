#include "linefig/geometry.hpp"

#include <cmath>
#include <numbers>

#include "linefig/errors.hpp"

namespace linefig {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;
constexpr double kRadPerDeg = std::numbers::pi / 180.0;

// Chord length below which two unit vectors are treated as the same point.
constexpr double kCoincident = 1e-12;

bool same_point(const UnitVector& a, const UnitVector& b) { return norm(a - b) < kCoincident; }

bool strictly_opposite(double s1, double s2) {
  return (s1 > kCrossingTolerance && s2 < -kCrossingTolerance) ||
         (s1 < -kCrossingTolerance && s2 > kCrossingTolerance);
}

// p strictly inside the minor arc from a1 to a2, given p on that great circle
// and pole = a1 x a2.
bool inside_arc(const UnitVector& p, const UnitVector& a1, const UnitVector& a2, const UnitVector& pole) {
  return dot(cross(a1, p), pole) > kCrossingTolerance && dot(cross(p, a2), pole) > kCrossingTolerance;
}

}  // namespace

double norm(const UnitVector& v) { return std::sqrt(dot(v, v)); }

UnitVector normalized(const UnitVector& v) {
  const double n = norm(v);
  return {v.x / n, v.y / n, v.z / n};
}

UnitVector to_unit_vector(double ra_deg, double dec_deg) {
  const double ra = ra_deg * kRadPerDeg;
  const double dec = dec_deg * kRadPerDeg;
  const double c = std::cos(dec);
  return {c * std::cos(ra), c * std::sin(ra), std::sin(dec)};
}

Equatorial to_equatorial(const UnitVector& v) {
  double ra = std::atan2(v.y, v.x) * kDegPerRad;
  if (ra < 0.0) ra += 360.0;
  if (ra >= 360.0) ra -= 360.0;
  const double dec = std::atan2(v.z, std::hypot(v.x, v.y)) * kDegPerRad;
  return {ra, dec};
}

double angular_separation(const UnitVector& a, const UnitVector& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b)) * kDegPerRad;
}

double vertex_angle(const UnitVector& apex, const UnitVector& p, const UnitVector& q) {
  const UnitVector tp = p - dot(p, apex) * apex;
  const UnitVector tq = q - dot(q, apex) * apex;
  const double np = norm(tp);
  const double nq = norm(tq);
  if (np < kCoincident || nq < kCoincident) {
    throw GeometryError("vertex angle undefined: link endpoint coincides with its apex star");
  }
  const UnitVector up = (1.0 / np) * tp;
  const UnitVector uq = (1.0 / nq) * tq;
  return std::atan2(norm(cross(up, uq)), dot(up, uq)) * kDegPerRad;
}

bool geodesics_cross(const UnitVector& a1, const UnitVector& a2, const UnitVector& b1, const UnitVector& b2) {
  if (same_point(a1, b1) || same_point(a1, b2) || same_point(a2, b1) || same_point(a2, b2)) return false;

  const UnitVector na = cross(a1, a2);
  const UnitVector nb = cross(b1, b2);
  const double sb1 = dot(na, b1);
  const double sb2 = dot(na, b2);
  const double sa1 = dot(nb, a1);
  const double sa2 = dot(nb, a2);

  const bool cocircular = std::abs(sb1) <= kCrossingTolerance && std::abs(sb2) <= kCrossingTolerance &&
                          std::abs(sa1) <= kCrossingTolerance && std::abs(sa2) <= kCrossingTolerance;
  if (cocircular) {
    const bool overlap = inside_arc(b1, a1, a2, na) || inside_arc(b2, a1, a2, na) || inside_arc(a1, b1, b2, nb) ||
                         inside_arc(a2, b1, b2, nb);
    if (overlap) throw GeometryError("overlapping arcs on a common great circle");
    return false;
  }

  if (!strictly_opposite(sb1, sb2) || !strictly_opposite(sa1, sa2)) return false;

  // The great circle of b meets arc a exactly once, at +x or -x.
  UnitVector x = normalized(cross(na, nb));
  if (!inside_arc(x, a1, a2, na)) x = -x;
  return inside_arc(x, b1, b2, nb);
}

}  // namespace linefig
