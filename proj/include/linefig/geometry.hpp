#pragma once

namespace linefig {

/// Point on the unit celestial sphere in equatorial Cartesian coordinates.
struct UnitVector {
  double x{};
  double y{};
  double z{};
};

struct Equatorial {
  double ra_deg{};
  double dec_deg{};
};

inline UnitVector operator+(const UnitVector& a, const UnitVector& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline UnitVector operator-(const UnitVector& a, const UnitVector& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline UnitVector operator-(const UnitVector& a) { return {-a.x, -a.y, -a.z}; }
inline UnitVector operator*(double s, const UnitVector& v) { return {s * v.x, s * v.y, s * v.z}; }

inline double dot(const UnitVector& a, const UnitVector& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline UnitVector cross(const UnitVector& a, const UnitVector& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const UnitVector& v);
UnitVector normalized(const UnitVector& v);

UnitVector to_unit_vector(double ra_deg, double dec_deg);
inline UnitVector to_unit_vector(const Equatorial& eq) { return to_unit_vector(eq.ra_deg, eq.dec_deg); }
Equatorial to_equatorial(const UnitVector& v);

/// Great-circle angle between two points, degrees in [0, 180].
double angular_separation(const UnitVector& a, const UnitVector& b);

/// Spherical angle at `apex` between the arcs apex->p and apex->q, degrees
/// in [0, 180]. Throws GeometryError if p or q coincides with (or is
/// antipodal to) the apex.
double vertex_angle(const UnitVector& apex, const UnitVector& p, const UnitVector& q);

/// Side tolerance applied to triple products in geodesics_cross.
inline constexpr double kCrossingTolerance = 1e-12;

/// True iff the open minor arcs a1-a2 and b1-b2 intersect. Arcs sharing an
/// endpoint, or merely touching, never cross. Two overlapping arcs on the
/// same great circle throw GeometryError.
bool geodesics_cross(const UnitVector& a1, const UnitVector& a2, const UnitVector& b1, const UnitVector& b2);

}  // namespace linefig
