#include <doctest.h>

#include <cmath>
#include <random>

#include "linefig/errors.hpp"
#include "linefig/geometry.hpp"

using namespace linefig;

namespace {

UnitVector random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return normalized(UnitVector{n(rng), n(rng), n(rng)});
}

// Rotation about an arbitrary axis by Rodrigues' formula.
UnitVector rotate(const UnitVector& v, const UnitVector& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return c * v + s * cross(axis, v) + (dot(axis, v) * (1.0 - c)) * axis;
}

}  // namespace

TEST_CASE("to_unit_vector axis and pole cases") {
  const auto a = to_unit_vector(0, 0);
  CHECK(a.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(a.y) < 1e-15);
  CHECK(std::abs(a.z) < 1e-15);
  const auto b = to_unit_vector(90, 0);
  CHECK(std::abs(b.x) < 1e-15);
  CHECK(b.y == doctest::Approx(1.0));
  const auto c = to_unit_vector(0, 90);
  CHECK(std::abs(c.x) < 1e-15);
  CHECK(c.z == doctest::Approx(1.0));
}

TEST_CASE("to_unit_vector round trip away from poles") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ra(0.0, 360.0), dec(-89.0, 89.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = ra(rng), d = dec(rng);
    const auto v = to_unit_vector(r, d);
    CHECK(std::abs(norm(v) - 1.0) < 1e-12);
    const auto eq = to_equatorial(v);
    double dra = std::abs(eq.ra_deg - r);
    dra = std::min(dra, 360.0 - dra);
    CHECK(dra < 1e-9);
    CHECK(std::abs(eq.dec_deg - d) < 1e-9);
  }
}

TEST_CASE("angular_separation examples") {
  const auto a = to_unit_vector(10, 20);
  CHECK(angular_separation(a, a) == 0.0);
  CHECK(angular_separation(a, -a) == doctest::Approx(180.0).epsilon(1e-12));
  CHECK(angular_separation(to_unit_vector(0, 0), to_unit_vector(90, 0)) == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("angular_separation symmetric and obeys the triangle inequality") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_unit(rng), b = random_unit(rng), c = random_unit(rng);
    CHECK(angular_separation(a, b) == angular_separation(b, a));
    CHECK(angular_separation(a, c) <= angular_separation(a, b) + angular_separation(b, c) + 1e-9);
  }
}

TEST_CASE("vertex_angle examples") {
  const auto apex = to_unit_vector(0, 0);
  CHECK(vertex_angle(apex, to_unit_vector(350, 0), to_unit_vector(10, 0)) == doctest::Approx(180.0));
  CHECK(vertex_angle(apex, to_unit_vector(10, 0), to_unit_vector(0, 10)) == doctest::Approx(90.0));
  // At the pole the spherical angle equals the difference in right ascension.
  CHECK(vertex_angle(UnitVector{0, 0, 1}, to_unit_vector(0, 80), to_unit_vector(45, 80)) ==
        doctest::Approx(45.0).epsilon(1e-12));
  CHECK_THROWS_AS(vertex_angle(apex, apex, to_unit_vector(10, 0)), GeometryError);
}

TEST_CASE("vertex_angle symmetric and rotation invariant") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  for (int i = 0; i < 500; ++i) {
    const auto apex = random_unit(rng), p = random_unit(rng), q = random_unit(rng);
    const double v = vertex_angle(apex, p, q);
    CHECK(v == doctest::Approx(vertex_angle(apex, q, p)).epsilon(1e-12));
    const auto axis = random_unit(rng);
    const double t = ang(rng);
    CHECK(std::abs(vertex_angle(rotate(apex, axis, t), rotate(p, axis, t), rotate(q, axis, t)) - v) < 1e-9);
  }
}

TEST_CASE("geodesics_cross examples") {
  // X centred on (0, 0): an equatorial arc and a meridian arc.
  CHECK(geodesics_cross(to_unit_vector(355, 0), to_unit_vector(5, 0), to_unit_vector(0, -5), to_unit_vector(0, 5)));
  // Shared endpoint never counts.
  const auto s = to_unit_vector(0, 0);
  CHECK_FALSE(geodesics_cross(s, to_unit_vector(10, 0), s, to_unit_vector(0, 10)));
  // Disjoint arcs in opposite hemispheres.
  CHECK_FALSE(geodesics_cross(to_unit_vector(0, 40), to_unit_vector(10, 45), to_unit_vector(0, -40),
                              to_unit_vector(10, -45)));
  // The great circles meet, but outside one of the arcs.
  CHECK_FALSE(geodesics_cross(to_unit_vector(355, 0), to_unit_vector(5, 0), to_unit_vector(0, 2),
                              to_unit_vector(0, 10)));
  // Touching at an interior point is not a crossing.
  CHECK_FALSE(geodesics_cross(to_unit_vector(355, 0), to_unit_vector(5, 0), to_unit_vector(0, 0.0),
                              to_unit_vector(0, 10)));
}

TEST_CASE("geodesics_cross reports overlapping collinear arcs") {
  CHECK_THROWS_AS(geodesics_cross(to_unit_vector(0, 0), to_unit_vector(10, 0), to_unit_vector(5, 0),
                                  to_unit_vector(15, 0)),
                  GeometryError);
  // Collinear but disjoint arcs do not cross.
  CHECK_FALSE(geodesics_cross(to_unit_vector(0, 0), to_unit_vector(10, 0), to_unit_vector(20, 0),
                              to_unit_vector(30, 0)));
}

TEST_CASE("geodesics_cross symmetric and rotation invariant") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  int crossings = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto a1 = random_unit(rng), a2 = random_unit(rng), b1 = random_unit(rng), b2 = random_unit(rng);
    const bool x = geodesics_cross(a1, a2, b1, b2);
    crossings += x;
    CHECK(x == geodesics_cross(b1, b2, a1, a2));
    CHECK(x == geodesics_cross(a2, a1, b2, b1));
    const auto axis = random_unit(rng);
    const double t = ang(rng);
    CHECK(x == geodesics_cross(rotate(a1, axis, t), rotate(a2, axis, t), rotate(b1, axis, t), rotate(b2, axis, t)));
  }
  CHECK(crossings > 0);
}
