#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "oracles.hpp"
#include "polygon.hpp"

using namespace thickknot;
using std::numbers::pi;

namespace {

Polygon3 regular(int n, double r = 1.0) { return Polygon3::make(oracle::regular_polygon(n, r)); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("total length of regular polygons") {
  CHECK(total_length(regular(4)) == doctest::Approx(4 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(total_length(regular(8)) == doctest::Approx(16 * std::sin(pi / 8)).epsilon(1e-14));
}

TEST_CASE("construction rejects degenerate input") {
  CHECK_THROWS_AS(Polygon3::make({{0, 0, 0}, {1, 0, 0}, {1, 0, 0}}), Error);
  CHECK_THROWS_AS(Polygon3::make({{0, 0, 0}, {1, 0, 0}}), Error);
  // bow-tie: edges 0 and 2 cross
  CHECK_THROWS_AS(Polygon3::make({{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}}), Error);
  try {
    Polygon3::make({{0, 0, 0}, {1, 0, 0}, {1, 0, 0}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidPolygon);
  }
}

TEST_CASE("min_rad closed forms") {
  CHECK(min_rad(regular(8)).value == doctest::Approx(std::cos(pi / 8)).epsilon(1e-13));
  CHECK(min_rad(regular(4)).value == doctest::Approx(std::cos(pi / 4)).epsilon(1e-13));
}

TEST_CASE("collinear vertex contributes nothing to min_rad") {
  // square with a midpoint inserted on the first edge
  auto v = oracle::regular_polygon(4);
  v.insert(v.begin() + 1, (v[0] + v[1]) * 0.5);
  const Polygon3 p = Polygon3::make(v);
  CHECK(std::isinf(vertex_min_rad(p.vertices(), 1)));
  // the split edges are half as long, so neighbouring corners shrink
  const double half_edge = std::sqrt(2.0) / 2;
  CHECK(min_rad(p).value == doctest::Approx(half_edge / 2.0).epsilon(1e-12));
}

TEST_CASE("min_rad rejects cusps") {
  std::vector<Vec3> v = {{0, 0, 0}, {2, 0, 0}, {1, 1e-9, 0}, {1, 1, 0}};
  CHECK_THROWS(vertex_min_rad(v, 1));
}

TEST_CASE("dcsd closed forms and oracle") {
  const auto oct = regular(8);
  const auto d = dcsd_poly(oct);
  CHECK(d.length == doctest::Approx(2 * std::cos(pi / 8)).epsilon(1e-13));
  REQUIRE(d.chord.has_value());
  CHECK(dcsd_poly(regular(4)).length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(oracle::dcsd_brute_force(oracle::regular_polygon(8)) == doctest::Approx(2 * std::cos(pi / 8)).epsilon(1e-9));
  CHECK(oracle::dcsd_brute_force(oracle::regular_polygon(4)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("triangle has no dcsd candidates") {
  const auto d = dcsd_poly(regular(3));
  CHECK(std::isinf(d.length));
  CHECK_FALSE(d.chord.has_value());
  CHECK(ropelength(regular(3)) == doctest::Approx(6 * std::tan(pi / 3)).epsilon(1e-12));
}

TEST_CASE("stadium: chord between the two long strands") {
  // Two semicircular caps of radius 1 joined by straight strands 20 apart in x.
  std::vector<Vec3> v;
  const int m = 16;
  for (int k = 0; k <= m; ++k) {
    const double a = -pi / 2 + pi * k / m;
    v.push_back({10 + std::cos(a), std::sin(a), 0});
  }
  for (int k = 1; k < 10; ++k) v.push_back({10 - 2.0 * k, 1, 0});
  for (int k = 0; k <= m; ++k) {
    const double a = pi / 2 + pi * k / m;
    v.push_back({-10 + std::cos(a), std::sin(a), 0});
  }
  for (int k = 1; k < 10; ++k) v.push_back({-10 + 2.0 * k, -1, 0});
  const Polygon3 p = Polygon3::make(v);
  const auto d = dcsd_poly(p);
  CHECK(d.length == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(oracle::dcsd_brute_force(v, 16) == doctest::Approx(d.length).epsilon(1e-9));
}

TEST_CASE("dcsd agrees with the brute-force oracle on random polygons") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 6 + trial * 3;
    const auto v = oracle::random_embedded_polygon(rng, n);
    const Polygon3 p = Polygon3::make(v);
    CHECK(dcsd_poly(p).length == doctest::Approx(oracle::dcsd_brute_force(v)).epsilon(1e-7));
  }
}

TEST_CASE("thickness is the min of its two terms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Polygon3 p = Polygon3::make(oracle::random_embedded_polygon(rng, 12));
    const auto r = thickness(p);
    CHECK(r.thickness == std::min(r.min_rad, r.dcsd / 2));
    CHECK(r.thickness > 0);
    CHECK((r.argmin_vertex.has_value() != r.argmin_chord.has_value()));
  }
}

TEST_CASE("regular polygon ropelength") {
  for (int n = 3; n <= 64; ++n) {
    CHECK(rel(ropelength(regular(n, 0.5 + n)), 2 * n * std::tan(pi / n)) < 1e-9);
  }
  CHECK(ropelength(regular(8)) == doctest::Approx(6.627417).epsilon(1e-6));
  const double r512 = ropelength(regular(512));
  CHECK(rel(r512, 1024 * std::tan(pi / 512)) < 1e-9);
  CHECK(rel(r512, 2 * pi) < 2e-5);
}

TEST_CASE("ropelength invariant under rigid motion and scaling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = oracle::random_embedded_polygon(rng, 14);
    const double base = ropelength(Polygon3::make(v));
    std::uniform_real_distribution<double> sc(0.01, 100.0);
    const auto moved = oracle::rigid_scale(v, rng, sc(rng));
    CHECK(rel(ropelength(Polygon3::make(moved)), base) < 1e-10);
  }
}

TEST_CASE("normalize to unit thickness") {
  const auto oct = regular(8);
  const auto n1 = normalize_to_unit_thickness(oct);
  CHECK(total_length(n1) == doctest::Approx(16 * std::tan(pi / 8)).epsilon(1e-12));
  CHECK(std::abs(thickness(n1).thickness - 1.0) < 1e-12);
  const auto n2 = normalize_to_unit_thickness(n1);
  for (std::size_t i = 0; i < n1.size(); ++i) {
    CHECK(norm(n1.vertex(static_cast<std::ptrdiff_t>(i)) - n2.vertex(static_cast<std::ptrdiff_t>(i))) < 1e-12);
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Polygon3 p = Polygon3::make(oracle::random_embedded_polygon(rng, 10));
    CHECK(std::abs(thickness(normalize_to_unit_thickness(p)).thickness - 1.0) < 1e-12);
  }
}
