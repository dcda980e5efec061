#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "error.hpp"
#include "knots.hpp"
#include "oracles.hpp"
#include "projection.hpp"
#include "shapes.hpp"

using namespace thickknot;

namespace {

// Orientation-predicate segment test, independent of the parametric solver.
int orient(Vec2 a, Vec2 b, Vec2 c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

std::size_t brute_force_crossings(const Projection& pr) {
  const auto& q = pr.points;
  const std::size_t n = q.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (j + 1) % n == i) continue;
      const Vec2 a = q[i], b = q[(i + 1) % n], c = q[j], d = q[(j + 1) % n];
      if (orient(a, b, c) != orient(a, b, d) && orient(c, d, a) != orient(c, d, b)) ++count;
    }
  }
  return count;
}

double signed_area(const std::vector<Vec2>& q) {
  double a = 0;
  for (std::size_t i = 0; i < q.size(); ++i) a += cross(q[i], q[(i + 1) % q.size()]);
  return a / 2;
}

const Direction kZ = Direction::make({0, 0, 1});

}  // namespace

TEST_CASE("normal projection of a planar polygon") {
  const Polygon3 oct = Polygon3::make(shapes::regular_polygon(8));
  const Projection pr = project(oct, kZ);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(pr.depth[i] == doctest::Approx(pr.depth[0]));
    CHECK(norm(pr.points[i]) == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto r = check_regularity(oct, kZ);
  CHECK(r.regular);
  CHECK(r.crossings == 0);
  CHECK(canonical_code(extract_diagram(oct, kZ)) == std::string(kEmptyKey));
}

TEST_CASE("opposite directions give mirror-related images") {
  std::mt19937_64 rng(4);
  const Polygon3 p = Polygon3::make(oracle::random_embedded_polygon(rng, 12));
  const Direction u = Direction::make({0.3, -0.2, 0.9});
  const double a = signed_area(project(p, u).points);
  const double b = signed_area(project(p, u.opposite()).points);
  CHECK(a == doctest::Approx(-b).epsilon(1e-12));
}

TEST_CASE("direction parallel to an edge is not regular") {
  const Polygon3 sq = Polygon3::make({{0, 0, 0}, {1, 0, 0}, {1, 1, 0.3}, {0, 1, 0}});
  const auto r = check_regularity(sq, Direction::make({1, 0, 0}));
  CHECK_FALSE(r.regular);
  CHECK((r.failure == RegularityFailure::Overlap || r.failure == RegularityFailure::VertexHit));
  CHECK_THROWS_AS(extract_diagram(sq, Direction::make({1, 0, 0})), Error);
}

TEST_CASE("polygonal trefoil has the standard diagram") {
  const Polygon3 t = Polygon3::make(shapes::trefoil(60));
  const auto r = check_regularity(t, kZ);
  REQUIRE(r.regular);
  CHECK(r.crossings == 3);
  CHECK(brute_force_crossings(project(t, kZ)) == 3);
  const Diagram d = extract_diagram(t, kZ);
  CHECK(canonical_code(d) == canonical_code(knots::trefoil()));
  CHECK(determinant(d) == 3);
  // mirror image through the projection plane swaps every crossing
  const Polygon3 m = Polygon3::make(shapes::reflect_z(shapes::trefoil(60)));
  CHECK(canonical_code(extract_diagram(m, kZ)) == canonical_code(mirror(d)));
  CHECK(canonical_code(extract_diagram(m, kZ)) != canonical_code(d));
}

TEST_CASE("diagram key does not depend on the frame in the image plane") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon3 p = Polygon3::make(oracle::random_embedded_polygon(rng, 16));
    const Direction u = Direction::make({0.2, 0.1, 1.0});
    if (!check_regularity(p, u).regular) continue;
    std::set<std::string> keys;
    for (int f = 0; f < 10; ++f) keys.insert(canonical_code(extract_diagram(p, rotated_frame(u, ang(rng)))));
    CHECK(keys.size() == 1);
  }
}

TEST_CASE("crossing count matches brute-force segment test") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0, 1);
  int regular = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Polygon3 p = Polygon3::make(trial % 2 ? shapes::trefoil(40 + trial, 0.1 * trial)
                                                : oracle::random_embedded_polygon(rng, 20));
    const Direction u = Direction::make({g(rng), g(rng), g(rng)});
    const auto r = check_regularity(p, u);
    if (!r.regular) continue;
    ++regular;
    CHECK(r.crossings == brute_force_crossings(project(p, u)));
    const Diagram d = extract_diagram(p, u);
    CHECK(static_cast<std::size_t>(d.n_crossings()) == r.crossings);
    CHECK(static_cast<int>(faces(d).size()) == d.n_crossings() + 2);
    if (trial % 2) CHECK(determinant(d) == 3);
  }
  CHECK(regular > 30);
}
