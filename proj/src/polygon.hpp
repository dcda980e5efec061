#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace thickknot {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Validation tolerances. Edge and embedding thresholds are relative to the
/// bounding-box diameter so that every check is scale invariant.
struct PolygonTolerances {
  double edge_rel = 1e-9;
  double embed_rel = 1e-9;
  double angle = 1e-7;  // radians
};

/// Closed polygon in R^3; the closing edge runs from the last vertex to the
/// first. Instances built through make() are embedded and non-degenerate.
class Polygon3 {
 public:
  static Polygon3 make(std::vector<Vec3> vertices, const PolygonTolerances& tol = {});
  // Skips validation. Callers must already know the vertices are valid.
  static Polygon3 unchecked(std::vector<Vec3> vertices);

  std::size_t size() const noexcept { return vertices_.size(); }
  std::span<const Vec3> vertices() const noexcept { return vertices_; }
  const Vec3& vertex(std::ptrdiff_t i) const noexcept { return vertices_[wrap(i)]; }
  Vec3 edge(std::ptrdiff_t i) const noexcept { return vertex(i + 1) - vertex(i); }
  double diameter() const noexcept;

  std::size_t wrap(std::ptrdiff_t i) const noexcept {
    const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
    return static_cast<std::size_t>(((i % n) + n) % n);
  }

  friend bool operator==(const Polygon3&, const Polygon3&) = default;

 private:
  explicit Polygon3(std::vector<Vec3> v) : vertices_(std::move(v)) {}
  std::vector<Vec3> vertices_;
};

/// Returns a description of the first violated invariant, or nullopt.
std::optional<std::string> polygon_defect(std::span<const Vec3> vertices,
                                          const PolygonTolerances& tol = {});

double bounding_diameter(std::span<const Vec3> vertices) noexcept;

double total_length(const Polygon3& p) noexcept;

// Turning angle at vertex k (angle between incoming and outgoing edges).
double turning_angle(std::span<const Vec3> v, std::size_t k) noexcept;

// Arc radius at a single vertex; +inf for (near-)collinear vertices.
double vertex_min_rad(std::span<const Vec3> v, std::size_t k, double angle_tol = 1e-7);

struct MinRadResult {
  double value = kInf;
  std::optional<std::size_t> vertex;
};

MinRadResult min_rad(const Polygon3& p, double angle_tol = 1e-7);

/// Chord between a point on edge `edge_a` at parameter `s` and a point on edge
/// `edge_b` at parameter `t`; parameters 0 and 1 denote the edge endpoints.
struct Chord {
  std::size_t edge_a = 0;
  double s = 0.0;
  std::size_t edge_b = 0;
  double t = 0.0;
  friend bool operator==(const Chord&, const Chord&) = default;
};

struct ChordCandidate {
  double length = kInf;
  Chord chord;
};

// Shortest doubly-critical chord supported on the nonadjacent edge pair (i, j).
ChordCandidate pair_critical_chord(std::span<const Vec3> v, std::size_t i, std::size_t j);
/// Same with precomputed unit_tangents(v), for repeated evaluation.
ChordCandidate pair_critical_chord(std::span<const Vec3> v, std::span<const Vec3> tangents, std::size_t i,
                                   std::size_t j);

/// tangents[e] is the unit direction of edge e.
std::vector<Vec3> unit_tangents(std::span<const Vec3> v);

bool edges_adjacent(std::size_t n, std::size_t i, std::size_t j) noexcept;

struct DcsdResult {
  double length = kInf;
  std::optional<Chord> chord;
};

/// Doubly-critical self-distance. A triangle has no nonadjacent edge pair and
/// reports +inf with no chord.
DcsdResult dcsd_poly(const Polygon3& p);

struct ThicknessReport {
  double min_rad = kInf;
  double dcsd = kInf;
  double thickness = kInf;
  std::optional<std::size_t> argmin_vertex;
  std::optional<Chord> argmin_chord;
};

ThicknessReport thickness(const Polygon3& p);
double ropelength(const Polygon3& p);

/// Uniformly rescales about the origin so that thickness is one.
Polygon3 normalize_to_unit_thickness(const Polygon3& p);

}  // namespace thickknot
