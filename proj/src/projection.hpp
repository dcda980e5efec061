#pragma once

#include <string_view>
#include <vector>

#include "diagram.hpp"
#include "geometry.hpp"
#include "polygon.hpp"

namespace thickknot {

/// Unit viewing direction. The viewer sits at +infinity along u, so larger
/// depth (coordinate along u) means "over".
class Direction {
 public:
  static Direction make(const Vec3& v);
  const Vec3& u() const noexcept { return u_; }
  Direction opposite() const { return Direction(-u_); }

 private:
  explicit Direction(const Vec3& u) : u_(u) {}
  Vec3 u_;
};

/// Orthonormal frame (e1, e2) of the plane normal to u with e1 x e2 = u.
struct Frame {
  Vec3 e1, e2, u;
};

Frame frame_for(const Direction& d);
/// Same plane rotated by `angle` about u; used to check frame independence.
Frame rotated_frame(const Direction& d, double angle);

struct Projection {
  std::vector<Vec2> points;
  std::vector<double> depth;
  Frame frame;
};

Projection project(const Polygon3& p, const Direction& d);
Projection project(const Polygon3& p, const Frame& f);

enum class RegularityFailure { None, Tangency, VertexHit, TriplePoint, DepthTie, Overlap };

std::string_view failure_name(RegularityFailure f) noexcept;

/// Absolute angle threshold plus length thresholds relative to the polygon's
/// bounding-box diameter.
struct RegularityThresholds {
  double angle = 1e-4;
  double vertex_rel = 1e-6;
  double triple_rel = 1e-6;
  double depth_rel = 1e-9;
};

struct ProjectedCrossing {
  std::size_t edge_a = 0;
  double s = 0.0;
  std::size_t edge_b = 0;
  double t = 0.0;
  Vec2 point;
  double depth_gap = 0.0;  // depth on edge_a minus depth on edge_b
};

struct RegularityReport {
  bool regular = true;
  std::size_t crossings = 0;
  double min_transversality_angle = kInf;
  double min_vertex_clearance = kInf;
  double min_triple_clearance = kInf;
  double min_depth_gap = kInf;
  RegularityFailure failure = RegularityFailure::None;
  std::vector<ProjectedCrossing> points;
};

RegularityReport check_regularity(const Polygon3& p, const Direction& d, const RegularityThresholds& thr = {});
RegularityReport check_regularity(const Polygon3& p, const Frame& f, const RegularityThresholds& thr = {});

/// Diagram seen from direction d; throws NotRegular unless the projection
/// passes check_regularity.
Diagram extract_diagram(const Polygon3& p, const Direction& d, const RegularityThresholds& thr = {});
Diagram extract_diagram(const Polygon3& p, const Frame& f, const RegularityThresholds& thr = {});

}  // namespace thickknot
