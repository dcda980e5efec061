#include "projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace thickknot {

Direction Direction::make(const Vec3& v) {
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw Error(ErrorKind::InvalidArgument, "direction must be a nonzero finite vector");
  }
  return Direction(v * (1.0 / len));
}

Frame frame_for(const Direction& d) {
  const Vec3& u = d.u();
  const double ax = std::abs(u.x), ay = std::abs(u.y), az = std::abs(u.z);
  Vec3 helper{0, 0, 0};
  if (ax <= ay && ax <= az) {
    helper.x = 1;
  } else if (ay <= az) {
    helper.y = 1;
  } else {
    helper.z = 1;
  }
  const Vec3 e1 = normalized(cross(helper, u));
  return {e1, cross(u, e1), u};
}

Frame rotated_frame(const Direction& d, double angle) {
  Frame f = frame_for(d);
  const double c = std::cos(angle), s = std::sin(angle);
  const Vec3 e1 = f.e1 * c + f.e2 * s;
  return {e1, cross(f.u, e1), f.u};
}

Projection project(const Polygon3& p, const Frame& f) {
  Projection out;
  out.frame = f;
  out.points.reserve(p.size());
  out.depth.reserve(p.size());
  for (const Vec3& v : p.vertices()) {
    out.points.push_back({dot(v, f.e1), dot(v, f.e2)});
    out.depth.push_back(dot(v, f.u));
  }
  return out;
}

Projection project(const Polygon3& p, const Direction& d) { return project(p, frame_for(d)); }

std::string_view failure_name(RegularityFailure f) noexcept {
  switch (f) {
    case RegularityFailure::None: return "none";
    case RegularityFailure::Tangency: return "Tangency";
    case RegularityFailure::VertexHit: return "VertexHit";
    case RegularityFailure::TriplePoint: return "TriplePoint";
    case RegularityFailure::DepthTie: return "DepthTie";
    case RegularityFailure::Overlap: return "Overlap";
  }
  return "unknown";
}

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + ab * t));
}

}  // namespace

RegularityReport check_regularity(const Polygon3& p, const Frame& f, const RegularityThresholds& thr) {
  const Projection proj = project(p, f);
  const std::size_t n = p.size();
  const double diam = p.diameter();
  const double tau_vertex = thr.vertex_rel * diam;
  const double tau_triple = thr.triple_rel * diam;
  const double tau_depth = thr.depth_rel * diam;
  const auto& q = proj.points;

  RegularityReport r;
  bool overlap = false, tangency = false, vertex_hit = false, depth_tie = false, triple = false;

  // Edges seen end-on, and adjacent edges folding back onto each other.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = q[(i + 1) % n] - q[i];
    if (norm(a) < tau_vertex) overlap = true;
    const Vec2 b = q[(i + 2) % n] - q[(i + 1) % n];
    const double la = norm(a), lb = norm(b);
    if (la > 0 && lb > 0) {
      const double ang = std::atan2(std::abs(cross(a, b)), dot(a, b));
      if (std::numbers::pi - ang < thr.angle) overlap = true;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p0 = q[i], p1 = q[(i + 1) % n];
    const Vec2 d1 = p1 - p0;
    const double l1 = norm(d1);
    for (std::size_t j = i + 2; j < n; ++j) {
      if (edges_adjacent(n, i, j)) continue;
      const Vec2 q0 = q[j], q1 = q[(j + 1) % n];
      const Vec2 d2 = q1 - q0;
      const double l2 = norm(d2);
      if (l1 <= 0 || l2 <= 0) continue;
      const double den = cross(d1, d2);
      const double sin_angle = std::abs(den) / (l1 * l2);
      const Vec2 w = q0 - p0;
      bool hit = false;
      if (sin_angle > 1e-14) {
        const double s = cross(w, d2) / den;
        const double t = cross(w, d1) / den;
        if (s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0) {
          hit = true;
          const double ang = std::asin(std::min(1.0, sin_angle));
          r.min_transversality_angle = std::min(r.min_transversality_angle, ang);
          if (ang < thr.angle) tangency = true;
          const double clear = std::min({s * l1, (1 - s) * l1, t * l2, (1 - t) * l2});
          r.min_vertex_clearance = std::min(r.min_vertex_clearance, clear);
          if (clear < tau_vertex) vertex_hit = true;
          const double da = proj.depth[i] + s * (proj.depth[(i + 1) % n] - proj.depth[i]);
          const double db = proj.depth[j] + t * (proj.depth[(j + 1) % n] - proj.depth[j]);
          const double gap = da - db;
          r.min_depth_gap = std::min(r.min_depth_gap, std::abs(gap));
          if (std::abs(gap) < tau_depth) depth_tie = true;
          r.points.push_back({i, s, j, t, p0 + d1 * s, gap});
        }
      }
      if (!hit) {
        // Disjoint segments: nearest approach is at an endpoint.
        const double dist = std::min({point_segment_distance(p0, q0, q1), point_segment_distance(p1, q0, q1),
                                      point_segment_distance(q0, p0, p1), point_segment_distance(q1, p0, p1)});
        r.min_vertex_clearance = std::min(r.min_vertex_clearance, dist);
        if (dist < tau_vertex) {
          if (sin_angle < std::sin(thr.angle)) {
            overlap = true;
          } else {
            vertex_hit = true;
          }
        }
      }
    }
  }

  for (std::size_t a = 0; a < r.points.size(); ++a) {
    for (std::size_t b = a + 1; b < r.points.size(); ++b) {
      const double dist = norm(r.points[a].point - r.points[b].point);
      r.min_triple_clearance = std::min(r.min_triple_clearance, dist);
      if (dist < tau_triple) triple = true;
    }
  }

  r.crossings = r.points.size();
  if (overlap) {
    r.failure = RegularityFailure::Overlap;
  } else if (vertex_hit) {
    r.failure = RegularityFailure::VertexHit;
  } else if (tangency) {
    r.failure = RegularityFailure::Tangency;
  } else if (triple) {
    r.failure = RegularityFailure::TriplePoint;
  } else if (depth_tie) {
    r.failure = RegularityFailure::DepthTie;
  }
  r.regular = r.failure == RegularityFailure::None;
  return r;
}

RegularityReport check_regularity(const Polygon3& p, const Direction& d, const RegularityThresholds& thr) {
  return check_regularity(p, frame_for(d), thr);
}

Diagram extract_diagram(const Polygon3& p, const Frame& f, const RegularityThresholds& thr) {
  const RegularityReport r = check_regularity(p, f, thr);
  if (!r.regular) {
    throw Error(ErrorKind::NotRegular,
                "projection is not regular: " + std::string(failure_name(r.failure)));
  }
  const std::size_t n = p.size();
  const Projection proj = project(p, f);

  // Visits per edge: (param, crossing record, is edge_a side).
  struct Visit {
    double param;
    std::size_t record;
    bool side_a;
  };
  std::vector<std::vector<Visit>> per_edge(n);
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    per_edge[r.points[k].edge_a].push_back({r.points[k].s, k, true});
    per_edge[r.points[k].edge_b].push_back({r.points[k].t, k, false});
  }
  std::vector<int> id(r.points.size(), -1);
  std::vector<int> signs;
  std::vector<Passage> seq;
  for (std::size_t e = 0; e < n; ++e) {
    auto& visits = per_edge[e];
    std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) { return a.param < b.param; });
    for (const Visit& v : visits) {
      const ProjectedCrossing& c = r.points[v.record];
      if (id[v.record] < 0) {
        id[v.record] = static_cast<int>(signs.size());
        const bool a_over = c.depth_gap > 0;
        const std::size_t eo = a_over ? c.edge_a : c.edge_b;
        const std::size_t eu = a_over ? c.edge_b : c.edge_a;
        const Vec2 d_over = proj.points[(eo + 1) % n] - proj.points[eo];
        const Vec2 d_under = proj.points[(eu + 1) % n] - proj.points[eu];
        signs.push_back(cross(d_under, d_over) < 0 ? 1 : -1);
      }
      const bool over = (c.depth_gap > 0) == v.side_a;
      seq.push_back({id[v.record], over});
    }
  }
  return Diagram::from_gauss(std::move(seq), std::move(signs));
}

Diagram extract_diagram(const Polygon3& p, const Direction& d, const RegularityThresholds& thr) {
  return extract_diagram(p, frame_for(d), thr);
}

}  // namespace thickknot
