#include "polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace thickknot {

namespace {

std::size_t cyc(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

std::size_t cyclic_distance(std::size_t a, std::size_t b, std::size_t n) {
  const std::size_t d = a > b ? a - b : b - a;
  return std::min(d, n - d);
}

// First-variation criticality at vertex k for a chord leaving along w: moving
// the endpoint forward or backward must not change the length to first order
// in one consistent direction, i.e. w.in and w.out straddle zero.
bool vertex_critical(std::span<const Vec3> tangents, std::size_t k, const Vec3& w) {
  const std::size_t n = tangents.size();
  const Vec3& in = tangents[cyc(static_cast<std::ptrdiff_t>(k) - 1, n)];
  const Vec3& out = tangents[k];
  const double a = dot(w, in);
  const double b = dot(w, out);
  const double slack = 1e-12 * norm(w);
  return std::min(a, b) <= slack && std::max(a, b) >= -slack;
}

// A vertex k lies on edges k-1 and k; a chord endpoint on that vertex must be
// separated from the other endpoint's edge by at least one full edge.
bool vertex_edge_separated(std::size_t k, std::size_t j, std::size_t n) {
  const std::size_t prev = k == 0 ? n - 1 : k - 1;
  for (std::size_t e : {prev, k}) {
    if (e == j || edges_adjacent(n, e, j)) return false;
  }
  return true;
}

}  // namespace

double bounding_diameter(std::span<const Vec3> vertices) noexcept {
  if (vertices.empty()) return 0.0;
  Vec3 lo = vertices[0], hi = vertices[0];
  for (const Vec3& p : vertices) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return norm(hi - lo);
}

bool edges_adjacent(std::size_t n, std::size_t i, std::size_t j) noexcept {
  const std::size_t ni = i + 1 == n ? 0 : i + 1, nj = j + 1 == n ? 0 : j + 1;
  return ni == j || nj == i;
}

std::optional<std::string> polygon_defect(std::span<const Vec3> v, const PolygonTolerances& tol) {
  const std::size_t n = v.size();
  if (n < 3) return "polygon needs at least 3 vertices";
  for (const Vec3& p : v) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      return "non-finite vertex coordinate";
    }
  }
  const double diam = bounding_diameter(v);
  if (!(diam > 0.0)) return "all vertices coincide";
  for (std::size_t i = 0; i < n; ++i) {
    if (norm(v[(i + 1) % n] - v[i]) < tol.edge_rel * diam) {
      std::ostringstream os;
      os << "edge " << i << " is shorter than the edge tolerance";
      return os.str();
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (turning_angle(v, k) > std::numbers::pi - tol.angle) {
      std::ostringstream os;
      os << "vertex " << k << " reverses direction";
      return os.str();
    }
  }
  const double emb2 = (tol.embed_rel * diam) * (tol.embed_rel * diam);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (edges_adjacent(n, i, j)) continue;
      const auto c = segment_closest(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]);
      if (c.dist2 < emb2) {
        std::ostringstream os;
        os << "edges " << i << " and " << j << " intersect";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

Polygon3 Polygon3::make(std::vector<Vec3> vertices, const PolygonTolerances& tol) {
  if (auto defect = polygon_defect(vertices, tol)) {
    throw Error(ErrorKind::InvalidPolygon, *defect);
  }
  return Polygon3(std::move(vertices));
}

Polygon3 Polygon3::unchecked(std::vector<Vec3> vertices) { return Polygon3(std::move(vertices)); }

double Polygon3::diameter() const noexcept { return bounding_diameter(vertices_); }

double total_length(const Polygon3& p) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += norm(p.edge(static_cast<std::ptrdiff_t>(i)));
  return sum;
}

double turning_angle(std::span<const Vec3> v, std::size_t k) noexcept {
  const std::size_t n = v.size();
  const Vec3 a = v[k] - v[cyc(static_cast<std::ptrdiff_t>(k) - 1, n)];
  const Vec3 b = v[(k + 1) % n] - v[k];
  return angle_between(a, b);
}

double vertex_min_rad(std::span<const Vec3> v, std::size_t k, double angle_tol) {
  const std::size_t n = v.size();
  const double alpha = turning_angle(v, k);
  if (alpha < angle_tol) return kInf;
  if (alpha > std::numbers::pi - angle_tol) {
    std::ostringstream os;
    os << "turning angle at vertex " << k << " is within tolerance of pi";
    throw Error(ErrorKind::DegenerateAngle, os.str());
  }
  const double la = norm(v[k] - v[cyc(static_cast<std::ptrdiff_t>(k) - 1, n)]);
  const double lb = norm(v[(k + 1) % n] - v[k]);
  return std::min(la, lb) / (2.0 * std::tan(alpha / 2.0));
}

MinRadResult min_rad(const Polygon3& p, double angle_tol) {
  MinRadResult r;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double rk = vertex_min_rad(p.vertices(), k, angle_tol);
    if (rk < r.value) {
      r.value = rk;
      r.vertex = k;
    }
  }
  return r;
}

std::vector<Vec3> unit_tangents(std::span<const Vec3> v) {
  const std::size_t n = v.size();
  std::vector<Vec3> t(n);
  for (std::size_t e = 0; e < n; ++e) t[e] = normalized(v[(e + 1) % n] - v[e]);
  return t;
}

ChordCandidate pair_critical_chord(std::span<const Vec3> v, std::size_t i, std::size_t j) {
  const std::size_t n = v.size();
  // only the tangents next to the four vertices are read
  std::vector<Vec3> tangents(n);
  for (std::size_t e : {cyc(static_cast<std::ptrdiff_t>(i) - 1, n), i, (i + 1) % n, cyc(static_cast<std::ptrdiff_t>(j) - 1, n), j,
                        (j + 1) % n}) {
    tangents[e] = normalized(v[(e + 1) % n] - v[e]);
  }
  return pair_critical_chord(v, tangents, i, j);
}

ChordCandidate pair_critical_chord(std::span<const Vec3> v, std::span<const Vec3> tangents, std::size_t i,
                                   std::size_t j) {
  const std::size_t n = v.size();
  ChordCandidate best;
  auto offer = [&](const Vec3& p, const Vec3& q, std::size_t ea, double s, std::size_t eb, double t) {
    const double len = norm(q - p);
    if (len < best.length) best = {len, {ea, s, eb, t}};
  };

  const Vec3& p0 = v[i];
  const Vec3& p1 = v[(i + 1) % n];
  const Vec3& q0 = v[j];
  const Vec3& q1 = v[(j + 1) % n];
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double b = dot(d1, d2);
  const Vec3 r = q0 - p0;
  const double rd1 = dot(r, d1);
  const double rd2 = dot(r, d2);

  // Interior-interior: chord perpendicular to both segments.
  const double det = b * b - a * e;
  if (std::abs(det) > 1e-12 * a * e) {
    const double s = (b * rd2 - e * rd1) / det;
    const double t = (a * rd2 - b * rd1) / det;
    if (s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0) {
      offer(p0 + d1 * s, q0 + d2 * t, i, s, j, t);
    }
  } else {
    // Parallel segments: every perpendicular chord over the overlap has the
    // same length; take the middle of the overlap.
    const double lo = std::max(0.0, std::min(rd1, rd1 + b) / a);
    const double hi = std::min(1.0, std::max(rd1, rd1 + b) / a);
    if (hi > lo) {
      const double s = 0.5 * (lo + hi);
      const Vec3 p = p0 + d1 * s;
      const double t = dot(p - q0, d2) / e;
      if (t > 0.0 && t < 1.0) offer(p, q0 + d2 * t, i, s, j, t);
    }
  }

  // Vertex of one edge against the interior of the other.
  auto vertex_interior = [&](std::size_t vk, std::size_t edge, const Vec3& e0, const Vec3& dir, double len2,
                             bool vertex_on_a, std::size_t vertex_edge, double vertex_param) {
    const double t = dot(v[vk] - e0, dir) / len2;
    if (!(t > 0.0 && t < 1.0)) return;
    if (!vertex_edge_separated(vk, edge, n)) return;
    const Vec3 q = e0 + dir * t;
    if (!vertex_critical(tangents, vk, q - v[vk])) return;
    if (vertex_on_a) {
      offer(v[vk], q, vertex_edge, vertex_param, edge, t);
    } else {
      offer(q, v[vk], edge, t, vertex_edge, vertex_param);
    }
  };
  vertex_interior(i, j, q0, d2, e, true, i, 0.0);
  vertex_interior((i + 1) % n, j, q0, d2, e, true, i, 1.0);
  vertex_interior(j, i, p0, d1, a, false, j, 0.0);
  vertex_interior((j + 1) % n, i, p0, d1, a, false, j, 1.0);

  // Vertex-vertex.
  for (int ka = 0; ka < 2; ++ka) {
    for (int kb = 0; kb < 2; ++kb) {
      const std::size_t va = (i + static_cast<std::size_t>(ka)) % n;
      const std::size_t vb = (j + static_cast<std::size_t>(kb)) % n;
      if (cyclic_distance(va, vb, n) < 3) continue;
      const Vec3 w = v[vb] - v[va];
      if (vertex_critical(tangents, va, w) && vertex_critical(tangents, vb, -w)) {
        offer(v[va], v[vb], i, static_cast<double>(ka), j, static_cast<double>(kb));
      }
    }
  }
  return best;
}

DcsdResult dcsd_poly(const Polygon3& p) {
  const std::size_t n = p.size();
  DcsdResult out;
  bool any_pair = false;
  const std::vector<Vec3> tangents = unit_tangents(p.vertices());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (edges_adjacent(n, i, j)) continue;
      any_pair = true;
      const ChordCandidate c = pair_critical_chord(p.vertices(), tangents, i, j);
      if (c.length < out.length) {
        out.length = c.length;
        out.chord = c.chord;
      }
    }
  }
  if (any_pair && !out.chord) {
    throw Error(ErrorKind::NoCriticalChord, "no doubly-critical chord found on an embedded polygon");
  }
  return out;
}

ThicknessReport thickness(const Polygon3& p) {
  ThicknessReport r;
  const MinRadResult mr = min_rad(p);
  const DcsdResult dc = dcsd_poly(p);
  r.min_rad = mr.value;
  r.dcsd = dc.length;
  r.thickness = std::min(r.min_rad, r.dcsd / 2.0);
  if (r.min_rad <= r.dcsd / 2.0) {
    r.argmin_vertex = mr.vertex;
  } else {
    r.argmin_chord = dc.chord;
  }
  return r;
}

double ropelength(const Polygon3& p) { return total_length(p) / thickness(p).thickness; }

Polygon3 normalize_to_unit_thickness(const Polygon3& p) {
  const double th = thickness(p).thickness;
  if (!(th > 0.0) || !std::isfinite(th)) {
    throw Error(ErrorKind::InvalidPolygon, "thickness is not a positive finite number");
  }
  std::vector<Vec3> out(p.vertices().begin(), p.vertices().end());
  const double scale = 1.0 / th;
  for (Vec3& x : out) x *= scale;
  return Polygon3::unchecked(std::move(out));
}

}  // namespace thickknot
