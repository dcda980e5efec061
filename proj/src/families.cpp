#include "families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "error.hpp"
#include "shapes.hpp"

namespace thickknot::families {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vec3> scaled(std::vector<Vec3> v, double k) {
  for (Vec3& p : v) p *= k;
  return v;
}

std::vector<Vec3> translated(std::vector<Vec3> v, const Vec3& c) {
  for (Vec3& p : v) p += c;
  return v;
}

std::vector<Vec3> stretched_x(std::vector<Vec3> v, double s) {
  for (Vec3& p : v) p.x *= s;
  return v;
}

// Points strictly between a and b at spacing at most h.
void fill_segment(std::vector<Vec3>& out, const Vec3& a, const Vec3& b, double h) {
  const int m = std::max(1, static_cast<int>(std::ceil(norm(b - a) / h - 1e-9)));
  for (int i = 1; i < m; ++i) out.push_back(a + (b - a) * (static_cast<double>(i) / m));
}

// Trochoid with amplitude d (a loop once d > 1); the (y, w) displacement is
// turned by phi about the x-axis. phi = pi/2 shows a fold, phi = 0 a curl.
std::vector<Vec3> curl_frame(double phi, int sign, double d = 2.0) {
  constexpr int kSteps = 40;
  constexpr double kH = 1.0, kDepth = 6.0, kMargin = 1.0;
  std::vector<Vec3> v;
  const double c = std::cos(phi), s = std::sin(phi);
  for (int k = 0; k <= kSteps; ++k) {
    const double th = -kPi + 2.0 * kPi * k / kSteps;
    const double x = th - d * std::sin(th);
    const double y = d * (1.0 + std::cos(th));
    const double w = sign * kH * std::sin(th);
    v.push_back({x, y * c - w * s, y * s + w * c});
  }
  const double xr = kPi + kMargin;
  const Vec3 corners[] = {{xr, 0, 0}, {xr, -kDepth, 0}, {-xr, -kDepth, 0}, {-xr, 0, 0}};
  Vec3 prev = v.back();
  for (const Vec3& q : corners) {
    fill_segment(v, prev, q, 1.0);
    v.push_back(q);
    prev = q;
  }
  fill_segment(v, prev, v.front(), 1.0);
  return v;
}

std::vector<Vec3> push_over_frame(double tip_y) {
  return {{-6, 0, 0}, {6, 0, 0},      {6, 6, 0},       {3.5, 6, 0}, {1.5, 5, 3},
          {0, tip_y, 3}, {-1.5, 5, 3}, {-3.5, 6, 0}, {-6, 6, 0}};
}

std::vector<Vec3> trigon_frame(double offset) {
  constexpr double kR = 8.0;
  constexpr int kChord = 5, kArc = 5;
  constexpr double kZ1 = 4.0, kZ2 = 2.0, kZ3 = 0.0;
  auto on_circle = [&](double a, double z) { return Vec3{kR * std::cos(a), kR * std::sin(a), z}; };
  auto chord = [&](std::vector<Vec3>& out, const Vec3& a, const Vec3& b) {
    for (int i = 0; i <= kChord; ++i) out.push_back(a + (b - a) * (static_cast<double>(i) / kChord));
  };
  auto arc = [&](std::vector<Vec3>& out, double a0, double a1, double z0, double z1) {
    for (int j = 1; j < kArc; ++j) {
      const double f = static_cast<double>(j) / kArc;
      out.push_back(on_circle(a0 + (a1 - a0) * f, z0 + (z1 - z0) * f));
    }
  };
  const double d120 = 2.0 * kPi / 3.0;
  const Vec3 d3{std::cos(d120), std::sin(d120), 0.0};
  const Vec3 n3{-std::sin(d120), std::cos(d120), 0.0};
  const double h = std::sqrt(kR * kR - offset * offset);
  const Vec3 s3 = n3 * offset - d3 * h + Vec3{0, 0, kZ3};
  const Vec3 e3 = n3 * offset + d3 * h + Vec3{0, 0, kZ3};
  double a_s3 = std::atan2(s3.y, s3.x);
  if (a_s3 < 0) a_s3 += 2.0 * kPi;
  const double a_e3 = std::atan2(e3.y, e3.x);

  std::vector<Vec3> v;
  chord(v, on_circle(kPi, kZ1), on_circle(0.0, kZ1));
  arc(v, 0.0, kPi / 3.0, kZ1, kZ2);
  chord(v, on_circle(kPi / 3.0, kZ2), on_circle(4.0 * kPi / 3.0, kZ2));
  arc(v, 4.0 * kPi / 3.0, a_s3, kZ2, kZ3);
  chord(v, s3, e3);
  arc(v, a_e3, kPi, kZ3, kZ1);
  return v;
}

std::vector<Vec3> base16() { return shapes::regular_polygon(16, 1.0, 0.0); }
std::vector<Vec3> rotated16() { return shapes::regular_polygon(16, 1.0, kPi / 16.0); }

// Crossings of the projection are the roots of 4c^2 + a c + (s - 1) in
// (-1, 1), located at x = 3c.
std::vector<Vec3> lissajous_frame(double a, double s, const std::vector<Vec3>& noise) {
  const int n = static_cast<int>(noise.size());
  std::vector<Vec3> v(n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * k / n;
    const double st = std::sin(t), ct = std::cos(t);
    v[k] = Vec3{3.0 * ct, std::sin(3.0 * t) + s * st + a * st * ct, -2.0 * st} + noise[k];
  }
  return v;
}

double min_raw_thickness(const PolygonPath& p, int samples) {
  double m = kInf;
  const int n = p.keyframes.size() == 1 ? 0 : samples;
  for (int i = 0; i <= n; ++i) {
    const double t = n == 0 ? 0.0 : static_cast<double>(i) / n;
    m = std::min(m, thickness(blend(p, t)).thickness);
  }
  return m;
}

Family finish(std::string name, std::vector<PolygonPath> paths) {
  scale_to_thickness(paths);
  return Family{std::move(name), {0.0, 0.0, 1.0}, std::move(paths)};
}

}  // namespace

void scale_to_thickness(std::vector<PolygonPath>& paths, double target, int samples) {
  double m = kInf;
  for (const PolygonPath& p : paths) m = std::min(m, min_raw_thickness(p, samples));
  if (!(m > 0.0 && std::isfinite(m))) throw Error(ErrorKind::Degenerate, "family has a degenerate blend");
  const double k = target / m;
  for (PolygonPath& p : paths) {
    for (auto& f : p.keyframes) f = scaled(std::move(f), k);
  }
}

Family curl_insertion(int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "curl sign must be +1 or -1");
  constexpr int kFrames = 12;
  // a shorter fold first, so the crossingless side holds the lowest level
  std::vector<std::vector<Vec3>> kf{curl_frame(0.5 * kPi, sign, 1.0)};
  for (int j = 0; j <= kFrames; ++j) kf.push_back(curl_frame(0.5 * kPi * (1.0 - static_cast<double>(j) / kFrames), sign));
  return finish("curl", {PolygonPath::make(sign > 0 ? "curl+" : "curl-", std::move(kf))});
}

Family push_over() {
  return finish("push-over", {PolygonPath::make("push-over", {push_over_frame(2.0), push_over_frame(-2.0)})});
}

Family trigon_slide() {
  constexpr int kFrames = 8;
  std::vector<std::vector<Vec3>> kf;
  for (int j = 0; j <= kFrames; ++j) kf.push_back(trigon_frame(-2.0 + 4.0 * j / kFrames));
  return finish("trigon", {PolygonPath::make("trigon-slide", std::move(kf))});
}

double stretched_ropelength(double stretch) { return ropelength(Polygon3::make(stretched_x(base16(), stretch))); }

Family two_cluster(double stretch) {
  const Vec3 c{0.0, 6.0, 0.0};
  const auto a = base16(), r = rotated16(), s = stretched_x(a, stretch);
  return finish("two-cluster",
                {PolygonPath::make("bridge", {r, a, s, translated(s, c), translated(a, c), translated(r, c)})});
}

Family three_cluster(double stretch1, double stretch2) {
  const Vec3 c1{0.0, 6.0, 0.0}, c2{0.0, 12.0, 0.0};
  const auto a = base16(), r = rotated16(), s1 = stretched_x(a, stretch1), s2 = stretched_x(a, stretch2);
  return finish("three-cluster",
                {PolygonPath::make("bridges", {r, a, s1, translated(s1, c1), translated(a, c1), translated(r, c1),
                                               translated(a, c1), translated(s2, c1), translated(s2, c2),
                                               translated(a, c2), translated(r, c2)})});
}

Family recognition(std::uint64_t seed) {
  constexpr int kVertices = 129;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-1e-7, 1e-7);
  std::vector<Vec3> noise(kVertices);
  for (Vec3& e : noise) e = {jitter(rng), jitter(rng), jitter(rng)};
  auto at = [&](double a, double s) { return lissajous_frame(a, s, noise); };
  std::vector<PolygonPath> paths;
  paths.push_back(PolygonPath::make("push", {at(0, 2), at(0, -1)}));
  paths.push_back(PolygonPath::make("release-left", {at(0, -1), at(2, -2)}));
  paths.push_back(PolygonPath::make("release-right", {at(0, -1), at(-2, -2)}));
  paths.push_back(PolygonPath::make("kink-left", {at(0, 2), at(10, 8), at(10, 6), at(2, -2)}));
  paths.push_back(PolygonPath::make("kink-right", {at(0, 2), at(-10, 8), at(-10, 6), at(-2, -2)}));
  return finish("recognition", std::move(paths));
}

Family constant(int n) {
  auto v = shapes::regular_polygon(n, 1.0, 0.1);
  return finish("constant", {PolygonPath::make("constant", {std::move(v)})});
}

std::vector<std::string> names() {
  return {"curl", "push-over", "trigon", "two-cluster", "three-cluster", "recognition", "constant"};
}

Family by_name(const std::string& name, std::uint64_t seed) {
  if (name == "curl") return curl_insertion(1);
  if (name == "push-over") return push_over();
  if (name == "trigon") return trigon_slide();
  if (name == "two-cluster") return two_cluster();
  if (name == "three-cluster") return three_cluster();
  if (name == "recognition") return recognition(seed);
  if (name == "constant") return constant();
  throw Error(ErrorKind::InvalidArgument, "unknown family: " + name);
}

}  // namespace thickknot::families
