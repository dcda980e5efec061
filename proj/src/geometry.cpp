#include "geometry.hpp"
#include "error.hpp"

#include <algorithm>

namespace thickknot {

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidPolygon: return "InvalidPolygon";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::NoCriticalChord: return "NoCriticalChord";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::InvalidSite: return "InvalidSite";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::DegenerateEvent: return "DegenerateEvent";
    case ErrorKind::InconsistentEvent: return "InconsistentEvent";
    case ErrorKind::LevelNotSampled: return "LevelNotSampled";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

// Standard clamped closest-point computation (Ericson, Real-Time Collision
// Detection, 5.1.9) with the degenerate-segment branches kept.
SegmentClosest segment_closest(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const Vec3 r = p0 - q0;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  double s = 0.0, t = 0.0;
  if (a <= 0.0 && e <= 0.0) {
    return {norm2(r), 0.0, 0.0};
  }
  if (a <= 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const Vec3 cp = p0 + d1 * s;
  const Vec3 cq = q0 + d2 * t;
  return {norm2(cp - cq), s, t};
}

}  // namespace thickknot
