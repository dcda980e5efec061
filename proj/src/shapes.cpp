#include "shapes.hpp"

#include <cmath>
#include <numbers>

namespace thickknot::shapes {

std::vector<Vec3> regular_polygon(int n, double radius, double phase) {
  std::vector<Vec3> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double th = phase + 2.0 * std::numbers::pi * k / n;
    v.push_back({radius * std::cos(th), radius * std::sin(th), 0.0});
  }
  return v;
}

std::vector<Vec3> trefoil(int n, double phase) {
  std::vector<Vec3> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = phase + 2.0 * std::numbers::pi * k / n;
    v.push_back({std::sin(t) + 2 * std::sin(2 * t), std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t)});
  }
  return v;
}

std::vector<Vec3> reflect_z(std::vector<Vec3> v) {
  for (Vec3& p : v) p.z = -p.z;
  return v;
}

}  // namespace thickknot::shapes
