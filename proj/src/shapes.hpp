#pragma once

#include <vector>

#include "geometry.hpp"

// Vertex generators for standard test curves.
namespace thickknot::shapes {

std::vector<Vec3> regular_polygon(int n, double radius = 1.0, double phase = 0.0);

/// (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t) sampled at n points; three
/// crossings when viewed along z.
std::vector<Vec3> trefoil(int n, double phase = 0.0);

/// Same vertices with z negated (mirror image through the xy-plane).
std::vector<Vec3> reflect_z(std::vector<Vec3> v);

}  // namespace thickknot::shapes
