#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sweep.hpp"

// Constructed one-parameter families with known wall crossings. Every family
// is viewed along +z and scaled so the blends keep raw thickness >= 1.
namespace thickknot::families {

struct Family {
  std::string name;
  Vec3 direction{0.0, 0.0, 1.0};
  std::vector<PolygonPath> paths;
};

/// Uniformly scales every keyframe of every path so the smallest raw
/// thickness over `samples` + 1 parameters per path becomes `target`.
/// One factor for the whole set keeps shared keyframes bit-identical.
void scale_to_thickness(std::vector<PolygonPath>& paths, double target = 1.0, int samples = 400);

/// A strand twists a loop into view: one R1 event. sign flips the handedness.
Family curl_insertion(int sign = 1);

/// A lifted finger crosses over another strand: one R2 event.
Family push_over();

/// Three stacked chords; the lowest slides across the crossing of the other
/// two: one R3 event.
Family trigon_slide();

/// Regular 16-gon rotated, stretched, translated and relaxed again. Two
/// ideal clusters joined through the most stretched shape.
Family two_cluster(double stretch = 1.6);

/// Three clusters with barriers at stretch1 < stretch2.
Family three_cluster(double stretch1 = 1.4, double stretch2 = 1.8);

/// Ropelength of the regular 16-gon stretched along x by `stretch`.
double stretched_ropelength(double stretch);

/// Unknot family whose paths share keyframes and realize every typed edge of
/// the radius-one ball of the crossingless diagram. A seeded perturbation
/// common to all keyframes makes the projections generic.
Family recognition(std::uint64_t seed = 1);

/// Single keyframe at a regular n-gon: no events.
Family constant(int n = 8);

/// Every named family: "curl", "push-over", "trigon", "two-cluster",
/// "three-cluster", "recognition", "constant".
Family by_name(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> names();

}  // namespace thickknot::families
