#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lifted.hpp"
#include "pattern.hpp"

namespace thickknot {

inline constexpr const char* kEmpiricalUpperBound = "empirical-upper-bound";

struct Visibility {
  double lambda = kInf;  // +inf when the pattern never occurs
  std::optional<Occurrence> occurrence;  // into at(lambda).graph
  std::vector<int> lifted;  // pattern vertex -> lifted vertex id at lambda
};

/// Smallest grid level at which q occurs in the lifted graph. Occurrence is
/// not monotone in the level (fibers merge), so every grid level from the
/// first feasible one is tried in order.
Visibility visibility_length(const FinitePattern& q, const FilteredLiftedGraph& g);

struct RecognitionEstimate {
  std::string root_key;
  int radius = 0;  // the operator-supplied characteristic radius
  std::size_t pattern_vertices = 0;
  std::size_t pattern_edges = 0;
  Visibility visibility;
  /// Visibility length of ball(root, r) for each requested r.
  std::vector<std::pair<int, double>> by_radius;
  std::string caveat = kEmpiricalUpperBound;
};

/// Visibility length of ball(root, radius). The root of the ball must land
/// on a lifted vertex carrying the root key. Throws BudgetExceeded from ball.
RecognitionEstimate recognition_length_estimate(const Diagram& root, const std::vector<int>& radii, int radius,
                                                const FilteredLiftedGraph& g,
                                                MirrorPolicy policy = MirrorPolicy::Direct,
                                                std::size_t budget = kDefaultBallBudget);

std::string recognition_to_json(const RecognitionEstimate& r);

}  // namespace thickknot
