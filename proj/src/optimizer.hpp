#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polygon.hpp"

namespace thickknot {

struct AnnealConfig {
  std::uint64_t seed = 1;
  std::int64_t iterations = 700000;
  /// Proposal standard deviation as a fraction of the mean edge length.
  double initial_step = 0.05;
  /// Starting temperature as a fraction of the starting ropelength.
  double temperature = 1e-3;
  /// Geometric cooling factor per iteration.
  double ratio = 0.999993;
  /// Below this relative temperature only strict decreases are accepted.
  double freeze = 1e-10;
  /// Slack on the unit-thickness normalization of the output.
  double thickness_slack = 1e-3;
  int restarts = 1;
  /// Threads for the restarts (0: one per core). Results do not depend on it.
  std::size_t jobs = 0;
  /// Record every n-th iteration in the trace (0 disables the trace).
  std::int64_t trace_every = 100;

  void validate() const;
};

struct TraceRow {
  std::int64_t iteration = 0;
  double ropelength = 0.0;
  bool accepted = false;
};

struct TightenResult {
  Polygon3 polygon;  // unit thickness
  double ropelength = 0.0;
  double initial_ropelength = 0.0;
  std::uint64_t seed = 0;
  std::int64_t accepted = 0;
  std::int64_t rejected_embedding = 0;
  std::vector<TraceRow> trace;
};

/// Simulated annealing on single-vertex Gaussian moves. A move is rejected if
/// either swept triangle is pierced by another edge, so the knot type is
/// preserved. Returns the best polygon seen; with restarts > 1 the restarts
/// run concurrently with derived seeds and the lowest result wins.
TightenResult tighten(const Polygon3& start, const AnnealConfig& cfg);
/// Every restart in order; run r uses the seed sequence {seed lo, seed hi, r}.
std::vector<TightenResult> tighten_runs(const Polygon3& start, const AnnealConfig& cfg);

struct IdealStratum {
  double rop_min = kInf;
  std::vector<std::size_t> representatives;  // indices into the runs
};

/// Runs within 1e-3 relative of the best ropelength.
IdealStratum ideal_stratum_estimate(const std::vector<TightenResult>& runs, double rel_tol = 1e-3);

std::string trace_to_csv(const std::vector<TraceRow>& trace);

/// Regular n-gon with every vertex moved by a seeded uniform offset of at
/// most `amplitude` times the edge length.
std::vector<Vec3> perturbed_polygon(int n, double amplitude, std::uint64_t seed);

}  // namespace thickknot
