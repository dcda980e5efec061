#pragma once

#include <string>
#include <vector>

#include "moves.hpp"
#include "polygon.hpp"
#include "projection.hpp"

namespace thickknot {

/// Piecewise-linear family of polygons: keyframes are spread evenly over
/// t in [0, 1] and every vertex moves linearly between consecutive ones.
struct PolygonPath {
  std::string id;
  std::vector<std::vector<Vec3>> keyframes;

  /// Checks equal vertex counts and that every keyframe is embedded.
  static PolygonPath make(std::string id, std::vector<std::vector<Vec3>> keyframes);
  PolygonPath reversed() const;
  std::size_t vertex_count() const { return keyframes.front().size(); }
};

/// Raw per-vertex blend at t; throws Degenerate if it is not embedded.
Polygon3 blend(const PolygonPath& path, double t);
/// Blend rescaled to unit thickness.
Polygon3 interpolate(const PolygonPath& path, double t);

inline constexpr double kThicknessSlack = 1e-3;

struct AdmissibilityReport {
  bool admissible = false;
  double max_length = 0.0;  // largest ropelength, i.e. length at unit thickness
  double argmax_t = 0.0;
  double min_thickness = kInf;  // smallest raw thickness of the blend
  double argmin_t = 0.0;
  std::size_t samples = 0;
};

/// Samples n_samples + 1 evenly spaced parameters. Admissible when every
/// sample has ropelength <= lambda and raw thickness >= 1 - slack.
AdmissibilityReport admissibility_check(const PolygonPath& path, double lambda, int n_samples,
                                        double slack = kThicknessSlack);

struct Event {
  double t = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  MoveKind kind = MoveKind::R1Plus;  // direction of travel: before -> after
  std::string before;
  std::string after;
  double lambda = 0.0;  // ropelength at t
  TypedMove witness;
};

/// Reidemeister family of a typed kind: 1, 2 or 3.
int move_family(MoveKind k) noexcept;

struct SweepSample {
  double t = 0.0;
  std::string key;
  double level = 0.0;  // ropelength
};

struct SweepOptions {
  double step = 1e-3;
  double t_tol = 1e-9;
  /// Thresholds for the endpoint check.
  RegularityThresholds endpoint{};
  /// Interior samples only need a well-defined diagram.
  RegularityThresholds interior{1e-10, 1e-12, 1e-12, 1e-14};
};

/// Key changes along the path, bracketed to width t_tol and classified by a
/// single-move witness. Throws NotRegular when an endpoint projection is not
/// regular and DegenerateEvent when a bracket is not one Reidemeister move.
std::vector<Event> detect_events(const PolygonPath& path, const Direction& u, const SweepOptions& opt = {});

/// Upper bound for the birth scale of the move: the ropelength at the event.
inline double event_birth_scale(const Event& e) { return e.lambda; }

struct SweepReport {
  std::string path_id;
  Vec3 direction;
  std::vector<Event> events;
  /// Grid samples plus both ends of every event bracket, sorted by t.
  std::vector<SweepSample> samples;
  AdmissibilityReport admissibility;
  double lambda = kInf;
};

SweepReport sweep(const PolygonPath& path, const Direction& u, const SweepOptions& opt = {}, double lambda = kInf);
/// Sweeps of several paths on `jobs` threads (0: one per core); result i
/// belongs to paths[i].
std::vector<SweepReport> sweep_all(const std::vector<PolygonPath>& paths, const Direction& u,
                                   const SweepOptions& opt = {}, double lambda = kInf, std::size_t jobs = 0);

std::string sweep_to_json(const SweepReport& r);

}  // namespace thickknot
