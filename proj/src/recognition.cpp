#include "recognition.hpp"

#include <algorithm>
#include <map>

#include "io.hpp"

namespace thickknot {

namespace {

MoveKind normalized_kind(MoveKind k) {
  if (k == MoveKind::R1Minus) return MoveKind::R1Plus;
  if (k == MoveKind::R2Minus) return MoveKind::R2Plus;
  return k;
}

// Lowest level at which every vertex label and edge kind of q is present;
// occurrence is impossible below it.
double feasible_from(const FinitePattern& q, const FilteredLiftedGraph& g, bool mirrored) {
  std::map<std::string, double> key_level;
  std::map<int, double> crossing_level;
  for (const LiftedNode& n : g.nodes()) {
    auto [k, kf] = key_level.emplace(n.key, n.level);
    if (!kf) k->second = std::min(k->second, n.level);
    auto [c, cf] = crossing_level.emplace(n.crossings, n.level);
    if (!cf) c->second = std::min(c->second, n.level);
  }
  std::map<MoveKind, double> kind_level;
  for (const LiftedLink& l : g.links()) {
    if (l.event < 0) continue;
    auto [it, fresh] = kind_level.emplace(normalized_kind(l.kind), l.level);
    if (!fresh) it->second = std::min(it->second, l.level);
  }
  double need = -kInf;
  for (std::size_t v = 0; v < q.graph.size(); ++v) {
    if (q.labels == LabelMode::Key) {
      const std::string key = mirrored ? mirror_key(q.graph.keys[v]) : q.graph.keys[v];
      auto it = key_level.find(key);
      if (it == key_level.end()) return kInf;
      need = std::max(need, it->second);
    } else {
      auto it = crossing_level.find(q.graph.crossings[v]);
      if (it == crossing_level.end()) return kInf;
      need = std::max(need, it->second);
    }
  }
  for (const BallEdge& e : q.graph.edges) {
    auto it = kind_level.find(e.kind);
    if (it == kind_level.end()) return kInf;
    need = std::max(need, it->second);
  }
  return need;
}

}  // namespace

Visibility visibility_length(const FinitePattern& q, const FilteredLiftedGraph& g) {
  q.validate();
  Visibility out;
  double start = feasible_from(q, g, false);
  if (q.mirror == MirrorPolicy::Either) start = std::min(start, feasible_from(q, g, true));
  if (start == kInf) return out;
  const auto& grid = g.grid();
  for (auto it = std::lower_bound(grid.begin(), grid.end(), start); it != grid.end(); ++it) {
    const LevelGraph lg = g.at(*it);
    if (auto occ = occurs(q, lg.graph)) {
      out.lambda = *it;
      out.lifted = occ->map;
      out.occurrence = std::move(occ);
      return out;
    }
  }
  return out;
}

RecognitionEstimate recognition_length_estimate(const Diagram& root, const std::vector<int>& radii, int radius,
                                                const FilteredLiftedGraph& g, MirrorPolicy policy,
                                                std::size_t budget) {
  RecognitionEstimate r;
  r.root_key = canonical_code(root);
  r.radius = radius;
  const FinitePattern q = FinitePattern::from_ball(ball(root, radius, budget), policy);
  r.pattern_vertices = q.graph.size();
  r.pattern_edges = q.graph.edges.size();
  r.visibility = visibility_length(q, g);
  for (int rad : radii) {
    const double lv = rad == radius ? r.visibility.lambda
                                    : visibility_length(FinitePattern::from_ball(ball(root, rad, budget), policy), g).lambda;
    r.by_radius.emplace_back(rad, lv);
  }
  return r;
}

std::string recognition_to_json(const RecognitionEstimate& r) {
  using nlohmann::json;
  const auto level = [](double x) { return io::number(x); };
  json by_radius = json::array();
  for (const auto& [rad, lv] : r.by_radius) by_radius.push_back({{"radius", rad}, {"lambda", level(lv)}});
  json j{{"root", r.root_key},
         {"radius", r.radius},
         {"pattern_vertices", r.pattern_vertices},
         {"pattern_edges", r.pattern_edges},
         {"lambda", level(r.visibility.lambda)},
         {"visible", r.visibility.occurrence.has_value()},
         {"by_radius", std::move(by_radius)},
         {"caveat", r.caveat}};
  if (r.visibility.occurrence) {
    j["map"] = r.visibility.lifted;
    j["mirrored"] = r.visibility.occurrence->mirrored;
  }
  return j.dump(2);
}

}  // namespace thickknot
