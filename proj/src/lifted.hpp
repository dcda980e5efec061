#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pattern.hpp"
#include "sweep.hpp"

namespace thickknot {

/// One sampled polygon. Samples with bit-identical vertices are one node.
struct LiftedNode {
  std::string key;
  int crossings = 0;
  double level = 0.0;  // ropelength
};

/// Sampled segment between two nodes. Same-key segments have event = -1;
/// event links run from the sample before the event to the one after it.
struct LiftedLink {
  int a = 0;
  int b = 0;
  double level = 0.0;
  int event = -1;
  MoveKind kind = MoveKind::R1Plus;
};

struct EventRecord {
  std::string path_id;
  Event event;
};

/// The lifted graph at one level: vertices are same-key fiber classes.
struct LevelGraph {
  double lambda = 0.0;
  TypedGraph graph;
  std::vector<int> fiber;      // ordinal among vertices sharing a key
  std::vector<double> birth;   // smallest member level
  std::vector<std::vector<int>> members;
  std::vector<double> edge_birth;
  std::vector<int> edge_witness;  // event id
  std::vector<int> vertex_of_node;  // -1 when the node is above lambda
};

struct MergeTree {
  struct Node {
    double height = 0.0;
    int parent = -1;
    std::vector<int> children;
  };
  /// Leaves first, in the order of ideal_components().
  std::vector<Node> nodes;
  std::size_t leaves = 0;
  int root() const;
  std::size_t internal() const { return nodes.size() - leaves; }
};

class FilteredLiftedGraph {
 public:
  /// sweeps[i] must be the sweep of paths[i] along u. Throws
  /// InconsistentEvent when a key change between consecutive samples has no
  /// matching event.
  static FilteredLiftedGraph build(const std::vector<PolygonPath>& paths, const std::vector<SweepReport>& sweeps,
                                   const Direction& u);

  const std::vector<LiftedNode>& nodes() const { return nodes_; }
  const std::vector<LiftedLink>& links() const { return links_; }
  const std::vector<EventRecord>& events() const { return events_; }
  /// Sorted distinct node and link levels.
  const std::vector<double>& grid() const { return grid_; }
  const Vec3& direction() const { return u_; }

  double lowest() const;
  /// Levels at most lowest() * (1 + 1e-6) count as ideal.
  double ideal_level() const;
  /// Largest grid value <= lambda, or -inf below the grid. Throws
  /// LevelNotSampled for NaN.
  double resolve(double lambda) const;

  LevelGraph at(double lambda) const;
  LevelGraph top() const { return at(grid_.empty() ? 0.0 : grid_.back()); }

  /// Connected components of the level graph as sorted node lists, ordered
  /// by smallest node.
  std::vector<std::vector<int>> components_at(double lambda) const;
  /// Vertex of at(hi) containing each vertex of at(lo).
  std::vector<int> filtration_map(double lo, double hi) const;

  /// Components at the ideal level (the merge-tree leaves).
  std::vector<std::vector<int>> ideal_components() const;
  /// Smallest grid level joining two ideal components; +inf if never.
  double merge_scale(std::size_t ci, std::size_t cj) const;
  MergeTree merge_tree() const;

  /// Hop distance from the ideal vertices; nullopt for +inf.
  std::optional<int> reidemeister_radius(double lambda) const;
  std::optional<int> diameter(double lambda) const;
  /// Vertices of `window` (all vertices when empty) by crossing number.
  std::map<int, int> crossing_profile(double lambda, const std::vector<int>& window = {}) const;

 private:
  std::vector<LiftedNode> nodes_;
  std::vector<LiftedLink> links_;
  std::vector<EventRecord> events_;
  std::vector<double> grid_;
  Vec3 u_;
};

/// {direction, lambda, grid, vertices:[{id, key, fiber, birth}],
///  edges:[{a, b, kind, birth, witness}]} at the given level.
std::string lifted_to_json(const FilteredLiftedGraph& g, double lambda);
/// {leaves, parent:[...], height:[...], components:[[node...]...]}.
std::string merge_tree_to_json(const FilteredLiftedGraph& g, const MergeTree& t);

}  // namespace thickknot
