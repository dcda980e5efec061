#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moves.hpp"

namespace thickknot {

/// Vertex-labelled graph with typed, normalized edges (see BallEdge).
struct TypedGraph {
  std::vector<std::string> keys;
  std::vector<int> crossings;
  std::vector<BallEdge> edges;

  std::size_t size() const noexcept { return keys.size(); }
  static TypedGraph from_ball(const RootedTypedBall& b);
  /// Same graph with every key replaced by the key of the mirror diagram.
  TypedGraph mirrored() const;
};

enum class MirrorPolicy { Direct, Either };
enum class LabelMode { Key, Crossings };

struct FinitePattern {
  TypedGraph graph;
  int root = 0;
  LabelMode labels = LabelMode::Key;
  MirrorPolicy mirror = MirrorPolicy::Direct;

  static FinitePattern from_ball(const RootedTypedBall& b, MirrorPolicy policy = MirrorPolicy::Direct);
  void validate() const;
};

struct Occurrence {
  std::vector<int> map;  // pattern vertex -> host vertex
  bool mirrored = false;
};

/// Injective, type-preserving morphism sending the pattern root into
/// root_candidates (every host vertex when empty). Deterministic: the first
/// map in lexicographic candidate order is returned.
std::optional<Occurrence> occurs(const FinitePattern& q, const TypedGraph& host,
                                 const std::vector<int>& root_candidates = {});

/// Post-hoc check of injectivity, labels, edge types and root placement.
bool is_occurrence(const FinitePattern& q, const TypedGraph& host, const Occurrence& occ,
                   const std::vector<int>& root_candidates = {});

}  // namespace thickknot
