#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagram.hpp"

namespace thickknot {

enum class MoveKind { R1Plus, R1Minus, R2Plus, R2Minus, R3 };

std::string_view move_kind_name(MoveKind k) noexcept;
/// Accepts "R1+", "R1-", "R2+", "R2-", "R3" (a Unicode minus is also read).
MoveKind parse_move_kind(std::string_view s);
/// R1+ <-> R1-, R2+ <-> R2-, R3 unchanged.
MoveKind inverse_kind(MoveKind k) noexcept;
int crossing_delta(MoveKind k) noexcept;

/// One Reidemeister move at a concrete site of a concrete diagram.
///
///  R1+  a = arc, sign = curl sign, over_first = first new passage is over.
///       The loop lies left of the arc iff over_first == (sign < 0).
///  R1-  a = crossing whose two passages are consecutive.
///  R2+  a = dart of the pushed (over) arc, b = dart of the arc pushed
///       under; both darts bound the same face. a == b pushes an arc over
///       itself, and finger_first tells whether the finger comes first along
///       the arc. On the crossingless diagram a = b = -1 and left selects
///       the face.
///  R2-  a < b = the two crossings of a bigon.
///  R3   a = a dart of the trigon face.
struct TypedMove {
  MoveKind kind = MoveKind::R1Plus;
  int a = -1;
  int b = -1;
  int sign = 0;
  bool over_first = false;
  bool finger_first = false;
  bool left = false;
};

std::string describe(const TypedMove& m);

/// Applies m or throws InvalidSite.
Diagram apply_move(const Diagram& d, const TypedMove& m);

struct MoveResult {
  TypedMove move;
  Diagram result;
  std::string key;
};

/// Every single-move neighbor of d, one entry per (result key, kind), sorted
/// by kind then site.
std::vector<MoveResult> enumerate_moves(const Diagram& d);

struct BallEdge {
  int from = 0;
  int to = 0;
  MoveKind kind = MoveKind::R1Plus;
  friend bool operator==(const BallEdge&, const BallEdge&) = default;
};

/// Radius-R neighborhood of a diagram in the S^2 Reidemeister graph. Vertex 0
/// is the root; vertices are in BFS order. Edges are stored in the
/// crossing-increasing direction (kinds R1+, R2+) or with from < to for R3.
struct RootedTypedBall {
  std::string root;
  int radius = 0;
  std::vector<std::string> keys;
  std::vector<int> crossings;
  std::vector<int> distance;
  std::vector<Diagram> diagrams;
  std::vector<BallEdge> edges;

  std::size_t size() const noexcept { return keys.size(); }
  /// Index of a key or -1.
  int find(std::string_view key) const;
};

inline constexpr std::size_t kDefaultBallBudget = 200000;

/// BFS closure; the result is the induced subgraph on all diagrams within
/// distance R. Throws BudgetExceeded once the vertex count passes budget.
RootedTypedBall ball(const Diagram& root, int radius, std::size_t budget = kDefaultBallBudget);

std::string ball_to_json(const RootedTypedBall& b);

}  // namespace thickknot
