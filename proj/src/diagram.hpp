#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace thickknot {

/// One visit of the oriented knot to a crossing.
struct Passage {
  int crossing = 0;
  bool over = false;
  friend bool operator==(const Passage&, const Passage&) = default;
};

/// Knot diagram on S^2 stored as a signed Gauss code: the 2n crossing visits
/// in traversal order plus the sign of every crossing.
///
/// Arc k runs from passage k to passage k+1 (cyclically). Each crossing owns
/// four darts 4c+0..4c+3 listed counterclockwise and starting with the
/// incoming under-strand, which is the PD slot convention. The diagram is
/// valid only when this rotation system is planar (F = n + 2).
class Diagram {
 public:
  Diagram() = default;

  static Diagram from_gauss(std::vector<Passage> passages, std::vector<int> signs);
  /// PD code with 1-based arc labels, slots counterclockwise from the
  /// incoming under-strand.
  static Diagram from_pd(const std::vector<std::array<int, 4>>& pd);
  /// Lines of the form "X a b c d"; '#' starts a comment line. The literal
  /// text "empty" (or no crossings at all) gives the crossingless diagram.
  static Diagram parse_pd_text(std::string_view text);

  int n_crossings() const noexcept { return static_cast<int>(signs_.size()); }
  int n_arcs() const noexcept { return static_cast<int>(passages_.size()); }
  const std::vector<Passage>& passages() const noexcept { return passages_; }
  const std::vector<int>& signs() const noexcept { return signs_; }

  std::vector<std::array<int, 4>> pd() const;
  std::string pd_text() const;

  // Dart structure. Darts of crossing c are 4c..4c+3 in counterclockwise order.
  int opp(int dart) const noexcept { return opp_[static_cast<std::size_t>(dart)]; }
  static int rot(int dart) noexcept { return (dart & ~3) | ((dart + 1) & 3); }
  static int rot_inv(int dart) noexcept { return (dart & ~3) | ((dart + 3) & 3); }
  static bool dart_over(int dart) noexcept { return (dart & 1) != 0; }
  /// Passage position at which the dart meets its crossing.
  int dart_passage(int dart) const noexcept { return pos_[static_cast<std::size_t>(dart)]; }
  /// True when the knot leaves the crossing along this dart.
  bool dart_out(int dart) const noexcept { return out_[static_cast<std::size_t>(dart)] != 0; }
  /// Arc carried by the dart.
  int dart_arc(int dart) const noexcept;
  /// Dart of crossing c carrying the given passage in or out.
  int dart_of(int passage, bool outgoing) const noexcept;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.passages_ == b.passages_ && a.signs_ == b.signs_;
  }

 private:
  void build_darts();

  std::vector<Passage> passages_;
  std::vector<int> signs_;
  std::vector<int> opp_;
  std::vector<int> pos_;
  std::vector<char> out_;
};

/// A face is the cycle of darts d -> rot(opp(d)); each dart stands for
/// traversing its arc away from its crossing with the face on the right.
struct Face {
  std::vector<int> darts;
};

std::vector<Face> faces(const Diagram& d);
/// face_of[dart] for every dart.
std::vector<int> dart_faces(const Diagram& d, const std::vector<Face>& fs);

/// Key identifying the diagram up to orientation-preserving isotopy of S^2
/// and reversal of the knot orientation. Mirror images get distinct keys.
std::string canonical_code(const Diagram& d);

inline constexpr std::string_view kEmptyKey = "O";

Diagram mirror(const Diagram& d);
int writhe(const Diagram& d);
long long determinant(const Diagram& d);

/// Crossing count encoded in a canonical key.
int key_crossings(std::string_view key);

/// Rebuilds a diagram from its canonical key (orientation and labels are
/// arbitrary). Throws Parse on malformed keys.
Diagram diagram_from_key(std::string_view key);

/// Key of the mirror image, computed from the key alone.
std::string mirror_key(std::string_view key);

}  // namespace thickknot
