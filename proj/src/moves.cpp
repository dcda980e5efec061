#include "moves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "error.hpp"
#include "json.hpp"

namespace thickknot {

std::string_view move_kind_name(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::R1Plus: return "R1+";
    case MoveKind::R1Minus: return "R1-";
    case MoveKind::R2Plus: return "R2+";
    case MoveKind::R2Minus: return "R2-";
    case MoveKind::R3: return "R3";
  }
  return "?";
}

MoveKind parse_move_kind(std::string_view s) {
  if (s == "R1+") return MoveKind::R1Plus;
  if (s == "R1-" || s == "R1−") return MoveKind::R1Minus;
  if (s == "R2+") return MoveKind::R2Plus;
  if (s == "R2-" || s == "R2−") return MoveKind::R2Minus;
  if (s == "R3") return MoveKind::R3;
  throw Error(ErrorKind::Parse, "unknown move kind: " + std::string(s));
}

MoveKind inverse_kind(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::R1Plus: return MoveKind::R1Minus;
    case MoveKind::R1Minus: return MoveKind::R1Plus;
    case MoveKind::R2Plus: return MoveKind::R2Minus;
    case MoveKind::R2Minus: return MoveKind::R2Plus;
    case MoveKind::R3: return MoveKind::R3;
  }
  return k;
}

int crossing_delta(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::R1Plus: return 1;
    case MoveKind::R1Minus: return -1;
    case MoveKind::R2Plus: return 2;
    case MoveKind::R2Minus: return -2;
    case MoveKind::R3: return 0;
  }
  return 0;
}

std::string describe(const TypedMove& m) {
  std::ostringstream os;
  os << move_kind_name(m.kind);
  switch (m.kind) {
    case MoveKind::R1Plus:
      os << " arc=" << m.a << " sign=" << m.sign << (m.over_first ? " over-first" : " under-first")
         << (m.left ? " left" : " right");
      break;
    case MoveKind::R1Minus: os << " crossing=" << m.a; break;
    case MoveKind::R2Plus:
      os << " over=" << m.a << " under=" << m.b;
      if (m.a == m.b) os << (m.finger_first ? " finger-first" : " finger-last");
      if (m.a < 0) os << (m.left ? " left" : " right");
      break;
    case MoveKind::R2Minus: os << " crossings=" << m.a << ',' << m.b; break;
    case MoveKind::R3: os << " dart=" << m.a; break;
  }
  return os.str();
}

namespace {

[[noreturn]] void bad_site(const std::string& what) { throw Error(ErrorKind::InvalidSite, what); }

int wrap(int i, int m) { return ((i % m) + m) % m; }

bool arc_both(const Diagram& d, int arc, bool over) {
  const int m = d.n_arcs();
  return d.passages()[arc].over == over && d.passages()[wrap(arc + 1, m)].over == over;
}

// Inserts new passages after passage k for each (k, list); new crossing
// signs are appended in order.
Diagram insert_passages(const Diagram& d, const std::map<int, std::vector<Passage>>& ins,
                        const std::vector<int>& new_signs) {
  std::vector<Passage> seq;
  const int m = d.n_arcs();
  seq.reserve(m + 2 * new_signs.size());
  if (m == 0) {
    for (const auto& [k, list] : ins) seq.insert(seq.end(), list.begin(), list.end());
  }
  for (int k = 0; k < m; ++k) {
    seq.push_back(d.passages()[k]);
    if (auto it = ins.find(k); it != ins.end()) seq.insert(seq.end(), it->second.begin(), it->second.end());
  }
  std::vector<int> signs = d.signs();
  signs.insert(signs.end(), new_signs.begin(), new_signs.end());
  return Diagram::from_gauss(std::move(seq), std::move(signs));
}

Diagram remove_crossings(const Diagram& d, std::initializer_list<int> gone) {
  const int n = d.n_crossings();
  std::vector<int> relabel(n, -1);
  std::vector<int> signs;
  for (int c = 0; c < n; ++c) {
    if (std::find(gone.begin(), gone.end(), c) != gone.end()) continue;
    relabel[c] = static_cast<int>(signs.size());
    signs.push_back(d.signs()[c]);
  }
  std::vector<Passage> seq;
  for (const Passage& p : d.passages()) {
    if (relabel[p.crossing] >= 0) seq.push_back({relabel[p.crossing], p.over});
  }
  return Diagram::from_gauss(std::move(seq), std::move(signs));
}

bool curl_at(const Diagram& d, int c) {
  const int m = d.n_arcs();
  for (int p = 0; p < m; ++p) {
    if (d.passages()[p].crossing == c && d.passages()[wrap(p + 1, m)].crossing == c) return true;
  }
  return false;
}

// Crossing pair (lo, hi) of a removable bigon face, or (-1, -1).
std::pair<int, int> bigon_pair(const Diagram& d, const Face& f) {
  if (f.darts.size() != 2) return {-1, -1};
  const int c0 = f.darts[0] / 4, c1 = f.darts[1] / 4;
  if (c0 == c1) return {-1, -1};
  const int k0 = d.dart_arc(f.darts[0]), k1 = d.dart_arc(f.darts[1]);
  const bool ok = (arc_both(d, k0, true) && arc_both(d, k1, false)) || (arc_both(d, k0, false) && arc_both(d, k1, true));
  if (!ok) return {-1, -1};
  return {std::min(c0, c1), std::max(c0, c1)};
}

bool r3_face(const Diagram& d, const Face& f) {
  if (f.darts.size() != 3) return false;
  const int c0 = f.darts[0] / 4, c1 = f.darts[1] / 4, c2 = f.darts[2] / 4;
  if (c0 == c1 || c1 == c2 || c0 == c2) return false;
  for (int x : f.darts) {
    if (arc_both(d, d.dart_arc(x), true)) return true;
  }
  return false;
}

Diagram apply_r1_plus(const Diagram& d, const TypedMove& mv) {
  const int arcs = std::max(1, d.n_arcs());
  if (mv.a < 0 || mv.a >= arcs) bad_site("R1+ arc out of range");
  if (mv.sign != 1 && mv.sign != -1) bad_site("R1+ sign must be +1 or -1");
  const int c = d.n_crossings();
  return insert_passages(d, {{mv.a, {{c, mv.over_first}, {c, !mv.over_first}}}}, {mv.sign});
}

Diagram apply_r2_plus(const Diagram& d, const TypedMove& mv) {
  const int n = d.n_crossings();
  const int f = n, s = n + 1;
  const std::vector<Passage> overs{{f, true}, {s, true}};
  if (n == 0) {
    if (mv.a != -1 || mv.b != -1) bad_site("R2+ on the crossingless diagram takes no darts");
    // a single arc bounds both faces; it is pushed over itself
    const bool side_left = mv.left;
    const std::vector<Passage> unders{{s, false}, {f, false}};
    const int sf = side_left ? 1 : -1;
    std::vector<Passage> seq = mv.finger_first ? overs : unders;
    const auto& tail = mv.finger_first ? unders : overs;
    seq.insert(seq.end(), tail.begin(), tail.end());
    return Diagram::from_gauss(std::move(seq), {sf, -sf});
  }
  const int darts = 4 * n;
  if (mv.a < 0 || mv.a >= darts || mv.b < 0 || mv.b >= darts) bad_site("R2+ dart out of range");
  const auto fs = faces(d);
  const auto of = dart_faces(d, fs);
  if (of[mv.a] != of[mv.b]) bad_site("R2+ darts do not bound a common face");
  const bool a_left = !d.dart_out(mv.a);
  const bool b_left = !d.dart_out(mv.b);
  const int ka = d.dart_arc(mv.a), kb = d.dart_arc(mv.b);
  std::vector<Passage> unders = (a_left != b_left) ? std::vector<Passage>{{f, false}, {s, false}}
                                                    : std::vector<Passage>{{s, false}, {f, false}};
  const int sf = b_left ? 1 : -1;
  std::map<int, std::vector<Passage>> ins;
  if (ka != kb) {
    ins[ka] = overs;
    ins[kb] = unders;
  } else {
    std::vector<Passage> seq = mv.finger_first ? overs : unders;
    const auto& tail = mv.finger_first ? unders : overs;
    seq.insert(seq.end(), tail.begin(), tail.end());
    ins[ka] = seq;
  }
  return insert_passages(d, ins, {sf, -sf});
}

Diagram apply_r3(const Diagram& d, const TypedMove& mv) {
  const int n = d.n_crossings();
  if (mv.a < 0 || mv.a >= 4 * n) bad_site("R3 dart out of range");
  const auto fs = faces(d);
  const auto of = dart_faces(d, fs);
  const Face& f = fs[of[mv.a]];
  if (!r3_face(d, f)) bad_site("R3 dart does not bound an admissible trigon");
  std::vector<Passage> seq = d.passages();
  const int m = d.n_arcs();
  for (int x : f.darts) {
    const int k = d.dart_arc(x);
    std::swap(seq[k], seq[wrap(k + 1, m)]);
  }
  return Diagram::from_gauss(std::move(seq), d.signs());
}

}  // namespace

Diagram apply_move(const Diagram& d, const TypedMove& mv) {
  switch (mv.kind) {
    case MoveKind::R1Plus: return apply_r1_plus(d, mv);
    case MoveKind::R1Minus:
      if (mv.a < 0 || mv.a >= d.n_crossings() || !curl_at(d, mv.a)) bad_site("R1- needs a curl crossing");
      return remove_crossings(d, {mv.a});
    case MoveKind::R2Plus: return apply_r2_plus(d, mv);
    case MoveKind::R2Minus: {
      if (mv.a < 0 || mv.b >= d.n_crossings() || mv.a >= mv.b) bad_site("R2- crossing pair out of range");
      for (const Face& f : faces(d)) {
        if (bigon_pair(d, f) == std::pair{mv.a, mv.b}) return remove_crossings(d, {mv.a, mv.b});
      }
      bad_site("R2- crossings do not bound a removable bigon");
    }
    case MoveKind::R3: return apply_r3(d, mv);
  }
  bad_site("unknown move kind");
}

std::vector<MoveResult> enumerate_moves(const Diagram& d) {
  std::vector<MoveResult> out;
  std::set<std::pair<MoveKind, std::string>> seen;
  auto add = [&](const TypedMove& mv) {
    Diagram r = apply_move(d, mv);
    std::string key = canonical_code(r);
    if (seen.emplace(mv.kind, key).second) out.push_back({mv, std::move(r), std::move(key)});
  };
  const int n = d.n_crossings();
  const int arcs = std::max(1, d.n_arcs());

  for (int k = 0; k < arcs; ++k) {
    for (bool over_first : {true, false}) {
      for (int sign : {1, -1}) {
        TypedMove mv{MoveKind::R1Plus, k, -1, sign, over_first, false, over_first == (sign < 0)};
        add(mv);
      }
    }
  }
  for (int c = 0; c < n; ++c) {
    if (curl_at(d, c)) add({MoveKind::R1Minus, c});
  }

  const auto fs = faces(d);
  if (n == 0) {
    for (bool left : {true, false}) {
      for (bool finger_first : {true, false}) {
        add({MoveKind::R2Plus, -1, -1, 0, false, finger_first, left});
      }
    }
  } else {
    for (const Face& f : fs) {
      for (int a : f.darts) {
        for (int b : f.darts) {
          if (a == b) {
            add({MoveKind::R2Plus, a, b, 0, false, true, !d.dart_out(a)});
            add({MoveKind::R2Plus, a, b, 0, false, false, !d.dart_out(a)});
          } else {
            add({MoveKind::R2Plus, a, b, 0, false, false, !d.dart_out(a)});
          }
        }
      }
    }
  }
  for (const Face& f : fs) {
    if (auto [lo, hi] = bigon_pair(d, f); lo >= 0) add({MoveKind::R2Minus, lo, hi});
  }
  for (const Face& f : fs) {
    if (r3_face(d, f)) add({MoveKind::R3, *std::min_element(f.darts.begin(), f.darts.end())});
  }
  return out;
}

int RootedTypedBall::find(std::string_view key) const {
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] == key) return static_cast<int>(i);
  }
  return -1;
}

RootedTypedBall ball(const Diagram& root, int radius, std::size_t budget) {
  if (radius < 0) throw Error(ErrorKind::InvalidArgument, "ball radius must be nonnegative");
  RootedTypedBall b;
  b.radius = radius;
  b.root = canonical_code(root);
  std::unordered_map<std::string, int> index;
  auto add_vertex = [&](const std::string& key, const Diagram& dia, int dist) {
    if (b.keys.size() >= budget) {
      throw Error(ErrorKind::BudgetExceeded, "ball exceeded vertex budget of " + std::to_string(budget));
    }
    index.emplace(key, static_cast<int>(b.keys.size()));
    b.keys.push_back(key);
    b.crossings.push_back(dia.n_crossings());
    b.distance.push_back(dist);
    b.diagrams.push_back(dia);
  };
  add_vertex(b.root, root, 0);

  std::set<std::tuple<int, int, MoveKind>> edges;
  for (std::size_t v = 0; v < b.keys.size(); ++v) {
    const int dist = b.distance[v];
    const Diagram here = b.diagrams[v];
    for (MoveResult& r : enumerate_moves(here)) {
      auto it = index.find(r.key);
      int w;
      if (it != index.end()) {
        w = it->second;
      } else if (dist < radius) {
        w = static_cast<int>(b.keys.size());
        add_vertex(r.key, r.result, dist + 1);
      } else {
        continue;
      }
      const int u = static_cast<int>(v);
      if (u == w) continue;  // a move that returns the same diagram is not an edge
      switch (r.move.kind) {
        case MoveKind::R1Plus:
        case MoveKind::R2Plus: edges.emplace(u, w, r.move.kind); break;
        case MoveKind::R1Minus:
        case MoveKind::R2Minus: edges.emplace(w, u, inverse_kind(r.move.kind)); break;
        case MoveKind::R3: edges.emplace(std::min(u, w), std::max(u, w), MoveKind::R3); break;
      }
    }
  }
  for (const auto& [u, w, k] : edges) b.edges.push_back({u, w, k});
  return b;
}

std::string ball_to_json(const RootedTypedBall& b) {
  nlohmann::json j;
  j["root"] = b.root;
  j["radius"] = b.radius;
  j["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < b.keys.size(); ++i) {
    j["vertices"].push_back({{"key", b.keys[i]}, {"crossings", b.crossings[i]}, {"distance", b.distance[i]}});
  }
  j["edges"] = nlohmann::json::array();
  for (const BallEdge& e : b.edges) {
    j["edges"].push_back({{"a", e.from}, {"b", e.to}, {"kind", std::string(move_kind_name(e.kind))}});
  }
  return j.dump(2);
}

}  // namespace thickknot
