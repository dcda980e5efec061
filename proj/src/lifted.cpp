#include "lifted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

#include "error.hpp"
#include "io.hpp"

namespace thickknot {

namespace {

constexpr double kIdealTolerance = 1e-6;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Keeps the smaller root so results do not depend on union order.
  int unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return a;
  }

 private:
  std::vector<int> parent_;
};

std::vector<std::vector<int>> groups(UnionFind& uf, const std::vector<char>& present) {
  std::vector<std::vector<int>> out;
  std::vector<int> slot(present.size(), -1);
  for (std::size_t i = 0; i < present.size(); ++i) {
    if (!present[i]) continue;
    const int r = uf.find(static_cast<int>(i));
    if (slot[r] < 0) slot[r] = static_cast<int>(out.size()), out.emplace_back();
    out[slot[r]].push_back(static_cast<int>(i));
  }
  return out;
}

BallEdge normalized(int from, int to, MoveKind k) {
  switch (k) {
    case MoveKind::R1Minus:
      return {to, from, MoveKind::R1Plus};
    case MoveKind::R2Minus:
      return {to, from, MoveKind::R2Plus};
    case MoveKind::R3:
      return {std::min(from, to), std::max(from, to), MoveKind::R3};
    default:
      return {from, to, k};
  }
}

std::vector<std::vector<int>> adjacency(const LevelGraph& g) {
  std::vector<std::vector<int>> adj(g.graph.size());
  for (const BallEdge& e : g.graph.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  return adj;
}

// Largest hop distance from the sources; nullopt if something is unreachable.
std::optional<int> eccentricity(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  for (int s : sources) dist[s] = 0, q.push(s);
  int far = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    far = std::max(far, dist[v]);
    for (int w : adj[v]) {
      if (dist[w] < 0) dist[w] = dist[v] + 1, q.push(w);
    }
  }
  if (std::count(dist.begin(), dist.end(), -1) > 0) return std::nullopt;
  return far;
}

}  // namespace

int MergeTree::root() const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].parent < 0) return static_cast<int>(i);
  }
  return -1;
}

FilteredLiftedGraph FilteredLiftedGraph::build(const std::vector<PolygonPath>& paths,
                                               const std::vector<SweepReport>& sweeps, const Direction& u) {
  if (paths.size() != sweeps.size()) throw Error(ErrorKind::InvalidArgument, "one sweep per path is required");
  FilteredLiftedGraph g;
  g.u_ = u.u();
  std::map<std::vector<double>, int> index;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const PolygonPath& path = paths[p];
    const SweepReport& rep = sweeps[p];
    if (rep.path_id != path.id) throw Error(ErrorKind::InvalidArgument, "sweep does not belong to path " + path.id);
    const int first_event = static_cast<int>(g.events_.size());
    for (const Event& e : rep.events) g.events_.push_back({path.id, e});
    int prev = -1;
    const SweepSample* prev_s = nullptr;
    for (const SweepSample& s : rep.samples) {
      const Polygon3 poly = blend(path, s.t);
      std::vector<double> bits;
      bits.reserve(3 * poly.size());
      for (const Vec3& v : poly.vertices()) bits.insert(bits.end(), {v.x, v.y, v.z});
      auto [it, fresh] = index.emplace(std::move(bits), static_cast<int>(g.nodes_.size()));
      if (fresh) g.nodes_.push_back({s.key, key_crossings(s.key), s.level});
      const int node = it->second;
      if (!fresh && g.nodes_[node].key != s.key) {
        throw Error(ErrorKind::InconsistentEvent, "one polygon sampled with two diagram keys");
      }
      if (prev >= 0 && node != prev) {
        if (prev_s->key == s.key) {
          g.links_.push_back({prev, node, std::max(prev_s->level, s.level), -1, MoveKind::R1Plus});
        } else {
          int id = -1;
          for (std::size_t k = 0; k < rep.events.size(); ++k) {
            const Event& e = rep.events[k];
            if (e.t_lo == prev_s->t && e.t_hi == s.t && e.before == prev_s->key && e.after == s.key) {
              id = first_event + static_cast<int>(k);
              break;
            }
          }
          if (id < 0) {
            throw Error(ErrorKind::InconsistentEvent,
                        "key change " + prev_s->key + " -> " + s.key + " on path " + path.id + " has no event");
          }
          const Event& e = g.events_[id].event;
          g.links_.push_back({prev, node, std::max({prev_s->level, s.level, e.lambda}), id, e.kind});
        }
      }
      prev = node;
      prev_s = &s;
    }
  }
  for (const LiftedNode& n : g.nodes_) g.grid_.push_back(n.level);
  for (const LiftedLink& l : g.links_) g.grid_.push_back(l.level);
  std::sort(g.grid_.begin(), g.grid_.end());
  g.grid_.erase(std::unique(g.grid_.begin(), g.grid_.end()), g.grid_.end());
  return g;
}

double FilteredLiftedGraph::lowest() const { return grid_.empty() ? kInf : grid_.front(); }

double FilteredLiftedGraph::ideal_level() const { return lowest() * (1.0 + kIdealTolerance); }

double FilteredLiftedGraph::resolve(double lambda) const {
  if (std::isnan(lambda)) throw Error(ErrorKind::LevelNotSampled, "level is NaN");
  auto it = std::upper_bound(grid_.begin(), grid_.end(), lambda);
  if (it == grid_.begin()) return -kInf;
  return *std::prev(it);
}

LevelGraph FilteredLiftedGraph::at(double lambda) const {
  if (std::isnan(lambda)) throw Error(ErrorKind::LevelNotSampled, "level is NaN");
  LevelGraph g;
  g.lambda = lambda;
  const std::size_t n = nodes_.size();
  std::vector<char> present(n);
  for (std::size_t i = 0; i < n; ++i) present[i] = nodes_[i].level <= lambda;
  UnionFind uf(n);
  for (const LiftedLink& l : links_) {
    if (l.event < 0 && l.level <= lambda) uf.unite(l.a, l.b);
  }
  g.vertex_of_node.assign(n, -1);
  std::map<std::string, int> fibers;
  for (auto& members : groups(uf, present)) {
    const int v = static_cast<int>(g.members.size());
    const LiftedNode& first = nodes_[members.front()];
    double birth = kInf;
    for (int m : members) g.vertex_of_node[m] = v, birth = std::min(birth, nodes_[m].level);
    g.graph.keys.push_back(first.key);
    g.graph.crossings.push_back(first.crossings);
    g.fiber.push_back(fibers[first.key]++);
    g.birth.push_back(birth);
    g.members.push_back(std::move(members));
  }
  std::map<std::tuple<int, int, MoveKind>, std::size_t> seen;
  for (const LiftedLink& l : links_) {
    if (l.event < 0 || l.level > lambda) continue;
    const BallEdge e = normalized(g.vertex_of_node[l.a], g.vertex_of_node[l.b], l.kind);
    auto [it, fresh] = seen.emplace(std::make_tuple(e.from, e.to, e.kind), g.graph.edges.size());
    if (fresh) {
      g.graph.edges.push_back(e);
      g.edge_birth.push_back(l.level);
      g.edge_witness.push_back(l.event);
    } else if (l.level < g.edge_birth[it->second]) {
      g.edge_birth[it->second] = l.level;
      g.edge_witness[it->second] = l.event;
    }
  }
  return g;
}

std::vector<std::vector<int>> FilteredLiftedGraph::components_at(double lambda) const {
  const double lv = resolve(lambda);
  const std::size_t n = nodes_.size();
  std::vector<char> present(n);
  for (std::size_t i = 0; i < n; ++i) present[i] = nodes_[i].level <= lv;
  UnionFind uf(n);
  for (const LiftedLink& l : links_) {
    if (l.level <= lv) uf.unite(l.a, l.b);
  }
  return groups(uf, present);
}

std::vector<int> FilteredLiftedGraph::filtration_map(double lo, double hi) const {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "filtration_map needs lo <= hi");
  const LevelGraph a = at(resolve(lo));
  const LevelGraph b = at(resolve(hi));
  std::vector<int> map(a.graph.size());
  for (std::size_t v = 0; v < map.size(); ++v) map[v] = b.vertex_of_node[a.members[v].front()];
  return map;
}

std::vector<std::vector<int>> FilteredLiftedGraph::ideal_components() const {
  if (grid_.empty()) return {};
  return components_at(ideal_level());
}

namespace {

struct Kruskal {
  std::vector<std::size_t> order;  // links above the ideal level, by level
  UnionFind uf;
  explicit Kruskal(std::size_t n) : uf(n) {}
};

Kruskal start_kruskal(const std::vector<LiftedNode>& nodes, const std::vector<LiftedLink>& links, double ideal) {
  Kruskal k(nodes.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (links[i].level <= ideal) {
      k.uf.unite(links[i].a, links[i].b);
    } else {
      k.order.push_back(i);
    }
  }
  std::stable_sort(k.order.begin(), k.order.end(),
                   [&](std::size_t x, std::size_t y) { return links[x].level < links[y].level; });
  return k;
}

}  // namespace

double FilteredLiftedGraph::merge_scale(std::size_t ci, std::size_t cj) const {
  const auto comps = ideal_components();
  if (ci >= comps.size() || cj >= comps.size()) throw Error(ErrorKind::InvalidArgument, "no such ideal component");
  if (ci == cj) {
    double b = kInf;
    for (int m : comps[ci]) b = std::min(b, nodes_[m].level);
    return b;
  }
  Kruskal k = start_kruskal(nodes_, links_, ideal_level());
  const int a = comps[ci].front(), b = comps[cj].front();
  for (std::size_t i : k.order) {
    k.uf.unite(links_[i].a, links_[i].b);
    if (k.uf.find(a) == k.uf.find(b)) return links_[i].level;
  }
  return kInf;
}

MergeTree FilteredLiftedGraph::merge_tree() const {
  MergeTree t;
  const auto comps = ideal_components();
  t.leaves = comps.size();
  Kruskal k = start_kruskal(nodes_, links_, ideal_level());
  std::vector<int> tree_of(nodes_.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    MergeTree::Node leaf;
    leaf.height = kInf;
    for (int m : comps[c]) leaf.height = std::min(leaf.height, nodes_[m].level);
    t.nodes.push_back(leaf);
    tree_of[k.uf.find(comps[c].front())] = static_cast<int>(c);
  }
  for (std::size_t i : k.order) {
    const int ra = k.uf.find(links_[i].a), rb = k.uf.find(links_[i].b);
    if (ra == rb) continue;
    const int ta = tree_of[ra], tb = tree_of[rb];
    const int r = k.uf.unite(ra, rb);
    if (ta >= 0 && tb >= 0) {
      const int id = static_cast<int>(t.nodes.size());
      MergeTree::Node node;
      node.height = links_[i].level;
      node.children = {std::min(ta, tb), std::max(ta, tb)};
      t.nodes.push_back(node);
      t.nodes[ta].parent = id;
      t.nodes[tb].parent = id;
      tree_of[r] = id;
    } else {
      tree_of[r] = std::max(ta, tb);
    }
  }
  return t;
}

std::optional<int> FilteredLiftedGraph::reidemeister_radius(double lambda) const {
  const LevelGraph g = at(lambda);
  if (g.graph.size() == 0) return 0;
  std::vector<int> ideal;
  for (std::size_t v = 0; v < g.graph.size(); ++v) {
    if (g.birth[v] <= ideal_level()) ideal.push_back(static_cast<int>(v));
  }
  return eccentricity(adjacency(g), ideal);
}

std::optional<int> FilteredLiftedGraph::diameter(double lambda) const {
  const LevelGraph g = at(lambda);
  const auto adj = adjacency(g);
  int best = 0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const auto e = eccentricity(adj, {static_cast<int>(v)});
    if (!e) return std::nullopt;
    best = std::max(best, *e);
  }
  return best;
}

std::map<int, int> FilteredLiftedGraph::crossing_profile(double lambda, const std::vector<int>& window) const {
  const LevelGraph g = at(lambda);
  std::map<int, int> out;
  if (window.empty()) {
    for (int c : g.graph.crossings) out[c]++;
    return out;
  }
  for (int v : window) {
    if (v < 0 || v >= static_cast<int>(g.graph.size())) throw Error(ErrorKind::InvalidArgument, "window vertex out of range");
    out[g.graph.crossings[v]]++;
  }
  return out;
}

std::string lifted_to_json(const FilteredLiftedGraph& g, double lambda) {
  using nlohmann::json;
  const LevelGraph lg = g.at(lambda);
  json vertices = json::array();
  for (std::size_t v = 0; v < lg.graph.size(); ++v) {
    vertices.push_back({{"id", v}, {"key", lg.graph.keys[v]}, {"fiber", lg.fiber[v]}, {"birth", lg.birth[v]}});
  }
  json edges = json::array();
  for (std::size_t i = 0; i < lg.graph.edges.size(); ++i) {
    const BallEdge& e = lg.graph.edges[i];
    edges.push_back({{"a", e.from},
                     {"b", e.to},
                     {"kind", std::string(move_kind_name(e.kind))},
                     {"birth", lg.edge_birth[i]},
                     {"witness", lg.edge_witness[i]}});
  }
  json events = json::array();
  for (std::size_t i = 0; i < g.events().size(); ++i) {
    const EventRecord& r = g.events()[i];
    events.push_back({{"id", i},
                      {"path_id", r.path_id},
                      {"t", r.event.t},
                      {"kind", std::string(move_kind_name(r.event.kind))},
                      {"before", r.event.before},
                      {"after", r.event.after},
                      {"lambda", r.event.lambda}});
  }
  const Vec3& u = g.direction();
  json j{{"direction", {u.x, u.y, u.z}},
         {"lambda", io::number(lambda)},
         {"grid", g.grid()},
         {"vertices", std::move(vertices)},
         {"edges", std::move(edges)},
         {"events", std::move(events)}};
  return j.dump(2);
}

std::string merge_tree_to_json(const FilteredLiftedGraph& g, const MergeTree& t) {
  using nlohmann::json;
  json parent = json::array(), height = json::array();
  for (const MergeTree::Node& n : t.nodes) parent.push_back(n.parent), height.push_back(io::number(n.height));
  json j{{"leaves", t.leaves},
         {"parent", std::move(parent)},
         {"height", std::move(height)},
         {"ideal_level", io::number(g.ideal_level())},
         {"components", g.ideal_components()},
         {"heights_are", "first sampled level, an upper bound"}};
  return j.dump(2);
}

}  // namespace thickknot
