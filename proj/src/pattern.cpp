#include "pattern.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>
#include <unordered_map>

#include "error.hpp"

namespace thickknot {

TypedGraph TypedGraph::from_ball(const RootedTypedBall& b) { return {b.keys, b.crossings, b.edges}; }

TypedGraph TypedGraph::mirrored() const {
  TypedGraph g = *this;
  std::unordered_map<std::string, std::string> cache;
  for (std::string& k : g.keys) {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, mirror_key(k)).first;
    k = it->second;
  }
  return g;
}

FinitePattern FinitePattern::from_ball(const RootedTypedBall& b, MirrorPolicy policy) {
  FinitePattern q;
  q.graph = TypedGraph::from_ball(b);
  q.root = 0;
  q.mirror = policy;
  return q;
}

void FinitePattern::validate() const {
  const int n = static_cast<int>(graph.size());
  if (n == 0 || root < 0 || root >= n) throw Error(ErrorKind::InvalidArgument, "pattern root out of range");
  if (graph.crossings.size() != graph.keys.size()) throw Error(ErrorKind::InvalidArgument, "pattern label arrays differ");
  std::vector<std::vector<int>> adj(n);
  for (const BallEdge& e : graph.edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n || e.from == e.to) {
      throw Error(ErrorKind::InvalidArgument, "pattern edge endpoint out of range");
    }
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) seen[w] = 1, stack.push_back(w);
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != n) throw Error(ErrorKind::InvalidArgument, "pattern is not connected");
}

namespace {

using EdgeKey = std::tuple<int, int, MoveKind>;
constexpr int kKinds = 5;

struct Host {
  const TypedGraph& g;
  std::set<EdgeKey> edges;
  std::vector<std::vector<int>> adj;
  std::vector<std::array<int, 2 * kKinds>> degree;  // out/in per kind

  explicit Host(const TypedGraph& graph) : g(graph), adj(graph.size()), degree(graph.size()) {
    for (auto& d : degree) d.fill(0);
    for (const BallEdge& e : g.edges) {
      if (!edges.emplace(e.from, e.to, e.kind).second) continue;
      adj[e.from].push_back(e.to);
      adj[e.to].push_back(e.from);
      degree[e.from][static_cast<int>(e.kind)]++;
      degree[e.to][kKinds + static_cast<int>(e.kind)]++;
    }
    for (auto& a : adj) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
  }
};

class Matcher {
 public:
  Matcher(const FinitePattern& q, const std::vector<std::string>& qkeys, const Host& h)
      : q_(q), qkeys_(qkeys), h_(h), p_(q.graph.size()) {
    const int n = static_cast<int>(p_);
    std::set<EdgeKey> seen;
    qdeg_.assign(n, {});
    for (auto& d : qdeg_) d.fill(0);
    for (const BallEdge& e : q.graph.edges) {
      if (!seen.emplace(e.from, e.to, e.kind).second) continue;
      qedges_.push_back(e);
      qdeg_[e.from][static_cast<int>(e.kind)]++;
      qdeg_[e.to][kKinds + static_cast<int>(e.kind)]++;
    }
    // BFS order from the root so every later vertex has a mapped neighbour.
    std::vector<std::vector<int>> adj(n);
    for (const BallEdge& e : qedges_) {
      adj[e.from].push_back(e.to);
      adj[e.to].push_back(e.from);
    }
    std::vector<char> in(n, 0);
    order_.push_back(q.root);
    in[q.root] = 1;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      std::vector<int> next = adj[order_[i]];
      std::sort(next.begin(), next.end());
      for (int w : next) {
        if (!in[w]) in[w] = 1, order_.push_back(w);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (!in[v]) order_.push_back(v);
    }
    pos_.assign(n, 0);
    for (int i = 0; i < n; ++i) pos_[order_[i]] = i;
    // constraints checked when vertex order_[i] is placed
    back_.assign(n, {});
    for (const BallEdge& e : qedges_) {
      const int later = pos_[e.from] > pos_[e.to] ? e.from : e.to;
      back_[pos_[later]].push_back(e);
    }
  }

  std::optional<std::vector<int>> run(const std::vector<int>& roots) {
    map_.assign(p_, -1);
    used_.assign(h_.g.size(), 0);
    for (int r : roots) {
      if (place(0, r) && extend(1)) return map_;
      if (map_[order_[0]] >= 0) unplace(0);
    }
    return std::nullopt;
  }

 private:
  bool label_ok(int v, int h) const {
    if (q_.labels == LabelMode::Key) return qkeys_[v] == h_.g.keys[h];
    return q_.graph.crossings[v] == h_.g.crossings[h];
  }

  bool place(int i, int h) {
    const int v = order_[i];
    if (used_[h] || !label_ok(v, h)) return false;
    for (int k = 0; k < 2 * kKinds; ++k) {
      if (h_.degree[h][k] < qdeg_[v][k]) return false;
    }
    map_[v] = h;
    for (const BallEdge& e : back_[i]) {
      if (!h_.edges.count({map_[e.from], map_[e.to], e.kind})) {
        map_[v] = -1;
        return false;
      }
    }
    used_[h] = 1;
    return true;
  }

  void unplace(int i) {
    used_[map_[order_[i]]] = 0;
    map_[order_[i]] = -1;
  }

  bool extend(int i) {
    if (i == static_cast<int>(p_)) return true;
    const int v = order_[i];
    // candidates: host neighbours of an already mapped pattern neighbour
    int anchor = -1;
    for (const BallEdge& e : back_[i]) {
      anchor = map_[e.from == v ? e.to : e.from];
      break;
    }
    if (anchor >= 0) {
      for (int h : h_.adj[anchor]) {
        if (place(i, h)) {
          if (extend(i + 1)) return true;
          unplace(i);
        }
      }
    } else {
      for (int h = 0; h < static_cast<int>(h_.g.size()); ++h) {
        if (place(i, h)) {
          if (extend(i + 1)) return true;
          unplace(i);
        }
      }
    }
    return false;
  }

  const FinitePattern& q_;
  const std::vector<std::string>& qkeys_;
  const Host& h_;
  std::size_t p_;
  std::vector<BallEdge> qedges_;
  std::vector<std::array<int, 2 * kKinds>> qdeg_;
  std::vector<int> order_, pos_;
  std::vector<std::vector<BallEdge>> back_;
  std::vector<int> map_;
  std::vector<char> used_;
};

std::vector<int> all_roots(const TypedGraph& host, const std::vector<int>& root_candidates) {
  if (!root_candidates.empty()) return root_candidates;
  std::vector<int> r(host.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<int>(i);
  return r;
}

}  // namespace

std::optional<Occurrence> occurs(const FinitePattern& q, const TypedGraph& host, const std::vector<int>& root_candidates) {
  q.validate();
  const Host h(host);
  const std::vector<int> roots = all_roots(host, root_candidates);
  {
    Matcher m(q, q.graph.keys, h);
    if (auto map = m.run(roots)) return Occurrence{std::move(*map), false};
  }
  if (q.mirror == MirrorPolicy::Either) {
    // matching the mirrored pattern is matching against the mirrored host
    const std::vector<std::string> mk =
        q.labels == LabelMode::Key ? q.graph.mirrored().keys : q.graph.keys;
    Matcher m(q, mk, h);
    if (auto map = m.run(roots)) return Occurrence{std::move(*map), true};
  }
  return std::nullopt;
}

bool is_occurrence(const FinitePattern& q, const TypedGraph& host, const Occurrence& occ,
                   const std::vector<int>& root_candidates) {
  const std::size_t n = q.graph.size();
  if (occ.map.size() != n) return false;
  std::set<int> image;
  for (int h : occ.map) {
    if (h < 0 || h >= static_cast<int>(host.size())) return false;
    image.insert(h);
  }
  if (image.size() != n) return false;
  const std::vector<std::string> keys =
      (occ.mirrored && q.labels == LabelMode::Key) ? q.graph.mirrored().keys : q.graph.keys;
  for (std::size_t v = 0; v < n; ++v) {
    const int h = occ.map[v];
    if (q.labels == LabelMode::Key ? keys[v] != host.keys[h] : q.graph.crossings[v] != host.crossings[h]) return false;
  }
  std::set<EdgeKey> he;
  for (const BallEdge& e : host.edges) he.emplace(e.from, e.to, e.kind);
  for (const BallEdge& e : q.graph.edges) {
    if (!he.count({occ.map[e.from], occ.map[e.to], e.kind})) return false;
  }
  if (!root_candidates.empty() &&
      std::find(root_candidates.begin(), root_candidates.end(), occ.map[q.root]) == root_candidates.end()) {
    return false;
  }
  return true;
}

}  // namespace thickknot
