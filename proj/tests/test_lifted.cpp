#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "error.hpp"
#include "families.hpp"
#include "json.hpp"
#include "lifted.hpp"
#include "oracles.hpp"

using namespace thickknot;

namespace {

const Direction kZ = Direction::make({0, 0, 1});

struct Built {
  std::vector<PolygonPath> paths;
  std::vector<SweepReport> sweeps;
  FilteredLiftedGraph g;
};

Built build(std::vector<PolygonPath> paths) {
  Built b;
  for (const PolygonPath& p : paths) b.sweeps.push_back(sweep(p, kZ));
  b.g = FilteredLiftedGraph::build(paths, b.sweeps, kZ);
  b.paths = std::move(paths);
  return b;
}

Built build(const families::Family& f) { return build(f.paths); }

using oracle::Summary;

std::multiset<Summary> brute_components(const Built& b, double lambda) {
  return oracle::components(oracle::sampled_complex(b.paths, b.sweeps), lambda);
}

std::multiset<Summary> summarise(const FilteredLiftedGraph& g, const std::vector<std::vector<int>>& comps) {
  std::multiset<Summary> out;
  for (const auto& c : comps) {
    Summary s;
    for (int n : c) s.emplace(g.nodes()[n].key, g.nodes()[n].level);
    out.insert(std::move(s));
  }
  return out;
}

std::vector<double> probe_levels(const FilteredLiftedGraph& g) {
  std::vector<double> out;
  const auto& grid = g.grid();
  for (int k = 0; k <= 8; ++k) out.push_back(grid[(grid.size() - 1) * k / 8]);
  out.push_back(g.ideal_level());
  return out;
}

int leaf_lca(const MergeTree& t, int a, int b) {
  std::set<int> up;
  for (int x = a; x >= 0; x = t.nodes[x].parent) up.insert(x);
  for (int x = b; x >= 0; x = t.nodes[x].parent) {
    if (up.count(x)) return x;
  }
  return -1;
}

void check_tree_against_scales(const FilteredLiftedGraph& g, const MergeTree& t) {
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (t.nodes[i].parent >= 0) CHECK(t.nodes[t.nodes[i].parent].height >= t.nodes[i].height);
    if (i >= t.leaves) CHECK(t.nodes[i].children.size() == 2);
  }
  for (std::size_t i = 0; i < t.leaves; ++i) {
    for (std::size_t j = 0; j < t.leaves; ++j) {
      const int lca = leaf_lca(t, static_cast<int>(i), static_cast<int>(j));
      const double expect = lca < 0 ? kInf : t.nodes[lca].height;
      CHECK(g.merge_scale(i, j) == expect);
    }
  }
}

}  // namespace

TEST_CASE("constant path: one vertex, no edges") {
  const Built b = build(families::constant());
  const LevelGraph top = b.g.top();
  CHECK(top.graph.size() == 1);
  CHECK(top.graph.edges.empty());
  CHECK(top.graph.keys[0] == std::string(kEmptyKey));
  CHECK(b.g.ideal_components().size() == 1);
  const MergeTree t = b.g.merge_tree();
  CHECK(t.leaves == 1);
  CHECK(t.internal() == 0);
  CHECK(t.root() == 0);
  CHECK(b.g.merge_scale(0, 0) == b.g.lowest());
  CHECK(b.g.reidemeister_radius(b.g.grid().back()) == 0);
}

TEST_CASE("curl family: two vertices and one R1 edge") {
  const Built b = build(families::curl_insertion(1));
  REQUIRE(b.sweeps[0].events.size() == 1);
  const Event& e = b.sweeps[0].events[0];
  const LevelGraph top = b.g.top();
  REQUIRE(top.graph.size() == 2);
  REQUIRE(top.graph.edges.size() == 1);
  const BallEdge& edge = top.graph.edges[0];
  CHECK(edge.kind == MoveKind::R1Plus);
  CHECK(top.graph.crossings[edge.from] == 0);
  CHECK(top.graph.crossings[edge.to] == 1);
  CHECK(top.edge_birth[0] == doctest::Approx(e.lambda).epsilon(1e-6));
  CHECK(top.edge_witness[0] == 0);
  for (std::size_t i = 0; i < top.graph.edges.size(); ++i) {
    CHECK(top.edge_birth[i] >= top.birth[top.graph.edges[i].from]);
    CHECK(top.edge_birth[i] >= top.birth[top.graph.edges[i].to]);
  }
  const double lv = b.g.grid().back();
  CHECK(b.g.reidemeister_radius(lv) == 1);
  CHECK(b.g.diameter(lv) == 1);
  CHECK(b.g.crossing_profile(lv) == std::map<int, int>{{0, 1}, {1, 1}});
  CHECK(b.g.crossing_profile(lv, {edge.to}) == std::map<int, int>{{1, 1}});
  CHECK_THROWS_AS(b.g.crossing_profile(lv, {7}), Error);

  // below the event level the edge is absent and the graph splits
  const LevelGraph before = b.g.at(b.g.resolve(std::nextafter(top.edge_birth[0], 0.0)));
  CHECK(before.graph.edges.empty());
  if (before.graph.size() == 2) CHECK_FALSE(b.g.diameter(before.lambda).has_value());
}

TEST_CASE("disjoint clusters with one key are two vertices") {
  const auto a = oracle::regular_polygon(8, 1.0, 0.1);
  auto far = a;
  for (Vec3& v : far) v += Vec3{10, 0, 0};
  const Built b = build({PolygonPath::make("a", {a}), PolygonPath::make("b", {far})});
  const LevelGraph top = b.g.top();
  REQUIRE(top.graph.size() == 2);
  CHECK(top.graph.keys[0] == top.graph.keys[1]);
  CHECK(top.fiber == std::vector<int>{0, 1});
  CHECK(b.g.merge_scale(0, 1) == kInf);
  const MergeTree t = b.g.merge_tree();
  CHECK(t.leaves == 2);
  CHECK(t.internal() == 0);
  CHECK_FALSE(b.g.diameter(b.g.grid().back()).has_value());
}

TEST_CASE("level resolution") {
  const Built b = build(families::push_over());
  const auto& grid = b.g.grid();
  REQUIRE(grid.size() > 2);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(b.g.resolve(grid[1]) == grid[1]);
  CHECK(b.g.resolve(0.5 * (grid[1] + grid[2])) == grid[1]);
  CHECK(b.g.resolve(grid.back() * 10) == grid.back());
  CHECK(b.g.resolve(grid.front() * 0.5) == -kInf);
  CHECK(b.g.at(grid.front() * 0.5).graph.size() == 0);
  CHECK(b.g.components_at(grid.front() * 0.5).empty());
  try {
    b.g.resolve(std::nan(""));
    FAIL("expected LevelNotSampled");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LevelNotSampled);
  }
}

TEST_CASE("components agree with brute-force search") {
  std::vector<Built> ensembles;
  ensembles.push_back(build(families::curl_insertion(1)));
  ensembles.push_back(build(families::two_cluster()));
  ensembles.push_back(build(families::three_cluster()));
  {
    std::vector<PolygonPath> mixed = families::push_over().paths;
    for (const PolygonPath& p : families::trigon_slide().paths) mixed.push_back(p);
    ensembles.push_back(build(mixed));
  }
  {
    std::vector<PolygonPath> curls = families::curl_insertion(1).paths;
    curls.push_back(families::curl_insertion(-1).paths.front());
    ensembles.push_back(build(curls));
  }
  for (const Built& b : ensembles) {
    CAPTURE(b.paths.front().id);
    for (double lv : probe_levels(b.g)) {
      CAPTURE(lv);
      const auto comps = b.g.components_at(lv);
      CHECK(summarise(b.g, comps) == brute_components(b, b.g.resolve(lv)));
      for (const auto& c : comps) CHECK(std::is_sorted(c.begin(), c.end()));
      for (std::size_t i = 1; i < comps.size(); ++i) CHECK(comps[i - 1].front() < comps[i].front());
    }
    // vertex sets grow with the level
    std::size_t prev = 0;
    for (double lv : b.g.grid()) {
      std::size_t count = 0;
      for (const auto& c : b.g.components_at(lv)) count += c.size();
      CHECK(count >= prev);
      prev = count;
    }
  }
}

TEST_CASE("filtration maps compose and merge fibers") {
  const Built b = build(families::two_cluster());
  const double lo = b.g.ideal_level(), hi = b.g.grid().back();
  const auto m = b.g.filtration_map(lo, hi);
  CHECK(m == std::vector<int>{0, 0});
  const auto& grid = b.g.grid();
  const double a = grid[grid.size() / 5], c = grid[grid.size() / 2], d = grid[grid.size() * 4 / 5];
  const auto ac = b.g.filtration_map(a, c), cd = b.g.filtration_map(c, d), ad = b.g.filtration_map(a, d);
  REQUIRE(ac.size() == ad.size());
  for (std::size_t v = 0; v < ac.size(); ++v) CHECK(cd[ac[v]] == ad[v]);
  const auto id = b.g.filtration_map(c, c);
  for (std::size_t v = 0; v < id.size(); ++v) CHECK(id[v] == static_cast<int>(v));
  CHECK_THROWS_AS(b.g.filtration_map(hi, lo), Error);
}

TEST_CASE("two-cluster merge scale equals the bridge length") {
  const Built b = build(families::two_cluster(1.6));
  const double lstar = families::stretched_ropelength(1.6);
  REQUIRE(b.g.ideal_components().size() == 2);
  const double ms = b.g.merge_scale(0, 1);
  CHECK(ms == doctest::Approx(lstar).epsilon(1e-9));
  CHECK(b.g.merge_scale(1, 0) == ms);
  CHECK(b.g.merge_scale(0, 0) == b.g.lowest());
  const MergeTree t = b.g.merge_tree();
  CHECK(t.leaves == 2);
  REQUIRE(t.internal() == 1);
  CHECK(t.nodes[2].height == ms);
  CHECK(t.root() == 2);
  check_tree_against_scales(b.g, t);
}

TEST_CASE("three clusters give a caterpillar tree") {
  const Built b = build(families::three_cluster(1.4, 1.8));
  const double l1 = families::stretched_ropelength(1.4), l2 = families::stretched_ropelength(1.8);
  REQUIRE(l1 < l2);
  const MergeTree t = b.g.merge_tree();
  REQUIRE(t.leaves == 3);
  REQUIRE(t.internal() == 2);
  CHECK(t.nodes[3].height == doctest::Approx(l1).epsilon(1e-9));
  CHECK(t.nodes[4].height == doctest::Approx(l2).epsilon(1e-9));
  CHECK(t.nodes[3].parent == 4);
  CHECK(t.root() == 4);
  // the root joins the first merge with a single leaf
  const auto& kids = t.nodes[4].children;
  CHECK(std::count_if(kids.begin(), kids.end(), [&](int k) { return k < static_cast<int>(t.leaves); }) == 1);
  check_tree_against_scales(b.g, t);
}

TEST_CASE("inconsistent sweeps are rejected") {
  const families::Family f = families::push_over();
  std::vector<SweepReport> s{sweep(f.paths[0], kZ)};
  s[0].events.clear();
  try {
    FilteredLiftedGraph::build(f.paths, s, kZ);
    FAIL("expected InconsistentEvent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentEvent);
  }
  s[0] = sweep(f.paths[0], kZ);
  s[0].path_id = "other";
  CHECK_THROWS_AS(FilteredLiftedGraph::build(f.paths, s, kZ), Error);
  CHECK_THROWS_AS(FilteredLiftedGraph::build(f.paths, {}, kZ), Error);
}

TEST_CASE("graph and merge-tree JSON") {
  const Built b = build(families::curl_insertion(1));
  const auto j = nlohmann::json::parse(lifted_to_json(b.g, b.g.grid().back()));
  CHECK(j["direction"].size() == 3);
  CHECK(j["grid"].size() == b.g.grid().size());
  CHECK(j["grid"].back().get<double>() == b.g.grid().back());
  REQUIRE(j["vertices"].size() == 2);
  for (const auto& v : j["vertices"]) {
    CHECK(v.contains("id"));
    CHECK(v.contains("key"));
    CHECK(v.contains("fiber"));
    CHECK(v.contains("birth"));
  }
  REQUIRE(j["edges"].size() == 1);
  CHECK(j["edges"][0]["kind"] == "R1+");
  CHECK(j["edges"][0]["witness"] == 0);
  CHECK(j["edges"][0]["birth"].get<double>() == b.g.top().edge_birth[0]);

  const Built two = build(families::two_cluster());
  const auto t = nlohmann::json::parse(merge_tree_to_json(two.g, two.g.merge_tree()));
  CHECK(t["leaves"] == 2);
  CHECK(t["parent"] == nlohmann::json::array({2, 2, -1}));
  CHECK(t["height"].size() == 3);
  CHECK(t["components"].size() == 2);
  CHECK(t.contains("heights_are"));
}
