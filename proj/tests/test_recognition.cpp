#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "error.hpp"
#include "families.hpp"
#include "json.hpp"
#include "recognition.hpp"

using namespace thickknot;

namespace {

const Direction kZ = Direction::make({0, 0, 1});

FilteredLiftedGraph lifted(const families::Family& f) {
  return FilteredLiftedGraph::build(f.paths, sweep_all(f.paths, kZ), kZ);
}

const FilteredLiftedGraph& recognition_graph() {
  static const FilteredLiftedGraph g = lifted(families::recognition(1));
  return g;
}

FinitePattern edge_pattern(const std::string& a, const std::string& b, MoveKind kind) {
  FinitePattern q;
  q.graph.keys = {a, b};
  q.graph.crossings = {key_crossings(a), key_crossings(b)};
  q.graph.edges = {{0, 1, kind}};
  return q;
}

FinitePattern vertex_pattern(const std::string& key) {
  FinitePattern q;
  q.graph.keys = {key};
  q.graph.crossings = {key_crossings(key)};
  return q;
}

// Induced subpattern on the vertices whose bit is set in mask (root kept).
std::optional<FinitePattern> induced(const FinitePattern& q, unsigned mask) {
  std::vector<int> idx(q.graph.size(), -1);
  FinitePattern s;
  s.mirror = q.mirror;
  for (std::size_t v = 0; v < q.graph.size(); ++v) {
    if (!(mask >> v & 1u)) continue;
    idx[v] = static_cast<int>(s.graph.size());
    s.graph.keys.push_back(q.graph.keys[v]);
    s.graph.crossings.push_back(q.graph.crossings[v]);
  }
  if (idx[q.root] < 0) return std::nullopt;
  s.root = idx[q.root];
  for (const BallEdge& e : q.graph.edges) {
    if (idx[e.from] >= 0 && idx[e.to] >= 0) s.graph.edges.push_back({idx[e.from], idx[e.to], e.kind});
  }
  try {
    s.validate();
  } catch (const Error&) {
    return std::nullopt;  // disconnected
  }
  return s;
}

}  // namespace

TEST_CASE("single-vertex pattern is visible at the lowest level") {
  const FilteredLiftedGraph g = lifted(families::curl_insertion(1));
  const Visibility v = visibility_length(vertex_pattern(std::string(kEmptyKey)), g);
  CHECK(v.lambda == g.lowest());
  REQUIRE(v.occurrence);
  CHECK(v.lifted.size() == 1);
  CHECK(visibility_length(vertex_pattern("1:0.1.2.3"), g).lambda == kInf);
}

TEST_CASE("curl edge is visible at the R1 event level") {
  const families::Family f = families::curl_insertion(1);
  const auto sweeps = sweep_all(f.paths, kZ);
  REQUIRE(sweeps[0].events.size() == 1);
  const Event& e = sweeps[0].events[0];
  const FilteredLiftedGraph g = FilteredLiftedGraph::build(f.paths, sweeps, kZ);
  const Visibility v = visibility_length(edge_pattern(e.before, e.after, MoveKind::R1Plus), g);
  CHECK(v.lambda == g.top().edge_birth[0]);
  CHECK(v.lambda == doctest::Approx(e.lambda).epsilon(1e-6));
  CHECK(v.lambda >= 2.0 * std::numbers::pi);
  CHECK(visibility_length(edge_pattern(e.before, e.after, MoveKind::R2Plus), g).lambda == kInf);
  // the same edge is absent from a family without curl events
  CHECK(visibility_length(edge_pattern(e.before, e.after, MoveKind::R1Plus), lifted(families::push_over())).lambda ==
        kInf);
}

TEST_CASE("R3 patterns need R3 events") {
  const families::Family t = families::trigon_slide();
  const auto sweeps = sweep_all(t.paths, kZ);
  REQUIRE(sweeps[0].events.size() == 1);
  CHECK(sweeps[0].events[0].kind == MoveKind::R3);
  const FilteredLiftedGraph tg = FilteredLiftedGraph::build(t.paths, sweeps, kZ);
  const LevelGraph top = tg.top();
  REQUIRE(top.graph.edges.size() == 1);
  const BallEdge& edge = top.graph.edges[0];
  const FinitePattern q = edge_pattern(top.graph.keys[edge.from], top.graph.keys[edge.to], MoveKind::R3);
  CHECK(visibility_length(q, tg).lambda == top.edge_birth[0]);
  CHECK(visibility_length(q, recognition_graph()).lambda == kInf);
  CHECK(visibility_length(q, lifted(families::curl_insertion(1))).lambda == kInf);
}

TEST_CASE("visibility is monotone under subpatterns") {
  const FilteredLiftedGraph& g = recognition_graph();
  const FinitePattern q = FinitePattern::from_ball(ball(Diagram{}, 1));
  REQUIRE(q.graph.size() <= 12);
  const double full = visibility_length(q, g).lambda;
  CHECK(full < kInf);
  int tried = 0;
  for (unsigned mask = 1; mask < (1u << q.graph.size()); ++mask) {
    const auto s = induced(q, mask);
    if (!s) continue;
    ++tried;
    CAPTURE(mask);
    CHECK(visibility_length(*s, g).lambda <= full);
    // dropping every edge keeps only the root
    FinitePattern bare = *s;
    bare.graph.edges.clear();
    if (bare.graph.size() == 1) CHECK(visibility_length(bare, g).lambda <= visibility_length(*s, g).lambda);
  }
  CHECK(tried > 1);
}

TEST_CASE("recognition estimate on the unknot family") {
  const FilteredLiftedGraph& g = recognition_graph();
  const RecognitionEstimate r = recognition_length_estimate(Diagram{}, {0, 1}, 1, g);
  CHECK(r.caveat == std::string("empirical-upper-bound"));
  CHECK(r.root_key == std::string(kEmptyKey));
  CHECK(r.visibility.lambda < kInf);
  CHECK(r.visibility.lambda >= 2.0 * std::numbers::pi);
  REQUIRE(r.by_radius.size() == 2);
  CHECK(r.by_radius[0].second == g.lowest());
  CHECK(r.by_radius[1].second == r.visibility.lambda);
  CHECK(r.by_radius[0].second <= r.by_radius[1].second);

  const FilteredLiftedGraph again = lifted(families::recognition(1));
  const RecognitionEstimate s = recognition_length_estimate(Diagram{}, {1}, 1, again);
  CHECK(std::memcmp(&s.visibility.lambda, &r.visibility.lambda, sizeof(double)) == 0);
  CHECK(s.visibility.lifted == r.visibility.lifted);

  const auto j = nlohmann::json::parse(recognition_to_json(r));
  CHECK(j["caveat"] == "empirical-upper-bound");
  CHECK(j["lambda"].get<double>() == r.visibility.lambda);
  CHECK(j["visible"].get<bool>());
}
