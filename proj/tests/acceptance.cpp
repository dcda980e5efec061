// Acceptance run: one PASS/FAIL line per criterion. Arguments select
// criteria by number; no arguments runs all of them.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "error.hpp"
#include "families.hpp"
#include "knots.hpp"
#include "lifted.hpp"
#include "moves.hpp"
#include "optimizer.hpp"
#include "oracles.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "polygon.hpp"
#include "projection.hpp"
#include "recognition.hpp"
#include "shapes.hpp"
#include "sweep.hpp"

using namespace thickknot;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Direction kZ = Direction::make({0, 0, 1});

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

FilteredLiftedGraph lifted(const std::vector<PolygonPath>& paths) {
  const std::vector<SweepReport> sweeps = sweep_all(paths, kZ);
  return FilteredLiftedGraph::build(paths, sweeps, kZ);
}

// 1. Regular-polygon ropelength against 2n tan(pi/n) and 2 pi.
void regular_polygons(Outcome& o) {
  double worst = 0.0;
  for (int n = 3; n <= 64; ++n) {
    const double rop = ropelength(Polygon3::make(oracle::regular_polygon(n, 1.0 + 0.01 * n, 0.1 * n)));
    const double exact = 2.0 * n * std::tan(std::numbers::pi / n);
    worst = std::max(worst, std::abs(rop - exact) / exact);
  }
  o.require(worst <= 1e-9, "relative error " + fmt(worst) + " for n <= 64");
  const double r512 = ropelength(Polygon3::make(oracle::regular_polygon(512)));
  const double rel = std::abs(r512 - kTwoPi) / kTwoPi;
  o.require(rel <= 2e-5, "n = 512 off 2 pi by " + fmt(rel));
  o.detail << "max rel error n=3..64 " << fmt(worst, 3) << ", n=512 rop " << fmt(r512, 10) << " (rel " << fmt(rel, 3)
           << " from 2pi)";
}

// 2. dcsd against dense brute force on random embedded polygons.
void dcsd_oracle(Outcome& o) {
  std::mt19937_64 rng(7001);
  double worst = 0.0;
  int finite = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + trial % 19;  // 6..24
    const std::vector<Vec3> v = oracle::random_embedded_polygon(rng, n);
    const double got = dcsd_poly(Polygon3::make(v)).length;
    const double want = oracle::dcsd_brute_force(v);
    if (std::isinf(got) || std::isinf(want)) {
      o.require(got == want, "trial " + std::to_string(trial) + ": " + fmt(got) + " vs " + fmt(want));
      continue;
    }
    ++finite;
    worst = std::max(worst, std::abs(got - want));
  }
  o.require(worst <= 1e-6, "max abs difference " + fmt(worst));
  o.detail << "20 polygons (n 6..24), " << finite << " finite, max |dcsd - brute force| " << fmt(worst, 3);
}

// 3. Unknot tightening from perturbed 64-gons.
void unknot_tightening(Outcome& o) {
  constexpr int kSeeds = 10;
  constexpr double kTarget = 6.3510;
  std::vector<double> rop(kSeeds);
  parallel_for(kSeeds, 0, [&](std::size_t i) {
    const std::uint64_t seed = i + 1;
    AnnealConfig cfg;
    cfg.seed = seed;
    cfg.trace_every = 0;
    rop[i] = tighten(Polygon3::make(perturbed_polygon(64, 0.02, seed)), cfg).ropelength;
  });
  int hits = 0;
  for (double r : rop) hits += r <= kTarget ? 1 : 0;
  o.require(hits >= 8, std::to_string(hits) + "/10 seeds reach " + fmt(kTarget));
  o.detail << hits << "/10 seeds <= " << fmt(kTarget) << " (floor 128 tan(pi/64) = "
           << fmt(128.0 * std::tan(std::numbers::pi / 64), 7) << "); ropelength by seed:";
  for (double r : rop) o.detail << ' ' << fmt(r, 6);
}

// Unit vectors spread over the sphere (golden-angle spiral), slightly
// rotated so none lines up with a coordinate axis.
std::vector<Vec3> probe_directions(int count) {
  std::vector<Vec3> out;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(1.0 - z * z);
    const double a = golden * i + 0.1234;
    out.push_back(normalized(Vec3{r * std::cos(a) + 0.0123, r * std::sin(a) - 0.0071, z}));
  }
  return out;
}

// 4. Trefoil tightening and its diagram.
void trefoil_band(Outcome& o) {
  const Polygon3 start = Polygon3::make(shapes::trefoil(96));
  AnnealConfig cfg;
  cfg.seed = 1;
  cfg.trace_every = 0;
  const TightenResult r = tighten(start, cfg);
  o.require(r.ropelength <= 36.0, "ropelength " + fmt(r.ropelength) + " above 36");
  // Regular projections over a spread of directions: the fewest crossings
  // seen and the determinant everywhere.
  int regular = 0, fewest = 1 << 30;
  std::set<long long> dets;
  Vec3 best_dir{};
  for (const Vec3& u : probe_directions(200)) {
    const Direction d = Direction::make(u);
    if (!check_regularity(r.polygon, d).regular) continue;
    const Diagram dg = extract_diagram(r.polygon, d);
    ++regular;
    dets.insert(std::llabs(determinant(dg)));
    if (dg.n_crossings() < fewest) fewest = dg.n_crossings(), best_dir = u;
  }
  o.require(regular > 0, "no regular projection found");
  o.require(fewest == 3, "fewest crossings " + std::to_string(fewest));
  o.require(dets == std::set<long long>{3}, "determinant not 3 at every regular direction");
  const bool in_band = r.ropelength > 31.32 && r.ropelength < 32.74317;
  o.detail << "ropelength " << fmt(r.ropelength, 8) << " from " << fmt(r.initial_ropelength, 6) << " ("
           << (in_band ? "inside" : "outside") << " the smooth band 31.32..32.74317, reported only); " << regular
           << "/200 directions regular, fewest crossings " << fewest << " at (" << fmt(best_dir.x, 4) << ", "
           << fmt(best_dir.y, 4) << ", " << fmt(best_dir.z, 4) << "), |det| = 3 at all";
}

// 5. One event of the designed kind per constructed family.
void cerf_sweep(Outcome& o) {
  struct Case {
    families::Family f;
    int family;
  };
  const Case cases[] = {{families::curl_insertion(1), 1}, {families::push_over(), 2}, {families::trigon_slide(), 3}};
  for (const Case& c : cases) {
    const PolygonPath& p = c.f.paths.front();
    SweepOptions opt;
    const std::vector<Event> ev = detect_events(p, kZ, opt);
    opt.step /= 2.0;
    const std::vector<Event> half = detect_events(p, kZ, opt);
    bool witnesses = true;
    for (const Event& e : ev) {
      witnesses = witnesses && canonical_code(apply_move(diagram_from_key(e.before), e.witness)) == e.after;
    }
    const std::string name = c.f.name;
    o.require(ev.size() == 1 && move_family(ev[0].kind) == c.family,
              name + ": " + std::to_string(ev.size()) + " events");
    o.require(witnesses, name + ": witness move does not reproduce the key");
    o.require(half.size() == ev.size(), name + ": event count changes under step halving");
    if (ev.size() == 1 && half.size() == 1) {
      o.require(half[0].before == ev[0].before && half[0].after == ev[0].after && half[0].kind == ev[0].kind,
                name + ": event differs under step halving");
    }
    if (c.family == 1 && ev.size() == 1) {
      o.require(ev[0].lambda >= kTwoPi - 1e-6, name + ": R1 level below 2 pi");
    }
    o.detail << name << ": " << ev.size() << "x";
    for (const Event& e : ev) o.detail << move_kind_name(e.kind) << " at t=" << fmt(e.t, 8) << " level " << fmt(e.lambda);
    o.detail << " (halved step: " << half.size() << "); ";
  }
}

// 6. components_at against BFS on the sampled complex at every grid level.
void component_reconstruction(Outcome& o) {
  std::vector<std::vector<PolygonPath>> ensembles;
  ensembles.push_back(families::curl_insertion(1).paths);
  ensembles.push_back(families::two_cluster().paths);
  ensembles.push_back(families::three_cluster().paths);
  {
    std::vector<PolygonPath> mixed = families::push_over().paths;
    for (const PolygonPath& p : families::trigon_slide().paths) mixed.push_back(p);
    ensembles.push_back(mixed);
  }
  {
    std::vector<PolygonPath> curls = families::curl_insertion(1).paths;
    curls.push_back(families::curl_insertion(-1).paths.front());
    ensembles.push_back(curls);
  }
  std::size_t levels = 0;
  for (std::size_t k = 0; k < ensembles.size(); ++k) {
    const std::vector<SweepReport> sweeps = sweep_all(ensembles[k], kZ);
    const FilteredLiftedGraph g = FilteredLiftedGraph::build(ensembles[k], sweeps, kZ);
    const oracle::SampledComplex cx = oracle::sampled_complex(ensembles[k], sweeps);
    int mismatches = 0;
    for (double lv : g.grid()) {
      std::multiset<oracle::Summary> mine;
      for (const auto& comp : g.components_at(lv)) {
        oracle::Summary s;
        for (int n : comp) s.emplace(g.nodes()[n].key, g.nodes()[n].level);
        mine.insert(std::move(s));
      }
      if (mine != oracle::components(cx, lv)) ++mismatches;
      ++levels;
    }
    o.require(mismatches == 0, "ensemble " + std::to_string(k + 1) + ": " + std::to_string(mismatches) + " levels differ");
    o.detail << "ensemble " << k + 1 << ": " << g.grid().size() << " levels, " << g.nodes().size() << " nodes; ";
  }
  o.detail << levels << " grid levels compared";
}

// 7. Two-cluster merge scale against the designed bridge length.
void merge_scale_agreement(Outcome& o) {
  const families::Family f = families::two_cluster(1.6);
  const std::vector<SweepReport> sweeps = sweep_all(f.paths, kZ);
  const FilteredLiftedGraph g = FilteredLiftedGraph::build(f.paths, sweeps, kZ);
  const double want = families::stretched_ropelength(1.6);
  const std::size_t leaves = g.ideal_components().size();
  o.require(leaves == 2, std::to_string(leaves) + " ideal components");
  if (leaves != 2) return;
  const double ms = g.merge_scale(0, 1);
  // One grid step: the largest level change between consecutive samples of
  // a path that reaches the merge level.
  double step = 0.0;
  for (const SweepReport& r : sweeps) {
    const bool bridge = std::any_of(r.samples.begin(), r.samples.end(), [&](const SweepSample& x) { return x.level == ms; });
    if (!bridge) continue;
    for (std::size_t i = 1; i < r.samples.size(); ++i) {
      step = std::max(step, std::abs(r.samples[i].level - r.samples[i - 1].level));
    }
  }
  o.require(std::abs(ms - want) <= step, "merge scale " + fmt(ms, 12) + " vs " + fmt(want, 12));
  const MergeTree t = g.merge_tree();
  o.require(t.internal() == 1, std::to_string(t.internal()) + " internal nodes");
  if (t.internal() == 1) o.require(t.nodes[t.root()].height == ms, "root height differs from merge scale");
  o.detail << "merge scale " << fmt(ms, 12) << ", designed L* " << fmt(want, 12) << ", |diff| " << fmt(std::abs(ms - want), 3)
           << " <= grid step " << fmt(step, 3) << "; merge tree: 2 leaves, " << t.internal() << " internal node";
}

// 8. Move properties over balls of radius 2, at most 4 crossings.
void move_oracles(Outcome& o) {
  std::set<std::string> keys;
  std::size_t balls = 0;
  for (const Diagram& root : {Diagram{}, knots::trefoil()}) {
    const RootedTypedBall b = ball(root, 2);
    balls += b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b.crossings[i] <= 4) keys.insert(b.keys[i]);
    }
  }
  std::vector<std::string> ks(keys.begin(), keys.end());
  std::vector<std::size_t> bad(ks.size());
  std::vector<std::string> first(ks.size());
  parallel_for(ks.size(), 0, [&](std::size_t i) {
    const auto v = oracle::move_property_violations(diagram_from_key(ks[i]));
    bad[i] = v.size();
    if (!v.empty()) first[i] = v.front();
  });
  std::size_t total = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    total += bad[i];
    if (bad[i] > 0) o.require(false, first[i]);
  }
  bool reducing = false;
  for (const MoveResult& m : enumerate_moves(knots::trefoil())) reducing |= crossing_delta(m.move.kind) < 0;
  o.require(!reducing, "standard trefoil admits a crossing-reducing move");
  o.detail << ks.size() << " diagrams with <= 4 crossings from balls of " << balls << " vertices, " << total
           << " violations; trefoil has no crossing-reducing move";
}

// 9. Matcher against exhaustive injective maps, plus mirror coherence.
void pattern_oracle(Outcome& o) {
  std::mt19937_64 rng(90210);
  std::vector<std::string> pool = ball(knots::trefoil(), 1).keys;
  for (const auto& k : ball(Diagram{}, 2).keys) pool.push_back(k);
  int agree = 0, found = 0, coherent = 0, either = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = oracle::random_pattern_instance(rng, pool, 6 + trial % 7, 6);
    const auto occ = occurs(inst.pattern, inst.host);
    const bool brute = oracle::occurs_exhaustive(inst.pattern, inst.host);
    if (occ.has_value() == brute && (!occ || is_occurrence(inst.pattern, inst.host, *occ))) ++agree;
    found += brute ? 1 : 0;
    FinitePattern direct = inst.pattern;
    direct.mirror = MirrorPolicy::Direct;
    FinitePattern any = inst.pattern;
    any.mirror = MirrorPolicy::Either;
    const bool split = occurs(direct, inst.host).has_value() || occurs(direct, inst.host.mirrored()).has_value();
    const bool mirrored_host = occurs(any, inst.host).has_value() == occurs(any, inst.host.mirrored()).has_value();
    ++either;
    if (occurs(any, inst.host).has_value() == split && mirrored_host) ++coherent;
  }
  o.require(agree == 200, std::to_string(200 - agree) + " disagreements with exhaustive search");
  o.require(coherent == either, std::to_string(either - coherent) + " mirror-policy incoherences");
  o.detail << "200 instances (hosts 6..12, patterns <= 6), " << agree << " agree, " << found
           << " positive; mirror policy coherent on " << coherent << "/" << either;
}

// 10. Recognition estimate on the sweep-rich unknot family.
void recognition_smoke(Outcome& o) {
  const std::uint64_t seed = 1;
  const FilteredLiftedGraph g = lifted(families::recognition(seed).paths);
  const RecognitionEstimate r = recognition_length_estimate(Diagram{}, {0, 1}, 1, g);
  const double lam = r.visibility.lambda;
  o.require(std::isfinite(lam), "estimate is infinite");
  o.require(lam >= kTwoPi, "estimate below 2 pi");
  const FilteredLiftedGraph again = lifted(families::recognition(seed).paths);
  const RecognitionEstimate s = recognition_length_estimate(Diagram{}, {0, 1}, 1, again);
  const bool same = std::memcmp(&lam, &s.visibility.lambda, sizeof lam) == 0 && r.visibility.lifted == s.visibility.lifted;
  o.require(same, "rerun differs");
  o.detail << "root O, R* = 1, seed " << seed << ": " << r.pattern_vertices << " pattern vertices, "
           << r.pattern_edges << " edges, Lambda = " << fmt(lam, 12) << " (" << r.caveat << "), rerun "
           << (same ? "bit-identical" : "differs") << "; " << g.nodes().size() << " lifted nodes, "
           << g.events().size() << " events";
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "regular-polygon ropelength", 1.0, regular_polygons},
      {2, "dcsd oracle", 30.0, dcsd_oracle},
      {3, "unknot tightening", 300.0, unknot_tightening},
      {4, "trefoil band", 900.0, trefoil_band},
      {5, "cerf-sweep correctness", 60.0, cerf_sweep},
      {6, "component reconstruction", 10.0, component_reconstruction},
      {7, "merge-scale agreement", 60.0, merge_scale_agreement},
      {8, "move-enumeration oracles", 120.0, move_oracles},
      {9, "pattern matcher oracle", 30.0, pattern_oracle},
      {10, "recognition pipeline smoke test", 300.0, recognition_smoke},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_s, "runtime " + fmt(secs, 3) + " s over the " + fmt(c.budget_s) + " s budget");
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.name << " [" << std::fixed
              << std::setprecision(2) << secs << " s]: " << std::defaultfloat << o.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
