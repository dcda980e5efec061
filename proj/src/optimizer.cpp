#include "optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"
#include "shapes.hpp"

namespace thickknot {

namespace {

constexpr std::int64_t kRecomputeEvery = 1000;
constexpr std::int64_t kAdaptEvery = 200;

// Closed test: touching counts as piercing, which only makes rejection safer.
bool segment_hits_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 d = p1 - p0;
  const Vec3 e1 = b - a, e2 = c - a;
  const Vec3 h = cross(d, e2);
  const double det = dot(e1, h);
  const double scale = norm(e1) * norm(e2) * norm(d);
  if (std::abs(det) <= 1e-14 * scale) {
    // segment parallel to the plane: a coplanar segment touching the triangle
    // meets one of its sides unless it lies inside
    const Vec3 nrm = cross(e1, e2);
    const double size = norm(e1) + norm(e2);
    if (std::abs(dot(p0 - a, nrm)) > 1e-12 * norm(nrm) * size) return false;
    const double tol2 = 1e-18 * size * size;
    if (segment_closest(p0, p1, a, b).dist2 <= tol2 || segment_closest(p0, p1, b, c).dist2 <= tol2 ||
        segment_closest(p0, p1, c, a).dist2 <= tol2) {
      return true;
    }
    const double s0 = dot(cross(b - a, p0 - a), nrm), s1 = dot(cross(c - b, p0 - b), nrm),
                 s2 = dot(cross(a - c, p0 - c), nrm);
    return (s0 >= 0 && s1 >= 0 && s2 >= 0) || (s0 <= 0 && s1 <= 0 && s2 <= 0);
  }
  const double f = 1.0 / det;
  const Vec3 s = p0 - a;
  const double u = f * dot(s, h);
  if (u < -1e-12 || u > 1.0 + 1e-12) return false;
  const Vec3 q = cross(s, e1);
  const double w = f * dot(d, q);
  if (w < -1e-12 || u + w > 1.0 + 1e-12) return false;
  const double t = f * dot(e2, q);
  return t >= -1e-12 && t <= 1.0 + 1e-12;
}

// Polygon with per-vertex arc radii and per-pair critical chord lengths, so a
// one-vertex move is re-evaluated on O(n) pairs.
class Chain {
 public:
  explicit Chain(std::vector<Vec3> v)
      : n_(v.size()), v_(std::move(v)), rad_(n_), chord_(n_ * n_, kInf), exact_(n_ * n_, 1), len_(n_) {
    recompute();
  }

  void recompute() {
    tan_ = unit_tangents(v_);
    for (std::size_t k = 0; k < n_; ++k) rad_[k] = vertex_min_rad(v_, k);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 2; j < n_; ++j) set_chord(i, j, pair_length(v_, tan_, i, j), true);
    }
    length_ = 0.0;
    for (std::size_t i = 0; i < n_; ++i) length_ += len_[i] = norm(v_[(i + 1) % n_] - v_[i]);
    thickness_ = std::min(*std::min_element(rad_.begin(), rad_.end()), min_chord() / 2.0);
  }

  void rescale(double k) {
    for (Vec3& p : v_) p *= k;
    recompute();
  }

  double ropelength() const { return length_ / thickness_; }
  double thickness() const { return thickness_; }
  double length() const { return length_; }
  std::size_t size() const { return n_; }
  const std::vector<Vec3>& vertices() const { return v_; }

  // Vertices whose position enters the smallest radius or chord.
  std::vector<std::size_t> bottleneck() const {
    std::size_t q = 0;
    for (std::size_t k = 1; k < n_; ++k) {
      if (rad_[k] < rad_[q]) q = k;
    }
    std::size_t bi = 0, bj = 0;
    double c = kInf;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 2; j < n_; ++j) {
        if (chord_[i * n_ + j] < c) c = chord_[i * n_ + j], bi = i, bj = j;
      }
    }
    if (rad_[q] <= c / 2.0) return {(q + n_ - 1) % n_, q, (q + 1) % n_};
    return {bi, (bi + 1) % n_, bj, (bj + 1) % n_};
  }

  struct Proposal {
    std::size_t k = 0;
    Vec3 p;
    std::array<double, 3> rad{};
    std::array<std::size_t, 4> rows{};
    std::vector<double> chords;  // 4 x n
    std::vector<char> exact;
    double length = 0.0;
    double thickness = 0.0;
  };

  // False when the moved polygon is degenerate or the move passes a strand.
  bool propose(std::size_t k, const Vec3& p, Proposal& out) const {
    const std::size_t km = (k + n_ - 1) % n_, kp = (k + 1) % n_;
    for (std::size_t e = 0; e < n_; ++e) {
      if (e == km || e == k) continue;
      const Vec3& a = v_[e];
      const Vec3& b = v_[(e + 1) % n_];
      if (e != (k + n_ - 2) % n_ && segment_hits_triangle(a, b, v_[km], v_[k], p)) return false;
      if (e != kp && segment_hits_triangle(a, b, v_[k], v_[kp], p)) return false;
    }
    std::vector<Vec3> w = v_;
    w[k] = p;
    std::vector<Vec3> wt = tan_;
    wt[km] = normalized(w[k] - w[km]);
    wt[k] = normalized(w[kp] - w[k]);
    out.k = k;
    out.p = p;
    const double l0 = norm(w[k] - w[km]), l1 = norm(w[kp] - w[k]);
    const double lmin = 1e-9 * (length_ / static_cast<double>(n_));
    if (l0 < lmin || l1 < lmin) return false;
    try {
      for (int d = -1; d <= 1; ++d) out.rad[d + 1] = vertex_min_rad(w, (k + n_ + d) % n_);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateAngle) throw;
      return false;
    }
    double rmin = std::min({out.rad[0], out.rad[1], out.rad[2]});
    for (std::size_t q = 0; q < n_; ++q) {
      if (q != km && q != k && q != kp) rmin = std::min(rmin, rad_[q]);
    }
    // Chords of at least 2 rmin cannot set the thickness, so pairs whose
    // segment distance bound clears it keep the bound until it matters.
    const double cap = 2.0 * rmin;
    for (int r = 0; r < 4; ++r) out.rows[r] = (k + n_ - 2 + r) % n_;
    out.chords.assign(4 * n_, kInf);
    out.exact.assign(4 * n_, 1);
    std::vector<char> in_rows(n_, 0);
    for (std::size_t r : out.rows) in_rows[r] = 1;
    double best = kInf;
    for (int r = 0; r < 4; ++r) {
      const std::size_t i = out.rows[r];
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == i || edges_adjacent(n_, i, j)) continue;
        const std::size_t slot = r * n_ + j;
        const double lb = distance_bound(w, i, j);
        if (lb >= cap) {
          out.chords[slot] = lb;
          out.exact[slot] = 0;
          continue;
        }
        out.chords[slot] = pair_length(w, wt, std::min(i, j), std::max(i, j));
        best = std::min(best, out.chords[slot]);
      }
    }
    if (!(best > 0.0)) return false;
    // adjacent pairs hold +inf and never win
    for (std::size_t i = 0; i < n_; ++i) {
      if (in_rows[i]) continue;
      for (std::size_t j = i + 2; j < n_; ++j) {
        if (in_rows[j]) continue;
        const double& c = chord_[i * n_ + j];
        if (c < cap && !exact_[i * n_ + j]) set_chord(i, j, pair_length(v_, tan_, i, j), true);
        best = std::min(best, c);
      }
    }
    out.length = length_ - len_[km] - len_[k] + l0 + l1;
    out.thickness = std::min(rmin, best / 2.0);
    return out.thickness > 0.0;
  }

  void commit(const Proposal& p) {
    const std::size_t k = p.k, km = (k + n_ - 1) % n_, kp = (k + 1) % n_;
    v_[k] = p.p;
    rad_[km] = p.rad[0], rad_[k] = p.rad[1], rad_[kp] = p.rad[2];
    for (int r = 0; r < 4; ++r) {
      const std::size_t i = p.rows[r];
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == i || edges_adjacent(n_, i, j)) continue;
        set_chord(i, j, p.chords[r * n_ + j], p.exact[r * n_ + j]);
      }
    }
    tan_[km] = normalized(v_[k] - v_[km]);
    tan_[k] = normalized(v_[kp] - v_[k]);
    len_[km] = norm(v_[k] - v_[km]);
    len_[k] = norm(v_[kp] - v_[k]);
    length_ = p.length;
    thickness_ = p.thickness;
  }

 private:
  static double pair_length(const std::vector<Vec3>& v, const std::vector<Vec3>& t, std::size_t i, std::size_t j) {
    return pair_critical_chord(v, t, i, j).length;
  }
  // Lower bound on the distance between edges i and j.
  static double distance_bound(const std::vector<Vec3>& v, std::size_t i, std::size_t j) {
    const std::size_t n = v.size();
    const Vec3 &a0 = v[i], &a1 = v[(i + 1) % n], &b0 = v[j], &b1 = v[(j + 1) % n];
    return norm((a0 + a1) * 0.5 - (b0 + b1) * 0.5) - 0.5 * (norm(a1 - a0) + norm(b1 - b0));
  }
  void set_chord(std::size_t i, std::size_t j, double c, bool exact) const {
    chord_[i * n_ + j] = chord_[j * n_ + i] = c;
    exact_[i * n_ + j] = exact_[j * n_ + i] = exact;
  }
  double min_chord() const {
    double m = kInf;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 2; j < n_; ++j) m = std::min(m, chord_[i * n_ + j]);
    }
    return m;
  }

  std::size_t n_;
  std::vector<Vec3> v_;
  std::vector<Vec3> tan_;
  std::vector<double> rad_;
  // lazily refined: inexact entries are lower bounds
  mutable std::vector<double> chord_;
  mutable std::vector<char> exact_;
  std::vector<double> len_;
  double length_ = 0.0;
  double thickness_ = 0.0;
};

TightenResult anneal(const Polygon3& start, const AnnealConfig& cfg, std::mt19937_64& rng) {
  // an input already at unit thickness is returned untouched if nothing improves
  const bool at_unit = std::abs(thickness(start).thickness - 1.0) <= cfg.thickness_slack;
  TightenResult res{at_unit ? start : normalize_to_unit_thickness(start), 0.0, ropelength(start), cfg.seed, 0, 0, {}};
  res.ropelength = res.initial_ropelength;
  Chain chain(std::vector<Vec3>(res.polygon.vertices().begin(), res.polygon.vertices().end()));
  std::vector<Vec3> best = chain.vertices();
  double best_rop = chain.ropelength();
  const double rop0 = chain.ropelength();
  double temp = cfg.temperature * rop0;
  // separate proposal scales for focused and uniform moves
  std::array<double, 2> step{cfg.initial_step, cfg.initial_step};
  std::array<std::int64_t, 2> tried{0, 0}, taken{0, 0};
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, chain.size() - 1);
  Chain::Proposal prop;
  std::vector<std::size_t> focus = chain.bottleneck();
  for (std::int64_t it = 1; it <= cfg.iterations; ++it) {
    // half of the moves go to the vertices that limit the thickness
    const bool focused = unit(rng) < 0.5;
    const std::size_t k = focused ? focus[pick(rng) % focus.size()] : pick(rng);
    const int lane = focused ? 1 : 0;
    ++tried[lane];
    const double sigma = step[lane] * chain.length() / static_cast<double>(chain.size());
    const Vec3 p = chain.vertices()[k] + Vec3{gauss(rng), gauss(rng), gauss(rng)} * sigma;
    const double coin = unit(rng);
    bool accept = false;
    if (chain.propose(k, p, prop)) {
      const double delta = prop.length / prop.thickness - chain.ropelength();
      accept = delta < 0.0 || (temp > cfg.freeze * rop0 && coin < std::exp(-delta / temp));
    } else {
      ++res.rejected_embedding;
    }
    if (accept) {
      chain.commit(prop);
      ++res.accepted;
      ++taken[lane];
      focus = chain.bottleneck();
      if (chain.ropelength() < best_rop) best_rop = chain.ropelength(), best = chain.vertices();
    }
    temp *= cfg.ratio;
    if (it % kAdaptEvery == 0) {
      for (int l = 0; l < 2; ++l) {
        if (tried[l] == 0) continue;
        const double rate = static_cast<double>(taken[l]) / static_cast<double>(tried[l]);
        if (rate < 0.2) step[l] *= 0.7;
        if (rate > 0.4) step[l] *= 1.3;
        step[l] = std::clamp(step[l], 1e-7, 0.5);
        tried[l] = taken[l] = 0;
      }
    }
    if (it % kRecomputeEvery == 0) chain.rescale(1.0 / chain.thickness()), focus = chain.bottleneck();
    if (cfg.trace_every > 0 && it % cfg.trace_every == 0) res.trace.push_back({it, chain.ropelength(), accept});
  }
  if (best_rop < rop0) {
    const Polygon3 out = normalize_to_unit_thickness(Polygon3::make(best));
    const double rop = ropelength(out);
    if (rop < res.initial_ropelength) res.polygon = out, res.ropelength = rop;
  }
  if (thickness(res.polygon).thickness < 1.0 - cfg.thickness_slack) {
    throw Error(ErrorKind::Degenerate, "tightened polygon is not unit thickness");
  }
  return res;
}

}  // namespace

void AnnealConfig::validate() const {
  if (iterations < 0) throw Error(ErrorKind::InvalidArgument, "iterations must be nonnegative");
  if (!(initial_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "initial step must be positive");
  if (!(temperature >= 0.0)) throw Error(ErrorKind::InvalidArgument, "temperature must be nonnegative");
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error(ErrorKind::InvalidArgument, "cooling ratio must lie in (0, 1)");
  if (!(freeze >= 0.0)) throw Error(ErrorKind::InvalidArgument, "freeze must be nonnegative");
  if (!(thickness_slack > 0.0 && thickness_slack < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "thickness slack must lie in (0, 1)");
  }
  if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be at least 1");
  if (trace_every < 0) throw Error(ErrorKind::InvalidArgument, "trace interval must be nonnegative");
}

std::vector<TightenResult> tighten_runs(const Polygon3& start, const AnnealConfig& cfg) {
  cfg.validate();
  if (start.size() < 4) throw Error(ErrorKind::InvalidArgument, "tightening needs at least 4 vertices");
  std::vector<TightenResult> runs(cfg.restarts, TightenResult{start, 0.0, 0.0, 0, 0, 0, {}});
  if (cfg.restarts == 1) {
    std::mt19937_64 rng(cfg.seed);
    runs[0] = anneal(start, cfg, rng);
    return runs;
  }
  parallel_for(runs.size(), cfg.jobs, [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    runs[r] = anneal(start, cfg, rng);
  });
  return runs;
}

TightenResult tighten(const Polygon3& start, const AnnealConfig& cfg) {
  std::vector<TightenResult> runs = tighten_runs(start, cfg);
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].ropelength < runs[best].ropelength) best = r;
  }
  return std::move(runs[best]);
}

IdealStratum ideal_stratum_estimate(const std::vector<TightenResult>& runs, double rel_tol) {
  if (runs.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one run");
  IdealStratum s;
  for (const TightenResult& r : runs) s.rop_min = std::min(s.rop_min, r.ropelength);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].ropelength <= s.rop_min * (1.0 + rel_tol)) s.representatives.push_back(i);
  }
  return s;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "iteration,ropelength,accepted\n";
  for (const TraceRow& r : trace) os << r.iteration << ',' << r.ropelength << ',' << (r.accepted ? 1 : 0) << '\n';
  return os.str();
}

std::vector<Vec3> perturbed_polygon(int n, double amplitude, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "polygon needs at least 3 vertices");
  std::vector<Vec3> v = shapes::regular_polygon(n, 1.0, 0.0);
  const double edge = 2.0 * std::sin(std::numbers::pi / n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude * edge, amplitude * edge);
  for (Vec3& p : v) p += Vec3{u(rng), u(rng), u(rng)};
  return v;
}

}  // namespace thickknot
