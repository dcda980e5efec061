#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "error.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace thickknot {

PolygonPath PolygonPath::make(std::string id, std::vector<std::vector<Vec3>> keyframes) {
  if (keyframes.empty()) throw Error(ErrorKind::InvalidArgument, "path needs at least one keyframe");
  const std::size_t n = keyframes.front().size();
  for (const auto& k : keyframes) {
    if (k.size() != n) throw Error(ErrorKind::InvalidArgument, "keyframes differ in vertex count");
    if (auto defect = polygon_defect(k)) throw Error(ErrorKind::InvalidPolygon, "keyframe: " + *defect);
  }
  return PolygonPath{std::move(id), std::move(keyframes)};
}

PolygonPath PolygonPath::reversed() const {
  PolygonPath r = *this;
  std::reverse(r.keyframes.begin(), r.keyframes.end());
  return r;
}

int move_family(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::R1Plus:
    case MoveKind::R1Minus:
      return 1;
    case MoveKind::R2Plus:
    case MoveKind::R2Minus:
      return 2;
    case MoveKind::R3:
      return 3;
  }
  return 0;
}

Polygon3 blend(const PolygonPath& path, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidArgument, "path parameter outside [0, 1]");
  const auto& kf = path.keyframes;
  if (kf.size() == 1) return Polygon3::make(kf.front());
  const double x = t * static_cast<double>(kf.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(x), kf.size() - 2);
  const double tau = x - static_cast<double>(i);
  std::vector<Vec3> v(kf[i].size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = (1.0 - tau) * kf[i][j] + tau * kf[i + 1][j];
  try {
    return Polygon3::make(std::move(v));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidPolygon) throw;
    std::ostringstream msg;
    msg << "blend at t=" << t << " is not embedded: " << e.what();
    throw Error(ErrorKind::Degenerate, msg.str());
  }
}

Polygon3 interpolate(const PolygonPath& path, double t) { return normalize_to_unit_thickness(blend(path, t)); }

namespace {

struct Level {
  double thickness;
  double ropelength;
};

Level level_of(const Polygon3& p) {
  const double th = thickness(p).thickness;
  return {th, total_length(p) / th};
}

void admit(AdmissibilityReport& r, double t, const Level& lv) {
  if (r.samples == 0 || lv.ropelength > r.max_length) r.max_length = lv.ropelength, r.argmax_t = t;
  if (r.samples == 0 || lv.thickness < r.min_thickness) r.min_thickness = lv.thickness, r.argmin_t = t;
  ++r.samples;
}

void finish(AdmissibilityReport& r, double lambda, double slack) {
  r.admissible = r.samples > 0 && r.max_length <= lambda && r.min_thickness >= 1.0 - slack;
}

struct Keyed {
  double t;
  Diagram d;
  std::string key;
};

std::optional<Keyed> diagram_at(const PolygonPath& path, const Direction& u, double t, const RegularityThresholds& thr) {
  std::optional<Polygon3> p;
  try {
    p = blend(path, t);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Degenerate) throw;
    return std::nullopt;
  }
  if (!check_regularity(*p, u, thr).regular) return std::nullopt;
  try {
    Diagram d = extract_diagram(*p, u, thr);
    std::string key = canonical_code(d);
    return Keyed{t, std::move(d), std::move(key)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotRegular && e.kind() != ErrorKind::InvalidDiagram) throw;
    return std::nullopt;
  }
}

// Nearest regular parameter to t inside (lo, hi), probing outwards.
std::optional<Keyed> regular_near(const PolygonPath& path, const Direction& u, double t, double lo, double hi,
                                  const RegularityThresholds& thr) {
  if (auto k = diagram_at(path, u, t, thr)) return k;
  const double w = std::min(t - lo, hi - t);
  for (int j = 1; j <= 12; ++j) {
    const double off = w * j / 16.0;
    for (double s : {t + off, t - off}) {
      if (s <= lo || s >= hi) continue;
      if (auto k = diagram_at(path, u, s, thr)) return k;
    }
  }
  return std::nullopt;
}

struct Bracket {
  Keyed lo;
  Keyed hi;
};

class Detector {
 public:
  Detector(const PolygonPath& path, const Direction& u, const SweepOptions& opt) : path_(path), u_(u), opt_(opt) {}

  // Grid samples with keys, endpoints checked with the strict thresholds.
  std::vector<Keyed> grid() const {
    const int n = std::max(1, static_cast<int>(std::ceil(1.0 / opt_.step - 1e-9)));
    std::vector<Keyed> out;
    out.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      if (i == 0 || i == n) {
        const Polygon3 p = blend(path_, t);
        Diagram d = extract_diagram(p, u_, opt_.endpoint);
        std::string key = canonical_code(d);
        out.push_back({t, std::move(d), std::move(key)});
        continue;
      }
      const double lo = static_cast<double>(i - 1) / n, hi = static_cast<double>(i + 1) / n;
      auto k = regular_near(path_, u_, t, std::max(lo, out.back().t), hi, opt_.interior);
      if (!k) {
        std::ostringstream msg;
        msg << "no regular projection near t=" << t;
        throw Error(ErrorKind::NotRegular, msg.str());
      }
      out.push_back(std::move(*k));
    }
    return out;
  }

  void refine(const Keyed& lo, const Keyed& hi, std::vector<Bracket>& out) const {
    if (hi.t - lo.t <= opt_.t_tol) {
      out.push_back({lo, hi});
      return;
    }
    const double mid = 0.5 * (lo.t + hi.t);
    auto m = regular_near(path_, u_, mid, lo.t, hi.t, opt_.interior);
    if (!m) {
      out.push_back({lo, hi});
      return;
    }
    if (m->key != lo.key) refine(lo, *m, out);
    if (m->key != hi.key) refine(*m, hi, out);
  }

  Event classify(const Bracket& b) const {
    Event e;
    e.t_lo = b.lo.t;
    e.t_hi = b.hi.t;
    e.t = 0.5 * (b.lo.t + b.hi.t);
    e.before = b.lo.key;
    e.after = b.hi.key;
    bool found = false;
    // sites refer to the canonical labelling so reports can be replayed
    for (const MoveResult& r : enumerate_moves(diagram_from_key(b.lo.key))) {
      if (r.key == b.hi.key) {
        e.kind = r.move.kind;
        e.witness = r.move;
        found = true;
        break;
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "key change " << e.before << " -> " << e.after << " in [" << e.t_lo << ", " << e.t_hi
          << "] is not a single Reidemeister move";
      throw Error(ErrorKind::DegenerateEvent, msg.str());
    }
    e.lambda = level_of(blend(path_, e.t)).ropelength;
    return e;
  }

 private:
  const PolygonPath& path_;
  const Direction& u_;
  const SweepOptions& opt_;
};

void check_options(const SweepOptions& opt) {
  if (!(opt.step > 0.0 && opt.step <= 1.0)) throw Error(ErrorKind::InvalidArgument, "step must lie in (0, 1]");
  if (!(opt.t_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_tol must be positive");
}

struct Detected {
  std::vector<Keyed> grid;
  std::vector<Bracket> brackets;
  std::vector<Event> events;
};

Detected detect(const PolygonPath& path, const Direction& u, const SweepOptions& opt) {
  check_options(opt);
  const Detector det(path, u, opt);
  Detected out;
  out.grid = det.grid();
  for (std::size_t i = 0; i + 1 < out.grid.size(); ++i) {
    if (out.grid[i].key != out.grid[i + 1].key) det.refine(out.grid[i], out.grid[i + 1], out.brackets);
  }
  for (const Bracket& b : out.brackets) out.events.push_back(det.classify(b));
  return out;
}

}  // namespace

AdmissibilityReport admissibility_check(const PolygonPath& path, double lambda, int n_samples, double slack) {
  if (n_samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample interval");
  AdmissibilityReport r;
  for (int i = 0; i <= n_samples; ++i) {
    const double t = static_cast<double>(i) / n_samples;
    try {
      admit(r, t, level_of(blend(path, t)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Degenerate) throw;
      admit(r, t, {0.0, kInf});
    }
  }
  finish(r, lambda, slack);
  return r;
}

std::vector<Event> detect_events(const PolygonPath& path, const Direction& u, const SweepOptions& opt) {
  return detect(path, u, opt).events;
}

SweepReport sweep(const PolygonPath& path, const Direction& u, const SweepOptions& opt, double lambda) {
  Detected d = detect(path, u, opt);
  SweepReport r;
  r.path_id = path.id;
  r.direction = u.u();
  r.lambda = lambda;
  r.events = std::move(d.events);
  std::vector<const Keyed*> pts;
  for (const Keyed& k : d.grid) pts.push_back(&k);
  for (const Bracket& b : d.brackets) pts.push_back(&b.lo), pts.push_back(&b.hi);
  std::stable_sort(pts.begin(), pts.end(), [](const Keyed* a, const Keyed* b) { return a->t < b->t; });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && pts[i]->t == pts[i - 1]->t) continue;
    const Level lv = level_of(blend(path, pts[i]->t));
    admit(r.admissibility, pts[i]->t, lv);
    r.samples.push_back({pts[i]->t, pts[i]->key, lv.ropelength});
  }
  finish(r.admissibility, lambda, kThicknessSlack);
  return r;
}

std::vector<SweepReport> sweep_all(const std::vector<PolygonPath>& paths, const Direction& u, const SweepOptions& opt,
                                   double lambda, std::size_t jobs) {
  std::vector<SweepReport> out(paths.size());
  parallel_for(paths.size(), jobs, [&](std::size_t i) { out[i] = sweep(paths[i], u, opt, lambda); });
  return out;
}

std::string sweep_to_json(const SweepReport& r) {
  using nlohmann::json;
  json events = json::array();
  for (const Event& e : r.events) {
    events.push_back({{"t", e.t},
                      {"kind", std::string(move_kind_name(e.kind))},
                      {"before", e.before},
                      {"after", e.after},
                      {"lambda", e.lambda},
                      {"witness", describe(e.witness)}});
  }
  json samples = json::array();
  for (const SweepSample& s : r.samples) samples.push_back({{"t", s.t}, {"key", s.key}, {"level", s.level}});
  json j{{"path_id", r.path_id},
         {"direction", {r.direction.x, r.direction.y, r.direction.z}},
         {"events", std::move(events)},
         {"admissible", r.admissibility.admissible},
         {"max_length", r.admissibility.max_length},
         {"min_thickness", r.admissibility.min_thickness},
         {"samples", std::move(samples)}};
  return j.dump(2);
}

}  // namespace thickknot
