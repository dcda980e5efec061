#include "thickknot/thickknot.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "diagram.hpp"
#include "error.hpp"
#include "families.hpp"
#include "io.hpp"
#include "knots.hpp"
#include "lifted.hpp"
#include "optimizer.hpp"
#include "projection.hpp"
#include "recognition.hpp"
#include "shapes.hpp"

using namespace thickknot;
using io::json;

struct tk_polygon {
  Polygon3 poly;
};

struct tk_family {
  families::Family fam;
};

struct tk_graph {
  FilteredLiftedGraph g;
};

static_assert(static_cast<int>(ErrorKind::Io) + 1 == TK_ERR_IO, "status codes follow ErrorKind order");

namespace {

thread_local std::string g_last_error;

tk_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return TK_ERR_INVALID_ARGUMENT;
    case ErrorKind::InvalidPolygon: return TK_ERR_INVALID_POLYGON;
    case ErrorKind::DegenerateAngle: return TK_ERR_DEGENERATE_ANGLE;
    case ErrorKind::NoCriticalChord: return TK_ERR_NO_CRITICAL_CHORD;
    case ErrorKind::NotRegular: return TK_ERR_NOT_REGULAR;
    case ErrorKind::InvalidDiagram: return TK_ERR_INVALID_DIAGRAM;
    case ErrorKind::InvalidSite: return TK_ERR_INVALID_SITE;
    case ErrorKind::BudgetExceeded: return TK_ERR_BUDGET_EXCEEDED;
    case ErrorKind::Degenerate: return TK_ERR_DEGENERATE;
    case ErrorKind::DegenerateEvent: return TK_ERR_DEGENERATE_EVENT;
    case ErrorKind::InconsistentEvent: return TK_ERR_INCONSISTENT_EVENT;
    case ErrorKind::LevelNotSampled: return TK_ERR_LEVEL_NOT_SAMPLED;
    case ErrorKind::Parse: return TK_ERR_PARSE;
    case ErrorKind::Io: return TK_ERR_IO;
  }
  return TK_ERR_INTERNAL;
}

// Runs f and maps every exception to a status; nothing escapes the C boundary.
template <class F>
tk_status guard(F&& f) noexcept {
  try {
    f();
    g_last_error.clear();
    return TK_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return TK_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TK_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return TK_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Vec3 direction_of(const double dir[3]) {
  const Vec3 v{dir[0], dir[1], dir[2]};
  require(std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z), "direction must be finite");
  require(norm(v) > 0.0, "direction must be nonzero");
  return normalized(v);
}

// Canonical keys look like "3:..." or the empty key; anything else is a
// named diagram or PD text.
Diagram diagram_of(const char* diagram_text) {
  require(diagram_text != nullptr, "diagram text is null");
  const std::string s(diagram_text);
  const std::size_t colon = s.find(':');
  const bool is_key = s == kEmptyKey || (colon != std::string::npos && colon > 0 &&
                                         s.find_first_not_of("0123456789") == colon);
  if (is_key) return diagram_from_key(s);
  return knots::by_name(s);
}

json diagram_info(const Diagram& d) {
  return json{{"key", canonical_code(d)},
              {"crossings", d.n_crossings()},
              {"writhe", writhe(d)},
              {"determinant", determinant(d)},
              {"pd", d.pd()},
              {"mirror_key", mirror_key(canonical_code(d))}};
}

SweepOptions sweep_options(const tk_sweep_options* opt, double* lambda, std::size_t* jobs) {
  tk_sweep_options o;
  tk_sweep_options_default(&o);
  if (opt != nullptr) o = *opt;
  require(o.step > 0.0 && o.step <= 1.0, "step must lie in (0, 1]");
  require(o.t_tol > 0.0 && o.t_tol < o.step, "t_tol must lie in (0, step)");
  require(!std::isnan(o.lambda), "lambda must not be NaN");
  SweepOptions s;
  s.step = o.step;
  s.t_tol = o.t_tol;
  *lambda = o.lambda;
  *jobs = o.jobs;
  return s;
}

json thickness_json(const Polygon3& p) {
  const ThicknessReport t = thickness(p);
  const double len = total_length(p);
  return json{{"min_rad", io::number(t.min_rad)},
              {"dcsd", io::number(t.dcsd)},
              {"thickness", io::number(t.thickness)},
              {"length", len},
              {"ropelength", io::number(len / t.thickness)}};
}

template <class T>
void set_out(T** out, T* value) {
  *out = value;
}

}  // namespace

extern "C" {

const char* tk_version(void) { return "0.1.0"; }

const char* tk_status_name(tk_status status) {
  switch (status) {
    case TK_OK: return "Ok";
    case TK_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    case TK_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status >= TK_ERR_INVALID_ARGUMENT && status <= TK_ERR_IO) {
    return error_kind_name(static_cast<ErrorKind>(static_cast<int>(status) - 1));
  }
  return "Unknown";
}

const char* tk_last_error(void) { return g_last_error.c_str(); }

void tk_string_free(char* s) { std::free(s); }

tk_status tk_polygon_from_json(const char* text, tk_polygon** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto p = std::make_unique<tk_polygon>(tk_polygon{Polygon3::make(io::parse_vertices(io::parse(text)))});
    set_out(out, p.release());
  });
}

tk_status tk_polygon_from_coords(const double* xyz, size_t n_vertices, tk_polygon** out) {
  return guard([&] {
    require(xyz != nullptr && out != nullptr, "null argument");
    std::vector<Vec3> v(n_vertices);
    for (std::size_t i = 0; i < n_vertices; ++i) v[i] = {xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
    auto p = std::make_unique<tk_polygon>(tk_polygon{Polygon3::make(std::move(v))});
    set_out(out, p.release());
  });
}

tk_status tk_polygon_builtin(const char* shape, int n, double amplitude, uint64_t seed, tk_polygon** out) {
  return guard([&] {
    require(shape != nullptr && out != nullptr, "null argument");
    require(n >= 3, "a polygon needs at least 3 vertices");
    const std::string s(shape);
    std::vector<Vec3> v;
    if (s == "regular") {
      v = shapes::regular_polygon(n);
    } else if (s == "trefoil") {
      v = shapes::trefoil(n);
    } else if (s == "perturbed") {
      require(amplitude >= 0.0 && amplitude < 0.5, "amplitude must lie in [0, 0.5)");
      v = perturbed_polygon(n, amplitude, seed);
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown shape: " + s);
    }
    auto p = std::make_unique<tk_polygon>(tk_polygon{Polygon3::make(std::move(v))});
    set_out(out, p.release());
  });
}

void tk_polygon_free(tk_polygon* p) { delete p; }

size_t tk_polygon_size(const tk_polygon* p) { return p == nullptr ? 0 : p->poly.size(); }

tk_status tk_polygon_coords(const tk_polygon* p, double* xyz, size_t capacity) {
  return guard([&] {
    require(p != nullptr && (xyz != nullptr || capacity == 0), "null argument");
    std::size_t k = 0;
    for (const Vec3& v : p->poly.vertices()) {
      for (double c : {v.x, v.y, v.z}) {
        if (k < capacity) xyz[k] = c;
        ++k;
      }
    }
  });
}

tk_status tk_polygon_to_json(const tk_polygon* p, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    set_out(out, dup_string(io::dump(io::polygon_json(p->poly.vertices()))));
  });
}

tk_status tk_thickness(const tk_polygon* p, tk_thickness_report* out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const ThicknessReport t = thickness(p->poly);
    const double len = total_length(p->poly);
    *out = tk_thickness_report{t.min_rad, t.dcsd, t.thickness, len, len / t.thickness};
  });
}

tk_status tk_project_json(const tk_polygon* p, const double dir[3], char** out) {
  return guard([&] {
    require(p != nullptr && dir != nullptr && out != nullptr, "null argument");
    const Direction d = Direction::make(direction_of(dir));
    const RegularityReport r = check_regularity(p->poly, d);
    json j{{"direction", io::vec3(d.u())},
           {"regular", r.regular},
           {"failure", std::string(failure_name(r.failure))},
           {"crossings", r.crossings},
           {"min_transversality_angle", io::number(r.min_transversality_angle)},
           {"min_vertex_clearance", io::number(r.min_vertex_clearance)},
           {"min_triple_clearance", io::number(r.min_triple_clearance)},
           {"min_depth_gap", io::number(r.min_depth_gap)}};
    json points = json::array();
    for (const ProjectedCrossing& c : r.points) {
      points.push_back({{"edge_a", c.edge_a},
                        {"s", c.s},
                        {"edge_b", c.edge_b},
                        {"t", c.t},
                        {"point", {c.point.x, c.point.y}},
                        {"depth_gap", c.depth_gap}});
    }
    j["points"] = std::move(points);
    j["diagram"] = r.regular ? diagram_info(extract_diagram(p->poly, d)) : json(nullptr);
    set_out(out, dup_string(io::dump(j)));
  });
}

tk_status tk_diagram_json(const char* diagram_text, char** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    const Diagram d = diagram_of(diagram_text);
    json j = diagram_info(d);
    json moves = json::array();
    for (const MoveResult& m : enumerate_moves(d)) {
      moves.push_back({{"kind", std::string(move_kind_name(m.move.kind))},
                       {"site", describe(m.move)},
                       {"result", m.key}});
    }
    j["moves"] = std::move(moves);
    set_out(out, dup_string(io::dump(j)));
  });
}

tk_status tk_ball_json(const char* diagram_text, int radius, size_t budget, char** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    require(radius >= 0, "radius must be nonnegative");
    const Diagram d = diagram_of(diagram_text);
    set_out(out, dup_string(ball_to_json(ball(d, radius, budget == 0 ? kDefaultBallBudget : budget))));
  });
}

tk_status tk_family_from_json(const char* text, tk_family** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto f = std::make_unique<tk_family>(tk_family{io::parse_family(io::parse(text))});
    set_out(out, f.release());
  });
}

tk_status tk_family_builtin(const char* name, uint64_t seed, tk_family** out) {
  return guard([&] {
    require(name != nullptr && out != nullptr, "null argument");
    auto f = std::make_unique<tk_family>(tk_family{families::by_name(name, seed)});
    set_out(out, f.release());
  });
}

void tk_family_free(tk_family* f) { delete f; }

size_t tk_family_path_count(const tk_family* f) { return f == nullptr ? 0 : f->fam.paths.size(); }

tk_status tk_family_direction(const tk_family* f, double dir[3]) {
  return guard([&] {
    require(f != nullptr && dir != nullptr, "null argument");
    dir[0] = f->fam.direction.x;
    dir[1] = f->fam.direction.y;
    dir[2] = f->fam.direction.z;
  });
}

tk_status tk_family_to_json(const tk_family* f, char** out) {
  return guard([&] {
    require(f != nullptr && out != nullptr, "null argument");
    set_out(out, dup_string(io::dump(io::family_json(f->fam))));
  });
}

void tk_sweep_options_default(tk_sweep_options* opt) {
  if (opt == nullptr) return;
  const SweepOptions s;
  *opt = tk_sweep_options{s.step, s.t_tol, kInf, 0};
}

tk_status tk_sweep_json(const tk_family* f, const double dir[3], const tk_sweep_options* opt, char** out) {
  return guard([&] {
    require(f != nullptr && out != nullptr, "null argument");
    double lambda = kInf;
    std::size_t jobs = 0;
    const SweepOptions so = sweep_options(opt, &lambda, &jobs);
    const Direction u = Direction::make(dir != nullptr ? direction_of(dir) : f->fam.direction);
    json paths = json::array();
    for (const SweepReport& r : sweep_all(f->fam.paths, u, so, lambda, jobs)) {
      json j = json::parse(sweep_to_json(r));
      j["lambda"] = io::number(r.lambda);
      paths.push_back(std::move(j));
    }
    set_out(out, dup_string(io::dump(json{{"direction", io::vec3(u.u())}, {"paths", std::move(paths)}})));
  });
}

tk_status tk_graph_build(const tk_family* f, const double dir[3], const tk_sweep_options* opt, tk_graph** out) {
  return guard([&] {
    require(f != nullptr && out != nullptr, "null argument");
    double lambda = kInf;
    std::size_t jobs = 0;
    const SweepOptions so = sweep_options(opt, &lambda, &jobs);
    const Direction u = Direction::make(dir != nullptr ? direction_of(dir) : f->fam.direction);
    const std::vector<SweepReport> sweeps = sweep_all(f->fam.paths, u, so, lambda, jobs);
    auto g = std::make_unique<tk_graph>(tk_graph{FilteredLiftedGraph::build(f->fam.paths, sweeps, u)});
    set_out(out, g.release());
  });
}

void tk_graph_free(tk_graph* g) { delete g; }

tk_status tk_graph_levels_get(const tk_graph* g, tk_graph_levels* out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    const auto& grid = g->g.grid();
    require(!grid.empty(), "graph has no samples");
    *out = tk_graph_levels{g->g.lowest(), g->g.ideal_level(), grid.back(), grid.size()};
  });
}

tk_status tk_graph_json(const tk_graph* g, double lambda, char** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    json j = json::parse(lifted_to_json(g->g, lambda));
    j["resolved"] = io::number(g->g.resolve(lambda));
    set_out(out, dup_string(io::dump(j)));
  });
}

tk_status tk_growth_json(const tk_graph* g, double lambda, char** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    const FilteredLiftedGraph& G = g->g;
    const double resolved = G.resolve(lambda);
    const LevelGraph lg = G.at(lambda);
    auto hops = [](std::optional<int> h) { return h ? json(*h) : json("inf"); };
    json profile = json::object();
    for (const auto& [c, count] : G.crossing_profile(lambda)) profile[std::to_string(c)] = count;
    json births = json::array();
    for (std::size_t v = 0; v < lg.graph.size(); ++v) {
      births.push_back({{"id", v}, {"key", lg.graph.keys[v]}, {"birth", lg.birth[v]}});
    }
    json j{{"lambda", io::number(lambda)},
           {"resolved", io::number(resolved)},
           {"ideal_level", io::number(G.ideal_level())},
           {"vertices", lg.graph.size()},
           {"edges", lg.graph.edges.size()},
           {"radius", hops(G.reidemeister_radius(lambda))},
           {"diameter", hops(G.diameter(lambda))},
           {"profile", std::move(profile)},
           {"components", G.components_at(lambda).size()},
           {"births", std::move(births)}};
    set_out(out, dup_string(io::dump(j)));
  });
}

tk_status tk_merge_tree_json(const tk_graph* g, char** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    set_out(out, dup_string(merge_tree_to_json(g->g, g->g.merge_tree())));
  });
}

tk_status tk_recognize_json(const tk_graph* g, const char* root_text, int radius, const int* radii, size_t n_radii,
                            int mirror_either, size_t budget, char** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    require(radius >= 0, "radius must be nonnegative");
    require(radii != nullptr || n_radii == 0, "null radii");
    std::vector<int> rs(radii, radii + n_radii);
    for (int r : rs) require(r >= 0, "radii must be nonnegative");
    const Diagram root = diagram_of(root_text);
    const RecognitionEstimate e =
        recognition_length_estimate(root, rs, radius, g->g, mirror_either ? MirrorPolicy::Either : MirrorPolicy::Direct,
                                    budget == 0 ? kDefaultBallBudget : budget);
    set_out(out, dup_string(recognition_to_json(e)));
  });
}

void tk_anneal_config_default(tk_anneal_config* cfg) {
  if (cfg == nullptr) return;
  const AnnealConfig a;
  *cfg = tk_anneal_config{a.seed,  a.iterations,      a.initial_step, a.temperature, a.ratio,
                          a.freeze, a.thickness_slack, a.restarts,     a.jobs,        a.trace_every};
}

tk_status tk_tighten(const tk_polygon* p, const tk_anneal_config* cfg, tk_polygon** out, char** report,
                     char** trace_csv) {
  return guard([&] {
    require(p != nullptr && cfg != nullptr && out != nullptr && report != nullptr, "null argument");
    AnnealConfig a;
    a.seed = cfg->seed;
    a.iterations = cfg->iterations;
    a.initial_step = cfg->initial_step;
    a.temperature = cfg->temperature;
    a.ratio = cfg->ratio;
    a.freeze = cfg->freeze;
    a.thickness_slack = cfg->thickness_slack;
    a.restarts = cfg->restarts;
    a.jobs = cfg->jobs;
    a.trace_every = cfg->trace_every;
    std::vector<TightenResult> runs = tighten_runs(p->poly, a);
    std::size_t best = 0;
    json rs = json::array();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (runs[r].ropelength < runs[best].ropelength) best = r;
      rs.push_back({{"restart", r},
                    {"initial_ropelength", runs[r].initial_ropelength},
                    {"ropelength", runs[r].ropelength},
                    {"accepted", runs[r].accepted},
                    {"rejected_embedding", runs[r].rejected_embedding}});
    }
    const IdealStratum s = ideal_stratum_estimate(runs);
    const TightenResult& b = runs[best];
    json j{{"seed", a.seed},
           {"iterations", a.iterations},
           {"restarts", std::move(rs)},
           {"best", best},
           {"initial_ropelength", b.initial_ropelength},
           {"ropelength", b.ropelength},
           {"thickness", thickness_json(b.polygon)},
           {"ideal_stratum", {{"rop_min", s.rop_min}, {"representatives", s.representatives}}},
           {"polygon", io::polygon_json(b.polygon.vertices()).at("vertices")}};
    auto poly = std::make_unique<tk_polygon>(tk_polygon{b.polygon});
    std::string rep = io::dump(j);
    char* trace = trace_csv != nullptr ? dup_string(trace_to_csv(b.trace)) : nullptr;
    char* rep_c = nullptr;
    try {
      rep_c = dup_string(rep);
    } catch (...) {
      std::free(trace);
      throw;
    }
    set_out(out, poly.release());
    set_out(report, rep_c);
    if (trace_csv != nullptr) set_out(trace_csv, trace);
  });
}

}  // extern "C"
