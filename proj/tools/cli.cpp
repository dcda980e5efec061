// Command-line harness over the C interface. Every subcommand prints one JSON
// document to standard output (or --out) and exits 0; failures print a JSON
// error object to standard error and exit 2 (usage) or 1 (domain).
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "thickknot/thickknot.h"

namespace {

using nlohmann::json;

struct Failure {
  int exit_code;
  std::string kind;
  std::string message;
};

[[noreturn]] void usage(const std::string& message) { throw Failure{2, "Usage", message}; }

void check(tk_status s) {
  if (s != TK_OK) throw Failure{1, tk_status_name(s), tk_last_error()};
}

struct PolygonDel {
  void operator()(tk_polygon* p) const { tk_polygon_free(p); }
};
struct FamilyDel {
  void operator()(tk_family* f) const { tk_family_free(f); }
};
struct GraphDel {
  void operator()(tk_graph* g) const { tk_graph_free(g); }
};
struct StringDel {
  void operator()(char* s) const { tk_string_free(s); }
};
using Polygon = std::unique_ptr<tk_polygon, PolygonDel>;
using Family = std::unique_ptr<tk_family, FamilyDel>;
using Graph = std::unique_ptr<tk_graph, GraphDel>;
using CString = std::unique_ptr<char, StringDel>;

std::string take(char* s) { return std::string(CString(s).get()); }

std::string shortest(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{1, "Io", "cannot open '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double parse_level(const std::string& s, const char* what) {
  if (s == "inf" || s == "+inf") return INFINITY;
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || std::isnan(x)) {
    usage(std::string(what) + " must be a number or inf, got '" + s + "'");
  }
  return x;
}

std::array<double, 3> parse_dir(const std::string& s) {
  std::array<double, 3> d{};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? s.find(',', pos) : s.size();
    if (end == std::string::npos) usage("--dir expects x,y,z, got '" + s + "'");
    const std::string item = s.substr(pos, end - pos);
    const auto r = std::from_chars(item.data(), item.data() + item.size(), d[k]);
    if (item.empty() || r.ec != std::errc() || r.ptr != item.data() + item.size() || !std::isfinite(d[k])) {
      usage("--dir expects x,y,z, got '" + s + "'");
    }
    pos = end + 1;
  }
  if (d[0] == 0.0 && d[1] == 0.0 && d[2] == 0.0) usage("--dir must be nonzero");
  return d;
}

// Every option value, whether it came from a flag or from --config.
struct Options {
  std::string in, out, config, dir, lambda = "inf", pd, family, shape, trace;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int radius = -1;
  std::vector<int> radii;
  double step = 0.0, ttol = 0.0;
  std::size_t jobs = 0, budget = 0;
  bool mirror = false;
  int n = 0;
  double amplitude = 0.02;
  tk_anneal_config anneal{};
};

// Registers a flag together with the config key of the same name.
class Binder {
 public:
  explicit Binder(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, T& target, const std::string& desc) {
    setters_[name] = [&target, name](const json& j) {
      try {
        target = j.get<T>();
      } catch (const json::exception&) {
        usage("config key '" + name + "' has the wrong type");
      }
    };
    return app_->add_option("--" + name, target, desc);
  }
  CLI::Option* flag(const std::string& name, bool& target, const std::string& desc) {
    setters_[name] = [&target, name](const json& j) {
      if (!j.is_boolean()) usage("config key '" + name + "' must be a boolean");
      target = j.get<bool>();
    };
    return app_->add_flag("--" + name, target, desc);
  }
  void custom(const std::string& name, std::function<void(const json&)> set) { setters_[name] = std::move(set); }

  void apply(const json& cfg) const {
    if (!cfg.is_object()) usage("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      auto it = setters_.find(key);
      if (it == setters_.end()) usage("config key '" + key + "' is not valid for " + app_->get_name());
      it->second(value);
    }
  }

  CLI::App* app() const { return app_; }

 private:
  CLI::App* app_;
  std::map<std::string, std::function<void(const json&)>> setters_;
};

void add_common(Binder& b, Options& o) {
  b.app()->add_option("--config", o.config, "JSON file whose keys override the flags");
  b.add("out", o.out, "Write the JSON result here instead of standard output");
}

void add_seed(Binder& b, Options& o) {
  b.app()->add_option("--seed", o.seed, "Random seed")->each([&o](const std::string&) { o.seed_given = true; });
  b.custom("seed", [&o](const json& j) {
    if (!j.is_number_unsigned()) usage("config key 'seed' must be a nonnegative integer");
    o.seed = j.get<std::uint64_t>();
    o.seed_given = true;
  });
}

void add_dir(Binder& b, Options& o, const std::string& desc) {
  b.app()->add_option("--dir", o.dir, desc);
  b.custom("dir", [&o](const json& j) {
    if (j.is_string()) {
      o.dir = j.get<std::string>();
    } else if (j.is_array() && j.size() == 3 && j[0].is_number() && j[1].is_number() && j[2].is_number()) {
      o.dir = shortest(j[0].get<double>()) + "," + shortest(j[1].get<double>()) + "," + shortest(j[2].get<double>());
    } else {
      usage("config key 'dir' must be \"x,y,z\" or [x, y, z]");
    }
  });
}

void add_lambda(Binder& b, Options& o) {
  b.app()->add_option("--lambda", o.lambda, "Level (ropelength); inf for the full graph");
  b.custom("lambda", [&o](const json& j) {
    if (j.is_number()) {
      o.lambda = shortest(j.get<double>());
    } else if (j.is_string()) {
      o.lambda = j.get<std::string>();
    } else {
      usage("config key 'lambda' must be a number or \"inf\"");
    }
  });
}

void add_polygon_input(Binder& b, Options& o) {
  b.add("in", o.in, "Polygon JSON file");
  b.add("shape", o.shape, "Built-in polygon instead of --in: regular, trefoil, perturbed");
  b.add("n", o.n, "Vertex count for --shape");
  b.add("amplitude", o.amplitude, "Relative vertex offset for --shape perturbed");
}

void add_family_input(Binder& b, Options& o, tk_sweep_options& sw) {
  b.add("in", o.in, "Family or path JSON file");
  b.add("path", o.in, "Alias of --in");
  b.add("family", o.family, "Built-in family instead of --in");
  add_dir(b, o, "View direction x,y,z (normalized); defaults to the family direction");
  b.add("step", o.step, "Grid spacing of the sweep parameter");
  b.add("ttol", o.ttol, "Bracket width of each event");
  b.add("jobs", sw.jobs, "Worker threads, 0 for one per core");
}

bool needs_seed(const Options& o) { return o.family == "recognition" || o.shape == "perturbed"; }

void require_seed(const Options& o, const std::string& why) {
  if (!o.seed_given) usage("--seed is required " + why);
}

Polygon load_polygon(const Options& o) {
  tk_polygon* p = nullptr;
  if (!o.in.empty() && !o.shape.empty()) usage("give either --in or --shape");
  if (!o.in.empty()) {
    check(tk_polygon_from_json(read_text(o.in).c_str(), &p));
  } else if (!o.shape.empty()) {
    if (o.shape == "perturbed") require_seed(o, "for --shape perturbed");
    if (o.n < 3) usage("--n must be at least 3 with --shape");
    check(tk_polygon_builtin(o.shape.c_str(), o.n, o.amplitude, o.seed, &p));
  } else {
    usage("--in is required");
  }
  return Polygon(p);
}

Family load_family(const Options& o) {
  tk_family* f = nullptr;
  if (!o.in.empty() && !o.family.empty()) usage("give either --in/--path or --family");
  if (!o.in.empty()) {
    check(tk_family_from_json(read_text(o.in).c_str(), &f));
  } else if (!o.family.empty()) {
    if (needs_seed(o)) require_seed(o, "for --family recognition");
    check(tk_family_builtin(o.family.c_str(), o.seed, &f));
  } else {
    usage("--in/--path or --family is required");
  }
  return Family(f);
}

const double* dir_or_null(const Options& o, std::array<double, 3>& storage) {
  if (o.dir.empty()) return nullptr;
  storage = parse_dir(o.dir);
  return storage.data();
}

Graph build_graph(const Options& o, const tk_sweep_options& sw) {
  std::array<double, 3> d{};
  const double* dir = dir_or_null(o, d);
  Family f = load_family(o);
  tk_graph* g = nullptr;
  check(tk_graph_build(f.get(), dir, &sw, &g));
  return Graph(g);
}

// Writes the document only after it is complete, through a temporary file
// so a failure never leaves partial output behind.
void emit(const std::string& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc << '\n';
    std::cout.flush();
    return;
  }
  const std::string tmp = out + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure{1, "Io", "cannot write '" + out + "'"};
    f << doc << '\n';
    if (!f.flush()) throw Failure{1, "Io", "cannot write '" + out + "'"};
  }
  std::error_code ec;
  std::filesystem::rename(tmp, out, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Failure{1, "Io", "cannot write '" + out + "'"};
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text) || !f.flush()) throw Failure{1, "Io", "cannot write '" + path + "'"};
}

json level_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

struct Command {
  CLI::App* app;
  std::unique_ptr<Binder> binder;
  std::function<std::string()> run;
};

int run_cli(int argc, char** argv) {
  CLI::App app{"Thick polygonal knots: thickness, diagrams, sweeps, lifted graphs and tightening"};
  app.set_version_flag("--version", std::string(tk_version()));
  app.require_subcommand(1);

  Options o;
  tk_anneal_config_default(&o.anneal);
  tk_sweep_options sw;
  tk_sweep_options_default(&sw);
  o.step = sw.step;
  o.ttol = sw.t_tol;
  std::vector<Command> cmds;

  auto make = [&](const std::string& name, const std::string& desc) -> Binder& {
    CLI::App* sub = app.add_subcommand(name, desc);
    cmds.push_back({sub, std::make_unique<Binder>(sub), {}});
    add_common(*cmds.back().binder, o);
    return *cmds.back().binder;
  };

  {
    Binder& b = make("thickness", "MinRad, dcsd, thickness and ropelength of a polygon");
    add_polygon_input(b, o);
    add_seed(b, o);
    cmds.back().run = [&] {
      Polygon p = load_polygon(o);
      tk_thickness_report r{};
      check(tk_thickness(p.get(), &r));
      return json{{"min_rad", level_json(r.min_rad)},
                  {"dcsd", level_json(r.dcsd)},
                  {"thickness", level_json(r.thickness)},
                  {"length", r.length},
                  {"ropelength", level_json(r.ropelength)}}
          .dump(2);
    };
  }
  {
    Binder& b = make("project", "Regularity report and knot diagram of a projection");
    add_polygon_input(b, o);
    add_seed(b, o);
    add_dir(b, o, "Projection direction x,y,z (normalized)");
    cmds.back().run = [&] {
      if (o.dir.empty()) usage("--dir is required");
      const auto d = parse_dir(o.dir);
      Polygon p = load_polygon(o);
      char* s = nullptr;
      check(tk_project_json(p.get(), d.data(), &s));
      return take(s);
    };
  }
  {
    Binder& b = make("diagram", "Canonical key, invariants and Reidemeister neighbors of a diagram");
    b.add("pd", o.pd, "PD text, canonical key or a name such as empty, trefoil, figure-eight");
    b.add("in", o.in, "File holding PD text instead of --pd");
    cmds.back().run = [&] {
      if (o.pd.empty() == o.in.empty()) usage("give exactly one of --pd and --in");
      const std::string diagram_text = o.in.empty() ? o.pd : read_text(o.in);
      char* s = nullptr;
      check(tk_diagram_json(diagram_text.c_str(), &s));
      return take(s);
    };
  }
  {
    Binder& b = make("ball", "Rooted typed ball of the S^2 Reidemeister graph");
    b.add("pd", o.pd, "Root diagram: PD text, canonical key or name");
    b.add("radius", o.radius, "Ball radius");
    b.add("budget", o.budget, "Vertex budget, 0 for the default");
    cmds.back().run = [&] {
      if (o.pd.empty()) usage("--pd is required");
      if (o.radius < 0) usage("--radius is required and must be nonnegative");
      char* s = nullptr;
      check(tk_ball_json(o.pd.c_str(), o.radius, o.budget, &s));
      return take(s);
    };
  }
  auto sweep_opts = [&] {
    tk_sweep_options s = sw;
    s.step = o.step;
    s.t_tol = o.ttol;
    return s;
  };
  auto family_command = [&](const std::string& name, const std::string& desc) -> Binder& {
    Binder& b = make(name, desc);
    add_family_input(b, o, sw);
    add_seed(b, o);
    return b;
  };
  {
    Binder& b = family_command("sweep", "Reidemeister events along every path of a family");
    add_lambda(b, o);
    cmds.back().run = [&] {
      std::array<double, 3> d{};
      const double* dir = dir_or_null(o, d);
      tk_sweep_options s = sweep_opts();
      s.lambda = parse_level(o.lambda, "--lambda");
      Family f = load_family(o);
      char* out = nullptr;
      check(tk_sweep_json(f.get(), dir, &s, &out));
      return take(out);
    };
  }
  {
    Binder& b = family_command("graph", "Lifted Reidemeister graph at a level");
    add_lambda(b, o);
    cmds.back().run = [&] {
      const double lambda = parse_level(o.lambda, "--lambda");
      Graph g = build_graph(o, sweep_opts());
      char* s = nullptr;
      check(tk_graph_json(g.get(), lambda, &s));
      return take(s);
    };
  }
  {
    Binder& b = family_command("growth", "Reidemeister radius, diameter and crossing profile at a level");
    add_lambda(b, o);
    cmds.back().run = [&] {
      const double lambda = parse_level(o.lambda, "--lambda");
      Graph g = build_graph(o, sweep_opts());
      char* s = nullptr;
      check(tk_growth_json(g.get(), lambda, &s));
      return take(s);
    };
  }
  {
    family_command("merge-tree", "Merge tree of the ideal components");
    cmds.back().run = [&] {
      Graph g = build_graph(o, sweep_opts());
      char* s = nullptr;
      check(tk_merge_tree_json(g.get(), &s));
      return take(s);
    };
  }
  {
    Binder& b = family_command("recognize", "Empirical recognition length of a rooted typed ball");
    b.add("pd", o.pd, "Root diagram (default: empty)");
    b.add("radius", o.radius, "Characteristic radius (default 1)");
    b.add("radii", o.radii, "Further radii to report, comma separated")->delimiter(',');
    b.flag("mirror", o.mirror, "Also accept the mirror image of the pattern");
    b.add("budget", o.budget, "Ball vertex budget, 0 for the default");
    cmds.back().run = [&] {
      const int radius = o.radius < 0 ? 1 : o.radius;
      const std::string root = o.pd.empty() ? "empty" : o.pd;
      Graph g = build_graph(o, sweep_opts());
      char* s = nullptr;
      check(tk_recognize_json(g.get(), root.c_str(), radius, o.radii.data(), o.radii.size(), o.mirror ? 1 : 0,
                              o.budget, &s));
      return take(s);
    };
  }
  {
    Binder& b = make("tighten", "Anneal a polygon toward minimal ropelength");
    add_polygon_input(b, o);
    add_seed(b, o);
    b.add("iterations", o.anneal.iterations, "Annealing steps per restart");
    b.add("restarts", o.anneal.restarts, "Independent restarts");
    b.add("jobs", o.anneal.jobs, "Worker threads, 0 for one per core");
    b.add("temperature", o.anneal.temperature, "Starting temperature relative to the starting ropelength");
    b.add("ratio", o.anneal.ratio, "Geometric cooling factor per step");
    b.add("initial_step", o.anneal.initial_step, "Proposal scale relative to the mean edge length");
    b.add("freeze", o.anneal.freeze, "Relative temperature below which only descents are accepted");
    b.add("trace_every", o.anneal.trace_every, "Trace interval, 0 to disable");
    b.add("trace", o.trace, "Write the trace of the best run as CSV here");
    cmds.back().run = [&] {
      require_seed(o, "for tighten");
      o.anneal.seed = o.seed;
      Polygon p = load_polygon(o);
      tk_polygon* best = nullptr;
      char* report = nullptr;
      char* trace = nullptr;
      check(tk_tighten(p.get(), &o.anneal, &best, &report, o.trace.empty() ? nullptr : &trace));
      Polygon keep(best);
      std::string doc = take(report);
      if (!o.trace.empty()) write_file(o.trace, take(trace));
      return doc;
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  for (Command& c : cmds) {
    if (!c.app->parsed()) continue;
    if (!o.config.empty()) {
      json cfg;
      try {
        cfg = json::parse(read_text(o.config));
      } catch (const json::parse_error& e) {
        usage("config is not valid JSON: " + std::string(e.what()));
      }
      c.binder->apply(cfg);
    }
    const std::string doc = c.run();
    emit(doc, o.out);
    return 0;
  }
  usage("no subcommand given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Failure& f) {
    std::cerr << json{{"error", {{"kind", f.kind}, {"message", f.message}, {"exit_code", f.exit_code}}}}.dump(2)
              << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "Internal"}, {"message", e.what()}, {"exit_code", 1}}}}.dump(2) << '\n';
    return 1;
  }
}
