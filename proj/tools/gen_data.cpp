// Writes the shipped example inputs (polygons and families) as JSON files.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "thickknot/thickknot.h"

namespace {

bool write(const std::string& dir, const std::string& name, char* text) {
  std::ofstream f(dir + "/" + name, std::ios::binary | std::ios::trunc);
  const bool ok = f && (f << text << '\n') && f.flush();
  tk_string_free(text);
  if (!ok) std::cerr << "cannot write " << dir << "/" << name << '\n';
  return ok;
}

bool fail(tk_status s) {
  std::cerr << tk_status_name(s) << ": " << tk_last_error() << '\n';
  return false;
}

bool polygon(const std::string& dir, const std::string& name, const char* shape, int n, double amp,
             std::uint64_t seed) {
  tk_polygon* p = nullptr;
  if (tk_status s = tk_polygon_builtin(shape, n, amp, seed, &p); s != TK_OK) return fail(s);
  char* text = nullptr;
  const tk_status s = tk_polygon_to_json(p, &text);
  tk_polygon_free(p);
  return s == TK_OK ? write(dir, name, text) : fail(s);
}

bool family(const std::string& dir, const std::string& name, std::uint64_t seed) {
  tk_family* f = nullptr;
  if (tk_status s = tk_family_builtin(name.c_str(), seed, &f); s != TK_OK) return fail(s);
  char* text = nullptr;
  const tk_status s = tk_family_to_json(f, &text);
  tk_family_free(f);
  return s == TK_OK ? write(dir, name + ".json", text) : fail(s);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_data <output-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  bool ok = polygon(dir, "octagon.json", "regular", 8, 0.0, 0);
  ok = polygon(dir, "trefoil96.json", "trefoil", 96, 0.0, 0) && ok;
  ok = polygon(dir, "perturbed64-seed1.json", "perturbed", 64, 0.02, 1) && ok;
  for (const char* name : {"curl", "push-over", "trigon", "two-cluster", "three-cluster", "recognition", "constant"}) {
    ok = family(dir, name, 1) && ok;
  }
  return ok ? 0 : 1;
}
