#include "diagram.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "error.hpp"

namespace thickknot {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidDiagram, what); }

}  // namespace

Diagram Diagram::from_gauss(std::vector<Passage> passages, std::vector<int> signs) {
  const int n = static_cast<int>(signs.size());
  if (static_cast<int>(passages.size()) != 2 * n) bad("Gauss code length must be twice the crossing count");
  std::vector<int> seen_over(n, 0), seen_under(n, 0);
  for (const Passage& p : passages) {
    if (p.crossing < 0 || p.crossing >= n) bad("crossing index out of range");
    (p.over ? seen_over : seen_under)[p.crossing]++;
  }
  for (int c = 0; c < n; ++c) {
    if (seen_over[c] != 1 || seen_under[c] != 1) {
      bad("every crossing must be visited once over and once under");
    }
    if (signs[c] != 1 && signs[c] != -1) bad("crossing signs must be +1 or -1");
  }
  Diagram d;
  d.passages_ = std::move(passages);
  d.signs_ = std::move(signs);
  d.build_darts();
  if (n > 0 && static_cast<int>(faces(d).size()) != n + 2) bad("Gauss code is not planar");
  return d;
}

void Diagram::build_darts() {
  const int n = n_crossings();
  const int m = 2 * n;
  std::vector<int> pu(n), po(n);
  for (int p = 0; p < m; ++p) {
    const Passage& x = passages_[p];
    (x.over ? po : pu)[x.crossing] = p;
  }
  opp_.assign((4 * n), -1);
  pos_.assign((4 * n), 0);
  out_.assign((4 * n), 0);
  std::vector<int> in_dart(m), out_dart(m);
  for (int c = 0; c < n; ++c) {
    const int u = pu[c], o = po[c];
    const bool positive = signs_[c] > 0;
    // slots: 0 under-in, 2 under-out; over-out at slot 1 for positive crossings
    const int slot_oo = positive ? 1 : 3;
    const int slot_oi = positive ? 3 : 1;
    auto set = [&](int slot, int passage, bool outgoing) {
      const int dart = 4 * c + slot;
      pos_[dart] = passage;
      out_[dart] = outgoing ? 1 : 0;
      (outgoing ? out_dart : in_dart)[passage] = dart;
    };
    set(0, u, false);
    set(2, u, true);
    set(slot_oi, o, false);
    set(slot_oo, o, true);
  }
  for (int p = 0; p < m; ++p) {
    const int a = out_dart[p];
    const int b = in_dart[(mod(p + 1, m))];
    opp_[a] = b;
    opp_[b] = a;
  }
}

int Diagram::dart_arc(int dart) const noexcept {
  const int p = pos_[dart];
  return dart_out(dart) ? p : mod(p - 1, n_arcs());
}

int Diagram::dart_of(int passage, bool outgoing) const noexcept {
  const int c = passages_[passage].crossing;
  for (int s = 0; s < 4; ++s) {
    const int dart = 4 * c + s;
    if (pos_[dart] == passage && dart_out(dart) == outgoing) return dart;
  }
  return -1;
}

Diagram Diagram::from_pd(const std::vector<std::array<int, 4>>& pd) {
  const int n = static_cast<int>(pd.size());
  if (n == 0) return Diagram{};
  const int m = 2 * n;
  std::vector<Passage> seq(m, Passage{-1, false});
  std::vector<int> signs(n);
  auto claim = [&](int passage, int c, bool over) {
    if (seq[passage].crossing != -1) bad("PD code visits a passage twice");
    seq[passage] = {c, over};
  };
  for (int c = 0; c < n; ++c) {
    const auto& x = pd[c];
    for (int label : x) {
      if (label < 1 || label > m) bad("PD arc label out of range");
    }
    const int i = x[0] - 1, j = x[1] - 1, k = x[2] - 1, l = x[3] - 1;
    if (k != mod(i + 1, m)) bad("PD under-strand labels must be consecutive");
    const int pu = k;
    int po;
    const bool j_out = j == mod(l + 1, m);
    const bool l_out = l == mod(j + 1, m);
    if (j_out && l_out) {
      po = 1 - pu;  // two-arc diagram: the only other passage
      if (po < 0 || po >= m) bad("PD over-strand labels inconsistent");
    } else if (j_out) {
      po = j;
    } else if (l_out) {
      po = l;
    } else {
      bad("PD over-strand labels must be consecutive");
    }
    signs[c] = (po == j) ? 1 : -1;
    claim(pu, c, false);
    claim(po, c, true);
  }
  return from_gauss(std::move(seq), std::move(signs));
}

Diagram Diagram::parse_pd_text(std::string_view text) {
  std::vector<std::array<int, 4>> pd;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    if (body.rfind("empty", 0) == 0) continue;
    for (char& ch : body) {
      if (ch == ',' || ch == '[' || ch == ']' || ch == '(' || ch == ')') ch = ' ';
    }
    std::istringstream is(body);
    std::string tag;
    is >> tag;
    if (tag != "X") throw Error(ErrorKind::Parse, "PD line must start with X: " + line);
    std::array<int, 4> x{};
    for (int& v : x) {
      if (!(is >> v)) throw Error(ErrorKind::Parse, "PD line needs four integer labels: " + line);
    }
    std::string extra;
    if (is >> extra) throw Error(ErrorKind::Parse, "trailing tokens on PD line: " + line);
    pd.push_back(x);
  }
  return from_pd(pd);
}

std::vector<std::array<int, 4>> Diagram::pd() const {
  const int n = n_crossings();
  std::vector<std::array<int, 4>> out(n);
  for (int c = 0; c < n; ++c) {
    for (int s = 0; s < 4; ++s) out[c][s] = dart_arc(4 * c + s) + 1;
  }
  return out;
}

std::string Diagram::pd_text() const {
  std::ostringstream os;
  if (n_crossings() == 0) {
    os << "# empty\n";
    return os.str();
  }
  for (const auto& x : pd()) os << "X " << x[0] << ' ' << x[1] << ' ' << x[2] << ' ' << x[3] << '\n';
  return os.str();
}

std::vector<Face> faces(const Diagram& d) {
  const int darts = 4 * d.n_crossings();
  if (darts == 0) return {Face{}, Face{}};
  std::vector<char> seen(darts, 0);
  std::vector<Face> out;
  for (int s = 0; s < darts; ++s) {
    if (seen[s]) continue;
    Face f;
    int x = s;
    do {
      seen[x] = 1;
      f.darts.push_back(x);
      x = Diagram::rot(d.opp(x));
    } while (x != s);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<int> dart_faces(const Diagram& d, const std::vector<Face>& fs) {
  std::vector<int> of((4 * d.n_crossings()), -1);
  for (std::size_t f = 0; f < fs.size(); ++f) {
    for (int x : fs[f].darts) of[x] = static_cast<int>(f);
  }
  return of;
}

namespace {

// Breadth-first code of the rotation system seen from one starting dart.
// Returns false as soon as the code is known to exceed `best`.
bool code_from(const Diagram& d, int start, std::vector<int>& code, const std::vector<int>* best,
               std::vector<int>& label, std::vector<int>& entry, std::vector<int>& order) {
  const int n = d.n_crossings();
  label.assign(n, -1);
  entry.assign(n, 0);
  order.clear();
  code.clear();
  label[(start >> 2)] = 0;
  entry[(start >> 2)] = start;
  order.push_back(start >> 2);
  bool decided = best == nullptr;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const int c = order[idx];
    const int e = entry[c];
    for (int k = 0; k < 4; ++k) {
      const int dart = (e & ~3) | ((e + k) & 3);
      const int o = d.opp(dart);
      const int w = o >> 2;
      if (label[w] < 0) {
        label[w] = static_cast<int>(order.size());
        entry[w] = o;
        order.push_back(w);
      }
      const int rel = ((o & 3) - (entry[w] & 3)) & 3;
      const int value = label[w] * 8 + rel * 2 + (dart & 1);
      if (!decided) {
        const int b = (*best)[code.size()];
        if (value > b) return false;
        if (value < b) decided = true;
      }
      code.push_back(value);
    }
  }
  return decided;
}

}  // namespace

std::string canonical_code(const Diagram& d) {
  const int n = d.n_crossings();
  if (n == 0) return std::string(kEmptyKey);
  std::vector<int> best, code, label, entry, order;
  code_from(d, 0, best, nullptr, label, entry, order);
  for (int s = 1; s < 4 * n; ++s) {
    if (code_from(d, s, code, &best, label, entry, order)) best.swap(code);
  }
  std::string key = std::to_string(n) + ":";
  char buf[16];
  for (std::size_t i = 0; i < best.size(); ++i) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, best[i], 36);
    (void)ec;
    if (i) key.push_back('.');
    key.append(buf, ptr);
  }
  return key;
}

int key_crossings(std::string_view key) {
  if (key == kEmptyKey) return 0;
  int n = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
  if (ec != std::errc{} || ptr == key.data() + key.size() || *ptr != ':') {
    throw Error(ErrorKind::Parse, "malformed diagram key");
  }
  return n;
}

Diagram diagram_from_key(std::string_view key) {
  const int n = key_crossings(key);
  if (n == 0) return Diagram{};
  auto malformed = [] { throw Error(ErrorKind::Parse, "malformed diagram key"); };
  std::string_view body = key.substr(key.find(':') + 1);
  std::vector<int> code;
  while (!body.empty()) {
    const auto dot = body.find('.');
    const std::string_view tok = body.substr(0, dot);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, 36);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) malformed();
    code.push_back(v);
    body = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  }
  if (static_cast<int>(code.size()) != 4 * n) malformed();
  // Local darts 4L+k: k counts counterclockwise from the crossing's entry dart.
  std::vector<int> opp(4 * n), over(4 * n);
  for (int x = 0; x < 4 * n; ++x) {
    const int w = code[x] / 8, rel = (code[x] / 2) % 4;
    if (w >= n) malformed();
    opp[x] = 4 * w + rel;
    over[x] = code[x] & 1;
  }
  for (int x = 0; x < 4 * n; ++x) {
    if (opp[opp[x]] != x || over[x] != over[(x & ~3) | ((x + 2) & 3)] || over[x] == over[(x & ~3) | ((x + 1) & 3)]) {
      malformed();
    }
  }
  // Walk the strand straight through every crossing.
  std::vector<char> incoming(4 * n, 0);
  std::vector<Passage> seq;
  int x = 0;
  do {
    seq.push_back({x >> 2, over[x] != 0});
    const int y = opp[x];
    incoming[y] = 1;
    x = (y & ~3) | ((y + 2) & 3);
    if (static_cast<int>(seq.size()) > 2 * n) malformed();
  } while (x != 0);
  if (static_cast<int>(seq.size()) != 2 * n) malformed();
  // passage p leaves through x and the walk records the crossing at its start
  std::vector<int> signs(n, 0);
  for (int c = 0; c < n; ++c) {
    int under_in = -1;
    for (int k = 0; k < 4; ++k) {
      if (!over[4 * c + k] && incoming[4 * c + k]) under_in = k;
    }
    if (under_in < 0) malformed();
    const int next = 4 * c + ((under_in + 1) & 3);
    signs[c] = incoming[next] ? -1 : 1;
  }
  Diagram d = Diagram::from_gauss(std::move(seq), std::move(signs));
  if (canonical_code(d) != key) malformed();
  return d;
}

std::string mirror_key(std::string_view key) { return canonical_code(mirror(diagram_from_key(key))); }

Diagram mirror(const Diagram& d) {
  std::vector<Passage> seq = d.passages();
  for (Passage& p : seq) p.over = !p.over;
  std::vector<int> signs = d.signs();
  for (int& s : signs) s = -s;
  return Diagram::from_gauss(std::move(seq), std::move(signs));
}

int writhe(const Diagram& d) {
  int w = 0;
  for (int s : d.signs()) w += s;
  return w;
}

long long determinant(const Diagram& d) {
  const int n = d.n_crossings();
  if (n == 0) return 1;
  const auto fs = faces(d);
  const auto face_of = dart_faces(d, fs);
  std::vector<int> color(fs.size(), -1);
  color[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int f = queue[qi];
    for (int x : fs[f].darts) {
      const int g = face_of[(d.opp(x))];
      if (color[g] < 0) {
        color[g] = 1 - color[f];
        queue.push_back(g);
      } else if (color[g] == color[f]) {
        bad("faces admit no checkerboard colouring");
      }
    }
  }
  std::vector<int> white_index(fs.size(), -1);
  int w = 0;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (color[f] == 0) white_index[f] = w++;
  }
  std::vector<std::vector<__int128>> g(w, std::vector<__int128>(w, 0));
  for (int c = 0; c < n; ++c) {
    // corner (slot k, slot k+1) lies in the face of slot k+1
    const int f2 = face_of[(4 * c + 2)];
    const bool eta_pos = color[f2] == 0;
    const int eta = eta_pos ? 1 : -1;
    const int fa = eta_pos ? f2 : face_of[(4 * c + 1)];
    const int fb = eta_pos ? face_of[(4 * c + 0)] : face_of[(4 * c + 3)];
    const int i = white_index[fa], j = white_index[fb];
    if (i == j) continue;
    g[i][j] -= eta;
    g[j][i] -= eta;
    g[i][i] += eta;
    g[j][j] += eta;
  }
  // Bareiss fraction-free elimination on the leading (w-1)x(w-1) minor.
  const int m = w - 1;
  if (m <= 0) return 1;
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    while (piv < m && g[piv][k] == 0) ++piv;
    if (piv == m) return 0;
    if (piv != k) {
      std::swap(g[piv], g[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j) {
        auto& gij = g[i][j];
        gij = (gij * g[k][k] -
               g[i][k] * g[k][j]) /
              prev;
      }
    }
    prev = g[k][k];
  }
  const __int128 det = prev * sign;
  return static_cast<long long>(det < 0 ? -det : det);
}

}  // namespace thickknot
