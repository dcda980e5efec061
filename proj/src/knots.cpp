#include "knots.hpp"

#include <string>

namespace thickknot::knots {

Diagram trefoil() { return Diagram::from_pd({{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}}); }

Diagram figure_eight() { return Diagram::from_pd({{4, 2, 5, 1}, {8, 6, 1, 5}, {6, 3, 7, 4}, {2, 7, 3, 8}}); }

Diagram curl(int sign) { return Diagram::from_gauss({{0, true}, {0, false}}, {sign > 0 ? 1 : -1}); }

Diagram unknot_two_crossing() {
  return Diagram::from_gauss({{0, true}, {1, true}, {1, false}, {0, false}}, {1, -1});
}

Diagram by_name(std::string_view name) {
  if (name == "empty" || name == "unknot") return Diagram{};
  if (name == "trefoil" || name == "3_1") return trefoil();
  if (name == "figure-eight" || name == "4_1") return figure_eight();
  if (name == "curl+") return curl(1);
  if (name == "curl-") return curl(-1);
  if (name == "bigon") return unknot_two_crossing();
  return Diagram::parse_pd_text(name);
}

}  // namespace thickknot::knots
