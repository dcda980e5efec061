#pragma once

#include <string_view>

#include "diagram.hpp"

// Hand-coded reference diagrams.
namespace thickknot::knots {

Diagram trefoil();       // X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)
Diagram figure_eight();  // X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)
Diagram curl(int sign);
Diagram unknot_two_crossing();

/// "empty", "trefoil", "figure-eight", "curl+", "curl-", "bigon"; otherwise
/// the argument is parsed as PD text.
Diagram by_name(std::string_view name);

}  // namespace thickknot::knots
