#pragma once

#include <string>

#include "cbm/witness.hpp"

namespace cbm {

// Construction diagram: bodies, hexagons, stars, the points dbar''_4 and e,
// all labeled with the construction's symbol names.
std::string render_trace_svg(const ConstructionTrace& trace);

// Regular pentagon P, inscribed triangle T and its homothet T*.
std::string render_pentagon_triangle_svg();

} // namespace cbm
