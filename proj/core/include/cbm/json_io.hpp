#pragma once

#include <string>

#include "cbm/certify.hpp"
#include "cbm/estimate.hpp"
#include "cbm/geometry.hpp"
#include "cbm/hexagon.hpp"
#include "cbm/witness.hpp"

namespace cbm {

// All writers emit numbers with 17 significant digits (%.17g), so every
// value round-trips exactly and identical inputs give identical bytes.

std::string format_number(double v);

std::string write_polygon_json(const ConvexPolygon& poly);
ConvexPolygon read_polygon_json(const std::string& text);

std::string write_hexagon_json(const AffineRegularHexagon& hex);
AffineRegularHexagon read_hexagon_json(const std::string& text);

// AffineMap as [m11, m12, m21, m22, tx, ty] (linear part row-major, then
// translation).
std::string write_witness_json(const Witness& w);
Witness read_witness_json(const std::string& text);

std::string write_trace_json(const ConstructionTrace& trace);
ConstructionTrace read_trace_json(const std::string& text);

std::string write_bound_report_json(const BoundReport& rep);
std::string write_estimate_json(const EstimateResult& res);

std::string write_error_json(const std::string& kind, const std::string& message);

} // namespace cbm
