#include "cbm/json_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace cbm {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    try {
        return json::parse(text, nullptr, true, true);
    } catch (const json::exception& e) {
        throw DegenerateInputError(std::string("malformed JSON: ") + e.what());
    }
}

Point point_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DegenerateInputError("expected a [x, y] number pair");
    Point p{j[0].get<double>(), j[1].get<double>()};
    if (!is_finite(p)) throw DegenerateInputError("non-finite coordinate");
    return p;
}

std::vector<Point> points_from(const json& j) {
    if (!j.is_array()) throw DegenerateInputError("expected an array of points");
    std::vector<Point> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(point_from(e));
    return out;
}

std::string fmt_point(Point p) {
    return "[" + format_number(p.x) + ", " + format_number(p.y) + "]";
}

template <typename It>
std::string fmt_points(It begin, It end) {
    std::string s = "[";
    for (It it = begin; it != end; ++it) {
        if (it != begin) s += ", ";
        s += fmt_point(*it);
    }
    return s + "]";
}

std::string fmt_affine(const AffineMap& m) {
    std::string s = "[";
    const double v[6] = {m.m11, m.m12, m.m21, m.m22, m.tx, m.ty};
    for (int i = 0; i < 6; ++i) {
        if (i) s += ", ";
        s += format_number(v[i]);
    }
    return s + "]";
}

AffineMap affine_from(const json& j) {
    if (!j.is_array() || j.size() != 6)
        throw DegenerateInputError("expected an affine map as 6 numbers");
    AffineMap m;
    m.m11 = j[0].get<double>();
    m.m12 = j[1].get<double>();
    m.m21 = j[2].get<double>();
    m.m22 = j[3].get<double>();
    m.tx = j[4].get<double>();
    m.ty = j[5].get<double>();
    return m;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

AffineRegularHexagon hexagon_from(const json& j) {
    AffineRegularHexagon hex;
    hex.center = point_from(j.at("center"));
    const auto pts = points_from(j.at("vertices"));
    if (pts.size() != 6) throw DegenerateInputError("hexagon needs 6 vertices");
    std::copy(pts.begin(), pts.end(), hex.vertices.begin());
    return hex;
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string write_polygon_json(const ConvexPolygon& poly) {
    return "{\"vertices\": " +
           fmt_points(poly.vertices().begin(), poly.vertices().end()) + "}\n";
}

ConvexPolygon read_polygon_json(const std::string& text) {
    const json j = parse(text);
    return ConvexPolygon(points_from(j.at("vertices")));
}

std::string write_hexagon_json(const AffineRegularHexagon& hex) {
    return "{\"center\": " + fmt_point(hex.center) + ", \"vertices\": " +
           fmt_points(hex.vertices.begin(), hex.vertices.end()) + "}\n";
}

AffineRegularHexagon read_hexagon_json(const std::string& text) {
    return hexagon_from(parse(text));
}

std::string write_witness_json(const Witness& w) {
    std::string s = "{\"alpha\": " + fmt_affine(w.alpha);
    s += ", \"beta\": " + fmt_affine(w.beta);
    s += ", \"lambda\": " + format_number(w.lambda);
    s += std::string(", \"swapped\": ") + (w.swapped ? "true" : "false") + "}\n";
    return s;
}

Witness read_witness_json(const std::string& text) {
    const json j = parse(text);
    Witness w;
    w.alpha = affine_from(j.at("alpha"));
    w.beta = affine_from(j.at("beta"));
    w.lambda = j.at("lambda").get<double>();
    w.swapped = j.at("swapped").get<bool>();
    return w;
}

namespace {

std::string fmt_hexagon(const AffineRegularHexagon& hex) {
    return "{\"center\": " + fmt_point(hex.center) + ", \"vertices\": " +
           fmt_points(hex.vertices.begin(), hex.vertices.end()) + "}";
}

std::string fmt_polygon(const ConvexPolygon& poly) {
    return "{\"vertices\": " +
           fmt_points(poly.vertices().begin(), poly.vertices().end()) + "}";
}

} // namespace

std::string write_trace_json(const ConstructionTrace& t) {
    std::ostringstream s;
    s << "{\n";
    s << "  \"swapped\": " << (t.swapped ? "true" : "false") << ",\n";
    s << "  \"pq\": " << fmt_point(t.pq) << ",\n";
    s << "  \"rs_star\": " << fmt_point(t.rs_star) << ",\n";
    s << "  \"rs\": " << fmt_point(t.rs) << ",\n";
    s << "  \"rho\": " << format_number(t.rho) << ",\n";
    s << "  \"f\": " << format_number(t.f) << ",\n";
    s << "  \"c_prime\": " << fmt_polygon(t.c_prime) << ",\n";
    s << "  \"d_prime\": " << fmt_polygon(t.d_prime) << ",\n";
    s << "  \"d_dprime\": " << fmt_polygon(t.d_dprime) << ",\n";
    s << "  \"f_c_prime\": " << fmt_polygon(t.f_c_prime) << ",\n";
    s << "  \"hex_c_prime\": " << fmt_hexagon(t.hex_c_prime) << ",\n";
    s << "  \"hex_d_prime\": " << fmt_hexagon(t.hex_d_prime) << ",\n";
    s << "  \"hex_d_dprime\": " << fmt_hexagon(t.hex_d_dprime) << ",\n";
    s << "  \"hex_c_dprime\": " << fmt_hexagon(t.hex_c_dprime) << ",\n";
    s << "  \"e\": " << fmt_point(t.e) << ",\n";
    s << "  \"margins\": {"
      << "\"main_inner\": " << format_number(t.margin_main_inner)
      << ", \"main_outer\": " << format_number(t.margin_main_outer)
      << ", \"c_in_star\": " << format_number(t.margin_c_in_star)
      << ", \"star_c_in_hexd\": " << format_number(t.margin_star_c_in_hexd)
      << ", \"d_in_star\": " << format_number(t.margin_d_in_star)
      << ", \"star_d_in_fc\": " << format_number(t.margin_star_d_in_fc) << "},\n";
    s << "  \"warnings\": [";
    for (std::size_t i = 0; i < t.warnings.size(); ++i) {
        if (i) s << ", ";
        s << '"' << escape(t.warnings[i]) << '"';
    }
    s << "]\n}\n";
    return s.str();
}

ConstructionTrace read_trace_json(const std::string& text) {
    const json j = parse(text);
    const AffineRegularHexagon hc = hexagon_from(j.at("hex_c_prime"));
    const AffineRegularHexagon hd = hexagon_from(j.at("hex_d_prime"));
    const AffineRegularHexagon hdd = hexagon_from(j.at("hex_d_dprime"));
    const AffineRegularHexagon hcd = hexagon_from(j.at("hex_c_dprime"));
    ConstructionTrace t{
        j.at("swapped").get<bool>(),
        point_from(j.at("pq")),
        point_from(j.at("rs_star")),
        point_from(j.at("rs")),
        j.at("rho").get<double>(),
        j.at("f").get<double>(),
        ConvexPolygon(points_from(j.at("c_prime").at("vertices"))),
        ConvexPolygon(points_from(j.at("d_prime").at("vertices"))),
        ConvexPolygon(points_from(j.at("d_dprime").at("vertices"))),
        ConvexPolygon(points_from(j.at("f_c_prime").at("vertices"))),
        hc,
        hd,
        hdd,
        hcd,
        star_over(hc),
        star_over(hdd),
        point_from(j.at("e")),
        0, 0, 0, 0, 0, 0,
        {}};
    const json& m = j.at("margins");
    t.margin_main_inner = m.at("main_inner").get<double>();
    t.margin_main_outer = m.at("main_outer").get<double>();
    t.margin_c_in_star = m.at("c_in_star").get<double>();
    t.margin_star_c_in_hexd = m.at("star_c_in_hexd").get<double>();
    t.margin_d_in_star = m.at("d_in_star").get<double>();
    t.margin_star_d_in_fc = m.at("star_d_in_fc").get<double>();
    for (const auto& w : j.at("warnings")) t.warnings.push_back(w.get<std::string>());
    return t;
}

std::string write_bound_report_json(const BoundReport& rep) {
    std::ostringstream s;
    s << "{";
    s << "\"max_value\": " << format_number(rep.max_value);
    s << ", \"argmax\": [";
    for (int i = 0; i < 4; ++i) {
        if (i) s << ", ";
        s << format_number(rep.argmax[i]);
    }
    s << "], \"corner_table\": [";
    for (std::size_t i = 0; i < rep.corner_table.size(); ++i) {
        if (i) s << ", ";
        s << "{\"p\": " << format_number(rep.corner_table[i].p)
          << ", \"r\": " << format_number(rep.corner_table[i].r)
          << ", \"value\": " << format_number(rep.corner_table[i].value) << "}";
    }
    s << "], \"interior_critical_points\": [";
    for (std::size_t i = 0; i < rep.interior_critical_points.size(); ++i) {
        if (i) s << ", ";
        s << "[" << format_number(rep.interior_critical_points[i][0]) << ", "
          << format_number(rep.interior_critical_points[i][1]) << "]";
    }
    s << "], \"edge_extrema\": [";
    for (std::size_t i = 0; i < rep.edge_extrema.size(); ++i) {
        if (i) s << ", ";
        s << "[" << format_number(rep.edge_extrema[i][0]) << ", "
          << format_number(rep.edge_extrema[i][1]) << "]";
    }
    s << "], \"monotonicity_checks\": [";
    for (std::size_t i = 0; i < rep.monotonicity_checks.size(); ++i) {
        if (i) s << ", ";
        s << "{\"name\": \"" << escape(rep.monotonicity_checks[i].name)
          << "\", \"monotone\": " << (rep.monotonicity_checks[i].monotone ? "true" : "false")
          << "}";
    }
    s << "], \"grid_residual\": " << format_number(rep.grid_residual);
    s << ", \"certified\": " << (rep.certified ? "true" : "false");
    s << ", \"failures\": [";
    for (std::size_t i = 0; i < rep.failures.size(); ++i) {
        if (i) s << ", ";
        s << '"' << escape(rep.failures[i]) << '"';
    }
    s << "]}\n";
    return s.str();
}

std::string write_estimate_json(const EstimateResult& res) {
    std::string s = "{\"lambda_hat\": " + format_number(res.lambda_hat);
    s += ", \"best_map\": " + fmt_affine(res.best_map);
    s += ", \"inner_scale\": " + format_number(res.inner_scale);
    s += std::string(", \"verified\": ") + (res.verified ? "true" : "false") + "}\n";
    return s;
}

std::string write_error_json(const std::string& kind, const std::string& message) {
    return "{\"error\": \"" + escape(message) + "\", \"kind\": \"" + escape(kind) + "\"}\n";
}

} // namespace cbm
