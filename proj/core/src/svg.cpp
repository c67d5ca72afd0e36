#include "cbm/svg.hpp"

#include <algorithm>
#include <sstream>

#include "cbm/estimate.hpp"
#include "cbm/json_io.hpp"

namespace cbm {

namespace {

struct Scene {
    std::ostringstream body;
    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;

    void grow(Point p) {
        // SVG y axis points down; flip here.
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, -p.y);
        max_y = std::max(max_y, -p.y);
    }

    void path(const std::vector<Point>& pts, bool closed, const std::string& stroke,
              double width, const std::string& dash = "") {
        if (pts.empty()) return;
        body << "  <path d=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            grow(pts[i]);
            body << (i == 0 ? "M " : "L ") << format_number(pts[i].x) << ' '
                 << format_number(-pts[i].y) << ' ';
        }
        if (closed) body << 'Z';
        body << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
             << format_number(width) << "\"";
        if (!dash.empty()) body << " stroke-dasharray=\"" << dash << "\"";
        body << "/>\n";
    }

    void marker(Point p, double r, const std::string& fill) {
        grow(p);
        body << "  <circle cx=\"" << format_number(p.x) << "\" cy=\"" << format_number(-p.y)
             << "\" r=\"" << format_number(r) << "\" fill=\"" << fill << "\"/>\n";
    }

    void label(Point p, const std::string& text, double size) {
        grow(p);
        body << "  <text x=\"" << format_number(p.x + 1.5 * size / 10.0) << "\" y=\""
             << format_number(-p.y - size / 10.0) << "\" font-size=\"" << format_number(size)
             << "\" font-family=\"sans-serif\">" << text << "</text>\n";
    }

    std::string finish() const {
        const double w = max_x - min_x;
        const double h = max_y - min_y;
        const double mx = 0.05 * w, my = 0.05 * h;
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
            << format_number(min_x - mx) << ' ' << format_number(min_y - my) << ' '
            << format_number(w + 2 * mx) << ' ' << format_number(h + 2 * my) << "\">\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

} // namespace

std::string render_trace_svg(const ConstructionTrace& trace) {
    Scene sc;
    const double scale = trace.f_c_prime.diameter();
    const double thin = scale / 600.0, mid = scale / 350.0;
    const double font = scale / 40.0;

    const TraceArtifacts art = trace_points(trace);
    for (const LabeledPolygon& pg : art.polygons) {
        std::string stroke = "#888888";
        double width = thin;
        std::string dash;
        if (pg.label == "C'") { stroke = "#1f77b4"; width = mid; }
        else if (pg.label == "D'") { stroke = "#ffbf7f"; }
        else if (pg.label == "D''") { stroke = "#d62728"; width = mid; }
        else if (pg.label == "f*C'") { stroke = "#1f77b4"; dash = "4 3"; }
        else if (pg.label == "H_C'") { stroke = "#17becf"; }
        else if (pg.label == "H_D'") { stroke = "#f7b6d2"; }
        else if (pg.label == "H_D''") { stroke = "#9467bd"; }
        else if (pg.label == "H_C''") { stroke = "#2ca02c"; dash = "2 2"; }
        else if (pg.label == "S(H_C')") { stroke = "#17becf"; dash = "5 2"; }
        else if (pg.label == "S(H_D'')") { stroke = "#9467bd"; dash = "5 2"; }
        sc.path(pg.pts, pg.closed, stroke, width, dash);
        // label at the topmost vertex
        Point top = pg.pts.front();
        for (const Point& p : pg.pts)
            if (p.y > top.y) top = p;
        sc.label(top, pg.label, font);
    }
    for (const LabeledPoint& pt : art.points) {
        sc.marker(pt.p, scale / 250.0, "#000000");
        sc.label(pt.p, pt.label, font);
    }
    return sc.finish();
}

std::string render_pentagon_triangle_svg() {
    const PentagonTriangleWitness w = pentagon_triangle_witness();
    Scene sc;
    const double scale = w.triangle_star.diameter();
    const double font = scale / 40.0;
    sc.path(w.pentagon.vertices(), true, "#1f77b4", scale / 350.0);
    sc.path(w.triangle.vertices(), true, "#d62728", scale / 350.0);
    sc.path(w.triangle_star.vertices(), true, "#d62728", scale / 600.0, "4 3");
    sc.label({0.45, 0.75}, "P", font);
    sc.label({0.05, 0.15}, "T", font);
    sc.label(w.triangle_star.vertices()[1], "T*", font);
    sc.marker({0, 0}, scale / 250.0, "#000000");
    sc.label({0, 0}, "o", font);
    return sc.finish();
}

} // namespace cbm
