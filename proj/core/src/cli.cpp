#include "cbm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "cbm/certify.hpp"
#include "cbm/estimate.hpp"
#include "cbm/json_io.hpp"
#include "cbm/svg.hpp"
#include "cbm/witness.hpp"

namespace cbm::cli {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

void emit(std::ostream& out, const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        out << text;
    else
        spill(out_path, text);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"centroid Banach-Mazur distance toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random convex polygon (JSON)");
    int gen_n = 12;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--n", gen_n, "vertex budget (hull may have fewer)");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "write to file instead of stdout");

    // inscribe
    auto* ins = app.add_subcommand("inscribe", "inscribe an affine-regular hexagon");
    std::string ins_poly;
    double ins_tol = 1e-9;
    std::string ins_out;
    ins->add_option("poly", ins_poly, "polygon JSON file")->required();
    ins->add_option("--tol", ins_tol, "relative residual tolerance");
    ins->add_option("--out", ins_out, "write to file instead of stdout");

    // witness
    auto* wit = app.add_subcommand("witness", "construct a distance witness for a pair");
    std::string wit_c, wit_d, wit_trace, wit_out;
    bool wit_tighten = false;
    double wit_tol = 1e-7;
    wit->add_option("C", wit_c, "first polygon JSON file")->required();
    wit->add_option("D", wit_d, "second polygon JSON file")->required();
    wit->add_flag("--tighten", wit_tighten, "also report the bisection-tightened ratio");
    wit->add_option("--trace", wit_trace, "write the construction trace JSON here");
    wit->add_option("--tol", wit_tol, "containment verification tolerance (relative)");
    wit->add_option("--out", wit_out, "write to file instead of stdout");

    // certify
    auto* cert = app.add_subcommand("certify", "certify the 69/17 maximization");
    int cert_grid = 512;
    long cert_samples = 1000000;
    int cert_refine = 200;
    std::string cert_out;
    cert->add_option("--grid", cert_grid, "grid size for the rectangle search");
    cert->add_option("--samples", cert_samples, "sample count for the 4D search");
    cert->add_option("--refine", cert_refine, "refinement iterations per seed");
    cert->add_option("--out", cert_out, "write to file instead of stdout");

    // estimate
    auto* est = app.add_subcommand("estimate", "estimate the distance of a pair");
    std::string est_mode = "cen", est_budget = "default";
    std::string est_c, est_d, est_out;
    est->add_option("--mode", est_mode, "cen | extended")
        ->check(CLI::IsMember({"cen", "extended"}));
    est->add_option("--budget", est_budget, "low | default | high")
        ->check(CLI::IsMember({"low", "default", "high"}));
    est->add_option("C", est_c, "first polygon JSON file")->required();
    est->add_option("D", est_d, "second polygon JSON file")->required();
    est->add_option("--out", est_out, "write to file instead of stdout");

    // render
    auto* ren = app.add_subcommand("render", "render a construction diagram as SVG");
    std::string ren_trace, ren_out;
    bool ren_pt = false;
    ren->add_option("--trace", ren_trace, "construction trace JSON to draw");
    ren->add_flag("--pentagon-triangle", ren_pt, "draw the pentagon-triangle witness");
    ren->add_option("--out", ren_out, "output SVG file")->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << write_error_json("usage", e.what());
        return 1;
    }

    try {
        if (gen->parsed()) {
            emit(out, write_polygon_json(random_convex_polygon(gen_n, gen_seed)), gen_out);
            return 0;
        }
        if (ins->parsed()) {
            const ConvexPolygon poly = read_polygon_json(slurp(ins_poly));
            const AffineRegularHexagon hex = inscribe_hexagon(poly, ins_tol);
            emit(out, write_hexagon_json(hex), ins_out);
            double boundary = 0.0;
            for (const Point& v : hex.vertices)
                boundary = std::max(boundary, distance_to_boundary(poly, v));
            err << "{\"identity_residual\": " << format_number(hex.identity_residual())
                << ", \"boundary_residual\": "
                << format_number(boundary / poly.diameter()) << "}\n";
            return 0;
        }
        if (wit->parsed()) {
            const ConvexPolygon C = read_polygon_json(slurp(wit_c));
            const ConvexPolygon D = read_polygon_json(slurp(wit_d));
            const WitnessResult res = construct(C, D, wit_tol);
            emit(out, write_witness_json(res.witness), wit_out);
            if (!wit_trace.empty()) spill(wit_trace, write_trace_json(res.trace));
            if (wit_tighten)
                err << "{\"lambda_tightened\": " << format_number(tighten(res.trace))
                    << "}\n";
            for (const std::string& w : res.trace.warnings)
                err << write_error_json("warning", w);
            return 0;
        }
        if (cert->parsed()) {
            const BoundReport on_q = certify_g_max_on_Q(cert_grid);
            const BoundReport on_domain = maximize_f_on_domain(cert_samples, cert_refine);
            std::string text = "{\"g_on_Q\": " + write_bound_report_json(on_q);
            text.pop_back(); // newline
            text += ", \"f_on_domain\": " + write_bound_report_json(on_domain);
            text.pop_back();
            text += "}\n";
            emit(out, text, cert_out);
            return on_q.certified && on_domain.certified ? 0 : 2;
        }
        if (est->parsed()) {
            const ConvexPolygon C = read_polygon_json(slurp(est_c));
            const ConvexPolygon D = read_polygon_json(slurp(est_d));
            EstimatorConfig cfg = est_budget == "low"    ? EstimatorConfig::low_budget()
                                  : est_budget == "high" ? EstimatorConfig::high_budget()
                                                         : EstimatorConfig::default_budget();
            cfg.mode = est_mode == "cen" ? EstimateMode::centroid_constrained
                                         : EstimateMode::extended;
            const EstimateResult res = cfg.mode == EstimateMode::centroid_constrained
                                           ? estimate_cen(C, D, cfg)
                                           : estimate_extended(C, D, cfg);
            emit(out, write_estimate_json(res), est_out);
            return res.verified ? 0 : 2;
        }
        if (ren->parsed()) {
            if (!ren_pt && ren_trace.empty()) {
                err << write_error_json("usage", "render needs --trace or --pentagon-triangle");
                return 1;
            }
            const std::string svg = ren_pt
                                        ? render_pentagon_triangle_svg()
                                        : render_trace_svg(read_trace_json(slurp(ren_trace)));
            spill(ren_out, svg);
            return 0;
        }
    } catch (const VerificationError& e) {
        err << write_error_json("verification", e.what());
        return 2;
    } catch (const ConvergenceError& e) {
        err << write_error_json("convergence", e.what());
        return 2;
    } catch (const Error& e) {
        err << write_error_json("input", e.what());
        return 1;
    } catch (const std::exception& e) {
        err << write_error_json("internal", e.what());
        return 1;
    }
    return 1;
}

} // namespace cbm::cli
