// fold-atlas: command-line front end for the fold-atlas library.
//
// Subcommands: classify, versal, geometry, bifurcation, render-fold,
// self-tangency.  Exit codes: 0 success, 2 input error, 3 insufficient jet,
// 4 unsupported class, 5 internal invariant failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <foldatlas/bifurcation.hpp>
#include <foldatlas/errors.hpp>
#include <foldatlas/folding.hpp>
#include <foldatlas/io.hpp>
#include <foldatlas/surface.hpp>
#include <foldatlas/versality.hpp>

using namespace foldatlas;
using foldatlas::json;

namespace {

int thread_cap() {
    if (const char* env = std::getenv("FOLD_ATLAS_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// The report body must be byte-stable for identical inputs; wall-clock
// timings live in a separate field appended after the body is built.
void emit_report(json body, const Timer& timer) {
    body["timings"] = json{{"elapsed_ms", timer.ms()}};
    std::cout << body.dump(2) << "\n";
}

json report_skeleton(const std::string& command) {
    json doc;
    doc["schema"] = "fold-atlas/1";
    doc["command"] = command;
    return doc;
}

// Fig. 1 family: f = y^5 - x^2 y + a^4 y - 2 a^2 y^3.
SurfaceGerm fig1_germ(const Rational& a) {
    Jet f(2, 5);
    Rational a2 = a * a;
    f.set_coefficient(Exponent{0, 5, 0, 0}, 1);
    f.set_coefficient(Exponent{2, 1, 0, 0}, -1);
    f.set_coefficient(Exponent{0, 1, 0, 0}, a2 * a2);
    f.set_coefficient(Exponent{0, 3, 0, 0}, -2 * a2);
    return SurfaceGerm(f);
}

SurfaceFn fig1_fn(double a) {
    return [a](double x, double y) {
        double a2 = a * a;
        return std::pow(y, 5) - x * x * y + a2 * a2 * y - 2 * a2 * y * y * y;
    };
}

std::vector<double> parse_doubles(const std::string& csv, size_t expect, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw input_error(std::string(what) + ": cannot parse '" + tok + "'");
        }
    }
    if (out.size() != expect)
        throw input_error(std::string(what) + ": expected " + std::to_string(expect) +
                          " comma-separated values");
    return out;
}

int cmd_classify(const std::string& path) {
    Timer timer;
    SurfaceGerm s = load_surface_spec(path);
    SingularityClass c = classify(s);
    json doc = report_skeleton("classify");
    doc["surface"] = surface_to_spec_json(s);
    doc["classification"] = class_to_json(c);
    emit_report(std::move(doc), timer);
    return 0;
}

int cmd_versal(const std::string& path, bool dump_matrix) {
    Timer timer;
    SurfaceGerm s = load_surface_spec(path);
    VersalityReport r;
    try {
        r = is_versal_rotation(s);
    } catch (const internal_invariant_error&) {
        // dump the offending matrix before propagating to the exit-code map
        try {
            FoldingMap F = build_folding_map(
                SurfaceGerm(s.jet_at(std::max(s.jet().order(),
                                              determinacy_degree(classify(s).tag) + 1))));
            TangentSpaceMatrix m =
                assemble_tangent_matrix(F, determinacy_degree(classify(s).tag), true);
            std::cerr << tangent_matrix_to_json(m).dump(2) << "\n";
        } catch (...) {
        }
        throw;
    }
    MainTheoremReport geo = main_theorem_check(s);
    json doc = report_skeleton("versal");
    doc["surface"] = surface_to_spec_json(s);
    doc["versality"] = versality_report_to_json(r);
    doc["geometric"] = main_theorem_report_to_json(geo);
    if (dump_matrix) {
        FoldingMap F =
            build_folding_map(SurfaceGerm(s.jet_at(std::max(s.order(), r.k_used + 1))));
        doc["matrix"] = tangent_matrix_to_json(assemble_tangent_matrix(F, r.k_used, true));
    }
    emit_report(std::move(doc), timer);
    return 0;
}

int cmd_geometry(const std::string& path, const std::string& grid_arg,
                 const std::string& csv_path, double umbilic_tol) {
    Timer timer;
    SurfaceGerm s = load_surface_spec(path);
    SingularityClass c = classify(s);
    GeometricReport g = geometric_report(s, c);
    json doc = report_skeleton("geometry");
    doc["surface"] = surface_to_spec_json(s);
    doc["class"] = to_string(c.tag);
    doc["geometry"] = geometric_report_to_json(g);
    if (!s.is_umbilic() && s.a(1, 1) == 0 && s.k1() != s.k2()) {
        RidgeFieldExpansion e = ridge_field_expansion(s);
        auto aff = [](const AffineForm& a) {
            return json{{"c0", rational_to_string(a.c0)},
                        {"cu", rational_to_string(a.cu)},
                        {"cv", rational_to_string(a.cv)}};
        };
        doc["ridge_expansion"] = json{{"v2_kappa2", aff(e.v2k2)}, {"v2_kappa1", aff(e.v2k1)}};
    }
    doc["tolerances"] = json{{"umbilic_tol", umbilic_tol}};
    if (!grid_arg.empty()) {
        auto v = parse_doubles(grid_arg, 6, "--grid");
        GridSpec grid{v[0], v[1], v[2], v[3], static_cast<int>(v[4]), static_cast<int>(v[5]),
                      umbilic_tol};
        if (grid.nu < 1 || grid.nv < 1) throw input_error("--grid: nu, nv must be >= 1");
        auto samples = numeric_principal_fields(s, grid);
        std::ostringstream csv;
        csv << "u,v,umbilic,kappa1,kappa2,v1x,v1y,v2x,v2y\n";
        csv.precision(17);
        for (const auto& p : samples) {
            csv << p.u << ',' << p.v << ',' << (p.umbilic_masked ? 1 : 0) << ',' << p.kappa1
                << ',' << p.kappa2 << ',' << p.v1x << ',' << p.v1y << ',' << p.v2x << ','
                << p.v2y << '\n';
        }
        std::string out = csv_path.empty() ? "principal_fields.csv" : csv_path;
        write_text_atomic(out, csv.str());
        doc["csv"] = out;
        doc["grid_samples"] = static_cast<int>(samples.size());
    }
    emit_report(std::move(doc), timer);
    return 0;
}

int cmd_bifurcation(const std::string& family, double a_min, double a_max, int n,
                    const std::string& prefix) {
    Timer timer;
    UnfoldingFamily fam = [&] {
        if (family == "S2") return UnfoldingFamily::s2_standard();
        if (family == "B2") return UnfoldingFamily::b2_standard();
        throw input_error("bifurcation: family must be S2 or B2, got '" + family + "'");
    }();
    if (n < 0) throw input_error("bifurcation: sample count must be >= 0");
    ARange range{a_min, a_max};
    trace_and_render(fam, range, n, prefix);
    BifurcationCurve mono = mono_germ_locus(fam, range, n);
    BifurcationCurve bi = bi_germ_locus(fam, range, n);
    json doc = report_skeleton("bifurcation");
    doc["family"] = family;
    doc["a_range"] = json{{"min", a_min}, {"max", a_max}};
    doc["samples"] = n;
    auto branch_summary = [](const BifurcationCurve& c) {
        json b;
        b["closed_form"] = c.closed_form;
        b["n_samples"] = static_cast<int>(c.samples.size());
        if (!c.samples.empty()) {
            const auto& last = c.samples.back();
            b["endpoint"] = json{{"s", last.s}, {"t", last.t}};
        }
        return b;
    };
    doc["mono_germ"] = branch_summary(mono);
    doc["bi_germ"] = branch_summary(bi);
    doc["outputs"] = json{{"csv", prefix + ".csv"}, {"svg", prefix + ".svg"}};
    emit_report(std::move(doc), timer);
    return 0;
}

int cmd_render_fold(const std::string& path, double fig1_a, bool have_fig1,
                    const std::string& region_arg, int resolution, const std::string& v_arg,
                    const std::string& out) {
    Timer timer;
    if (resolution < 2) throw input_error("render-fold: resolution must be >= 2");
    SurfaceFn f;
    json surface_echo;
    if (have_fig1) {
        f = fig1_fn(fig1_a);
        surface_echo = json{{"family", "fig1"}, {"a", fig1_a}};
    } else if (!path.empty()) {
        SurfaceGerm s = load_surface_spec(path);
        surface_echo = surface_to_spec_json(s);
        f = surface_fn(s);
    } else {
        throw input_error("render-fold: provide a spec file or --fig1-a");
    }
    auto rv = parse_doubles(v_arg, 3, "--v");
    FoldDirection v{rv[0], rv[1], rv[2]};
    if (std::abs(1.0 - v.v3 * v.v3) < 1e-15)
        throw input_error("render-fold: v3^2 = 1 leaves the unfolding frame undefined");
    auto rr = parse_doubles(region_arg, 4, "--region");
    for (double c : rr)
        if (!std::isfinite(c)) throw input_error("render-fold: region must be finite");

    // mesh rows, computed in parallel strips
    int n = resolution;
    std::vector<std::string> strips(static_cast<size_t>(n));
    int n_threads = std::min(thread_cap(), n);
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i; (i = next.fetch_add(1)) < n;) {
            double x = rr[0] + (rr[1] - rr[0]) * i / (n - 1);
            std::ostringstream row;
            row.precision(17);
            for (int j = 0; j < n; ++j) {
                double y = rr[2] + (rr[3] - rr[2]) * j / (n - 1);
                auto p = rotation_unfolding_eval(f, x, y, v);
                row << x << ',' << y << ',' << p[0] << ',' << p[1] << ',' << p[2] << '\n';
            }
            strips[static_cast<size_t>(i)] = row.str();
        }
    };
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    std::string body = "x,y,X,Y,Z\n";
    for (const auto& s : strips) body += s;
    write_text_atomic(out, body);

    json doc = report_skeleton("render-fold");
    doc["surface"] = surface_echo;
    doc["direction"] = json{{"v1", v.v1}, {"v2", v.v2}, {"v3", v.v3}};
    doc["region"] = rr;
    doc["resolution"] = n;
    doc["rows"] = n * n;
    doc["output"] = out;
    emit_report(std::move(doc), timer);
    return 0;
}

int cmd_self_tangency(const std::string& path, double fig1_a, bool have_fig1,
                      const std::string& region_arg, double tol) {
    Timer timer;
    SurfaceFn f;
    json surface_echo;
    if (have_fig1) {
        f = fig1_fn(fig1_a);
        surface_echo = json{{"family", "fig1"}, {"a", fig1_a}};
    } else if (!path.empty()) {
        SurfaceGerm s = load_surface_spec(path);
        surface_echo = surface_to_spec_json(s);
        f = surface_fn(s);
    } else {
        throw input_error("self-tangency: provide a spec file or --fig1-a");
    }
    auto rr = parse_doubles(region_arg, 4, "--region");
    Region region{rr[0], rr[1], rr[2], rr[3]};
    SelfTangencyResult res = self_tangency_search(f, region, tol);
    json doc = report_skeleton("self-tangency");
    doc["surface"] = surface_echo;
    doc["region"] = rr;
    doc["tolerances"] = json{{"tol", tol}};
    doc["mirror_symmetric"] = res.mirror_symmetric;
    json pairs = json::array();
    for (const auto& p : res.pairs) {
        pairs.push_back(json{{"x", p.first.first},
                             {"y", p.first.second},
                             {"mirror", json{{"x", p.second.first}, {"y", p.second.second}}}});
    }
    doc["pairs"] = pairs;
    emit_report(std::move(doc), timer);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fold-atlas: folding maps of surfaces, their singularities, versality, and "
                 "bifurcation sets"};
    app.require_subcommand(1);

    std::string spec_path, grid_arg, csv_path, family, prefix = "bifurcation", out_csv;
    std::string region = "-1,1,-1,1", v_arg = "0,1,0";
    bool dump_matrix = false;
    double a_min = 0, a_max = 1, fig1_a = 0, umbilic_tol = 1e-9, st_tol = 1e-9;
    int n_samples = 100, resolution = 64;
    bool have_fig1 = false;

    auto* classify_cmd = app.add_subcommand("classify", "Singularity class of the fold");
    classify_cmd->add_option("spec", spec_path, "surface spec JSON")->required();

    auto* versal_cmd = app.add_subcommand("versal", "Versality of the rotation unfolding");
    versal_cmd->add_option("spec", spec_path, "surface spec JSON")->required();
    versal_cmd->add_flag("--dump-matrix", dump_matrix, "include the exact tangent matrix");

    auto* geom_cmd = app.add_subcommand("geometry", "Ridge/subparabolic and umbilic geometry");
    geom_cmd->add_option("spec", spec_path, "surface spec JSON")->required();
    geom_cmd->add_option("--grid", grid_arg, "umin,umax,vmin,vmax,nu,nv numeric field sweep");
    geom_cmd->add_option("--csv", csv_path, "output path for the --grid CSV");
    geom_cmd->add_option("--umbilic-tol", umbilic_tol, "|k1-k2| masking tolerance");

    auto* bif_cmd = app.add_subcommand("bifurcation", "Trace bifurcation loci of S2/B2");
    bif_cmd->add_option("family", family, "S2 or B2")->required();
    bif_cmd->add_option("--a-min", a_min, "parameter range start");
    bif_cmd->add_option("--a-max", a_max, "parameter range end");
    bif_cmd->add_option("-n,--samples", n_samples, "samples per branch");
    bif_cmd->add_option("-o,--out", prefix, "output prefix (.csv/.svg)");

    auto* render_cmd = app.add_subcommand("render-fold", "Emit fold image point cloud");
    render_cmd->add_option("spec", spec_path, "surface spec JSON");
    render_cmd->add_option("--fig1-a", fig1_a, "use the standard quintic family at parameter a")
        ->each([&](const std::string&) { have_fig1 = true; });
    render_cmd->add_option("--region", region, "xmin,xmax,ymin,ymax");
    render_cmd->add_option("--resolution", resolution, "grid points per axis (>= 2)");
    render_cmd->add_option("--v", v_arg, "unfolding direction v1,v2,v3");
    render_cmd->add_option("-o,--out", out_csv, "output CSV path")->required();

    auto* st_cmd = app.add_subcommand("self-tangency", "Search for self-tangency pairs");
    st_cmd->add_option("spec", spec_path, "surface spec JSON");
    st_cmd->add_option("--fig1-a", fig1_a, "use the standard quintic family at parameter a")
        ->each([&](const std::string&) { have_fig1 = true; });
    st_cmd->add_option("--region", region, "xmin,xmax,ymin,ymax");
    st_cmd->add_option("--tol", st_tol, "acceptance tolerance on |f_o|");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(spec_path);
        if (versal_cmd->parsed()) return cmd_versal(spec_path, dump_matrix);
        if (geom_cmd->parsed()) return cmd_geometry(spec_path, grid_arg, csv_path, umbilic_tol);
        if (bif_cmd->parsed()) return cmd_bifurcation(family, a_min, a_max, n_samples, prefix);
        if (render_cmd->parsed())
            return cmd_render_fold(spec_path, fig1_a, have_fig1, region, resolution, v_arg,
                                   out_csv);
        if (st_cmd->parsed())
            return cmd_self_tangency(spec_path, fig1_a, have_fig1, region, st_tol);
    } catch (const internal_invariant_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 5;
    } catch (const unsupported_class_error& e) {
        std::cerr << "unsupported class: " << e.what() << "\n";
        return 4;
    } catch (const insufficient_jet_error& e) {
        std::cerr << "insufficient jet: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
