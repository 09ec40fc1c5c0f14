/*
 * polycurv: discrete curvatures and rigidity solvers for bordered
 * polyhedral surfaces.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polycurv/polycurv.hpp"

namespace {

using namespace polycurv;

// exit codes: 0 ok, 1 audit failure, 2 parse, 3 invalid mesh/spec,
// 4 invalid metric, 5 no geometric solution, 6 no convergence
constexpr int kExitAudit = 1;
constexpr int kExitParse = 2;
constexpr int kExitMesh = 3;
constexpr int kExitMetric = 4;
constexpr int kExitNoGeometric = 5;
constexpr int kExitNoConvergence = 6;

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

void emit_json(const std::optional<std::string>& path, const nlohmann::json& j)
{
    if (path)
        write_file(*path, j.dump(2) + "\n");
    else
        std::cout << j.dump(2) << "\n";
}

PolyhedralMetric full_metric(const Surface& s, const MeshDocument& doc)
{
    if (!doc.has_metric) throw MissingEdgeLength("document carries no metric");
    return metric_from_map(s, doc.metric, doc.geometry);
}

CirclePackingMetric full_packing(const Surface& s, const MeshDocument& doc)
{
    if (!doc.has_radii) throw NonPositiveRadius("document carries no radii");
    CirclePackingMetric p;
    p.geometry = doc.geometry;
    p.radii.resize(s.vertex_count);
    for (int v = 0; v < s.vertex_count; ++v) {
        const auto it = doc.radii.find(v);
        if (it == doc.radii.end()) throw NonPositiveRadius("radii must cover every vertex");
        p.radii[v] = it->second;
    }
    return p;
}

void require_valid(const Surface& s, const PolyhedralMetric& m)
{
    const auto bad = validate_metric(s, m);
    if (!bad.empty()) {
        std::string msg = "metric degenerate on triangle(s):";
        for (int t : bad) msg += " " + std::to_string(t);
        throw DegenerateTriangle(msg);
    }
}

TotalFlavor flavor_for(const std::string& flavor, Geometry geom, const Surface& s)
{
    if (flavor == "k") return TotalFlavor::UPacking;
    if (flavor == "phi") {
        if (geom == Geometry::Hyperbolic) {
            if (!is_stripped(s))
                throw InfeasibleSpec(
                    "hyperbolic phi prescription needs a stripped surface");
            return TotalFlavor::VPhiStripped;
        }
        return TotalFlavor::WPhi;
    }
    if (flavor == "psi") {
        if (geom == Geometry::Hyperbolic) return TotalFlavor::WPsiHyperbolic;
        if (geom == Geometry::Euclidean) return TotalFlavor::WPhi;  // phi == psi
        throw InfeasibleSpec("psi prescription has no spherical variant");
    }
    throw InfeasibleSpec("unknown flavor '" + flavor + "'");
}

int cmd_curvature(const std::string& mesh_path, const std::string& flavor, double h_flag,
                  bool h_given, const std::optional<std::string>& out)
{
    const MeshDocument doc = load_mesh_document(mesh_path);
    const Surface s = build_surface(doc.vertices, doc.triangles);
    const double h = h_given ? h_flag : doc.h;
    nlohmann::json j;
    j["h"] = h;
    j["geometry"] = to_string(doc.geometry);
    j["flavor"] = flavor;
    if (flavor == "k") {
        const CirclePackingMetric p = full_packing(s, doc);
        const VertexCurvatureVector kv = k_h(s, p, h);
        std::printf("vertex    k_%g\n", h);
        nlohmann::json vals = nlohmann::json::object();
        for (std::size_t i = 0; i < kv.values.size(); ++i) {
            const int v = s.interior_vertices[i];
            std::printf("%6d  %+.9f\n", v, kv.values[i]);
            vals[std::to_string(v)] = kv.values[i];
        }
        j["values"] = vals;
        j["delaunay"] = is_delaunay(s, induced_metric(s, p));
    } else if (flavor == "phi" || flavor == "psi") {
        const PolyhedralMetric m = full_metric(s, doc);
        require_valid(s, m);
        const EdgeCurvatureVector ec = flavor == "phi" ? phi_h(s, m, h) : psi_h(s, m, h);
        std::printf("edge      %s_%g\n", flavor.c_str(), h);
        nlohmann::json vals = nlohmann::json::object();
        for (std::size_t i = 0; i < ec.values.size(); ++i) {
            const auto [a, b] = s.edges[s.interior_edges[i]];
            std::printf("%3d-%-3d  %+.9f\n", a, b, ec.values[i]);
            vals[edge_key(a, b)] = ec.values[i];
        }
        j["values"] = vals;
        if (doc.geometry != Geometry::Spherical) j["delaunay"] = is_delaunay(s, m);
    } else {
        throw InfeasibleSpec("unknown flavor '" + flavor + "'");
    }
    if (j.contains("delaunay"))
        std::printf("delaunay: %s\n", j["delaunay"].get<bool>() ? "true" : "false");
    emit_json(out, j);
    return 0;
}

nlohmann::json report_to_json(const SolveReport& r)
{
    nlohmann::json j;
    j["iterations"] = r.iterations;
    j["final_gradient_norm"] = r.final_gradient_norm;
    j["converged"] = r.converged;
    j["descent_path_stayed_admissible"] = r.descent_path_stayed_admissible;
    j["no_geometric_solution"] = r.no_geometric_solution;
    return j;
}

int cmd_solve(const std::string& mesh_path, const std::string& targets_path,
              const std::string& flavor, double h_flag, bool h_given, double tol,
              const std::optional<std::string>& out)
{
    const MeshDocument doc = load_mesh_document(mesh_path);
    const Surface s = build_surface(doc.vertices, doc.triangles);
    const double h = h_given ? h_flag : doc.h;
    const TargetsDocument targets = load_targets_document(targets_path);

    ProblemSpec problem;
    problem.surface = &s;
    problem.geometry = doc.geometry;
    problem.h = h;
    problem.flavor = flavor_for(flavor, doc.geometry, s);

    if (problem.flavor == TotalFlavor::UPacking) {
        if (!doc.has_radii) throw NonPositiveRadius("packing solve needs boundary radii");
        for (int v : s.boundary_vertices) {
            const auto it = doc.radii.find(v);
            if (it == doc.radii.end())
                throw NonPositiveRadius("radii must cover every boundary vertex");
            problem.boundary_data.push_back(it->second);
        }
        if (static_cast<int>(targets.vertex_targets.size()) !=
            static_cast<int>(s.interior_vertices.size()))
            throw InfeasibleSpec("targets must cover exactly the interior vertex set");
        for (int v : s.interior_vertices) {
            const auto it = targets.vertex_targets.find(v);
            if (it == targets.vertex_targets.end())
                throw InfeasibleSpec("missing target for interior vertex " +
                                     std::to_string(v));
            problem.targets.push_back(it->second);
        }
        std::vector<double> guess;
        bool full_guess = true;
        for (int v : s.interior_vertices) {
            const auto it = doc.radii.find(v);
            if (it == doc.radii.end())
                full_guess = false;
            else
                guess.push_back(it->second);
        }
        if (full_guess && !guess.empty()) problem.initial_guess = guess;
    } else {
        if (!doc.has_metric) throw MissingEdgeLength("solve needs boundary lengths");
        for (int e : s.boundary_edges) {
            const auto it = doc.metric.find(s.edges[e]);
            if (it == doc.metric.end())
                throw MissingEdgeLength("metric must cover every boundary edge");
            problem.boundary_data.push_back(it->second);
        }
        if (static_cast<int>(targets.edge_targets.size()) !=
            static_cast<int>(s.interior_edges.size()))
            throw InfeasibleSpec("targets must cover exactly the interior edge set");
        for (int e : s.interior_edges) {
            const auto it = targets.edge_targets.find(s.edges[e]);
            if (it == targets.edge_targets.end())
                throw InfeasibleSpec("missing target for an interior edge");
            problem.targets.push_back(it->second);
        }
        std::vector<double> guess;
        bool full_guess = true;
        for (int e : s.interior_edges) {
            const auto it = doc.metric.find(s.edges[e]);
            if (it == doc.metric.end())
                full_guess = false;
            else
                guess.push_back(it->second);
        }
        if (full_guess && !guess.empty()) problem.initial_guess = guess;
    }

    SolveOptions options;
    options.tol = tol;
    const SolveReport report = solve(problem, options);

    MeshDocument solved = doc;
    if (report.metric) {
        solved.has_metric = true;
        solved.metric.clear();
        for (int e = 0; e < s.edge_count(); ++e)
            solved.metric[s.edges[e]] = report.metric->lengths[e];
    }
    if (report.packing) {
        solved.has_radii = true;
        solved.radii.clear();
        for (int v = 0; v < s.vertex_count; ++v) solved.radii[v] = report.packing->radii[v];
    }
    solved.h = h;
    emit_json(out, mesh_document_to_json(solved));
    std::cout << report_to_json(report).dump(2) << "\n";
    return report.no_geometric_solution ? kExitNoGeometric : 0;
}

int cmd_polygon(const std::string& geometry, const std::string& sides_csv, double h,
                const std::optional<std::string>& out, const std::optional<std::string>& svg,
                double tol)
{
    PolygonSpec spec;
    spec.geometry = geometry_from_string(geometry);
    std::stringstream ss(sides_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            spec.sides.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ParseError("bad side length '" + tok + "'");
        }
    }
    SolveOptions options;
    options.tol = tol;
    const PolygonSolution sol = cyclic_polygon_solve(spec, h, options);

    nlohmann::json j;
    j["geometry"] = to_string(spec.geometry);
    j["sides"] = spec.sides;
    j["h"] = h;
    nlohmann::json diag = nlohmann::json::object();
    const int n = static_cast<int>(spec.sides.size());
    for (int k = 2; k + 1 < n; ++k) diag[edge_key(0, k)] = sol.diagonals[k - 2];
    j["diagonals"] = diag;
    j["circumradius"] = sol.circumradius;
    j["center_inside"] = sol.center_inside;
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : sol.vertices) verts.push_back({v[0], v[1]});
    j["vertices"] = verts;
    j["report"] = report_to_json(sol.report);
    std::printf("circumradius  %.9f  (%s)\n", sol.circumradius,
                spec.geometry == Geometry::Euclidean ? "plane" : "poincare disk");
    for (int k = 2; k + 1 < n; ++k)
        std::printf("diagonal 0-%-3d %.9f\n", k, sol.diagonals[k - 2]);
    emit_json(out, j);

    if (svg) {
        SvgWriter w;
        if (spec.geometry == Geometry::Euclidean)
            w.add_circle(0.0, 0.0, sol.circumradius, "#4488cc");
        else
            w.add_circle(0.0, 0.0, 1.0, "#4488cc");
        for (int k = 0; k < n; ++k) {
            const auto& a = sol.vertices[k];
            const auto& b = sol.vertices[(k + 1) % n];
            w.add_segment(a[0], a[1], b[0], b[1], "black");
        }
        for (int k = 2; k + 1 < n; ++k)
            w.add_segment(sol.vertices[0][0], sol.vertices[0][1], sol.vertices[k][0],
                          sol.vertices[k][1], "#bbbbbb");
        write_file(*svg, w.render());
    }
    return 0;
}

int cmd_pack(const std::string& mesh_path, double h_flag, bool h_given,
             const std::optional<std::string>& targets_path,
             const std::optional<std::string>& out, const std::optional<std::string>& svg,
             double tol)
{
    const MeshDocument doc = load_mesh_document(mesh_path);
    if (doc.geometry != Geometry::Euclidean)
        throw InfeasibleSpec("pack layouts are Euclidean");
    const Surface s = build_surface(doc.vertices, doc.triangles);
    const double h = h_given ? h_flag : doc.h;
    if (!doc.has_radii) throw NonPositiveRadius("pack needs boundary radii");
    std::vector<double> boundary;
    for (int v : s.boundary_vertices) {
        const auto it = doc.radii.find(v);
        if (it == doc.radii.end())
            throw NonPositiveRadius("radii must cover every boundary vertex");
        boundary.push_back(it->second);
    }
    std::optional<std::vector<double>> targets;
    if (targets_path) {
        const TargetsDocument tdoc = load_targets_document(*targets_path);
        std::vector<double> t;
        for (int v : s.interior_vertices) {
            const auto it = tdoc.vertex_targets.find(v);
            if (it == tdoc.vertex_targets.end())
                throw InfeasibleSpec("missing target for interior vertex " +
                                     std::to_string(v));
            t.push_back(it->second);
        }
        targets = t;
    }
    SolveOptions options;
    options.tol = tol;
    const PackingLayout layout = packing_complete_and_layout(s, boundary, h, targets, options);

    nlohmann::json j;
    j["h"] = h;
    nlohmann::json radii = nlohmann::json::object();
    for (int v = 0; v < s.vertex_count; ++v) radii[std::to_string(v)] = layout.radii[v];
    j["radii"] = radii;
    nlohmann::json centers = nlohmann::json::array();
    for (const auto& c : layout.centers) centers.push_back({c[0], c[1]});
    j["centers"] = centers;
    j["max_tangency_residual"] = layout.max_tangency_residual;
    j["report"] = report_to_json(layout.report);
    std::printf("max tangency residual  %.3e\n", layout.max_tangency_residual);
    for (int v = 0; v < s.vertex_count; ++v)
        std::printf("circle %3d  r = %.9f  center = (%.9f, %.9f)\n", v, layout.radii[v],
                    layout.centers[v][0], layout.centers[v][1]);
    emit_json(out, j);

    if (svg) {
        SvgWriter w;
        for (int e = 0; e < s.edge_count(); ++e) {
            const auto [a, b] = s.edges[e];
            w.add_segment(layout.centers[a][0], layout.centers[a][1], layout.centers[b][0],
                          layout.centers[b][1], "#cccccc");
        }
        for (int v = 0; v < s.vertex_count; ++v)
            w.add_circle(layout.centers[v][0], layout.centers[v][1], layout.radii[v]);
        write_file(*svg, w.render());
    }
    return 0;
}

int cmd_audit(std::uint64_t seed, int samples, const std::optional<std::string>& out,
              bool inject_fault)
{
    AuditOptions options;
    options.seed = seed;
    options.samples = samples;
    options.inject_matrix_p_fault = inject_fault;
    const AuditReport report = run_audit(options);
    for (const auto& c : report.checks)
        std::printf("%-36s %-5s worst %+.3e  tol %.0e\n", c.name.c_str(),
                    c.passed ? "pass" : "FAIL", c.worst_residual, c.tolerance);
    std::printf("audit: %s (%zu checks, seed %llu)\n",
                report.all_passed ? "all passed" : "FAILURES",
                report.checks.size(), static_cast<unsigned long long>(report.seed));
    if (out) write_file(*out, report.to_json().dump(2) + "\n");
    return report.all_passed ? 0 : kExitAudit;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"discrete curvature workbench for bordered polyhedral surfaces"};
    app.require_subcommand(1);
    // the curvature parameter is spelled --h, so help is --help only
    app.set_help_flag("--help", "print usage");

    std::string mesh_path, targets_path, flavor = "phi", geometry = "e", sides_csv;
    double h = 0.0, tol = 1e-10;
    std::uint64_t seed = 1;
    int samples = 1000;
    bool inject_fault = false;
    std::optional<std::string> out, svg, pack_targets;

    const auto subcommand = [&](const char* name, const char* desc) {
        auto* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print usage");
        return sub;
    };

    auto* curvature = subcommand("curvature", "per-edge/vertex curvature of a metric");
    curvature->add_option("mesh", mesh_path)->required();
    curvature->add_option("--flavor", flavor, "phi|psi|k");
    auto* ch = curvature->add_option("--h", h, "curvature parameter");
    curvature->add_option("--out", out, "JSON report path");

    auto* solve_cmd = subcommand("solve", "recover a metric from boundary + targets");
    solve_cmd->add_option("mesh", mesh_path)->required();
    solve_cmd->add_option("targets", targets_path)->required();
    solve_cmd->add_option("--flavor", flavor, "phi|psi|k");
    auto* sh = solve_cmd->add_option("--h", h, "curvature parameter");
    solve_cmd->add_option("--tol", tol, "gradient tolerance");
    solve_cmd->add_option("--out", out, "solved mesh path");

    auto* polygon = subcommand("polygon", "reconstruct a cyclic polygon from sides");
    polygon->add_option("--geometry", geometry, "e|h")->required();
    polygon->add_option("--sides", sides_csv, "comma-separated side lengths")->required();
    auto* ph = polygon->add_option("--h", h, "curvature parameter");
    polygon->add_option("--tol", tol, "gradient tolerance");
    polygon->add_option("--out", out, "JSON output path");
    polygon->add_option("--svg", svg, "SVG output path");

    auto* pack = subcommand("pack", "complete a circle packing and lay it out");
    pack->add_option("mesh", mesh_path)->required();
    auto* kh = pack->add_option("--h", h, "curvature parameter");
    pack->add_option("--targets", pack_targets, "k_h targets JSON");
    pack->add_option("--tol", tol, "gradient tolerance");
    pack->add_option("--out", out, "JSON output path");
    pack->add_option("--svg", svg, "SVG output path");

    auto* audit = subcommand("audit", "randomized invariant audit");
    audit->add_option("--seed", seed, "RNG seed");
    audit->add_option("--samples", samples, "sample count");
    audit->add_option("--out", out, "JSON report path");
    audit->add_flag("--inject-fault", inject_fault)->group("");  // test-only, hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitParse;
    }

    try {
        if (curvature->parsed())
            return cmd_curvature(mesh_path, flavor, h, !ch->empty(), out);
        if (solve_cmd->parsed())
            return cmd_solve(mesh_path, targets_path, flavor, h, !sh->empty(), tol, out);
        if (polygon->parsed())
            return cmd_polygon(geometry, sides_csv, ph->empty() ? 0.0 : h, out, svg, tol);
        if (pack->parsed())
            return cmd_pack(mesh_path, h, !kh->empty(), pack_targets, out, svg, tol);
        if (audit->parsed()) return cmd_audit(seed, samples, out, inject_fault);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NoCyclicPolygon& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoGeometric;
    } catch (const MaxIterations& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const LineSearchFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const DegenerateTriangle& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const NonPositiveLength& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const NonPositiveRadius& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const MissingEdgeLength& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const SingularIntegrand& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const OutOfDomain& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const OutOfImage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const IndexMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const Error& e) {
        // remaining library errors concern the mesh or problem spec
        std::cerr << "error: " << e.what() << "\n";
        return kExitMesh;
    }
    return 0;
}
