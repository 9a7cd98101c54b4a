// Command-line front end: parse graphs, run the solver, bounds, families,
// curvature and construction operators, and emit JSON / CSV reports.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <numbers>

#include "magnu/magnu.hpp"

using namespace magnu;
using std::numbers::pi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBoundViolation = 2;
constexpr int kExitAssertion = 3;

/// Hub-first wheel on six rim vertices.
Graph w6_fixture() {
    return Graph(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6},
                     {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}});
}

/// The 7-vertex Laplacian-cospectral mate of W6 and the separating signature.
std::pair<Graph, MagneticPotential> ghat_fixture() {
    Graph g(7, {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6},
                {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {5, 6}});
    std::vector<double> angles(g.edge_count(), 0.0);
    for (auto [a, b] : {std::pair{0, 5}, {0, 6}, {1, 2}, {1, 3}, {2, 3}, {5, 6}})
        angles[g.edge_index(a, b)] = pi;
    return {g, MagneticPotential(std::move(angles))};
}

std::vector<int> parse_vertex_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

void print_run_report_human(const RunReport& r) {
    std::printf("graph: n=%d m=%d b1=%d girth=%s diameter=%s regular=%s bipartite=%s\n",
                r.graph.vertex_count(), r.graph.edge_count(), r.b1,
                r.girth_value ? std::to_string(*r.girth_value).c_str() : "inf",
                r.diameter_value ? std::to_string(*r.diameter_value).c_str() : "-",
                r.regular ? "yes" : "no", r.bipartite ? "yes" : "no");
    std::printf("nu estimate: %s  (converged=%s, multiplicity=%d, starts=%d, evals=%ld)\n",
                format_sig(r.nu.value).c_str(), r.nu.converged ? "yes" : "no",
                r.nu.lambda1_multiplicity_at_max, r.nu.n_starts, r.nu.n_evals);
    std::printf("holonomy:");
    for (double phi : r.nu.best.phis) std::printf(" %s", format_sig(phi).c_str());
    std::printf("\n");
    for (const BoundEntry& e : r.bounds.entries) {
        if (e.value)
            std::printf("bound %-15s %-5s %s\n", e.name.c_str(), e.upper ? "upper" : "lower",
                        format_sig(*e.value).c_str());
        else
            std::printf("bound %-15s %-5s n/a (%s)\n", e.name.c_str(),
                        e.upper ? "upper" : "lower", e.reason.c_str());
    }
    std::printf("bracket: [%s, %s]\n", format_sig(r.bounds.lower_max).c_str(),
                std::isfinite(r.bounds.upper_min) ? format_sig(r.bounds.upper_min).c_str()
                                                  : "inf");
    std::printf("spectral gap (lambda2): %s\n", format_sig(r.spectral_gap).c_str());
    std::printf("time: %.3fs\n", r.timing_seconds);
}

int cmd_nu(const std::string& file, SolverConfig cfg, bool as_json) {
    Graph g = load_graph(file);
    RunReport r = make_run_report(g, cfg);
    if (as_json)
        std::printf("%s\n", run_report_to_json(r).dump(2).c_str());
    else
        print_run_report_human(r);
    return kExitOk;
}

int cmd_bounds(const std::string& file, SolverConfig cfg, const BoundContext& ctx, bool as_json) {
    Graph g = load_graph(file);
    NuEstimate est = nu_estimate(g, cfg);
    BoundReport report = bound_report(g, est, ctx);
    if (as_json) {
        std::printf("%s\n", bound_report_to_json(report).dump(2).c_str());
    } else {
        for (const BoundEntry& e : report.entries)
            if (e.value)
                std::printf("%-15s %-5s %s\n", e.name.c_str(), e.upper ? "upper" : "lower",
                            format_sig(*e.value).c_str());
            else
                std::printf("%-15s %-5s n/a (%s)\n", e.name.c_str(), e.upper ? "upper" : "lower",
                            e.reason.c_str());
        std::printf("nu=%s in [%s, %s]\n", format_sig(est.value).c_str(),
                    format_sig(report.lower_max).c_str(),
                    std::isfinite(report.upper_min) ? format_sig(report.upper_min).c_str()
                                                    : "inf");
    }
    return kExitOk;
}

int cmd_curves(const std::string& file, int samples, bool force_one, bool force_two) {
    Graph g = load_graph(file);
    SpanningForest forest = spanning_forest(g);
    const int b1 = static_cast<int>(forest.cotree_edges.size());
    if (b1 != 1 && b1 != 2) throw WrongBetti("curves need b1 in {1, 2}");
    if (force_one && b1 != 1) throw WrongBetti("--edge-param needs b1 = 1");
    if (force_two && b1 != 2) throw WrongBetti("--two-params needs b1 = 2");
    const int n = g.vertex_count();
    std::vector<std::vector<double>> rows;
    if (b1 == 1) {
        for (int i = 0; i < samples; ++i) {
            double t = two_pi * i / (samples - 1);
            Eigen::VectorXd ev = eigenvalues_only(magnetic_laplacian(g, expand(g, {forest, {t}})));
            std::vector<double> row{t};
            for (Eigen::Index j = 0; j < ev.size(); ++j) row.push_back(ev(j));
            rows.push_back(std::move(row));
        }
        std::printf("%s", curves_to_csv({"t"}, rows, n).c_str());
    } else {
        int side = std::max(2, static_cast<int>(std::lround(std::sqrt(samples))));
        for (int i = 0; i < side; ++i)
            for (int j = 0; j < side; ++j) {
                double a = two_pi * i / (side - 1);
                double b = two_pi * j / (side - 1);
                Eigen::VectorXd ev =
                    eigenvalues_only(magnetic_laplacian(g, expand(g, {forest, {a, b}})));
                std::vector<double> row{a, b};
                for (Eigen::Index c = 0; c < ev.size(); ++c) row.push_back(ev(c));
                rows.push_back(std::move(row));
            }
        std::printf("%s", curves_to_csv({"alpha", "beta"}, rows, n).c_str());
    }
    return kExitOk;
}

int cmd_families(const std::string& family, int d, const std::string& tree_file, bool as_json) {
    FamilyResult fr;
    if (family == "cycle")
        fr = cycle_family(d);
    else if (family == "complete")
        fr = complete_family(d);
    else if (family == "wheel")
        fr = wheel_family(d);
    else if (family == "tree-suspension")
        fr = tree_suspension_potential(load_graph(tree_file));
    else
        throw ParseError("unknown family: " + family);
    json j{{"family", family},
           {"graph", graph_to_json(fr.graph)},
           {"nu_exact", fr.nu_exact},
           {"maximal_potential", potential_to_json(fr.maximal_potential)},
           {"trivial", fr.trivial}};
    if (fr.predicted_spectrum) j["predicted_spectrum"] = *fr.predicted_spectrum;
    j["lambda1_check"] = lambda1(fr.graph, fr.maximal_potential);
    if (as_json) {
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("nu_exact = %s, lambda1 check = %s\n", format_sig(fr.nu_exact).c_str(),
                    format_sig(static_cast<double>(j["lambda1_check"])).c_str());
        std::printf("%s", to_edge_list(fr.graph).c_str());
    }
    return kExitOk;
}

int cmd_curvature(const std::string& file, const std::string& potential_file, double K,
                  const std::string& n_str, bool with_sup, bool as_json) {
    Graph g = load_graph(file);
    MagneticPotential sigma = potential_file.empty() ? MagneticPotential::trivial(g)
                                                     : load_potential(potential_file);
    double n = n_str == "inf" ? std::numeric_limits<double>::infinity() : std::stod(n_str);
    json vertices = json::array();
    bool global = true;
    for (int x = 0; x < g.vertex_count(); ++x) {
        bool pass = cd_check(g, sigma, x, K, n);
        global = global && pass;
        json entry{{"vertex", x}, {"cd_pass", pass}};
        if (with_sup) {
            double sup = curvature_sup(g, sigma, x, n);
            entry["curvature_sup"] = std::isfinite(sup) ? json(sup) : json("inf");
        }
        vertices.push_back(std::move(entry));
    }
    json out{{"K", K}, {"n", n_str}, {"global", global}, {"vertices", std::move(vertices)}};
    if (as_json) {
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        for (const auto& v : out["vertices"]) {
            std::printf("vertex %d: %s", v["vertex"].get<int>(),
                        v["cd_pass"].get<bool>() ? "pass" : "fail");
            if (with_sup && v.contains("curvature_sup")) {
                if (v["curvature_sup"].is_string())
                    std::printf("  sup=inf");
                else
                    std::printf("  sup=%s", format_sig(v["curvature_sup"].get<double>()).c_str());
            }
            std::printf("\n");
        }
        std::printf("global: %s\n", global ? "pass" : "fail");
    }
    return kExitOk;
}

int cmd_construct(const std::string& op, const std::string& file, const std::string& with_file,
                  int u, int v, const std::string& part_csv, const std::string& potential_file,
                  const std::string& with_potential_file, int k, bool as_json) {
    Graph g = load_graph(file);
    Graph result;
    std::optional<MagneticPotential> result_potential;
    if (op == "add-edge") {
        result = add_edge(g, u, v);
    } else if (op == "bridge") {
        Graph h = load_graph(with_file);
        result = bridge_join(g, h, u, v);
    } else if (op == "split-vertex") {
        result = split_vertex(g, u, parse_vertex_list(part_csv));
    } else if (op == "subdivide") {
        result = subdivide_edge(g, u, v);
    } else if (op == "product") {
        Graph h = load_graph(with_file);
        MagneticPotential sg = potential_file.empty() ? MagneticPotential::trivial(g)
                                                      : load_potential(potential_file);
        MagneticPotential sh = with_potential_file.empty() ? MagneticPotential::trivial(h)
                                                           : load_potential(with_potential_file);
        auto [prod, sigma] = cartesian_product(g, sg, h, sh);
        result = prod;
        result_potential = sigma;
    } else if (op == "suspend") {
        result = suspension(g);
    } else if (op == "lift") {
        MagneticPotential sigma = potential_file.empty() ? MagneticPotential::trivial(g)
                                                         : load_potential(potential_file);
        LiftedGraph lg = cyclic_lift(g, sigma, k);
        result = lg.lift;
        result_potential = lg.sigma_base;
    } else {
        throw ParseError("unknown construct op: " + op);
    }
    if (as_json) {
        json j{{"op", op}, {"graph", graph_to_json(result)}};
        if (result_potential) j["potential"] = potential_to_json(*result_potential);
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("%s", to_edge_list(result).c_str());
    }
    return kExitOk;
}

int cmd_lift(const std::string& file, const std::string& potential_file, int k, bool as_json) {
    Graph g = load_graph(file);
    MagneticPotential sigma = potential_file.empty() ? MagneticPotential::trivial(g)
                                                     : load_potential(potential_file);
    LiftedGraph lg = cyclic_lift(g, sigma, k);
    bool ok = lift_spectrum_check(lg);
    json j{{"k", k},
           {"base", graph_to_json(lg.base)},
           {"lift", graph_to_json(lg.lift)},
           {"spectrum_decomposes", ok}};
    if (as_json)
        std::printf("%s\n", j.dump(2).c_str());
    else
        std::printf("lift on %d vertices; spectrum decomposition %s\n", lg.lift.vertex_count(),
                    ok ? "verified" : "FAILED");
    return ok ? kExitOk : kExitAssertion;
}

int cmd_cospectral_demo(SolverConfig cfg, bool as_json) {
    Graph w6 = w6_fixture();
    auto [ghat, sig] = ghat_fixture();
    Eigen::VectorXd spec_w6 =
        eigenvalues_only(magnetic_laplacian(w6, MagneticPotential::trivial(w6)));
    Eigen::VectorXd spec_ghat =
        eigenvalues_only(magnetic_laplacian(ghat, MagneticPotential::trivial(ghat)));
    bool cospectral = (spec_w6 - spec_ghat).cwiseAbs().maxCoeff() < 1e-8;
    std::vector<double> expected{0, 2, 2, 4, 4, 5, 7};
    for (int i = 0; i < 7; ++i)
        cospectral = cospectral && std::abs(spec_w6(i) - expected[i]) < 1e-8;

    NuEstimate est_w6 = nu_estimate(w6, cfg);
    NuEstimate est_ghat = nu_estimate(ghat, cfg);
    double nu_w6_exact = 3 - 2 * std::cos(pi / 6);
    double sig_floor = (7 - std::sqrt(17.0)) / 2;
    bool separated = est_ghat.value >= sig_floor - 1e-6 && sig_floor > nu_w6_exact;
    bool w6_matches = std::abs(est_w6.value - nu_w6_exact) < 1e-6;

    json j{{"cospectral", cospectral},
           {"spectrum", std::vector<double>(spec_w6.data(), spec_w6.data() + 7)},
           {"nu_w6", est_w6.value},
           {"nu_w6_exact", nu_w6_exact},
           {"nu_ghat", est_ghat.value},
           {"signature_floor_ghat", sig_floor},
           {"separated", separated}};
    if (as_json)
        std::printf("%s\n", j.dump(2).c_str());
    else
        std::printf(
            "cospectral=%s  nu(W6)=%s (exact %s)  nu(Ghat)=%s >= %s  separated=%s\n",
            cospectral ? "yes" : "no", format_sig(est_w6.value).c_str(),
            format_sig(nu_w6_exact).c_str(), format_sig(est_ghat.value).c_str(),
            format_sig(sig_floor).c_str(), separated ? "yes" : "no");
    if (!cospectral || !separated || !w6_matches) {
        std::fprintf(stderr, "cospectral-demo: assertion failed\n");
        return kExitAssertion;
    }
    return kExitOk;
}

int cmd_gap_compare(const std::string& file, SolverConfig cfg, bool as_json) {
    Graph g = load_graph(file);
    NuEstimate est = nu_estimate(g, cfg);
    Eigen::VectorXd spec = eigenvalues_only(magnetic_laplacian(g, MagneticPotential::trivial(g)));
    double gap = spec.size() >= 2 ? spec(1) : 0.0;
    json j{{"lambda2", gap},
           {"nu", est.value},
           {"ratio", est.value > 0 ? gap / est.value : 0.0}};
    if (is_regular(g) && g.vertex_count() >= 2) {
        double d = max_degree(g);
        double identity_rhs = 2 * d - spec(spec.size() - 1);
        double anti = lambda1(g, MagneticPotential::anti_balanced(g));
        j["regular_degree"] = d;
        j["lambda1_antibalanced"] = anti;
        j["two_d_minus_lambda_max"] = identity_rhs;
        j["identity_residual"] = std::abs(anti - identity_rhs);
    }
    if (as_json) {
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("lambda2=%s  nu=%s  ratio=%s\n", format_sig(gap).c_str(),
                    format_sig(est.value).c_str(),
                    format_sig(j["ratio"].get<double>()).c_str());
        if (j.contains("lambda1_antibalanced"))
            std::printf("anti-balanced lambda1=%s vs 2d - lambda_max=%s (residual %s)\n",
                        format_sig(j["lambda1_antibalanced"].get<double>()).c_str(),
                        format_sig(j["two_d_minus_lambda_max"].get<double>()).c_str(),
                        format_sig(j["identity_residual"].get<double>()).c_str());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"magneto-spectral height toolkit"};
    app.require_subcommand(1);

    SolverConfig cfg;
    bool as_json = false;
    std::string file, with_file, potential_file, with_potential_file, part_csv;
    std::string family = "cycle", tree_file, op, n_str = "inf";
    std::string g0_csv;
    double nu_g0 = -1.0, K = 0.0;
    bool const_modulus = false, with_sup = false;
    int d = 6, u = 0, v = 1, k = 2, samples = 361;

    auto add_solver_opts = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.rng_seed, "solver RNG seed")->envname("MAGNU_SEED");
        sub->add_option("--starts", cfg.n_multistarts, "multistart count");
        sub->add_option("--grid", cfg.grid_points_per_dim, "grid points per dimension");
        sub->add_flag("--json", as_json, "emit JSON");
    };

    CLI::App* nu = app.add_subcommand("nu", "estimate nu(G) with bounds");
    nu->add_option("graph", file, "graph file (edge list or JSON)")->required();
    add_solver_opts(nu);

    CLI::App* bounds = app.add_subcommand("bounds", "evaluate the bound catalogue");
    bounds->add_option("graph", file)->required();
    bounds->add_option("--g0", g0_csv, "subgraph vertices, comma separated");
    bounds->add_option("--nu-g0", nu_g0, "known nu of the subgraph");
    bounds->add_flag("--const-modulus", const_modulus,
                     "subgraph has a constant-modulus bottom eigenfunction");
    add_solver_opts(bounds);

    CLI::App* curves = app.add_subcommand("curves", "eigenvalue curves over the holonomy torus");
    curves->add_option("graph", file)->required();
    curves->add_option("--samples", samples, "sample count (grid side^2 for b1 = 2)");

    CLI::App* families = app.add_subcommand("families", "exact family values");
    families->add_option("--family", family, "cycle|complete|wheel|tree-suspension");
    families->add_option("--d", d, "family size parameter");
    families->add_option("--tree", tree_file, "tree file for tree-suspension");
    families->add_flag("--json", as_json);

    CLI::App* curvature = app.add_subcommand("curvature", "curvature-dimension checks");
    curvature->add_option("graph", file)->required();
    curvature->add_option("--potential", potential_file, "potential JSON file");
    curvature->add_option("--K", K, "curvature lower bound to test");
    curvature->add_option("--n", n_str, "dimension (number or 'inf')");
    curvature->add_flag("--sup", with_sup, "also report per-vertex curvature sup");
    curvature->add_flag("--json", as_json);

    CLI::App* construct = app.add_subcommand("construct", "graph constructions");
    construct->add_option("graph", file)->required();
    construct->add_option("--op", op, "add-edge|bridge|split-vertex|subdivide|product|suspend|lift")
        ->required();
    construct->add_option("--with", with_file, "second graph file");
    construct->add_option("--u", u);
    construct->add_option("--v", v);
    construct->add_option("--part", part_csv, "neighbour subset, comma separated");
    construct->add_option("--potential", potential_file);
    construct->add_option("--with-potential", with_potential_file);
    construct->add_option("--k", k, "lift order");
    construct->add_flag("--json", as_json);

    CLI::App* lift = app.add_subcommand("lift", "cyclic lift with spectrum verification");
    lift->add_option("graph", file)->required();
    lift->add_option("--potential", potential_file);
    lift->add_option("--k", k)->required();
    lift->add_flag("--json", as_json);

    CLI::App* demo = app.add_subcommand("cospectral-demo",
                                        "W6 vs its cospectral mate, separated by nu");
    add_solver_opts(demo);

    CLI::App* gap = app.add_subcommand("gap-compare", "spectral gap vs nu");
    gap->add_option("graph", file)->required();
    add_solver_opts(gap);

    CLI11_PARSE(app, argc, argv);

    try {
        if (nu->parsed()) return cmd_nu(file, cfg, as_json);
        if (bounds->parsed()) {
            BoundContext ctx;
            if (!g0_csv.empty()) {
                ctx.subgraph_vertices = parse_vertex_list(g0_csv);
                if (nu_g0 >= 0) ctx.subgraph_nu = nu_g0;
                ctx.subgraph_constant_modulus = const_modulus;
            }
            return cmd_bounds(file, cfg, ctx, as_json);
        }
        if (curves->parsed()) return cmd_curves(file, samples);
        if (families->parsed()) return cmd_families(family, d, tree_file, as_json);
        if (curvature->parsed())
            return cmd_curvature(file, potential_file, K, n_str, with_sup, as_json);
        if (construct->parsed())
            return cmd_construct(op, file, with_file, u, v, part_csv, potential_file,
                                 with_potential_file, k, as_json);
        if (lift->parsed()) return cmd_lift(file, potential_file, k, as_json);
        if (demo->parsed()) return cmd_cospectral_demo(cfg, as_json);
        if (gap->parsed()) return cmd_gap_compare(file, cfg, as_json);
    } catch (const BoundViolation& e) {
        std::fprintf(stderr, "bound violation: %s\n", e.what());
        return kExitBoundViolation;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
