#ifndef MAGNU_REPORT_HPP
#define MAGNU_REPORT_HPP

#include <chrono>

#include "magnu/io.hpp"

namespace magnu {

/// Full pipeline result for one graph: combinatorial summary, solver
/// estimate, bound bracket, and the spectral gap of the standard Laplacian.
struct RunReport {
    Graph graph;
    int b1 = 0;
    std::optional<int> girth_value;
    std::optional<int> diameter_value;  // empty when disconnected
    bool regular = false;
    bool bipartite = false;
    NuEstimate nu;
    BoundReport bounds;
    double spectral_gap = 0.0;
    double timing_seconds = 0.0;  // excluded from JSON: reports regenerate byte-identically
};

inline RunReport make_run_report(const Graph& g, const SolverConfig& cfg = {},
                                 const BoundContext& ctx = {}) {
    auto t0 = std::chrono::steady_clock::now();
    RunReport r;
    r.graph = g;
    r.b1 = betti_number(g);
    r.girth_value = girth(g);
    r.regular = is_regular(g);
    r.bipartite = is_bipartite(g);
    if (is_connected(g) && g.vertex_count() > 0) r.diameter_value = diameter(g);
    r.nu = nu_estimate(g, cfg);
    r.bounds = bound_report(g, r.nu, ctx);
    if (g.vertex_count() >= 2) {
        Eigen::VectorXd ev =
            eigenvalues_only(magnetic_laplacian(g, MagneticPotential::trivial(g)));
        r.spectral_gap = ev(1);
    }
    r.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline json run_report_to_json(const RunReport& r) {
    json summary{{"n", r.graph.vertex_count()},
                 {"m", r.graph.edge_count()},
                 {"b1", r.b1},
                 {"girth", r.girth_value ? json(*r.girth_value) : json("inf")},
                 {"diameter", r.diameter_value ? json(*r.diameter_value) : json(nullptr)},
                 {"regular", r.regular},
                 {"bipartite", r.bipartite}};
    return json{{"graph", std::move(summary)},
                {"nu", nu_estimate_to_json(r.nu)},
                {"bounds", bound_report_to_json(r.bounds)},
                {"spectral_gap", r.spectral_gap}};
}

} // namespace magnu

#endif // MAGNU_REPORT_HPP
