#ifndef MAGNU_BOUNDS_HPP
#define MAGNU_BOUNDS_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "magnu/curvature.hpp"
#include "magnu/solver.hpp"

namespace magnu {

/// Induced subgraph on a vertex set; `map` sends old indices to new ones
/// (-1 for vertices outside the set).
inline std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g,
                                                           std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<int> map(g.vertex_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] < 0 || vertices[i] >= g.vertex_count()) throw VertexOutOfRange();
        map[vertices[i]] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (const Edge& e : g.edges())
        if (map[e.u] >= 0 && map[e.v] >= 0) edges.emplace_back(map[e.u], map[e.v]);
    return {Graph(static_cast<int>(vertices.size()), std::move(edges)), std::move(map)};
}

/// |dT| / |T| for an induced forest T: edges leaving the set divided by its
/// size. Rejects vertex sets whose induced subgraph contains a cycle.
inline double forest_isoperimetric_bound(const Graph& g, const std::vector<int>& forest_vertices) {
    if (forest_vertices.empty()) throw NotAForest("empty vertex set");
    auto [sub, map] = induced_subgraph(g, forest_vertices);
    if (!is_forest(sub)) throw NotAForest();
    long boundary = 0;
    for (const Edge& e : g.edges()) {
        bool iu = map[e.u] >= 0;
        bool iv = map[e.v] >= 0;
        if (iu != iv) ++boundary;
    }
    return static_cast<double>(boundary) / sub.vertex_count();
}

/// Greedy search for a small forest-isoperimetric ratio: grows an induced
/// forest from every vertex, taking the locally best extension. Convenience
/// only; the exact h_forest is exponential.
inline std::pair<double, std::vector<int>> forest_isoperimetric_greedy(const Graph& g) {
    if (g.vertex_count() == 0) throw NotAForest("empty graph");
    auto ratio = [&](const std::vector<int>& set) {
        return forest_isoperimetric_bound(g, set);
    };
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_set;
    for (int r = 0; r < g.vertex_count(); ++r) {
        std::vector<int> set{r};
        std::vector<char> used(g.vertex_count(), 0);
        used[r] = 1;
        double cur = ratio(set);
        while (true) {
            int pick = -1;
            double pick_ratio = cur;
            for (int v = 0; v < g.vertex_count(); ++v) {
                if (used[v]) continue;
                std::vector<int> trial = set;
                trial.push_back(v);
                auto [sub, map] = induced_subgraph(g, trial);
                if (!is_forest(sub)) continue;
                double tr = ratio(trial);
                if (tr < pick_ratio - 1e-15) {
                    pick = v;
                    pick_ratio = tr;
                }
            }
            if (pick < 0) break;
            set.push_back(pick);
            used[pick] = 1;
            cur = pick_ratio;
        }
        if (cur < best) {
            best = cur;
            best_set = set;
        }
    }
    std::sort(best_set.begin(), best_set.end());
    return {best, best_set};
}

/// min over edges of (d_x + d_y)/2 - 1.
inline double edge_degree_bound(const Graph& g) {
    if (g.edge_count() == 0) throw NoEdges();
    double best = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.edges())
        best = std::min(best, (g.degree(e.u) + g.degree(e.v)) / 2.0 - 1.0);
    return best;
}

/// The triple (2|E|/|V|, 4 b1/|V|, d_max - 1).
inline std::array<double, 3> combinatorial_bounds(const Graph& g) {
    const double n = std::max(1, g.vertex_count());
    return {2.0 * g.edge_count() / n, 4.0 * betti_number(g) / n,
            static_cast<double>(max_degree(g)) - 1.0};
}

/// Subgraph upper bounds: (a) 4 b1(G0)/|V0| + avg out-degree,
/// (b) nu(G0) + max out-degree, (c) nu(G0) + avg out-degree when a
/// constant-modulus bottom eigenfunction exists. Returns the tightest
/// variant whose inputs are available.
inline double subgraph_bound(const Graph& g, const std::vector<int>& g0_vertices,
                             std::optional<double> nu_g0 = std::nullopt,
                             bool constant_modulus_eigfn = false) {
    if (g0_vertices.empty()) throw EmptySubgraph();
    auto [sub, map] = induced_subgraph(g, g0_vertices);
    const double n0 = sub.vertex_count();
    long out_total = 0;
    int out_max = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (map[v] < 0) continue;
        int dout = 0;
        for (int y : g.neighbors(v))
            if (map[y] < 0) ++dout;
        out_total += dout;
        out_max = std::max(out_max, dout);
    }
    double best = 4.0 * betti_number(sub) / n0 + out_total / n0;
    if (nu_g0.has_value()) {
        best = std::min(best, *nu_g0 + out_max);
        if (constant_modulus_eigfn) best = std::min(best, *nu_g0 + out_total / n0);
    }
    return best;
}

/// Alon-Boppana-type bound d_max - 2 sqrt(d_max-1) + (2 sqrt(d_max-1)-1)/k,
/// valid whenever girth >= 2k+1. With k unspecified the largest admissible
/// k is used; forests admit every k, giving the limit value.
inline double alon_boppana_bound(const Graph& g, std::optional<int> k = std::nullopt) {
    if (!is_connected(g)) throw DisconnectedGraph();
    const int dm = max_degree(g);
    if (dm < 2) throw BadSize("alon-boppana bound needs d_max >= 2");
    auto gi = girth(g);
    int kk;
    if (k.has_value()) {
        if (*k < 1) throw BadSize("k must be >= 1");
        if (gi.has_value() && *gi < 2 * *k + 1) throw GirthTooSmall();
        kk = *k;
    } else if (!gi.has_value()) {
        return dm - 2.0 * std::sqrt(dm - 1.0);  // forest: k -> infinity
    } else {
        kk = (*gi - 1) / 2;
    }
    return dm - 2.0 * std::sqrt(dm - 1.0) + (2.0 * std::sqrt(dm - 1.0) - 1.0) / kk;
}

/// (d - 2 sqrt(d-1), d - 1) for d-regular graphs, d >= 3.
inline std::pair<double, double> ramanujan_sandwich(const Graph& g) {
    if (!is_regular(g) || max_degree(g) < 3) throw NotRegular();
    const double d = max_degree(g);
    return {d - 2.0 * std::sqrt(d - 1.0), d - 1.0};
}

/// 1 / ((diam + 1) |V|) for connected graphs.
inline double diameter_volume_lower(const Graph& g) {
    return 1.0 / ((diameter(g) + 1.0) * g.vertex_count());
}

struct CurvatureDiameterBound {
    std::optional<double> value;
    std::string reason;  // failed precondition when not applicable
};

/// (1/8) / (diam+1)^2 for connected, non-bipartite, triangle-free graphs
/// satisfying CD(0, infinity).
inline CurvatureDiameterBound curvature_diameter_lower(const Graph& g) {
    if (!is_connected(g)) return {std::nullopt, "disconnected"};
    if (is_bipartite(g)) return {std::nullopt, "bipartite"};
    if (!is_triangle_free(g)) return {std::nullopt, "has triangles"};
    if (!cd_check_global(g, MagneticPotential::trivial(g), 0.0))
        return {std::nullopt, "CD(0,inf) fails"};
    double diam = diameter(g);
    return {0.125 / ((diam + 1.0) * (diam + 1.0)), ""};
}

struct BoundEntry {
    std::string name;
    bool upper = true;
    std::optional<double> value;  // nullopt when not applicable
    std::string reason;           // why not applicable
};

struct BoundReport {
    std::vector<BoundEntry> entries;
    double nu_estimate = 0.0;
    double lower_max = 0.0;
    double upper_min = std::numeric_limits<double>::infinity();
};

/// Optional context for bounds that need more than the graph itself.
struct BoundContext {
    std::optional<std::vector<int>> subgraph_vertices;
    std::optional<double> subgraph_nu;
    bool subgraph_constant_modulus = false;
    std::optional<std::vector<int>> forest_vertices;  // overrides the greedy search
};

namespace detail {

inline void report_entries(const Graph& g, const BoundContext& ctx,
                           std::vector<BoundEntry>& entries);

/// Combine per-component entries through nu(G U H) = min(nu(G), nu(H)):
/// an upper bound for any component bounds the union; a lower bound must
/// hold in every component.
inline void report_disconnected(const Graph& g, std::vector<BoundEntry>& entries) {
    auto comp = connected_components(g);
    int nc = 1 + *std::max_element(comp.begin(), comp.end());
    std::vector<std::vector<BoundEntry>> per(nc);
    for (int c = 0; c < nc; ++c) {
        std::vector<int> verts;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (comp[v] == c) verts.push_back(v);
        auto [sub, map] = induced_subgraph(g, verts);
        report_entries(sub, BoundContext{}, per[c]);
    }
    for (std::size_t i = 0; i < per[0].size(); ++i) {
        BoundEntry merged = per[0][i];
        for (int c = 1; c < nc; ++c) {
            const BoundEntry& e = per[c][i];
            if (merged.upper) {
                // min over components; inapplicable components are skipped
                if (e.value && (!merged.value || *e.value < *merged.value)) merged = e;
            } else if (!e.value) {
                merged.value = std::nullopt;
                merged.reason = e.reason;
            } else if (merged.value) {
                merged.value = std::min(*merged.value, *e.value);
            }
        }
        entries.push_back(std::move(merged));
    }
}

inline void report_entries(const Graph& g, const BoundContext& ctx,
                           std::vector<BoundEntry>& entries) {
    if (!is_connected(g) && g.vertex_count() > 1) {
        report_disconnected(g, entries);
        return;
    }
    auto push_upper = [&](const std::string& name, std::optional<double> v,
                          const std::string& reason = "") {
        entries.push_back({name, true, v, reason});
    };
    auto push_lower = [&](const std::string& name, std::optional<double> v,
                          const std::string& reason = "") {
        entries.push_back({name, false, v, reason});
    };

    if (ctx.forest_vertices)
        push_upper("forest_iso", forest_isoperimetric_bound(g, *ctx.forest_vertices));
    else
        push_upper("forest_iso", forest_isoperimetric_greedy(g).first);
    if (g.edge_count() > 0)
        push_upper("edge_degree", edge_degree_bound(g));
    else
        push_upper("edge_degree", std::nullopt, "no edges");
    auto comb = combinatorial_bounds(g);
    push_upper("avg_degree", comb[0]);
    push_upper("betti", comb[1]);
    if (g.edge_count() > 0)
        push_upper("dmax", comb[2]);
    else
        push_upper("dmax", std::nullopt, "no edges");

    if (ctx.subgraph_vertices) {
        auto [sub, map] = induced_subgraph(g, *ctx.subgraph_vertices);
        push_upper("subgraph_a", subgraph_bound(g, *ctx.subgraph_vertices));
        if (ctx.subgraph_nu) {
            long out_total = 0;
            int out_max = 0;
            for (int v = 0; v < g.vertex_count(); ++v) {
                if (map[v] < 0) continue;
                int dout = 0;
                for (int y : g.neighbors(v))
                    if (map[y] < 0) ++dout;
                out_total += dout;
                out_max = std::max(out_max, dout);
            }
            push_upper("subgraph_b", *ctx.subgraph_nu + out_max);
            if (ctx.subgraph_constant_modulus)
                push_upper("subgraph_c", *ctx.subgraph_nu + static_cast<double>(out_total) /
                                             sub.vertex_count());
            else
                push_upper("subgraph_c", std::nullopt, "no constant-modulus eigenfunction");
        } else {
            push_upper("subgraph_b", std::nullopt, "nu(G0) not supplied");
            push_upper("subgraph_c", std::nullopt, "nu(G0) not supplied");
        }
    } else {
        push_upper("subgraph_a", std::nullopt, "no subgraph supplied");
        push_upper("subgraph_b", std::nullopt, "no subgraph supplied");
        push_upper("subgraph_c", std::nullopt, "no subgraph supplied");
    }

    if (is_connected(g) && max_degree(g) >= 2)
        push_upper("alon_boppana", alon_boppana_bound(g));
    else
        push_upper("alon_boppana", std::nullopt, "needs connected graph with d_max >= 2");

    if (is_regular(g) && max_degree(g) >= 3) {
        auto [lo, hi] = ramanujan_sandwich(g);
        push_lower("ramanujan_lower", lo);
        push_upper("ramanujan_upper", hi);
    } else {
        push_lower("ramanujan_lower", std::nullopt, "not d-regular with d >= 3");
        push_upper("ramanujan_upper", std::nullopt, "not d-regular with d >= 3");
    }

    if (is_connected(g) && betti_number(g) >= 1)
        push_lower("diam_vol", diameter_volume_lower(g));
    else
        push_lower("diam_vol", std::nullopt,
                   is_connected(g) ? "forest: no unbalanced signature exists" : "disconnected");

    CurvatureDiameterBound cd = curvature_diameter_lower(g);
    push_lower("curvature_diam", cd.value, cd.reason);
}

} // namespace detail

/// Evaluate every applicable bound and check that the estimate sits inside
/// the bracket. A violation beyond 1e-7 signals an implementation or solver
/// bug and is raised as an error.
inline BoundReport bound_report(const Graph& g, const NuEstimate& est,
                                const BoundContext& ctx = {}) {
    BoundReport report;
    report.nu_estimate = est.value;
    detail::report_entries(g, ctx, report.entries);
    report.lower_max = 0.0;  // nu >= 0 always
    report.upper_min = std::numeric_limits<double>::infinity();
    for (const BoundEntry& e : report.entries) {
        if (!e.value) continue;
        if (e.upper)
            report.upper_min = std::min(report.upper_min, *e.value);
        else
            report.lower_max = std::max(report.lower_max, *e.value);
    }
    if (est.value > report.upper_min + 1e-7 || est.value < report.lower_max - 1e-7)
        throw BoundViolation("estimate " + std::to_string(est.value) + " outside [" +
                             std::to_string(report.lower_max) + ", " +
                             std::to_string(report.upper_min) + "]");
    return report;
}

} // namespace magnu

#endif // MAGNU_BOUNDS_HPP
