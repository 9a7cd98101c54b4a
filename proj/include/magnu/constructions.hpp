#ifndef MAGNU_CONSTRUCTIONS_HPP
#define MAGNU_CONSTRUCTIONS_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "magnu/spectra.hpp"

namespace magnu {

inline Graph add_edge(const Graph& g, int u, int v) {
    if (u == v) throw SelfLoop();
    if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        throw VertexOutOfRange();
    if (g.adjacent(u, v)) throw EdgeExists();
    std::vector<std::pair<int, int>> e;
    for (const Edge& x : g.edges()) e.emplace_back(x.u, x.v);
    e.emplace_back(u, v);
    return Graph(g.vertex_count(), std::move(e));
}

/// Disjoint union with h's indices shifted by |V(g)|, plus one bridge edge.
inline Graph bridge_join(const Graph& g, const Graph& h, int u_in_g, int v_in_h) {
    if (u_in_g < 0 || u_in_g >= g.vertex_count() || v_in_h < 0 || v_in_h >= h.vertex_count())
        throw VertexOutOfRange();
    std::vector<std::pair<int, int>> e;
    for (const Edge& x : g.edges()) e.emplace_back(x.u, x.v);
    const int shift = g.vertex_count();
    for (const Edge& x : h.edges()) e.emplace_back(x.u + shift, x.v + shift);
    e.emplace_back(u_in_g, v_in_h + shift);
    return Graph(g.vertex_count() + h.vertex_count(), std::move(e));
}

/// Split x into two non-adjacent vertices: x keeps the neighbours in part1,
/// a new vertex (appended last) takes the rest. Edge count is preserved.
inline Graph split_vertex(const Graph& g, int x, const std::vector<int>& part1) {
    if (x < 0 || x >= g.vertex_count()) throw VertexOutOfRange();
    std::vector<char> in_part(g.vertex_count(), 0);
    for (int v : part1) {
        if (!g.adjacent(x, v)) throw NotNeighborSubset();
        in_part[v] = 1;
    }
    const int x2 = g.vertex_count();
    std::vector<std::pair<int, int>> e;
    for (const Edge& ed : g.edges()) {
        if (ed.u != x && ed.v != x) {
            e.emplace_back(ed.u, ed.v);
            continue;
        }
        int other = ed.u == x ? ed.v : ed.u;
        e.emplace_back(in_part[other] ? x : x2, other);
    }
    return Graph(g.vertex_count() + 1, std::move(e));
}

/// Replace edge {u,v} by a length-two path through a new vertex.
inline Graph subdivide_edge(const Graph& g, int u, int v) {
    if (g.edge_index(u, v) < 0) throw NoSuchEdge();
    const int z = g.vertex_count();
    std::vector<std::pair<int, int>> e;
    for (const Edge& ed : g.edges())
        if (!(ed.u == std::min(u, v) && ed.v == std::max(u, v))) e.emplace_back(ed.u, ed.v);
    e.emplace_back(u, z);
    e.emplace_back(v, z);
    return Graph(g.vertex_count() + 1, std::move(e));
}

/// Cartesian product with the product potential: G-edges copy sigma_g on
/// every H-fiber and vice versa. Vertex (x, z) maps to x * |V(H)| + z.
inline std::pair<Graph, MagneticPotential> cartesian_product(const Graph& g,
                                                             const MagneticPotential& sg,
                                                             const Graph& h,
                                                             const MagneticPotential& sh) {
    if (static_cast<int>(sg.size()) != g.edge_count() ||
        static_cast<int>(sh.size()) != h.edge_count())
        throw SizeMismatch("cartesian_product: potential sizes do not match");
    const int m = h.vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (const Edge& e : g.edges())
        for (int z = 0; z < m; ++z) edges.emplace_back(e.u * m + z, e.v * m + z);
    for (int x = 0; x < g.vertex_count(); ++x)
        for (const Edge& e : h.edges()) edges.emplace_back(x * m + e.u, x * m + e.v);
    Graph product(g.vertex_count() * m, std::move(edges));
    std::vector<double> angles(product.edge_count(), 0.0);
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges()[ei];
        for (int z = 0; z < m; ++z)
            angles[product.edge_index(e.u * m + z, e.v * m + z)] = sg.angle(ei);
    }
    for (int x = 0; x < g.vertex_count(); ++x)
        for (int ei = 0; ei < h.edge_count(); ++ei) {
            const Edge& e = h.edges()[ei];
            angles[product.edge_index(x * m + e.u, x * m + e.v)] = sh.angle(ei);
        }
    return {std::move(product), MagneticPotential(std::move(angles))};
}

/// Apex vertex appended last and joined to every existing vertex.
inline Graph suspension(const Graph& g) {
    std::vector<std::pair<int, int>> e;
    for (const Edge& x : g.edges()) e.emplace_back(x.u, x.v);
    const int apex = g.vertex_count();
    for (int v = 0; v < apex; ++v) e.emplace_back(v, apex);
    return Graph(g.vertex_count() + 1, std::move(e));
}

/// Cyclic k-lift of an S_k-valued potential. Fiber of x is
/// {x*k, .., x*k + k-1}; an edge (x,y) with sigma = xi_k^l produces the
/// matching (x,j) ~ (y, j+l mod k).
struct LiftedGraph {
    Graph base;
    int k = 1;
    Graph lift;
    MagneticPotential sigma_base;
};

inline LiftedGraph cyclic_lift(const Graph& g, const MagneticPotential& sigma, int k) {
    if (k < 1) throw BadSize("lift needs k >= 1");
    if (static_cast<int>(sigma.size()) != g.edge_count())
        throw SizeMismatch("cyclic_lift: potential size does not match graph");
    const double step = two_pi / k;
    std::vector<double> snapped(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        double a = sigma.angle(ei);
        long ell = std::lround(a / step);
        if (std::abs(a - ell * step) > 1e-9) throw NotSkValued();
        snapped[ei] = normalize_angle(static_cast<double>(ell % k) * step);
    }
    LiftedGraph out;
    out.base = g;
    out.k = k;
    out.sigma_base = MagneticPotential(snapped);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()) * k);
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges()[ei];
        int ell = static_cast<int>(std::lround(snapped[ei] / step)) % k;
        for (int j = 0; j < k; ++j)
            edges.emplace_back(e.u * k + j, e.v * k + (j + ell) % k);
    }
    out.lift = Graph(g.vertex_count() * k, std::move(edges));
    return out;
}

/// The standard Laplacian spectrum of the lift must equal the multiset
/// union of the magnetic spectra of the potential's powers.
inline bool lift_spectrum_check(const LiftedGraph& lg, double tol = 1e-7) {
    Eigen::VectorXd lift_spec =
        eigenvalues_only(magnetic_laplacian(lg.lift, MagneticPotential::trivial(lg.lift)));
    std::vector<double> powers;
    powers.reserve(lift_spec.size());
    for (int j = 0; j < lg.k; ++j) {
        Eigen::VectorXd ev =
            eigenvalues_only(magnetic_laplacian(lg.base, potential_power(lg.sigma_base, j)));
        for (Eigen::Index i = 0; i < ev.size(); ++i) powers.push_back(ev(i));
    }
    std::sort(powers.begin(), powers.end());
    for (Eigen::Index i = 0; i < lift_spec.size(); ++i)
        if (std::abs(lift_spec(i) - powers[i]) > tol) return false;
    return true;
}

} // namespace magnu

#endif // MAGNU_CONSTRUCTIONS_HPP
