#ifndef MAGNU_FAMILIES_HPP
#define MAGNU_FAMILIES_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "magnu/generators.hpp"
#include "magnu/spectra.hpp"

namespace magnu {

/// Exact family value: the graph, its magneto-spectral height, a potential
/// attaining it, and (where known in closed form) the full spectrum at the
/// maximizer.
struct FamilyResult {
    Graph graph;
    double nu_exact = 0.0;
    MagneticPotential maximal_potential;
    std::optional<std::vector<double>> predicted_spectrum;
    bool trivial = false;  // degenerate cases where the graph is a forest
};

/// nu(C_d) = 2 - 2 cos(pi/d), attained with holonomy pi around the cycle.
/// Spectrum at the maximizer: mu_j(pi) = 2 - 2 cos((2j+1) pi / d).
inline FamilyResult cycle_family(int d) {
    if (d < 3) throw BadSize("cycle family needs d >= 3");
    FamilyResult out;
    out.graph = cycle_graph(d);
    out.nu_exact = 2.0 - 2.0 * std::cos(std::numbers::pi / d);
    SpanningForest forest = spanning_forest(out.graph);
    out.maximal_potential = expand(out.graph, {forest, {std::numbers::pi}});
    std::vector<double> spec(d);
    for (int j = 0; j < d; ++j) spec[j] = 2.0 - 2.0 * std::cos((2 * j + 1) * std::numbers::pi / d);
    std::sort(spec.begin(), spec.end());
    out.predicted_spectrum = std::move(spec);
    return out;
}

/// nu(K_d) = d - 2, attained by the anti-balanced signature; the signed
/// Laplacian is (d-2) Id + J, so the spectrum is d-2 with multiplicity d-1
/// plus the simple eigenvalue 2(d-1).
inline FamilyResult complete_family(int d) {
    if (d < 2) throw BadSize("complete family needs d >= 2");
    FamilyResult out;
    out.graph = complete_graph(d);
    out.nu_exact = static_cast<double>(d - 2);
    out.maximal_potential = MagneticPotential::anti_balanced(out.graph);
    std::vector<double> spec(d, static_cast<double>(d - 2));
    spec[d - 1] = 2.0 * (d - 1);
    out.predicted_spectrum = std::move(spec);
    out.trivial = d == 2;
    return out;
}

/// The two eigenvalues of the wheel maximizer coupling the hub mode to the
/// k-th rim mode: roots of x^2 - (d + mu + 1) x + mu d with
/// mu = 2 - 2 cos((2k+1) pi / d), d = 2k or d = 2k+1.
inline std::pair<double, double> wheel_quadratic_roots(int d) {
    int k = d / 2;
    double mu = 2.0 - 2.0 * std::cos((2 * k + 1) * std::numbers::pi / d);
    double b = d + mu + 1.0;
    double disc = std::sqrt(b * b - 4.0 * mu * d);
    return {(b - disc) / 2.0, (b + disc) / 2.0};
}

/// nu(W_d) = nu(C_d) + 1 = 3 - 2 cos(pi/d). The maximizer is trivial on the
/// rim except angle pi on the edge (x_{d-2}, x_{d-1}) carrying the cycle
/// twist, with spiral phases on the spokes:
/// sigma(hub, x_j) = -exp(-i (2k+1) pi j / d) for j < d-1 and
/// -exp(+i (2k+1) pi / d) on the last spoke.
inline FamilyResult wheel_family(int d) {
    if (d < 3) throw BadSize("wheel family needs d >= 3");
    FamilyResult out;
    out.graph = wheel_graph(d);  // rim 0..d-1, hub d
    out.nu_exact = 3.0 - 2.0 * std::cos(std::numbers::pi / d);
    const int k = d / 2;
    const double swirl = (2 * k + 1) * std::numbers::pi / d;
    std::vector<double> angles(out.graph.edge_count(), 0.0);
    angles[out.graph.edge_index(d - 2, d - 1)] = std::numbers::pi;
    // canonical spoke orientation is (x_j, hub), conjugating the values above
    for (int j = 0; j <= d - 2; ++j)
        angles[out.graph.edge_index(j, d)] = normalize_angle(std::numbers::pi + swirl * j);
    angles[out.graph.edge_index(d - 1, d)] = normalize_angle(std::numbers::pi - swirl);
    out.maximal_potential = MagneticPotential(std::move(angles));

    std::vector<double> spec;
    spec.reserve(d + 1);
    for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        spec.push_back(3.0 - 2.0 * std::cos((2 * j + 1) * std::numbers::pi / d));
    }
    auto [lo, hi] = wheel_quadratic_roots(d);
    spec.push_back(lo);
    spec.push_back(hi);
    std::sort(spec.begin(), spec.end());
    out.predicted_spectrum = std::move(spec);
    return out;
}

namespace detail {

/// Rooted-tree data for the sixth-root construction.
struct RootedTree {
    int root = 0;
    std::vector<int> parent;                 // -1 at root
    std::vector<std::vector<int>> children;  // ascending order
};

inline RootedTree root_at_leaf(const Graph& tree) {
    const int n = tree.vertex_count();
    RootedTree rt;
    rt.root = -1;
    for (int v = 0; v < n; ++v)
        if (tree.degree(v) == 1) {
            rt.root = v;
            break;
        }
    if (rt.root < 0) throw NotATree("tree has no leaf");
    rt.parent.assign(n, -1);
    rt.children.assign(n, {});
    std::vector<int> stack{rt.root};
    std::vector<char> seen(n, 0);
    seen[rt.root] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : tree.neighbors(x)) {
            if (seen[y]) continue;
            seen[y] = 1;
            rt.parent[y] = x;
            rt.children[x].push_back(y);
            stack.push_back(y);
        }
    }
    for (auto& c : rt.children) std::sort(c.begin(), c.end());
    return rt;
}

/// Assigns sixth-root exponents b[v] (for the edge parent(v) -> v) so that
/// every vertex total a_v = sum_children xi^{b[child]} - xi^{b[v]} lands in
/// S6. Children are paired in index order with the even-indexed partner
/// scaled to cancel its predecessor; the closing exponent completes a zero
/// triple xi^l + xi^{l+2} + xi^{l+4} = 0.
struct SixthRootAssignment {
    std::vector<int> b_exp;          // exponent mod 6 per non-root vertex
    std::vector<int> a_exp;          // exponent of a_v per vertex
};

inline void scale_subtree(const RootedTree& rt, std::vector<int>& b_exp, int top, int s) {
    std::vector<int> stack{top};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        b_exp[x] = (b_exp[x] + s) % 6;
        for (int c : rt.children[x]) stack.push_back(c);
    }
}

/// Returns the exponent of the scaled-children total, or -1 when the terms
/// cancel to zero. Mutates b_exp by applying the pair scalings.
inline int assign_exponents(const RootedTree& rt, std::vector<int>& b_exp, int v) {
    const auto& kids = rt.children[v];
    for (int k : kids) {
        int total = assign_exponents(rt, b_exp, k);
        // choose b on the edge into k from its subtree total
        if (rt.children[k].empty()) {
            b_exp[k] = 0;
        } else if (total < 0) {
            b_exp[k] = 0;
        } else {
            b_exp[k] = (total + 5) % 6;
        }
    }
    // pair up the children terms so consecutive pairs cancel
    int m = static_cast<int>(kids.size());
    for (int i = 0; i + 1 < m; i += 2) {
        int s = (b_exp[kids[i]] + 3 - b_exp[kids[i + 1]] + 6) % 6;
        scale_subtree(rt, b_exp, kids[i + 1], s);
    }
    return m % 2 == 1 ? b_exp[kids[m - 1]] : -1;
}

} // namespace detail

/// Thm-style suspension construction: for any tree T the suspension has
/// nu = 1, attained by a potential trivial on the tree edges whose spoke
/// values a_j are sixth roots of unity summing to zero.
inline FamilyResult tree_suspension_potential(const Graph& tree) {
    if (!is_tree(tree)) throw NotATree();
    const int t = tree.vertex_count();
    FamilyResult out;
    // suspension: apex appended last
    {
        std::vector<std::pair<int, int>> e;
        for (const Edge& x : tree.edges()) e.emplace_back(x.u, x.v);
        for (int v = 0; v < t; ++v) e.emplace_back(v, t);
        out.graph = Graph(t + 1, std::move(e));
    }
    if (t == 1) {
        out.nu_exact = 0.0;
        out.maximal_potential = MagneticPotential::trivial(out.graph);
        out.trivial = true;
        return out;
    }
    detail::RootedTree rt = detail::root_at_leaf(tree);
    std::vector<int> b_exp(t, 0);
    int c0 = rt.children[rt.root].front();
    int total = detail::assign_exponents(rt, b_exp, c0);
    b_exp[c0] = rt.children[c0].empty() ? 0 : (total < 0 ? 0 : (total + 5) % 6);

    // a_v = sum over children of xi^{b} minus the parent-edge term
    std::vector<std::complex<double>> a(t, 0.0);
    auto xi = [](int e) {
        return std::complex<double>{std::cos(e * std::numbers::pi / 3),
                                    std::sin(e * std::numbers::pi / 3)};
    };
    for (int v = 0; v < t; ++v) {
        for (int k : rt.children[v]) a[v] += xi(b_exp[k]);
        if (v != rt.root) a[v] -= xi(b_exp[v]);
    }

    std::vector<double> angles(out.graph.edge_count(), 0.0);
    for (int v = 0; v < t; ++v) {
        // canonical spoke orientation (v, apex) carries conj(a_v)
        angles[out.graph.edge_index(v, t)] = normalize_angle(-std::arg(a[v]));
    }
    out.nu_exact = 1.0;
    out.maximal_potential = MagneticPotential(std::move(angles));
    return out;
}

/// Spoke values a_j of the suspension construction, for direct inspection.
inline std::vector<std::complex<double>> tree_suspension_spoke_values(const Graph& tree) {
    FamilyResult fr = tree_suspension_potential(tree);
    const int t = tree.vertex_count();
    std::vector<std::complex<double>> a(t);
    for (int v = 0; v < t; ++v) {
        double ang = fr.maximal_potential.angle(fr.graph.edge_index(v, t));
        a[v] = {std::cos(-ang), std::sin(-ang)};
    }
    return a;
}

} // namespace magnu

#endif // MAGNU_FAMILIES_HPP
