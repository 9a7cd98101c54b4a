#ifndef MAGNU_POTENTIAL_HPP
#define MAGNU_POTENTIAL_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "magnu/graph.hpp"

namespace magnu {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Normalize an angle into [0, 2*pi).
inline double normalize_angle(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0) t += two_pi;
    if (t == two_pi) t = 0.0;
    return t;
}

/// Distance to the nearest multiple of 2*pi.
inline double circle_distance(double theta) {
    double t = normalize_angle(theta);
    return std::min(t, two_pi - t);
}

/// U(1) magnetic potential: one angle per edge in canonical edge order.
/// The angle lives on the canonical orientation (u, v) with u < v; the
/// reversed orientation carries the negated angle, so sigma(y,x) equals
/// sigma(x,y)^{-1} by construction.
class MagneticPotential {
public:
    MagneticPotential() = default;

    explicit MagneticPotential(std::vector<double> angles) : angles_(std::move(angles)) {
        for (double& a : angles_) a = normalize_angle(a);
    }

    static MagneticPotential trivial(const Graph& g) {
        return MagneticPotential(std::vector<double>(g.edge_count(), 0.0));
    }

    /// All angles pi (the all minus-one signature).
    static MagneticPotential anti_balanced(const Graph& g) {
        return MagneticPotential(std::vector<double>(g.edge_count(), std::numbers::pi));
    }

    std::size_t size() const { return angles_.size(); }
    double angle(int edge_index) const { return angles_[edge_index]; }
    const std::vector<double>& angles() const { return angles_; }

    /// Angle on the oriented edge (from, to); negated off the canonical orientation.
    double oriented_angle(int edge_index, int from, int to) const {
        double a = angles_[edge_index];
        return from < to ? a : normalize_angle(-a);
    }

    std::complex<double> value(int edge_index, int from, int to) const {
        double a = oriented_angle(edge_index, from, to);
        return {std::cos(a), std::sin(a)};
    }

    /// True when every angle is within tol of {0, pi}.
    bool is_signature(double tol = 1e-12) const {
        for (double a : angles_)
            if (circle_distance(a) > tol && circle_distance(a - std::numbers::pi) > tol)
                return false;
        return true;
    }

    /// True when every angle is within tol of a multiple of 2*pi/k.
    bool is_sk_valued(int k, double tol = 1e-9) const {
        double step = two_pi / k;
        for (double a : angles_) {
            double r = std::fmod(a, step);
            if (std::min(r, step - r) > tol) return false;
        }
        return true;
    }

    friend bool operator==(const MagneticPotential&, const MagneticPotential&) = default;

private:
    std::vector<double> angles_;
};

/// Per-vertex phase, interpreted mod 2*pi.
struct GaugeFunction {
    std::vector<double> phases;
};

/// Gauge-reduced coordinates: the potential is trivial on the forest and
/// carries one angle per cotree edge (the fundamental-cycle holonomies).
struct HolonomyCoordinates {
    SpanningForest forest;
    std::vector<double> phis;  // one per cotree edge, in cotree order
};

/// sigma^tau(x,y) = tau(x)^{-1} sigma(x,y) tau(y): on the canonical edge
/// (u,v) the angle becomes theta - tau(u) + tau(v), mod 2*pi.
inline MagneticPotential gauge_transform(const Graph& g, const MagneticPotential& sigma,
                                         const GaugeFunction& tau) {
    if (static_cast<int>(sigma.size()) != g.edge_count() ||
        static_cast<int>(tau.phases.size()) != g.vertex_count())
        throw SizeMismatch("gauge_transform: sizes do not match graph");
    std::vector<double> out(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges()[ei];
        out[ei] = normalize_angle(sigma.angle(ei) - tau.phases[e.u] + tau.phases[e.v]);
    }
    return MagneticPotential(std::move(out));
}

/// Gauge the potential to be trivial on the BFS spanning forest. The gauge is
/// accumulated from each root along tree edges; the returned coordinates hold
/// the residual cotree angles.
inline std::pair<HolonomyCoordinates, GaugeFunction> gauge_reduce(const Graph& g,
                                                                  const MagneticPotential& sigma) {
    if (static_cast<int>(sigma.size()) != g.edge_count())
        throw SizeMismatch("gauge_reduce: potential size does not match graph");
    SpanningForest forest = spanning_forest(g);
    GaugeFunction tau{std::vector<double>(g.vertex_count(), 0.0)};
    // Want theta(p,c) - tau(p) + tau(c) = 0 for the oriented tree edge p -> c.
    for (int v : forest.bfs_order) {
        int p = forest.parent[v];
        if (p < 0) continue;
        int ei = forest.parent_edge[v];
        double theta_pc = sigma.oriented_angle(ei, p, v);
        tau.phases[v] = normalize_angle(tau.phases[p] - theta_pc);
    }
    MagneticPotential reduced = gauge_transform(g, sigma, tau);
    HolonomyCoordinates coords;
    coords.phis.reserve(forest.cotree_edges.size());
    for (int ei : forest.cotree_edges) coords.phis.push_back(reduced.angle(ei));
    coords.forest = std::move(forest);
    return {std::move(coords), std::move(tau)};
}

/// Expand holonomy coordinates to a full potential: zero on forest edges,
/// phis on cotree edges.
inline MagneticPotential expand(const Graph& g, const HolonomyCoordinates& coords) {
    if (coords.phis.size() != coords.forest.cotree_edges.size())
        throw SizeMismatch("expand: phi count does not match cotree");
    std::vector<double> angles(g.edge_count(), 0.0);
    for (std::size_t i = 0; i < coords.phis.size(); ++i)
        angles[coords.forest.cotree_edges[i]] = coords.phis[i];
    return MagneticPotential(std::move(angles));
}

/// Sum of oriented edge angles along a closed walk, mod 2*pi.
inline double holonomy(const Graph& g, const MagneticPotential& sigma,
                       std::span<const int> cycle) {
    if (static_cast<int>(sigma.size()) != g.edge_count())
        throw SizeMismatch("holonomy: potential size does not match graph");
    if (cycle.size() < 2 || cycle.front() != cycle.back())
        throw NotAWalk("holonomy: walk is not closed");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
        int a = cycle[i];
        int b = cycle[i + 1];
        int ei = g.edge_index(a, b);
        if (ei < 0) throw NotAWalk("holonomy: step is not an edge");
        total += sigma.oriented_angle(ei, a, b);
    }
    return normalize_angle(total);
}

/// Fundamental cycle of a cotree edge as a closed vertex walk u -> v -> ... -> u
/// through the forest.
inline std::vector<int> fundamental_cycle(const Graph& g, const SpanningForest& f,
                                          int cotree_edge_index) {
    const Edge& e = g.edges()[cotree_edge_index];
    // Paths from u and v up to their (common) root, then splice at the
    // lowest common ancestor.
    auto path_to_root = [&](int x) {
        std::vector<int> p{x};
        while (f.parent[p.back()] >= 0) p.push_back(f.parent[p.back()]);
        return p;
    };
    std::vector<int> pu = path_to_root(e.u);
    std::vector<int> pv = path_to_root(e.v);
    // strip the common suffix, keep the junction vertex once
    std::size_t iu = pu.size();
    std::size_t iv = pv.size();
    while (iu > 1 && iv > 1 && pu[iu - 2] == pv[iv - 2]) {
        --iu;
        --iv;
    }
    std::vector<int> walk;
    walk.push_back(e.v);
    walk.push_back(e.u);                                    // the cotree edge itself
    for (std::size_t i = 1; i < iu; ++i) walk.push_back(pu[i]);  // u up to junction
    for (std::size_t i = iv; i-- > 1;) walk.push_back(pv[i - 1]);  // junction down to v
    return walk;
}

/// Signature balance test: true iff every fundamental-cycle holonomy
/// vanishes mod 2*pi. Requires a {0, pi}-valued potential.
inline bool is_balanced(const Graph& g, const MagneticPotential& sigma, double tol = 1e-9) {
    if (static_cast<int>(sigma.size()) != g.edge_count())
        throw SizeMismatch("is_balanced: potential size does not match graph");
    if (!sigma.is_signature(1e-12)) throw NotASignature();
    auto [coords, tau] = gauge_reduce(g, sigma);
    for (double phi : coords.phis)
        if (circle_distance(phi) > tol) return false;
    return true;
}

/// sigma^j: each angle multiplied by j, mod 2*pi.
inline MagneticPotential potential_power(const MagneticPotential& sigma, int j) {
    std::vector<double> out(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i)
        out[i] = normalize_angle(sigma.angle(i) * j);
    return MagneticPotential(std::move(out));
}

} // namespace magnu

#endif // MAGNU_POTENTIAL_HPP
