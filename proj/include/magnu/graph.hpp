#ifndef MAGNU_GRAPH_HPP
#define MAGNU_GRAPH_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "magnu/errors.hpp"

namespace magnu {

/// Undirected edge in canonical orientation (u < v).
struct Edge {
    int u = 0;
    int v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph. Edges are stored sorted
/// lexicographically with u < v, so equal graphs serialize identically.
class Graph {
public:
    Graph() = default;

    Graph(int n_vertices, std::vector<std::pair<int, int>> edge_pairs)
        : n_(n_vertices) {
        if (n_vertices < 0) throw BadSize("negative vertex count");
        edges_.reserve(edge_pairs.size());
        for (auto [a, b] : edge_pairs) {
            if (a == b) throw SelfLoop("self-loop at vertex " + std::to_string(a));
            if (a < 0 || b < 0 || a >= n_ || b >= n_)
                throw VertexOutOfRange("edge endpoint out of range");
            edges_.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw DuplicateEdge();
        adj_.assign(n_, {});
        for (const Edge& e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const int> neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(int a, int b) const {
        if (a == b) return false;
        const auto& nb = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
        int target = adj_[a].size() <= adj_[b].size() ? b : a;
        return std::binary_search(nb.begin(), nb.end(), target);
    }

    /// Index of edge {a,b} in canonical order, or -1 if absent.
    int edge_index(int a, int b) const {
        Edge e{std::min(a, b), std::max(a, b)};
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || !(*it == e)) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

/// BFS spanning forest rooted at the smallest-index vertex of each component.
struct SpanningForest {
    std::vector<int> parent;        // -1 for roots
    std::vector<int> parent_edge;   // edge index towards parent, -1 for roots
    std::vector<int> bfs_order;     // visitation order
    std::vector<int> roots;         // one per component, ascending
    std::vector<int> tree_edges;    // edge indices, ascending
    std::vector<int> cotree_edges;  // edge indices, ascending (size b1)
    std::vector<char> in_tree;      // per edge index

    friend bool operator==(const SpanningForest&, const SpanningForest&) = default;
};

inline SpanningForest spanning_forest(const Graph& g) {
    const int n = g.vertex_count();
    SpanningForest f;
    f.parent.assign(n, -1);
    f.parent_edge.assign(n, -1);
    f.in_tree.assign(g.edge_count(), 0);
    std::vector<char> seen(n, 0);
    for (int root = 0; root < n; ++root) {
        if (seen[root]) continue;
        f.roots.push_back(root);
        seen[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            f.bfs_order.push_back(x);
            for (int y : g.neighbors(x)) {
                if (seen[y]) continue;
                seen[y] = 1;
                f.parent[y] = x;
                int ei = g.edge_index(x, y);
                f.parent_edge[y] = ei;
                f.in_tree[ei] = 1;
                q.push(y);
            }
        }
    }
    for (int ei = 0; ei < g.edge_count(); ++ei)
        (f.in_tree[ei] ? f.tree_edges : f.cotree_edges).push_back(ei);
    return f;
}

inline std::vector<int> connected_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = c;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : g.neighbors(x))
                if (comp[y] < 0) {
                    comp[y] = c;
                    q.push(y);
                }
        }
        ++c;
    }
    return comp;
}

inline int component_count(const Graph& g) {
    auto comp = connected_components(g);
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

inline bool is_connected(const Graph& g) {
    return g.vertex_count() <= 1 || component_count(g) == 1;
}

/// b1 = |E| - |V| + #components.
inline int betti_number(const Graph& g) {
    return g.edge_count() - g.vertex_count() + component_count(g);
}

inline bool is_forest(const Graph& g) { return betti_number(g) == 0; }

inline bool is_tree(const Graph& g) {
    return g.vertex_count() >= 1 && is_forest(g) && component_count(g) == 1;
}

/// Single-source shortest path distances (hop counts), -1 if unreachable.
inline std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> dist(g.vertex_count(), -1);
    dist[source] = 0;
    std::queue<int> q;
    q.push(source);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : g.neighbors(x))
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
    }
    return dist;
}

/// Length of a shortest cycle; nullopt for forests.
inline std::optional<int> girth(const Graph& g) {
    const int n = g.vertex_count();
    int best = std::numeric_limits<int>::max();
    // BFS from every vertex; a non-tree edge at depths (dx, dy) closes a
    // cycle of length dx + dy + 1 through the root.
    std::vector<int> dist(n), par(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(par.begin(), par.end(), -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            if (2 * dist[x] >= best) continue;
            for (int y : g.neighbors(x)) {
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    par[y] = x;
                    q.push(y);
                } else if (y != par[x]) {
                    best = std::min(best, dist[x] + dist[y] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

/// Max over vertex pairs of shortest-path distance. Throws on disconnected input.
inline int diameter(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) throw BadSize("diameter of empty graph");
    int diam = 0;
    for (int s = 0; s < n; ++s) {
        auto dist = bfs_distances(g, s);
        for (int d : dist) {
            if (d < 0) throw DisconnectedGraph();
            diam = std::max(diam, d);
        }
    }
    return diam;
}

inline std::vector<int> degrees(const Graph& g) {
    std::vector<int> d(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) d[v] = g.degree(v);
    return d;
}

inline int max_degree(const Graph& g) {
    int m = 0;
    for (int v = 0; v < g.vertex_count(); ++v) m = std::max(m, g.degree(v));
    return m;
}

inline int min_degree(const Graph& g) {
    if (g.vertex_count() == 0) return 0;
    int m = std::numeric_limits<int>::max();
    for (int v = 0; v < g.vertex_count(); ++v) m = std::min(m, g.degree(v));
    return m;
}

inline bool is_regular(const Graph& g) {
    return g.vertex_count() == 0 || max_degree(g) == min_degree(g);
}

/// 2-coloring BFS.
inline bool is_bipartite(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : g.neighbors(x)) {
                if (color[y] < 0) {
                    color[y] = 1 - color[x];
                    q.push(y);
                } else if (color[y] == color[x]) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Adjacency-intersection test over edges.
inline bool is_triangle_free(const Graph& g) {
    for (const Edge& e : g.edges()) {
        auto nu = g.neighbors(e.u);
        auto nv = g.neighbors(e.v);
        // both sorted
        auto iu = nu.begin();
        auto iv = nv.begin();
        while (iu != nu.end() && iv != nv.end()) {
            if (*iu == *iv) return false;
            if (*iu < *iv) ++iu; else ++iv;
        }
    }
    return true;
}

inline bool is_complete(const Graph& g) {
    long long n = g.vertex_count();
    return g.edge_count() == n * (n - 1) / 2;
}

/// Summary bundle used by reports.
struct DegreeSummary {
    std::vector<int> degrees;
    int d_max = 0;
    int d_min = 0;
    bool regular = true;
    bool bipartite = true;
    bool triangle_free = true;
    int n_components = 0;
};

inline DegreeSummary degree_summary(const Graph& g) {
    DegreeSummary s;
    s.degrees = degrees(g);
    s.d_max = max_degree(g);
    s.d_min = min_degree(g);
    s.regular = is_regular(g);
    s.bipartite = is_bipartite(g);
    s.triangle_free = is_triangle_free(g);
    s.n_components = component_count(g);
    return s;
}

} // namespace magnu

#endif // MAGNU_GRAPH_HPP
