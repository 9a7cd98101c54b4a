#ifndef MAGNU_GENERATORS_HPP
#define MAGNU_GENERATORS_HPP

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "magnu/graph.hpp"

namespace magnu {

/// Small deterministic RNG (splitmix64 core). Used wherever reproducibility
/// across platforms matters more than statistical niceties.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    int next_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

private:
    std::uint64_t state_;
};

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

inline Graph cycle_graph(int d) {
    if (d < 3) throw BadSize("cycle needs d >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < d; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(0, d - 1);
    return Graph(d, std::move(e));
}

inline Graph complete_graph(int d) {
    if (d < 1) throw BadSize("complete graph needs d >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) e.emplace_back(i, j);
    return Graph(d, std::move(e));
}

/// Wheel: rim cycle 0..d-1 plus hub vertex d joined to every rim vertex.
inline Graph wheel_graph(int d) {
    if (d < 3) throw BadSize("wheel needs rim d >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < d; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(0, d - 1);
    for (int i = 0; i < d; ++i) e.emplace_back(i, d);
    return Graph(d + 1, std::move(e));
}

/// Star on n vertices: center 0 joined to 1..n-1.
inline Graph star_graph(int n) {
    if (n < 1) throw BadSize("star needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(0, i);
    return Graph(n, std::move(e));
}

/// d-dimensional hypercube on 2^d vertices (bit-flip adjacency).
inline Graph hypercube_graph(int d) {
    if (d < 1 || d > 20) throw BadSize("hypercube dimension out of range");
    int n = 1 << d;
    std::vector<std::pair<int, int>> e;
    for (int x = 0; x < n; ++x)
        for (int b = 0; b < d; ++b) {
            int y = x ^ (1 << b);
            if (x < y) e.emplace_back(x, y);
        }
    return Graph(n, std::move(e));
}

/// Petersen graph (generalized Petersen GP(5,2)).
inline Graph petersen_graph() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);          // outer cycle
        e.emplace_back(i, i + 5);                // spokes
        e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return Graph(10, std::move(e));
}

/// Cubic graph from LCF notation: Hamiltonian cycle 0..n-1 plus chords
/// i -> i + pattern[i % pattern.size()] (mod n).
inline Graph lcf_graph(int n, const std::vector<int>& pattern) {
    std::set<std::pair<int, int>> chords;
    for (int i = 0; i < n; ++i) {
        int j = ((i + pattern[i % static_cast<int>(pattern.size())]) % n + n) % n;
        chords.insert({std::min(i, j), std::max(i, j)});
    }
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        e.emplace_back(std::min(i, j), std::max(i, j));
    }
    e.insert(e.end(), chords.begin(), chords.end());
    return Graph(n, std::move(e));
}

/// Heawood graph: 3-regular, 14 vertices, girth 6.
inline Graph heawood_graph() { return lcf_graph(14, {5, -5}); }

/// Moebius-Kantor graph: 3-regular, 16 vertices, girth 6.
inline Graph moebius_kantor_graph() { return lcf_graph(16, {5, -5}); }

/// McGee graph: 3-regular, 24 vertices, girth 7.
inline Graph mcgee_graph() { return lcf_graph(24, {12, 7, -7}); }

/// Uniform random labelled tree via a random Pruefer sequence.
inline Graph random_tree(int n, Rng& rng) {
    if (n < 1) throw BadSize("tree needs n >= 1");
    if (n == 1) return Graph(1, {});
    if (n == 2) return Graph(2, {{0, 1}});
    std::vector<int> pruefer(n - 2);
    for (int& p : pruefer) p = rng.next_int(n);
    std::vector<int> deg(n, 1);
    for (int p : pruefer) ++deg[p];
    std::vector<std::pair<int, int>> e;
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.insert(v);
    for (int p : pruefer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        e.emplace_back(leaf, p);
        if (--deg[p] == 1) leaves.insert(p);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    e.emplace_back(a, b);
    return Graph(n, std::move(e));
}

/// Connected graph with exactly the requested first Betti number:
/// random spanning tree plus `b1` distinct random chords.
inline Graph random_connected_graph(int n, int b1, Rng& rng) {
    Graph tree = random_tree(n, rng);
    long long max_extra = static_cast<long long>(n) * (n - 1) / 2 - (n - 1);
    if (b1 < 0 || b1 > max_extra) throw BadSize("requested b1 infeasible");
    std::set<std::pair<int, int>> have;
    for (const Edge& e : tree.edges()) have.insert({e.u, e.v});
    std::vector<std::pair<int, int>> all(have.begin(), have.end());
    int added = 0;
    while (added < b1) {
        int a = rng.next_int(n);
        int b = rng.next_int(n);
        if (a == b) continue;
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        if (have.contains(key)) continue;
        have.insert(key);
        all.push_back(key);
        ++added;
    }
    return Graph(n, std::move(all));
}

} // namespace magnu

#endif // MAGNU_GENERATORS_HPP
