#ifndef MAGNU_CURVATURE_HPP
#define MAGNU_CURVATURE_HPP

#include <limits>
#include <string>
#include <vector>

#include "magnu/spectra.hpp"

namespace magnu {

/// Bakry-Emery forms localized at a vertex, assembled over the coordinates
/// of the 2-ball B_2(x). Only the incomplete 2-ball (no edges inside the
/// 2-sphere, no degrees of 2-sphere vertices) enters the matrices.
struct LocalForms {
    int center = 0;
    std::vector<int> ball;        // sorted vertices of B_2(x)
    Matrix gamma;                 // form of 2 Gamma^sigma(.,.)(x)
    Matrix gamma2;                // form of 2 Gamma_2^sigma(.,.)(x)
    Eigen::RowVectorXcd delta_row;  // f -> Delta^sigma f(x)
};

inline LocalForms local_forms(const Graph& g, const MagneticPotential& sigma, int x) {
    if (static_cast<int>(sigma.size()) != g.edge_count())
        throw SizeMismatch("local_forms: potential size does not match graph");
    if (x < 0 || x >= g.vertex_count()) throw VertexOutOfRange();
    LocalForms out;
    out.center = x;
    std::vector<int> ball{x};
    for (int y : g.neighbors(x)) ball.push_back(y);
    std::size_t b1_end = ball.size();
    for (std::size_t i = 1; i < b1_end; ++i)
        for (int z : g.neighbors(ball[i])) ball.push_back(z);
    std::sort(ball.begin(), ball.end());
    ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
    out.ball = ball;
    const int m = static_cast<int>(ball.size());
    auto pos = [&](int v) {
        return static_cast<int>(std::lower_bound(ball.begin(), ball.end(), v) - ball.begin());
    };

    // A(z): the 2 Gamma(.,.)(z) matrix, a sum of rank-one edge differences.
    auto edge_form = [&](int z) {
        Matrix a = Matrix::Zero(m, m);
        int pz = pos(z);
        for (int y : g.neighbors(z)) {
            int py = pos(y);
            std::complex<double> s = sigma.value(g.edge_index(z, y), z, y);
            // row r = e_z - s e_y; accumulate r^dagger r
            a(pz, pz) += 1.0;
            a(py, py) += std::norm(s);
            a(pz, py) += -s;
            a(py, pz) += -std::conj(s);
        }
        return a;
    };

    out.gamma = edge_form(x);

    // Magnetic Laplacian restricted to the incomplete 2-ball: rows for x and
    // its neighbors carry their true degrees; only edges meeting B_1(x) appear.
    Matrix lap = Matrix::Zero(m, m);
    {
        std::vector<char> inner(m, 0);
        inner[pos(x)] = 1;
        for (int y : g.neighbors(x)) inner[pos(y)] = 1;
        for (int i = 0; i < m; ++i)
            if (inner[i]) lap(i, i) = g.degree(ball[i]);
        for (int i = 0; i < m; ++i) {
            for (int y : g.neighbors(ball[i])) {
                int j = pos(y);
                if (j >= m || ball[j] != y) continue;  // neighbour outside the ball
                if (!inner[i] && !inner[j]) continue;  // spherical edge, not in the incomplete ball
                std::complex<double> s = sigma.value(g.edge_index(ball[i], y), ball[i], y);
                lap(i, j) = -s;
            }
        }
    }

    // 4 Gamma_2 = -sum_{y ~ x} (A(x) - A(y)) + L A(x) + A(x) L
    Matrix m2 = Matrix::Zero(m, m);
    for (int y : g.neighbors(x)) m2 += edge_form(y) - out.gamma;
    m2 += lap * out.gamma + out.gamma * lap;
    out.gamma2 = 0.5 * m2;

    out.delta_row = Eigen::RowVectorXcd::Zero(m);
    out.delta_row(pos(x)) = static_cast<double>(g.degree(x));
    for (int y : g.neighbors(x))
        out.delta_row(pos(y)) = -sigma.value(g.edge_index(x, y), x, y);
    return out;
}

/// Curvature-dimension test CD^sigma(K, n) at a vertex: positive
/// semidefiniteness of Gamma_2 - K Gamma - (1/n) (Delta^sigma .)(x)^* (...)
/// on the 2-ball coordinates. Pass n = infinity to drop the dimension term.
inline bool cd_check(const Graph& g, const MagneticPotential& sigma, int x, double K,
                     double n = std::numeric_limits<double>::infinity()) {
    if (!(n > 0))
        throw BadSize("cd_check: dimension must be positive (or infinite)");
    LocalForms lf = local_forms(g, sigma, x);
    Matrix test = 0.5 * lf.gamma2 - 0.5 * K * lf.gamma;
    if (std::isfinite(n)) test -= (1.0 / n) * (lf.delta_row.adjoint() * lf.delta_row);
    Eigen::SelfAdjointEigenSolver<Matrix> es(test, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) >= -1e-9;
}

inline bool cd_check_global(const Graph& g, const MagneticPotential& sigma, double K,
                            double n = std::numeric_limits<double>::infinity()) {
    for (int x = 0; x < g.vertex_count(); ++x)
        if (!cd_check(g, sigma, x, K, n)) return false;
    return true;
}

/// Largest K such that CD^sigma(K, n) holds at x, located by bisection to
/// width 1e-8. Returns +infinity when the vertex passes at arbitrarily
/// large K (e.g. isolated vertices).
inline double curvature_sup(const Graph& g, const MagneticPotential& sigma, int x,
                            double n = std::numeric_limits<double>::infinity()) {
    double hi = 4.0 * (g.degree(x) + 2.0);
    if (cd_check(g, sigma, x, hi, n)) {
        if (cd_check(g, sigma, x, 1e6, n)) return std::numeric_limits<double>::infinity();
        while (cd_check(g, sigma, x, hi, n)) hi *= 2.0;
    }
    double lo = -hi;
    while (!cd_check(g, sigma, x, lo, n)) lo *= 2.0;
    while (hi - lo > 1e-8) {
        double mid = 0.5 * (lo + hi);
        (cd_check(g, sigma, x, mid, n) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace magnu

#endif // MAGNU_CURVATURE_HPP
