#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "magnu/generators.hpp"
#include "magnu/spectra.hpp"
#include "test_fixtures.hpp"

using namespace magnu;
using std::numbers::pi;

namespace {

MagneticPotential random_potential(const Graph& g, Rng& rng) {
    std::vector<double> a(g.edge_count());
    for (double& x : a) x = two_pi * rng.next_double();
    return MagneticPotential(std::move(a));
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("magnetic laplacian assembly") {
    SECTION("K2 trivial") {
        Graph k2(2, {{0, 1}});
        Matrix m = magnetic_laplacian(k2, MagneticPotential::trivial(k2));
        REQUIRE(m(0, 0) == std::complex<double>(1, 0));
        REQUIRE(m(0, 1) == std::complex<double>(-1, 0));
        REQUIRE(m(1, 0) == std::complex<double>(-1, 0));
        REQUIRE(m(1, 1) == std::complex<double>(1, 0));
    }
    SECTION("W6 hub-first trivial matches the integer matrix") {
        Graph w6 = fixtures::w6_hub_first();
        Matrix m = magnetic_laplacian(w6, MagneticPotential::trivial(w6));
        Eigen::MatrixXd expected(7, 7);
        expected << 6, -1, -1, -1, -1, -1, -1,
                    -1, 3, -1, 0, 0, 0, -1,
                    -1, -1, 3, -1, 0, 0, 0,
                    -1, 0, -1, 3, -1, 0, 0,
                    -1, 0, 0, -1, 3, -1, 0,
                    -1, 0, 0, 0, -1, 3, -1,
                    -1, -1, 0, 0, 0, -1, 3;
        REQUIRE((m - expected.cast<std::complex<double>>()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SECTION("signed laplacian of the W6-cospectral mate") {
        auto [g, sig] = fixtures::ghat_with_signature();
        Matrix m = magnetic_laplacian(g, sig);
        Eigen::MatrixXd expected(7, 7);
        expected << 5, 0, -1, -1, -1, 1, 1,
                    0, 5, 1, 1, -1, -1, -1,
                    -1, 1, 3, 1, 0, 0, 0,
                    -1, 1, 1, 3, 0, 0, 0,
                    -1, -1, 0, 0, 2, 0, 0,
                    1, -1, 0, 0, 0, 3, 1,
                    1, -1, 0, 0, 0, 1, 3;
        REQUIRE((m - expected.cast<std::complex<double>>()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("size mismatch throws") {
        Graph c3 = cycle_graph(3);
        REQUIRE_THROWS_AS(magnetic_laplacian(c3, MagneticPotential({0.0})), SizeMismatch);
    }
}

TEST_CASE("spectrum") {
    SECTION("K2 trivial: {0, 2}") {
        Graph k2(2, {{0, 1}});
        Spectrum s = spectrum(magnetic_laplacian(k2, MagneticPotential::trivial(k2)));
        REQUIRE(s.eigenvalues(0) == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(s.eigenvalues(1) == Catch::Approx(2.0).margin(1e-12));
    }
    SECTION("W6 standard spectrum {0,2,2,4,4,5,7}") {
        Graph w6 = fixtures::w6_hub_first();
        Spectrum s = spectrum(magnetic_laplacian(w6, MagneticPotential::trivial(w6)));
        std::vector<double> expected{0, 2, 2, 4, 4, 5, 7};
        for (int i = 0; i < 7; ++i)
            REQUIRE(s.eigenvalues(i) == Catch::Approx(expected[i]).margin(1e-9));
    }
    SECTION("signed spectrum of the cospectral mate") {
        auto [g, sig] = fixtures::ghat_with_signature();
        Spectrum s = spectrum(magnetic_laplacian(g, sig));
        std::vector<double> expected = sorted({(7 - std::sqrt(17.0)) / 2,
                                               (9 - std::sqrt(33.0)) / 2, 2.0, 2.0, 4.0,
                                               (7 + std::sqrt(17.0)) / 2,
                                               (9 + std::sqrt(33.0)) / 2});
        for (int i = 0; i < 7; ++i)
            REQUIRE(s.eigenvalues(i) == Catch::Approx(expected[i]).margin(1e-9));
    }
    SECTION("non-hermitian input throws") {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 1) = 1.0;
        REQUIRE_THROWS_AS(spectrum(m), NotHermitian);
    }
    SECTION("residuals and orthonormality") {
        Rng rng(8);
        Graph g = random_connected_graph(9, 3, rng);
        Matrix a = magnetic_laplacian(g, random_potential(g, rng));
        Spectrum s = spectrum(a);
        double anorm = a.norm();
        for (int i = 0; i < a.rows(); ++i) {
            double res = (a * s.eigenvectors.col(i) - s.eigenvalues(i) * s.eigenvectors.col(i)).norm();
            REQUIRE(res <= 1e-9 * std::max(1.0, anorm));
        }
        Matrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
        REQUIRE((gram - Matrix::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("lambda1") {
    SECTION("forests have lambda1 = 0 for every potential") {
        Rng rng(12);
        for (int trial = 0; trial < 5; ++trial) {
            Graph t = random_tree(2 + rng.next_int(10), rng);
            REQUIRE(lambda1(t, random_potential(t, rng)) == Catch::Approx(0.0).margin(1e-10));
        }
    }
    SECTION("cycle with edge angle t: 2 - 2 cos(t/d)") {
        const int d = 7;
        Graph cd = cycle_graph(d);
        for (double t : {0.3, 1.2, 2.8, pi}) {
            std::vector<double> a(cd.edge_count(), 0.0);
            a[cd.edge_index(d - 2, d - 1)] = t;
            REQUIRE(lambda1(cd, MagneticPotential(std::move(a))) ==
                    Catch::Approx(2 - 2 * std::cos(t / d)).margin(1e-10));
        }
    }
    SECTION("triangle with dangling edge at t = pi") {
        Graph g = fixtures::triangle_with_dangling_edge();
        double v = lambda1(g, fixtures::triangle_dangling_potential(pi));
        REQUIRE(v == Catch::Approx((5 - std::sqrt(17.0)) / 2).margin(1e-10));
        REQUIRE(v == Catch::Approx(0.438447187).margin(1e-8));
    }
}

TEST_CASE("rayleigh quotient") {
    SECTION("lambda1 eigenvector realizes lambda1") {
        Rng rng(4);
        Graph g = random_connected_graph(8, 2, rng);
        MagneticPotential sigma = random_potential(g, rng);
        Spectrum s = spectrum(magnetic_laplacian(g, sigma));
        REQUIRE(rayleigh_quotient(g, sigma, s.eigenvectors.col(0)) ==
                Catch::Approx(s.eigenvalues(0)).margin(1e-9));
    }
    SECTION("edge indicator on K_d gives d - 2") {
        const int d = 6;
        Graph kd = complete_graph(d);
        Rng rng(5);
        MagneticPotential sigma = random_potential(kd, rng);
        Vector f = Vector::Zero(d);
        f(0) = 1.0;
        f(1) = 1.0 / sigma.value(kd.edge_index(0, 1), 0, 1);
        REQUIRE(rayleigh_quotient(kd, sigma, f) == Catch::Approx(d - 2.0).margin(1e-12));
    }
    SECTION("constant vector with trivial potential gives 0") {
        Graph g = wheel_graph(5);
        Vector f = Vector::Ones(g.vertex_count());
        REQUIRE(rayleigh_quotient(g, MagneticPotential::trivial(g), f) ==
                Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("zero vector throws") {
        Graph c3 = cycle_graph(3);
        REQUIRE_THROWS_AS(
            rayleigh_quotient(c3, MagneticPotential::trivial(c3), Vector::Zero(3)),
            ZeroVector);
    }
    SECTION("never below lambda1") {
        Rng rng(6);
        Graph g = random_connected_graph(7, 2, rng);
        MagneticPotential sigma = random_potential(g, rng);
        double l1 = lambda1(g, sigma);
        for (int trial = 0; trial < 10; ++trial) {
            Vector f(g.vertex_count());
            for (int i = 0; i < f.size(); ++i)
                f(i) = std::complex<double>(rng.next_double() - 0.5, rng.next_double() - 0.5);
            REQUIRE(rayleigh_quotient(g, sigma, f) >= l1 - 1e-9);
        }
    }
}

TEST_CASE("multiplicity") {
    SECTION("C5 at t = pi has lambda1-multiplicity 2") {
        Graph c5 = cycle_graph(5);
        SpanningForest f = spanning_forest(c5);
        Spectrum s = spectrum(magnetic_laplacian(c5, expand(c5, {f, {pi}})));
        REQUIRE(multiplicity(s, s.eigenvalues(0), 1e-8) == 2);
    }
    SECTION("K5 anti-balanced: lambda1 = 3 with the full orthogonal complement") {
        Graph k5 = complete_graph(5);
        Spectrum s = spectrum(magnetic_laplacian(k5, MagneticPotential::anti_balanced(k5)));
        REQUIRE(s.eigenvalues(0) == Catch::Approx(3.0).margin(1e-10));
        // spectrum is {d-2 repeated d-1 times, 2(d-1)}
        REQUIRE(multiplicity(s, 3.0, 1e-8) == 4);
        REQUIRE(s.eigenvalues(4) == Catch::Approx(8.0).margin(1e-10));
    }
    SECTION("triangle with dangling edge at t = pi: multiplicity 1") {
        Graph g = fixtures::triangle_with_dangling_edge();
        Spectrum s = spectrum(magnetic_laplacian(g, fixtures::triangle_dangling_potential(pi)));
        REQUIRE(multiplicity(s, s.eigenvalues(0), 1e-8) == 1);
    }
    SECTION("bad tolerance throws") {
        Graph c3 = cycle_graph(3);
        Spectrum s = spectrum(magnetic_laplacian(c3, MagneticPotential::trivial(c3)));
        REQUIRE_THROWS_AS(multiplicity(s, 0.0, 0.0), BadSize);
    }
}

TEST_CASE("lambda1 gradient") {
    SECTION("C5 at t = pi/2 matches central differences") {
        Graph c5 = cycle_graph(5);
        SpanningForest f = spanning_forest(c5);
        HolonomyCoordinates coords{f, {pi / 2}};
        auto grad = lambda1_gradient(c5, coords);
        REQUIRE(grad.has_value());
        const double h = 1e-5;
        double up = lambda1(c5, expand(c5, {f, {pi / 2 + h}}));
        double dn = lambda1(c5, expand(c5, {f, {pi / 2 - h}}));
        REQUIRE((*grad)(0) == Catch::Approx((up - dn) / (2 * h)).margin(1e-6));
    }
    SECTION("C5 at t = pi is a crossing: not differentiable") {
        Graph c5 = cycle_graph(5);
        SpanningForest f = spanning_forest(c5);
        REQUIRE(!lambda1_gradient(c5, {f, {pi}}).has_value());
    }
    SECTION("forest: empty gradient") {
        Graph p4 = path_graph(4);
        SpanningForest f = spanning_forest(p4);
        auto grad = lambda1_gradient(p4, {f, {}});
        REQUIRE(grad.has_value());
        REQUIRE(grad->size() == 0);
    }
    SECTION("random graphs: analytic gradient vs central differences") {
        Rng rng(21);
        int checked = 0;
        while (checked < 10) {
            Graph g = random_connected_graph(4 + rng.next_int(6), 1 + rng.next_int(3), rng);
            SpanningForest f = spanning_forest(g);
            std::vector<double> phis(f.cotree_edges.size());
            for (double& p : phis) p = two_pi * rng.next_double();
            HolonomyCoordinates coords{f, phis};
            auto grad = lambda1_gradient(g, coords);
            if (!grad.has_value()) continue;
            const double h = 1e-5;
            for (std::size_t i = 0; i < phis.size(); ++i) {
                auto up = phis, dn = phis;
                up[i] += h;
                dn[i] -= h;
                double fd = (lambda1(g, expand(g, {f, up})) - lambda1(g, expand(g, {f, dn}))) / (2 * h);
                REQUIRE((*grad)(i) == Catch::Approx(fd).margin(1e-6 * std::max(1.0, std::abs(fd))));
            }
            ++checked;
        }
    }
}

TEST_CASE("positive semidefiniteness on random instances") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_connected_graph(5 + rng.next_int(6), rng.next_int(4), rng);
        MagneticPotential sigma = random_potential(g, rng);
        REQUIRE(smallest_eigenvalue(magnetic_laplacian(g, sigma)) >= -1e-9);
    }
}

TEST_CASE("trivial potential: lambda1 = 0 with multiplicity = #components") {
    Rng rng(78);
    Graph a = random_connected_graph(5, 1, rng);
    Graph b = random_connected_graph(4, 1, rng);
    std::vector<std::pair<int, int>> e;
    for (const Edge& x : a.edges()) e.emplace_back(x.u, x.v);
    for (const Edge& x : b.edges()) e.emplace_back(x.u + 5, x.v + 5);
    Graph g(9, std::move(e));
    Spectrum s = spectrum(magnetic_laplacian(g, MagneticPotential::trivial(g)));
    REQUIRE(s.eigenvalues(0) >= -1e-10);
    REQUIRE(multiplicity(s, 0.0, 1e-8) == 2);
}

TEST_CASE("cycle eigencurves") {
    SECTION("t = 0 gives the standard cycle spectrum") {
        const int d = 6;
        std::vector<double> t{0.0};
        Eigen::MatrixXd mu = cycle_eigencurves(d, t);
        Graph cd = cycle_graph(d);
        Eigen::VectorXd ev = eigenvalues_only(magnetic_laplacian(cd, MagneticPotential::trivial(cd)));
        std::vector<double> pred(mu.cols());
        for (int j = 0; j < d; ++j) pred[j] = mu(0, j);
        pred = sorted(pred);
        for (int j = 0; j < d; ++j) REQUIRE(ev(j) == Catch::Approx(pred[j]).margin(1e-9));
    }
    SECTION("at t = pi the j = 0 and j = d-1 branches touch") {
        const int d = 9;
        std::vector<double> t{pi};
        Eigen::MatrixXd mu = cycle_eigencurves(d, t);
        REQUIRE(mu(0, 0) == Catch::Approx(mu(0, d - 1)).margin(1e-12));
        for (int j = 1; j < d - 1; ++j) REQUIRE(mu(0, j) > mu(0, 0) + 1e-9);
    }
    SECTION("d = 5, t = pi/2 matches the eigensolver as a multiset") {
        const int d = 5;
        std::vector<double> ts{pi / 2};
        Eigen::MatrixXd mu = cycle_eigencurves(d, ts);
        Graph cd = cycle_graph(d);
        std::vector<double> a(cd.edge_count(), 0.0);
        a[cd.edge_index(d - 2, d - 1)] = pi / 2;
        Eigen::VectorXd ev = eigenvalues_only(magnetic_laplacian(cd, MagneticPotential(std::move(a))));
        std::vector<double> pred(d);
        for (int j = 0; j < d; ++j) pred[j] = mu(0, j);
        pred = sorted(pred);
        for (int j = 0; j < d; ++j) REQUIRE(ev(j) == Catch::Approx(pred[j]).margin(1e-9));
    }
    SECTION("explicit cycle eigenvectors are pairwise orthogonal") {
        // f_j(ell) = (e^{it/d} xi_d^j)^ell for ell = 0..d-2, last entry
        // e^{-it/d} xi_d^{-j}.
        const int d = 6;
        const double t = 1.1;
        using C = std::complex<double>;
        auto f = [&](int j) {
            Eigen::VectorXcd v(d);
            C base = std::polar(1.0, t / d + two_pi * j / d);
            for (int l = 0; l <= d - 2; ++l) v(l) = std::pow(base, l);
            v(d - 1) = std::polar(1.0, -(t / d + two_pi * j / d));
            return v;
        };
        for (int j1 = 0; j1 < d; ++j1)
            for (int j2 = j1 + 1; j2 < d; ++j2)
                REQUIRE(std::abs(f(j1).dot(f(j2))) < 1e-10);
    }
}
