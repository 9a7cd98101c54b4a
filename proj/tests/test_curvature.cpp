#include <catch2/catch_amalgamated.hpp>
#include <numbers>

#include "magnu/constructions.hpp"
#include "magnu/curvature.hpp"
#include "magnu/generators.hpp"

using namespace magnu;
using std::numbers::pi;

namespace {

MagneticPotential random_potential(const Graph& g, Rng& rng) {
    std::vector<double> a(g.edge_count());
    for (double& x : a) x = two_pi * rng.next_double();
    return MagneticPotential(std::move(a));
}

} // namespace

TEST_CASE("local forms") {
    SECTION("isolated vertex: everything vanishes") {
        Graph g(3, {{1, 2}});
        LocalForms lf = local_forms(g, MagneticPotential::trivial(g), 0);
        REQUIRE(lf.gamma.cwiseAbs().maxCoeff() == 0.0);
        REQUIRE(lf.gamma2.cwiseAbs().maxCoeff() == 0.0);
        REQUIRE(lf.delta_row.cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("K2: 2 Gamma(f,f)(0) = |f(0) - f(1)|^2") {
        Graph k2(2, {{0, 1}});
        LocalForms lf = local_forms(k2, MagneticPotential::trivial(k2), 0);
        Vector f(2);
        f << std::complex<double>(1.2, 0.3), std::complex<double>(-0.4, 1.0);
        std::complex<double> q = (f.adjoint() * lf.gamma * f)(0);
        REQUIRE(q.real() == Catch::Approx(std::norm(f(0) - f(1))).margin(1e-12));
        REQUIRE(std::abs(q.imag()) < 1e-12);
    }
    SECTION("C5 center 0: form value at the indicator is the degree") {
        Graph c5 = cycle_graph(5);
        LocalForms lf = local_forms(c5, MagneticPotential::trivial(c5), 0);
        int p0 = static_cast<int>(std::lower_bound(lf.ball.begin(), lf.ball.end(), 0) -
                                  lf.ball.begin());
        Vector f = Vector::Zero(lf.ball.size());
        f(p0) = 1.0;
        std::complex<double> q = (f.adjoint() * lf.gamma * f)(0);
        REQUIRE(q.real() == Catch::Approx(2.0).margin(1e-12));
    }
    SECTION("gamma is Hermitian PSD, gamma2 Hermitian") {
        Rng rng(5);
        Graph g = random_connected_graph(8, 3, rng);
        MagneticPotential sigma = random_potential(g, rng);
        for (int x = 0; x < g.vertex_count(); x += 2) {
            LocalForms lf = local_forms(g, sigma, x);
            REQUIRE((lf.gamma - lf.gamma.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            REQUIRE((lf.gamma2 - lf.gamma2.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            Eigen::SelfAdjointEigenSolver<Matrix> es(lf.gamma, Eigen::EigenvaluesOnly);
            REQUIRE(es.eigenvalues()(0) >= -1e-12);
        }
    }
}

TEST_CASE("cd_check oracle values") {
    Graph k2(2, {{0, 1}});
    MagneticPotential triv = MagneticPotential::trivial(k2);
    SECTION("K2 has curvature exactly 2") {
        REQUIRE(cd_check(k2, triv, 0, 2.0));
        REQUIRE(!cd_check(k2, triv, 0, 2.1));
        REQUIRE(curvature_sup(k2, triv, 0) == Catch::Approx(2.0).margin(1e-7));
    }
    SECTION("C5 satisfies CD(0, inf) at every vertex") {
        Graph c5 = cycle_graph(5);
        MagneticPotential t5 = MagneticPotential::trivial(c5);
        for (int x = 0; x < 5; ++x) REQUIRE(cd_check(c5, t5, x, 0.0));
    }
    SECTION("deeply negative K always passes") {
        Rng rng(9);
        Graph g = random_connected_graph(7, 2, rng);
        MagneticPotential sigma = random_potential(g, rng);
        for (int x = 0; x < g.vertex_count(); ++x)
            REQUIRE(cd_check(g, sigma, x, -1000.0));
    }
    SECTION("frozen regressions for familiar graphs") {
        Graph q3 = hypercube_graph(3);
        REQUIRE(cd_check_global(q3, MagneticPotential::trivial(q3), 0.0));
        REQUIRE(curvature_sup(q3, MagneticPotential::trivial(q3), 0) ==
                Catch::Approx(2.0).margin(1e-7));
        Graph k4 = complete_graph(4);
        REQUIRE(curvature_sup(k4, MagneticPotential::trivial(k4), 0) ==
                Catch::Approx(3.0).margin(1e-7));
        Graph c6 = cycle_graph(6);
        REQUIRE(curvature_sup(c6, MagneticPotential::trivial(c6), 0) ==
                Catch::Approx(0.0).margin(1e-7));
        Graph pet = petersen_graph();
        REQUIRE(!cd_check_global(pet, MagneticPotential::trivial(pet), 0.0));
    }
    SECTION("finite dimension term") {
        // CD(K, n) is harder for smaller n
        REQUIRE(cd_check(k2, triv, 0, 0.0, 2.0));
        REQUIRE(!cd_check(k2, triv, 0, 2.0, 2.0));
        REQUIRE_THROWS_AS(cd_check(k2, triv, 0, 0.0, -1.0), BadSize);
    }
}

TEST_CASE("cd_check invariances") {
    SECTION("gauge invariance") {
        Rng rng(31);
        for (int trial = 0; trial < 8; ++trial) {
            Graph g = random_connected_graph(7, 2, rng);
            MagneticPotential sigma = random_potential(g, rng);
            std::vector<double> phases(g.vertex_count());
            for (double& p : phases) p = two_pi * rng.next_double();
            MagneticPotential moved = gauge_transform(g, sigma, GaugeFunction{phases});
            double K = 2.0 * rng.next_double() - 1.0;
            for (int x = 0; x < g.vertex_count(); ++x)
                REQUIRE(cd_check(g, sigma, x, K) == cd_check(g, moved, x, K));
        }
    }
    SECTION("global check is the conjunction over vertices") {
        Rng rng(12);
        Graph t = random_tree(8, rng);
        MagneticPotential triv = MagneticPotential::trivial(t);
        bool all = true;
        for (int x = 0; x < t.vertex_count(); ++x) all = all && cd_check(t, triv, x, 0.0);
        REQUIRE(cd_check_global(t, triv, 0.0) == all);
    }
    SECTION("locality: edits outside the incomplete 2-ball are invisible") {
        // x = 0 in a path 0-1-2-3-4: the 2-ball is {0,1,2}; edits at distance
        // >= 3 and spherical edges inside S_2 must not change the check.
        Graph p5 = path_graph(5);
        Graph far = add_edge(path_graph(6), 3, 5);
        for (double K : {-1.0, 0.0, 0.5}) {
            bool base = cd_check(p5, MagneticPotential::trivial(p5), 0, K);
            bool edited = cd_check(far, MagneticPotential::trivial(far), 0, K);
            REQUIRE(base == edited);
        }
        // spherical edge: C6 vs C6 plus a chord between the two vertices at
        // distance 2 from the center (that chord lies inside S_2(0))
        Graph c6 = cycle_graph(6);
        Graph chord = add_edge(c6, 2, 4);
        for (double K : {-1.0, 0.0}) {
            REQUIRE(cd_check(c6, MagneticPotential::trivial(c6), 0, K) ==
                    cd_check(chord, MagneticPotential::trivial(chord), 0, K));
        }
    }
    SECTION("monotone in K and in n") {
        Rng rng(77);
        Graph g = random_connected_graph(7, 2, rng);
        MagneticPotential sigma = random_potential(g, rng);
        double sup = curvature_sup(g, sigma, 0);
        REQUIRE(cd_check(g, sigma, 0, sup - 1e-6));
        REQUIRE(!cd_check(g, sigma, 0, sup + 1e-6));
        REQUIRE(cd_check(g, sigma, 0, sup - 1.0));
        // larger n is weaker
        Graph k2(2, {{0, 1}});
        MagneticPotential t2 = MagneticPotential::trivial(k2);
        for (double K : {0.5, 1.0, 1.9}) {
            if (cd_check(k2, t2, 0, K, 4.0)) REQUIRE(cd_check(k2, t2, 0, K, 8.0));
        }
    }
    SECTION("signatures trivial on each incomplete 2-ball match the trivial potential") {
        // on odd cycles every incomplete 2-ball is a path, so any signature
        // is locally gauge-trivial there
        Graph c5 = cycle_graph(5);
        MagneticPotential bar = MagneticPotential::anti_balanced(c5);
        MagneticPotential triv = MagneticPotential::trivial(c5);
        for (double K : {-0.5, 0.0, 0.1})
            REQUIRE(cd_check_global(c5, bar, K) == cd_check_global(c5, triv, K));
    }
}
