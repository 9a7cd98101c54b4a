#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "magnu/families.hpp"
#include "magnu/solver.hpp"
#include "test_fixtures.hpp"

using namespace magnu;
using std::numbers::pi;

TEST_CASE("nu_estimate on known graphs") {
    SolverConfig cfg;
    SECTION("C7: value and maximizing holonomy") {
        NuEstimate est = nu_estimate(cycle_graph(7), cfg);
        REQUIRE(est.value == Catch::Approx(2 - 2 * std::cos(pi / 7)).margin(1e-7));
        REQUIRE(est.best.phis.size() == 1);
        REQUIRE(std::abs(est.best.phis[0] - pi) < 1e-3);
        REQUIRE(est.converged);
        REQUIRE(est.lambda1_multiplicity_at_max == 2);
    }
    SECTION("K5") {
        NuEstimate est = nu_estimate(complete_graph(5), cfg);
        REQUIRE(est.value == Catch::Approx(3.0).margin(1e-7));
    }
    SECTION("suspended path: max 1 at (2pi/3, 4pi/3) up to gauge and conjugation") {
        NuEstimate est = nu_estimate(fixtures::suspended_path3(), cfg);
        REQUIRE(est.value == Catch::Approx(1.0).margin(1e-7));
        REQUIRE(est.best.phis.size() == 2);
        double a = est.best.phis[0];
        double b = est.best.phis[1];
        bool fwd = circle_distance(a - 2 * pi / 3) < 1e-3 && circle_distance(b - 4 * pi / 3) < 1e-3;
        bool rev = circle_distance(a - 4 * pi / 3) < 1e-3 && circle_distance(b - 2 * pi / 3) < 1e-3;
        REQUIRE((fwd || rev));
    }
    SECTION("forests short-circuit to zero") {
        Rng rng(3);
        NuEstimate est = nu_estimate(random_tree(10, rng), cfg);
        REQUIRE(est.value == 0.0);
        REQUIRE(est.best.phis.empty());
        REQUIRE(est.converged);
    }
    SECTION("self-consistency: value equals lambda1 at the reported coordinates") {
        Rng rng(11);
        for (int t = 0; t < 5; ++t) {
            Graph g = random_connected_graph(7, 2, rng);
            NuEstimate est = nu_estimate(g, cfg);
            REQUIRE(est.value ==
                    Catch::Approx(lambda1(g, expand(g, est.best))).margin(1e-9));
        }
    }
}

TEST_CASE("grid oracle") {
    SECTION("C5 at 720 points") {
        REQUIRE(nu_grid_oracle(cycle_graph(5), 720) ==
                Catch::Approx(2 - 2 * std::cos(pi / 5)).margin(1e-5));
    }
    SECTION("triangle with dangling edge at 720 points") {
        REQUIRE(nu_grid_oracle(fixtures::triangle_with_dangling_edge(), 720) ==
                Catch::Approx((5 - std::sqrt(17.0)) / 2).margin(1e-5));
    }
    SECTION("forest gives exactly zero") {
        REQUIRE(nu_grid_oracle(path_graph(6), 10) == 0.0);
    }
    SECTION("betti guard") {
        REQUIRE_THROWS_AS(nu_grid_oracle(complete_graph(5), 4), BettiTooLarge);
    }
}

TEST_CASE("signature brute force") {
    SECTION("K4: value 2, maximizer in the anti-balanced switching class") {
        Graph k4 = complete_graph(4);
        auto [value, sig] = nu_signature_bruteforce(k4);
        REQUIRE(value == Catch::Approx(2.0).margin(1e-10));
        REQUIRE(sig.is_signature());
        auto [coords_found, tau1] = gauge_reduce(k4, sig);
        auto [coords_anti, tau2] = gauge_reduce(k4, MagneticPotential::anti_balanced(k4));
        for (std::size_t i = 0; i < coords_found.phis.size(); ++i)
            REQUIRE(circle_distance(coords_found.phis[i] - coords_anti.phis[i]) < 1e-12);
    }
    SECTION("Petersen graph beats the Ramanujan floor") {
        auto [value, sig] = nu_signature_bruteforce(petersen_graph());
        REQUIRE(value >= 3 - 2 * std::sqrt(2.0) - 1e-9);
    }
    SECTION("suspended path: best signature strictly below nu") {
        auto [value, sig] = nu_signature_bruteforce(fixtures::suspended_path3());
        REQUIRE(value == Catch::Approx(0.7639320225).margin(1e-9));
        REQUIRE(value < 1.0 - 0.2);
    }
    SECTION("betti guard") {
        REQUIRE_THROWS_AS(nu_signature_bruteforce(complete_graph(9)), BettiTooLarge);
    }
}

TEST_CASE("nu_k") {
    SECTION("nu_2(C4) = nu(C4) = 2 - sqrt(2)") {
        auto [value, sigma] = nu_k(cycle_graph(4), 2);
        REQUIRE(value == Catch::Approx(2 - std::sqrt(2.0)).margin(1e-10));
        REQUIRE(sigma.is_sk_valued(2));
    }
    SECTION("trees give zero for any k") {
        Rng rng(4);
        Graph t = random_tree(7, rng);
        for (int k = 2; k <= 5; ++k) REQUIRE(nu_k(t, k).first == 0.0);
    }
    SECTION("nu_3(C3): both powers balance at phi = 2pi/3") {
        auto [value, sigma] = nu_k(cycle_graph(3), 3);
        REQUIRE(value == Catch::Approx(2 - 2 * std::cos(2 * pi / 9)).margin(1e-10));
        SpanningForest f = spanning_forest(cycle_graph(3));
        auto [coords, tau] = gauge_reduce(cycle_graph(3), sigma);
        REQUIRE(circle_distance(coords.phis[0] - 2 * pi / 3) < 1e-12);
    }
    SECTION("guards") {
        REQUIRE_THROWS_AS(nu_k(cycle_graph(3), 1), BadSize);
        REQUIRE_THROWS_AS(nu_k(complete_graph(8), 5), BettiTooLarge);
    }
}

TEST_CASE("solver properties") {
    SECTION("dominates signature brute force when converged") {
        Rng rng(21);
        for (int t = 0; t < 6; ++t) {
            Graph g = random_connected_graph(7, 1 + rng.next_int(3), rng);
            NuEstimate est = nu_estimate(g);
            if (!est.converged) continue;
            auto [sig_value, sig] = nu_signature_bruteforce(g);
            REQUIRE(est.value >= sig_value - 1e-9);
        }
    }
    SECTION("dominates the grid oracle") {
        Rng rng(22);
        for (int t = 0; t < 5; ++t) {
            Graph g = random_connected_graph(6 + rng.next_int(3), 1 + rng.next_int(2), rng);
            NuEstimate est = nu_estimate(g);
            REQUIRE(est.value >= nu_grid_oracle(g, 120) - 1e-7);
        }
    }
    SECTION("monotone in the number of multistarts") {
        Rng rng(23);
        for (int t = 0; t < 3; ++t) {
            Graph g = random_connected_graph(7, 2, rng);
            double prev = -1.0;
            for (int n : {2, 6, 12, 30}) {
                SolverConfig cfg;
                cfg.rng_seed = 7;
                cfg.n_multistarts = n;
                double v = nu_estimate(g, cfg).value;
                REQUIRE(v >= prev - 1e-12);
                prev = v;
            }
        }
    }
    SECTION("bounded by the combinatorial upper bounds") {
        Rng rng(24);
        for (int t = 0; t < 8; ++t) {
            Graph g = random_connected_graph(5 + rng.next_int(5), rng.next_int(4), rng);
            NuEstimate est = nu_estimate(g);
            double ub = std::min({2.0 * g.edge_count() / g.vertex_count(),
                                  4.0 * betti_number(g) / g.vertex_count(),
                                  static_cast<double>(max_degree(g)) - 1.0});
            REQUIRE(est.value <= ub + 1e-7);
        }
    }
    SECTION("deterministic and independent of worker count") {
        Rng rng(25);
        Graph g = random_connected_graph(8, 3, rng);
        SolverConfig one;
        one.rng_seed = 99;
        one.n_threads = 1;
        SolverConfig four = one;
        four.n_threads = 4;
        NuEstimate a = nu_estimate(g, one);
        NuEstimate b = nu_estimate(g, four);
        NuEstimate c = nu_estimate(g, one);
        REQUIRE(a.value == b.value);
        REQUIRE(a.best.phis == b.best.phis);
        REQUIRE(a.value == c.value);
        REQUIRE(a.best.phis == c.best.phis);
    }
}
