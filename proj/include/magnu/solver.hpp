#ifndef MAGNU_SOLVER_HPP
#define MAGNU_SOLVER_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "magnu/generators.hpp"
#include "magnu/spectra.hpp"

namespace magnu {

struct SolverConfig {
    int grid_points_per_dim = 24;
    int n_multistarts = 50;
    double local_tol = 1e-10;
    int max_iters = 2000;
    std::uint64_t rng_seed = 0;
    int n_kicks = 3;      // perturbation restarts per multistart
    int n_threads = 0;    // 0 = hardware concurrency
};

struct NuEstimate {
    double value = 0.0;
    HolonomyCoordinates best;
    int n_starts = 0;
    long n_evals = 0;
    bool converged = true;
    int lambda1_multiplicity_at_max = 0;
};

namespace detail {

/// lambda_1 as a function of holonomy coordinates, with an eval counter.
class Lambda1Objective {
public:
    Lambda1Objective(const Graph& g, const SpanningForest& forest)
        : g_(&g), forest_(&forest) {
        base_ = magnetic_laplacian(g, MagneticPotential::trivial(g));
        for (int ei : forest.cotree_edges) cotree_.push_back(g.edges()[ei]);
    }

    int dim() const { return static_cast<int>(cotree_.size()); }
    long evals() const { return evals_; }

    Matrix matrix(const std::vector<double>& phis) const {
        Matrix m = base_;
        for (std::size_t i = 0; i < cotree_.size(); ++i) {
            std::complex<double> s{std::cos(phis[i]), std::sin(phis[i])};
            m(cotree_[i].u, cotree_[i].v) = -s;
            m(cotree_[i].v, cotree_[i].u) = -std::conj(s);
        }
        return m;
    }

    double value(const std::vector<double>& phis) const {
        ++evals_;
        return std::max(0.0, eigenvalues_only(matrix(phis))(0));
    }

    Spectrum full(const std::vector<double>& phis) const {
        ++evals_;
        Eigen::SelfAdjointEigenSolver<Matrix> es(matrix(phis));
        return {es.eigenvalues(), es.eigenvectors()};
    }

    /// Hellmann-Feynman gradient of eigenvalue i.
    Eigen::VectorXd eigen_gradient(const std::vector<double>& phis, const Spectrum& s,
                                   int i) const {
        Eigen::VectorXd grad(dim());
        for (int c = 0; c < dim(); ++c) {
            std::complex<double> phase{std::cos(phis[c]), std::sin(phis[c])};
            grad(c) = 2.0 * std::imag(phase * std::conj(s.eigenvectors(cotree_[c].u, i)) *
                                      s.eigenvectors(cotree_[c].v, i));
        }
        return grad;
    }

private:
    const Graph* g_;
    const SpanningForest* forest_;
    Matrix base_;
    std::vector<Edge> cotree_;
    mutable std::atomic<long> evals_{0};
};

/// Direction solving max_{|d| <= 1} min_{i in cluster} (levels[i]/h + <grads[i], d>)
/// by Frank-Wolfe. Returns a zero vector at (approximately) stationary points.
inline Eigen::VectorXd maximin_direction(const std::vector<double>& levels,
                                         const std::vector<Eigen::VectorXd>& grads,
                                         double h) {
    const int m = static_cast<int>(grads.size());
    const int n = static_cast<int>(grads[0].size());
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    for (int t = 0; t < 60; ++t) {
        int active = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            double v = levels[i] / h + grads[i].dot(d);
            if (v < best) {
                best = v;
                active = i;
            }
        }
        double gnorm = grads[active].norm();
        if (gnorm < 1e-14) return Eigen::VectorXd::Zero(n);
        double gamma = 2.0 / (t + 2.0);
        d = (1.0 - gamma) * d + gamma * (grads[active] / gnorm);
    }
    return d;
}

struct RefineResult {
    std::vector<double> phis;
    double value = 0.0;
    bool converged = false;
};

/// Nonsmooth ascent of lambda_1 over the holonomy torus: cluster-aware
/// (sub)gradient steps with a backtracking line search. Reduces to plain
/// Hellmann-Feynman gradient ascent while lambda_1 stays simple.
/// Stops once the value reaches stop_at (a known upper bound).
inline RefineResult climb(const Lambda1Objective& obj, std::vector<double> phis,
                          double f0, const SolverConfig& cfg,
                          double stop_at = std::numeric_limits<double>::infinity(),
                          bool coarse = false) {
    const int n = obj.dim();
    RefineResult out{phis, f0, false};
    double h = 0.25;
    const double h_min = coarse ? 1e-7 : std::max(1e-12, cfg.local_tol * 1e-2);
    const double gain_tol = coarse ? 1e-8 : std::max(1e-14, cfg.local_tol * 0.05);
    const int stale_limit = coarse ? 8 : 12;
    const int max_iters = coarse ? std::min(cfg.max_iters, 60 + 10 * n) : cfg.max_iters;
    int stale = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
        if (h < h_min || stale >= stale_limit || out.value >= stop_at) {
            out.converged = true;
            break;
        }
        Spectrum s = obj.full(out.phis);
        // cluster of eigenvalues that the step scale can reach
        double width = std::max(1e-11, std::min(0.05, 4.0 * h));
        std::vector<double> levels;
        std::vector<Eigen::VectorXd> grads;
        for (int i = 0; i < s.eigenvalues.size() && static_cast<int>(levels.size()) < 8; ++i) {
            if (s.eigenvalues(i) - s.eigenvalues(0) > width) break;
            levels.push_back(s.eigenvalues(i) - s.eigenvalues(0));
            grads.push_back(obj.eigen_gradient(out.phis, s, i));
        }
        Eigen::VectorXd d = maximin_direction(levels, grads, h);
        double dnorm = d.norm();
        if (dnorm < 1e-12) {
            h *= 0.25;
            continue;
        }
        d /= dnorm;
        // backtracking line search on the true objective
        double gained = 0.0;
        double step = h;
        for (int bt = 0; bt < 8; ++bt) {
            std::vector<double> trial(out.phis);
            for (int c = 0; c < n; ++c) trial[c] += step * d(c);
            double v = obj.value(trial);
            if (v > out.value + 1e-15) {
                // expand while still improving
                while (step < 0.5) {
                    std::vector<double> wide(out.phis);
                    for (int c = 0; c < n; ++c) wide[c] += 2.0 * step * d(c);
                    double vw = obj.value(wide);
                    if (vw <= v) break;
                    v = vw;
                    trial = std::move(wide);
                    step *= 2.0;
                }
                gained = v - out.value;
                out.phis = std::move(trial);
                out.value = v;
                break;
            }
            step *= 0.5;
        }
        if (gained > 0.0) {
            h = std::min(step * 2.0, 0.5);
            stale = gained < gain_tol ? stale + 1 : 0;
        } else {
            h *= 0.3;
        }
    }
    return out;
}

/// Nelder-Mead polish on the torus (used for moderate dimensions).
inline RefineResult nelder_mead(const Lambda1Objective& obj, std::vector<double> start,
                                double f0, double radius, const SolverConfig& cfg) {
    const int n = obj.dim();
    RefineResult out{start, f0, false};
    if (n == 0) return out;
    // maximize f == minimize -f
    auto eval = [&](const std::vector<double>& x) { return -obj.value(x); };
    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> fv(n + 1);
    fv[0] = -f0;
    for (int i = 1; i <= n; ++i) {
        pts[i][i - 1] += radius;
        fv[i] = eval(pts[i]);
    }
    std::vector<int> ord(n + 1);
    const int max_iter = std::min(cfg.max_iters, 120 * n + 200);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        if (fv[ord[n]] - fv[ord[0]] < cfg.local_tol) {
            out.converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (int k = 0; k < n; ++k)
            for (int c = 0; c < n; ++c) centroid[c] += pts[ord[k]][c] / n;
        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (int c = 0; c < n; ++c) x[c] = centroid[c] + t * (centroid[c] - pts[ord[n]][c]);
            return x;
        };
        std::vector<double> xr = blend(1.0);
        double fr = eval(xr);
        if (fr < fv[ord[0]]) {
            std::vector<double> xe = blend(2.0);
            double fe = eval(xe);
            if (fe < fr) {
                pts[ord[n]] = xe;
                fv[ord[n]] = fe;
            } else {
                pts[ord[n]] = xr;
                fv[ord[n]] = fr;
            }
        } else if (fr < fv[ord[n - 1]]) {
            pts[ord[n]] = xr;
            fv[ord[n]] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[ord[n]] ? 0.5 : -0.5);
            double fc = eval(xc);
            if (fc < std::min(fr, fv[ord[n]])) {
                pts[ord[n]] = xc;
                fv[ord[n]] = fc;
            } else {
                for (int k = 1; k <= n; ++k) {
                    for (int c = 0; c < n; ++c)
                        pts[ord[k]][c] = pts[ord[0]][c] + 0.5 * (pts[ord[k]][c] - pts[ord[0]][c]);
                    fv[ord[k]] = eval(pts[ord[k]]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    if (-fv[best] > out.value) {
        out.value = -fv[best];
        out.phis = pts[best];
    }
    return out;
}

/// Full per-start refinement: climb, polish, plus seeded perturbation
/// restarts. Self-contained so that multistart results do not depend on
/// evaluation order or worker count.
inline RefineResult refine_start(const Lambda1Objective& obj, std::vector<double> phis,
                                 const SolverConfig& cfg, std::uint64_t kick_seed,
                                 double stop_at) {
    const int n = obj.dim();
    // For moderate dimensions a coarse climb reaches the right basin and
    // Nelder-Mead supplies the final digits; beyond that the climb runs at
    // full precision on its own.
    const bool use_nm = n <= 24;
    auto local = [&](std::vector<double> p, double f0) {
        RefineResult r = climb(obj, std::move(p), f0, cfg, stop_at, use_nm);
        if (use_nm && r.value < stop_at) {
            RefineResult nm = nelder_mead(obj, r.phis, r.value, 1e-3, cfg);
            if (nm.value > r.value) {
                nm.converged = nm.converged || r.converged;
                r = nm;
            }
        }
        return r;
    };
    RefineResult best = local(phis, obj.value(phis));
    const int kicks = std::min(cfg.n_kicks, n <= 2 ? 1 : (n <= 12 ? 2 : 1));
    Rng rng(kick_seed);
    for (int kick = 0; kick < kicks && best.value < stop_at; ++kick) {
        std::vector<double> kicked = best.phis;
        for (double& p : kicked) p += 0.8 * (rng.next_double() - 0.5);
        RefineResult r = local(kicked, obj.value(kicked));
        if (r.value > best.value) best = r;
    }
    return best;
}

inline void parallel_for(int n_items, int n_threads, const std::function<void(int)>& work) {
    if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, n_items));
    if (n_threads == 1) {
        for (int i = 0; i < n_items; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace detail

/// Brute-force grid maximum of lambda_1 over the holonomy torus. Pure
/// exhaustion, no local refinement; serves as the independent oracle.
inline double nu_grid_oracle(const Graph& g, int points_per_dim) {
    if (points_per_dim < 1) throw BadSize("grid needs at least one point per dim");
    SpanningForest forest = spanning_forest(g);
    const int b1 = static_cast<int>(forest.cotree_edges.size());
    if (b1 == 0) return 0.0;
    if (b1 > 3) throw BettiTooLarge("grid oracle limited to b1 <= 3");
    detail::Lambda1Objective obj(g, forest);
    const double step = two_pi / points_per_dim;
    std::vector<double> phis(b1, 0.0);
    std::vector<int> idx(b1, 0);
    double best = -1.0;
    while (true) {
        for (int c = 0; c < b1; ++c) phis[c] = idx[c] * step;
        best = std::max(best, obj.value(phis));
        int c = 0;
        while (c < b1 && ++idx[c] == points_per_dim) idx[c++] = 0;
        if (c == b1) break;
    }
    return best;
}

/// Maximum of lambda_1 over all 2^{b1} switching classes. Returns the best
/// value and a representative signature (trivial on the spanning forest).
inline std::pair<double, MagneticPotential> nu_signature_bruteforce(const Graph& g) {
    SpanningForest forest = spanning_forest(g);
    const int b1 = static_cast<int>(forest.cotree_edges.size());
    if (b1 > 20) throw BettiTooLarge("signature brute force limited to b1 <= 20");
    detail::Lambda1Objective obj(g, forest);
    if (b1 == 0)
        return {0.0, MagneticPotential::trivial(g)};
    double best = -1.0;
    std::uint32_t best_mask = 0;
    std::vector<double> phis(b1);
    for (std::uint32_t mask = 0; mask < (1u << b1); ++mask) {
        for (int c = 0; c < b1; ++c) phis[c] = (mask >> c) & 1u ? std::numbers::pi : 0.0;
        double v = obj.value(phis);
        if (v > best + 1e-15) {
            best = v;
            best_mask = mask;
        }
    }
    for (int c = 0; c < b1; ++c)
        phis[c] = (best_mask >> c) & 1u ? std::numbers::pi : 0.0;
    return {best, expand(g, {forest, phis})};
}

/// nu_k: exhaustive search over S_k-valued holonomies of the min over
/// j = 1..k-1 of lambda_1 of the j-th power.
inline std::pair<double, MagneticPotential> nu_k(const Graph& g, int k) {
    if (k < 2) throw BadSize("nu_k needs k >= 2");
    SpanningForest forest = spanning_forest(g);
    const int b1 = static_cast<int>(forest.cotree_edges.size());
    double combos = std::pow(static_cast<double>(k), b1);
    if (combos > 1e6) throw BettiTooLarge("nu_k enumeration k^b1 exceeds 1e6");
    detail::Lambda1Objective obj(g, forest);
    if (b1 == 0)
        return {0.0, MagneticPotential::trivial(g)};
    const double step = two_pi / k;
    std::vector<int> idx(b1, 0);
    std::vector<double> phis(b1), powered(b1);
    double best = -1.0;
    std::vector<int> best_idx;
    while (true) {
        for (int c = 0; c < b1; ++c) phis[c] = idx[c] * step;
        double worst = std::numeric_limits<double>::infinity();
        for (int j = 1; j < k && worst > best; ++j) {
            for (int c = 0; c < b1; ++c) powered[c] = normalize_angle(phis[c] * j);
            worst = std::min(worst, obj.value(powered));
        }
        if (worst > best + 1e-15) {
            best = worst;
            best_idx = idx;
        }
        int c = 0;
        while (c < b1 && ++idx[c] == k) idx[c++] = 0;
        if (c == b1) break;
    }
    for (int c = 0; c < b1; ++c) phis[c] = best_idx[c] * step;
    return {best, expand(g, {forest, phis})};
}

/// Combinatorial upper bound used as a stopping certificate: reaching it
/// proves the multistart found a global maximizer.
inline double cheap_upper_bound(const Graph& g) {
    double ub = 2.0 * g.edge_count() / std::max(1, g.vertex_count());
    ub = std::min(ub, 4.0 * betti_number(g) / std::max(1, g.vertex_count()));
    if (g.edge_count() > 0) {
        ub = std::min(ub, static_cast<double>(max_degree(g)) - 1.0);
        double edge_min = std::numeric_limits<double>::infinity();
        for (const Edge& e : g.edges())
            edge_min = std::min(edge_min, (g.degree(e.u) + g.degree(e.v)) / 2.0 - 1.0);
        ub = std::min(ub, edge_min);
    }
    return ub;
}

/// Best-found nu(G): gauge reduction, coarse grid seeding, multistart
/// nonsmooth ascent. The returned value is a certified lower bound on nu
/// and the best-effort estimate of it.
inline NuEstimate nu_estimate(const Graph& g, const SolverConfig& cfg = {}) {
    SpanningForest forest = spanning_forest(g);
    const int b1 = static_cast<int>(forest.cotree_edges.size());
    NuEstimate out;
    if (b1 == 0) {
        out.best = HolonomyCoordinates{forest, {}};
        out.value = 0.0;
        out.n_starts = 0;
        out.converged = true;
        Spectrum s = spectrum(magnetic_laplacian(g, MagneticPotential::trivial(g)));
        out.lambda1_multiplicity_at_max = multiplicity(s, s.eigenvalues(0), 1e-8);
        return out;
    }
    detail::Lambda1Objective obj(g, forest);

    // Deterministic start sequence: the anti-balanced switching class, then
    // the best coarse-grid points, then seeded random points. Taking a
    // prefix of a fixed sequence keeps the result monotone in n_multistarts.
    std::vector<std::vector<double>> starts;
    {
        auto [coords, tau] = gauge_reduce(g, MagneticPotential::anti_balanced(g));
        starts.push_back(coords.phis);
    }
    if (b1 <= 8) {
        int ppd = std::max(3, std::min(cfg.grid_points_per_dim,
                                       static_cast<int>(std::floor(std::pow(5e4, 1.0 / b1)))));
        const double step = two_pi / ppd;
        std::vector<std::pair<double, long>> top;  // (-value, linear index)
        std::vector<int> idx(b1, 0);
        std::vector<double> phis(b1);
        long lin = 0;
        const int keep = 40;
        while (true) {
            for (int c = 0; c < b1; ++c) phis[c] = idx[c] * step;
            double v = obj.value(phis);
            top.emplace_back(-v, lin);
            if (static_cast<int>(top.size()) > 4 * keep) {
                std::sort(top.begin(), top.end());
                top.resize(keep);
            }
            ++lin;
            int c = 0;
            while (c < b1 && ++idx[c] == ppd) idx[c++] = 0;
            if (c == b1) break;
        }
        std::sort(top.begin(), top.end());
        if (static_cast<int>(top.size()) > keep) top.resize(keep);
        for (auto [negv, linear] : top) {
            std::vector<double> p(b1);
            long rest = linear;
            for (int c = 0; c < b1; ++c) {
                p[c] = (rest % ppd) * step;
                rest /= ppd;
            }
            starts.push_back(std::move(p));
        }
    }
    // Multistart count is capped by the torus dimension; dense grids already
    // cover the low-dimensional cases.
    const int cap = b1 <= 3 ? 10 + 2 * b1 : (b1 <= 8 ? 16 : 12);
    const int n_starts = std::min(cfg.n_multistarts, cap);
    Rng start_rng(cfg.rng_seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    while (static_cast<int>(starts.size()) < n_starts) {
        std::vector<double> p(b1);
        for (double& x : p) x = two_pi * start_rng.next_double();
        starts.push_back(std::move(p));
    }
    starts.resize(n_starts);

    // Certified stop: no potential can beat the combinatorial upper bound.
    const double ub = cheap_upper_bound(g);
    const double stop_at = ub - 1e-9 * std::max(1.0, std::abs(ub));

    // Fixed batch boundaries keep the early exit (and hence the result)
    // independent of the worker count.
    std::vector<detail::RefineResult> results(n_starts);
    int done = 0;
    double incumbent = -1.0;
    while (done < n_starts && incumbent < stop_at) {
        int batch_end = done == 0 ? 1 : std::min(n_starts, done + 8);
        detail::parallel_for(batch_end - done, cfg.n_threads, [&](int k) {
            int i = done + k;
            results[i] = detail::refine_start(obj, starts[i], cfg,
                                              cfg.rng_seed ^ (0xabcdef1234567ULL + 7919ULL * i),
                                              stop_at);
        });
        for (int i = done; i < batch_end; ++i) incumbent = std::max(incumbent, results[i].value);
        done = batch_end;
    }

    int best = 0;
    for (int i = 1; i < done; ++i)
        if (results[i].value > results[best].value + 1e-15) best = i;

    out.n_starts = done;
    out.converged = results[best].converged;
    std::vector<double> best_phis(results[best].phis.size());
    for (std::size_t i = 0; i < best_phis.size(); ++i)
        best_phis[i] = normalize_angle(results[best].phis[i]);
    out.best = HolonomyCoordinates{forest, best_phis};
    Spectrum s = spectrum(magnetic_laplacian(g, expand(g, out.best)));
    out.value = std::max(0.0, s.eigenvalues(0));
    out.lambda1_multiplicity_at_max = multiplicity(s, s.eigenvalues(0), 1e-8);
    out.n_evals = obj.evals();
    return out;
}

} // namespace magnu

#endif // MAGNU_SOLVER_HPP
