#ifndef MAGNU_SPECTRA_HPP
#define MAGNU_SPECTRA_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "magnu/potential.hpp"

namespace magnu {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Hermitian magnetic Laplacian: diagonal d_x, off-diagonal -e^{i theta} on
/// the canonical orientation and the conjugate opposite.
inline Matrix magnetic_laplacian(const Graph& g, const MagneticPotential& sigma) {
    if (static_cast<int>(sigma.size()) != g.edge_count())
        throw SizeMismatch("magnetic_laplacian: potential size does not match graph");
    const int n = g.vertex_count();
    Matrix m = Matrix::Zero(n, n);
    for (int v = 0; v < n; ++v) m(v, v) = g.degree(v);
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges()[ei];
        std::complex<double> s = sigma.value(ei, e.u, e.v);
        m(e.u, e.v) = -s;
        m(e.v, e.u) = -std::conj(s);
    }
    return m;
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

/// Ascending eigenvalues with orthonormal eigenvector columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
};

inline Spectrum spectrum(const Matrix& a) {
    if (!is_hermitian(a)) throw NotHermitian();
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    return {es.eigenvalues(), es.eigenvectors()};
}

inline Eigen::VectorXd eigenvalues_only(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double smallest_eigenvalue(const Matrix& a) {
    return eigenvalues_only(a)(0);
}

/// lambda_1^sigma(G), clamped at zero (the operator is PSD; tiny negatives
/// are roundoff).
inline double lambda1(const Graph& g, const MagneticPotential& sigma) {
    if (g.vertex_count() == 0) return 0.0;
    return std::max(0.0, smallest_eigenvalue(magnetic_laplacian(g, sigma)));
}

/// R^sigma(f) = sum_{{x,y} in E} |f(x) - sigma(x,y) f(y)|^2 / sum |f(x)|^2.
inline double rayleigh_quotient(const Graph& g, const MagneticPotential& sigma,
                                const Vector& f) {
    if (static_cast<int>(sigma.size()) != g.edge_count() || f.size() != g.vertex_count())
        throw SizeMismatch("rayleigh_quotient: sizes do not match graph");
    double denom = f.squaredNorm();
    if (denom == 0.0) throw ZeroVector();
    double num = 0.0;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges()[ei];
        std::complex<double> d = f(e.u) - sigma.value(ei, e.u, e.v) * f(e.v);
        num += std::norm(d);
    }
    return num / denom;
}

/// Count of eigenvalues within tol of value.
inline int multiplicity(const Spectrum& s, double value, double tol) {
    if (tol <= 0) throw BadSize("multiplicity: tol must be positive");
    int count = 0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        if (std::abs(s.eigenvalues(i) - value) <= tol) ++count;
    return count;
}

inline int multiplicity(const Eigen::VectorXd& eigenvalues, double value, double tol) {
    if (tol <= 0) throw BadSize("multiplicity: tol must be positive");
    int count = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        if (std::abs(eigenvalues(i) - value) <= tol) ++count;
    return count;
}

/// Hellmann-Feynman derivative of lambda_1 in holonomy coordinates. The
/// component for cotree edge (x,y) carrying angle theta is
/// 2 Im(e^{i theta} conj(f(x)) f(y)) for the unit lambda_1-eigenvector f.
/// Returns nullopt when lambda_1 is degenerate (gap <= tol).
inline std::optional<Eigen::VectorXd> lambda1_gradient(const Graph& g,
                                                       const HolonomyCoordinates& coords,
                                                       double degeneracy_tol = 1e-8) {
    const int b1 = static_cast<int>(coords.phis.size());
    if (b1 == 0) return Eigen::VectorXd(0);
    MagneticPotential sigma = expand(g, coords);
    Spectrum s = spectrum(magnetic_laplacian(g, sigma));
    if (s.eigenvalues.size() >= 2 && s.eigenvalues(1) - s.eigenvalues(0) <= degeneracy_tol)
        return std::nullopt;
    Vector f = s.eigenvectors.col(0);
    Eigen::VectorXd grad(b1);
    for (int i = 0; i < b1; ++i) {
        int ei = coords.forest.cotree_edges[i];
        const Edge& e = g.edges()[ei];
        std::complex<double> phase{std::cos(coords.phis[i]), std::sin(coords.phis[i])};
        grad(i) = 2.0 * std::imag(phase * std::conj(f(e.u)) * f(e.v));
    }
    return grad;
}

/// Eigenvalue curves of the cycle family: mu_j(t) = 2 - 2 cos((t + 2 pi j)/d),
/// one row per sample, one column per j.
inline Eigen::MatrixXd cycle_eigencurves(int d, std::span<const double> t_samples) {
    if (d < 3) throw BadSize("cycle needs d >= 3");
    Eigen::MatrixXd out(static_cast<Eigen::Index>(t_samples.size()), d);
    for (std::size_t r = 0; r < t_samples.size(); ++r)
        for (int j = 0; j < d; ++j)
            out(static_cast<Eigen::Index>(r), j) =
                2.0 - 2.0 * std::cos((t_samples[r] + two_pi * j) / d);
    return out;
}

} // namespace magnu

#endif // MAGNU_SPECTRA_HPP
