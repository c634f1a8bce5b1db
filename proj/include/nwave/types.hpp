// types.hpp — core domain types: spectra, potential grids, spectral lines,
// Weyl tables, and matrix waves.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "nwave/errors.hpp"

namespace nwave {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

inline double frob(const Matrix& a) { return a.norm(); }

// Diagonal spectrum D = diag(d_1, ..., d_m), all entries positive and
// pairwise distinct. The inversion pipeline is also valid when the entries
// are not decreasing, so the ordering is recorded rather than required.
struct DiagonalSpectrum {
    RealVector entries;
    bool strictly_ordered = false;

    static DiagonalSpectrum make(const std::vector<double>& d);

    int m() const { return static_cast<int>(entries.size()); }
    double d(int k) const { return entries[k]; }
    double max_entry() const { return entries.maxCoeff(); }
    double min_gap() const;

    Matrix D() const;      // diag(d_k) as a complex matrix
    Matrix Dinv() const;   // diag(1/d_k)
    Matrix Dsqrt() const;  // diag(sqrt(d_k))

    // Refuses spectra whose commutator inversion is ill conditioned.
    void require_gap(double rel_tol = 1e-3) const;
};

// Sampled m x m matrix potential on a uniform grid over [0, length],
// extended by zero outside. Valid potentials are skew-Hermitian with a
// zero main diagonal at every node.
struct PotentialGrid {
    double length = 0.0;
    std::vector<Matrix> values;

    static PotentialGrid zero(int m, double length, int n_steps);

    int nodes() const { return static_cast<int>(values.size()); }
    int steps() const { return nodes() - 1; }
    int m() const { return values.empty() ? 0 : static_cast<int>(values.front().rows()); }
    double step() const { return length / static_cast<double>(steps()); }
    double x(int i) const { return length * static_cast<double>(i) / static_cast<double>(steps()); }

    double sup_norm() const;

    // Piecewise-cubic sample at an arbitrary point; zero outside [0, length].
    Matrix at(double x) const;
};

struct PotentialValidation {
    double hermitian_defect = 0.0;  // max over nodes of ||zeta + zeta^*||
    double diagonal_defect = 0.0;   // max over nodes and k of |zeta_kk|
    double sup_norm = 0.0;
    bool passed = false;
};

PotentialValidation validate_potential(const PotentialGrid& zeta);

// Horizontal sampling line z = lambda - i*eta, lambda on a uniform grid
// symmetric about 0 with half-width Lambda.
struct SpectralLine {
    double eta = 0.0;
    double half_width = 0.0;
    double delta = 0.0;
    double m_bound = 0.0;

    static SpectralLine make(double eta, double half_width, double delta, double m_bound);

    int count() const { return 2 * static_cast<int>(std::lround(half_width / delta)) + 1; }
    double lambda(int j) const { return -half_width + delta * static_cast<double>(j); }
    Complex z(int j) const { return Complex(lambda(j), -eta); }
};

enum class WeylSource { ClosedForm, IntegralEquation, Transformed, Evolved };

std::string to_string(WeylSource s);

// Samples of a Weyl function phi(z) along one spectral line, together with
// the first asymptotic coefficient alpha of phi(z) ~ I + alpha/z.
struct WeylTable {
    SpectralLine line;
    std::vector<Matrix> phi;
    Matrix alpha;
    WeylSource source = WeylSource::ClosedForm;

    int m() const { return phi.empty() ? 0 : static_cast<int>(phi.front().rows()); }
    int count() const { return static_cast<int>(phi.size()); }
    Complex z(int j) const { return line.z(j); }
};

// Fundamental solution w(x, z) for one fixed z, sampled on the x-grid,
// normalized by w(0, z) = I.
struct MatrixWave {
    Complex z;
    double length = 0.0;
    std::vector<Matrix> values;

    int nodes() const { return static_cast<int>(values.size()); }
    double step() const { return length / static_cast<double>(nodes() - 1); }
    double x(int i) const { return length * static_cast<double>(i) / static_cast<double>(nodes() - 1); }
};

// A Weyl function as an evaluable map, for ray sweeps and certificates that
// need samples off the tabulated line. Analytic for Im z < -m_bound.
struct WeylFunction {
    std::function<Matrix(Complex)> eval;
    double m_bound = 0.0;
    int m = 0;

    Matrix operator()(Complex z) const { return eval(z); }
};

WeylTable table_from_function(const WeylFunction& fn, const SpectralLine& line,
                              const Matrix& alpha, WeylSource source);

}  // namespace nwave
