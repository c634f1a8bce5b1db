// spectral_core.hpp — direct problem: fundamental solutions, Weyl-function
// construction (closed-form and integral-equation), validation, and
// asymptotic coefficients.

#pragma once

#include <optional>
#include <vector>

#include "nwave/types.hpp"

namespace nwave {

struct FundamentalOptions {
    // Guard against steps too coarse for the local dynamics.
    double step_budget = 1.5;  // require h*(|z|*d_max + sup|zeta|) <= budget
};

// Solves Y_x = (izD - zeta(x)) Y on the grid of zeta with w(0, z) = I.
MatrixWave fundamental_solution(const DiagonalSpectrum& D, const PotentialGrid& zeta, Complex z,
                                const FundamentalOptions& opts = {});

// Same solve at half step size, restricted back to the original nodes.
// Used as a self-consistency oracle.
MatrixWave fundamental_solution_halved(const DiagonalSpectrum& D, const PotentialGrid& zeta,
                                       Complex z, const FundamentalOptions& opts = {});

// Closed-form model for the m = 2 constant potential
//   zeta = [[0, -q], [conj(q), 0]].
// The eigenvector matrix T(z) of izD - zeta is a Weyl function of this
// system; the square-root branch is fixed so that lambda_k(z) - iz d_k -> 0
// at infinity.
class ConstantPotentialModel {
public:
    ConstantPotentialModel(const DiagonalSpectrum& D, Complex q);

    Complex lambda1(Complex z) const;
    Complex lambda2(Complex z) const;
    Matrix T(Complex z) const;
    Matrix w(double x, Complex z) const;  // T(z) exp(x Lambda(z)) T(z)^{-1}
    Matrix alpha() const;                 // i/(d1-d2) * [[0, q], [conj q, 0]]
    Matrix zeta_value() const;            // [[0,-q],[conj q, 0]]
    PotentialGrid zeta_grid(double length, int n_steps) const;

    WeylFunction weyl_function() const;
    WeylTable weyl_table(const SpectralLine& line) const;

    // Analyticity bound: the branch points sit at |z| = 2|q|/(d1-d2) on the
    // imaginary axis.
    double m_bound() const;

private:
    // sqrt((d1-d2)^2 z^2 + 4|q|^2) on the branch asymptotic to (d1-d2) z.
    Complex root(Complex z) const;

    DiagonalSpectrum d_;
    Complex q_;
};

// Spec op: table of T(z) samples with alpha set from the closed form.
WeylTable weyl_constant(const DiagonalSpectrum& D, Complex q, const SpectralLine& line);

struct MarchenkoOptions {
    int max_iterations = 400;
    double tolerance = 1e-12;
};

struct MarchenkoResult {
    std::vector<Matrix> M;  // M(x, z) on the zeta grid
    Matrix phi;             // M(0, z)
    int iterations = 0;
    double final_delta = 0.0;
};

// Fixed point of f -> I + K f, where K applies the triangular split kernel:
// strictly upper-triangular products are integrated from +infinity, lower
// (diagonal included) from -infinity. The potential is extended by zero off
// its grid, so all integrals collapse to the support.
MarchenkoResult marchenko_M(const DiagonalSpectrum& D, const PotentialGrid& zeta, Complex z,
                            const MarchenkoOptions& opts = {});

// Default line height for a given potential: keeps the iteration strongly
// contractive in practice.
double default_eta(const PotentialGrid& zeta);

// Weyl table sampled through the integral equation, alpha from the first
// asymptotic coefficient of the potential.
WeylTable weyl_from_marchenko(const DiagonalSpectrum& D, const PotentialGrid& zeta,
                              const SpectralLine& line, const MarchenkoOptions& opts = {});

// Evaluable Weyl function backed by the integral equation.
WeylFunction marchenko_weyl_function(const DiagonalSpectrum& D, const PotentialGrid& zeta,
                                     double m_bound, const MarchenkoOptions& opts = {});

// First asymptotic coefficient M1(x): off-diagonal entries solve
// i[D, M1] = zeta entrywise, diagonal entries by quadrature. Skew-Hermitian.
std::vector<Matrix> compute_M1(const DiagonalSpectrum& D, const PotentialGrid& zeta);

struct WeylValidation {
    double sup_z_phi_minus_I = 0.0;
    Matrix alpha_fit;              // least-squares fit over the outer third
    double remainder_l2 = 0.0;     // discrete L2 norm of z(phi - I - alpha/z)
    double remainder_slope = 0.0;  // log-log trend of the remainder tail
    double inv_remainder_l2 = 0.0;
    double inv_remainder_slope = 0.0;
    double alpha_consistency = 0.0;  // || fit from phi + fit from phi^{-1} ||
    double alpha_skew_defect = 0.0;  // || alpha + alpha^* ||
    bool square_summable = false;
    bool passed = false;
};

WeylValidation validate_weyl(const WeylTable& table);

struct CertificateOptions {
    double r = 1.0;         // damping exponent in the truncated integral
    double ceiling = 50.0;  // boundedness threshold for the sup
    int n_steps = 200;      // x-resolution used for the wave solves
};

struct CertificateReport {
    double sup = 0.0;             // sup over x <= l and z samples of ||w phi e^{-ixzD}||
    double integral_norm = 0.0;   // truncated damped Gram integral on [0, l]
    bool passed = false;
};

// Direct boundedness check of the Weyl property on a finite window.
CertificateReport weyl_certificate(const DiagonalSpectrum& D, const PotentialGrid& zeta,
                                   const WeylFunction& phi, double l,
                                   const std::vector<Complex>& z_samples,
                                   const CertificateOptions& opts = {});

}  // namespace nwave
