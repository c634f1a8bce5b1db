// inverse_solver.hpp — Weyl-to-potential inversion: contour Fourier
// synthesis of Pi, the structured kernel s, the Nystrom operator S_l, the
// endpoint map Gamma(l,l) -> zeta(l), and the resolvent-side objects
// T(x,u), K(x) with their diagnostic identities.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Cholesky>

#include "nwave/types.hpp"

namespace nwave {

// Pi and its first two derivatives on a uniform x-grid over [0, L].
struct PiGrid {
    double length = 0.0;
    std::vector<Matrix> Pi, Pi1, Pi2;

    int nodes() const { return static_cast<int>(Pi.size()); }
    int steps() const { return nodes() - 1; }
    int m() const { return Pi.empty() ? 0 : static_cast<int>(Pi.front().rows()); }
    double step() const { return length / static_cast<double>(steps()); }
    double x(int i) const { return length * static_cast<double>(i) / static_cast<double>(steps()); }
};

// Contour Fourier synthesis of Pi. The identity part and the alpha/z term
// integrate in closed form (I and ixD alpha for x >= 0); only the
// square-summable remainder of phi^{-1} is summed over the lambda grid.
PiGrid compute_Pi(const WeylTable& table, const DiagonalSpectrum& D, double L, int N);

// Kernel s(x,u) on the grid square, plus the cached two-point product
// theta(x,u) = Pi'(x) Pi'(u)^* D^{-1} used by the characteristic integrals.
struct KernelGrid {
    double length = 0.0;
    int n = 0;  // grid steps; nodes are (n+1)
    int m = 0;
    std::vector<Matrix> s;      // (n+1)^2 blocks, row-major in (x,u)
    std::vector<Matrix> theta;  // same layout

    const Matrix& at(int ix, int iu) const { return s[static_cast<size_t>(ix * (n + 1) + iu)]; }
    double step() const { return length / static_cast<double>(n); }
    double hermitian_defect_at(int i) const { return frob(Matrix(at(i, i) - at(i, i).adjoint())); }
};

KernelGrid build_kernel_s(const PiGrid& pi, const DiagonalSpectrum& D);

// Nystrom discretization of S_l f = D^{-1} f + integral(s(x,u) f(u) du) in
// the sqrt-weighted basis that makes the matrix Hermitian.
struct DiscreteOperatorS {
    double h = 0.0;
    int n = 0;  // nodes are (n+1), matrix size (n+1)*m
    int m = 0;
    double symmetrization_defect = 0.0;
    bool discretization_warning = false;  // defect above threshold (non-fatal)
    Matrix matrix;                        // Hermitian-symmetrized
    std::vector<double> weights;          // trapezoid weights on [0, l]

    int dim() const { return (n + 1) * m; }
    double min_eigenvalue() const;

    // Solve S g = rhs for grid functions given by plain node values
    // (stacked (n+1)*m rows); returns plain node values.
    Matrix solve(const Matrix& rhs_nodes) const;

private:
    mutable std::optional<Eigen::LDLT<Matrix>> ldlt_;
};

DiscreteOperatorS assemble_S(const KernelGrid& kernel, const DiagonalSpectrum& D, double l);

// Normalized residual of the coupling identity A S - S A^* = i Pi Pi^*,
// with A the Volterra map f -> iD * integral_0^x f.
double verify_identity_AS(const DiscreteOperatorS& S, const PiGrid& pi, const DiagonalSpectrum& D,
                          double l);

// Endpoint value Gamma(l,l) = D^{-1} (S^{-1} s(., l))(l) D^{1/2}.
Matrix gamma_endpoint(const DiscreteOperatorS& S, const KernelGrid& kernel,
                      const DiagonalSpectrum& D, double l);

struct ZetaRecovery {
    Matrix zeta;           // projected skew-Hermitian, zero diagonal
    double defect = 0.0;   // distance from the raw commutator value
    bool warning = false;  // defect above the configured tolerance
};

ZetaRecovery recover_zeta_at(const Matrix& gamma_ll, const DiagonalSpectrum& D,
                             double defect_tol = 1e-2);

struct InversionOptions {
    bool with_diagnostics = false;  // eigenvalues, coupling residual, K identities
    double recovery_defect_tol = 1e-2;
};

struct KResult {
    std::vector<Matrix> K;
    double unitarity_defect = 0.0;   // || K(l) K(l)^* - I ||
    double first_identity = 0.0;     // endpoint trace identity residual
    double second_identity = 0.0;    // derivative-level identity residual
};

struct InversionDiagnostics {
    Matrix alpha, alpha_hat;
    double min_eig_S = 0.0;
    double as_identity_residual = 0.0;
    double max_recovery_defect = 0.0;
    double kernel_hermitian_defect = 0.0;
    std::optional<KResult> k_residuals;
};

struct InversionResult {
    PotentialGrid zeta;
    InversionDiagnostics diagnostics;
};

// Full sweep over l: one global Pi and kernel, one growing Cholesky
// factorization of the nested Nystrom family, an exact low-rank correction
// for the right trapezoid endpoint at each l.
InversionResult invert_weyl(const WeylTable& table, const DiagonalSpectrum& D, double L, int N,
                            const InversionOptions& opts = {});

// Resolvent kernel T(x,u) of S^{-1} f = D f + integral(T(x,u) f(u) du).
struct TGrid {
    double length = 0.0;
    int n = 0;
    int m = 0;
    std::vector<Matrix> T;  // (n+1)^2 blocks, row-major in (x,u)

    const Matrix& at(int ix, int iu) const { return T[static_cast<size_t>(ix * (n + 1) + iu)]; }
    double symmetry_defect() const;  // max || T(x,u) - T(u,x)^* ||
};

TGrid build_T(const DiscreteOperatorS& S, const KernelGrid& kernel, const DiagonalSpectrum& D,
              double l);

KResult compute_K(const DiscreteOperatorS& S, const PiGrid& pi, const DiagonalSpectrum& D,
                  double l);

// Residual of I + D^{-1} int_u^l T(x,v) dv + (int_x^l T(v,u) dv) D^{-1}
//            = K(x) K(u)^*  at one grid pair.
double resolvent_product_residual(const TGrid& T, const std::vector<Matrix>& K,
                                  const DiagonalSpectrum& D, int ix, int iu);

// alpha(l) = -i D^{-1} T(l,l) D^{-1}.
Matrix alpha_shifted(const Matrix& T_ll, const DiagonalSpectrum& D);

struct AlphaPair {
    Matrix alpha;
    Matrix alpha_hat;
};

// alpha_hat keeps the upper triangle (diagonal included) of alpha and
// mirrors -conj of it below; skew-Hermitian alpha is a fixed point.
AlphaPair alpha_hat(const Matrix& alpha);

// zeta(0) = i (D alpha_hat - alpha_hat D).
Matrix zeta_at_origin(const Matrix& alpha_hat_m, const DiagonalSpectrum& D);

}  // namespace nwave
