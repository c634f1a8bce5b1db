// evolution.hpp — shifted-argument Weyl functions and the time evolution
// that solves the initial-boundary value problem for the N-wave equation.

#pragma once

#include <vector>

#include "nwave/inverse_solver.hpp"
#include "nwave/types.hpp"

namespace nwave {

// phi(sigma, z) = w(sigma, z) phi(z) exp(-i sigma z D); alpha refitted.
WeylTable shifted_weyl(const DiagonalSpectrum& D, const PotentialGrid& zeta, const WeylTable& phi,
                       double sigma);

// Finite-difference residual of the shift equation
//   d phi/d sigma = iz (D phi - phi D) - zeta(sigma) phi
// for a family sampled on a uniform sigma grid.
double shifted_weyl_ode_check(const std::vector<WeylTable>& family, double sigma_step,
                              const DiagonalSpectrum& D, const PotentialGrid& zeta);

struct EvolvedWeyl {
    double t_max = 0.0;
    std::vector<WeylTable> tables;  // one per time node
    PotentialGrid zeta_breve;       // boundary generator recovered with D_breve
    // The propagator equation is integrated in t (its stated initial
    // condition lives in t); recorded here for run manifests.
    std::string derivative_variable = "t";

    int nodes() const { return static_cast<int>(tables.size()); }
    double t(int s) const { return t_max * static_cast<double>(s) / static_cast<double>(nodes() - 1); }
};

// Evolution phi(t, z) = R(t, z) phi(z) exp(-iz D_breve t), where R solves
// dR/dt = (iz D_breve - zeta_breve(t)) R with zeta_breve recovered from the
// same Weyl function using the D_breve spectrum.
EvolvedWeyl evolve_weyl(const WeylTable& phi, const DiagonalSpectrum& D_breve, double t_max,
                        int n_t, int n_inversion);

struct IbvpSolution {
    double x_max = 0.0, t_max = 0.0;
    int n_x = 0, n_t = 0;
    std::vector<std::vector<Matrix>> u;  // u[t-node][x-node], Hermitian, zero diagonal
    PotentialGrid zeta_breve;            // boundary data [D_breve, u(0,t)]
    double hermitian_defect = 0.0;

    const Matrix& at(int ix, int it) const { return u[static_cast<size_t>(it)][static_cast<size_t>(ix)]; }
};

IbvpSolution solve_ibvp(const WeylTable& phi, const DiagonalSpectrum& D,
                        const DiagonalSpectrum& D_breve, double x_max, double t_max, int n_x,
                        int n_t);

struct NwaveResidual {
    double max_norm = 0.0;
    double mean_norm = 0.0;
};

// Central-difference residual of [D, u_t] - [D_breve, u_x] = [[D,u],[D_breve,u]]
// over interior grid nodes.
NwaveResidual nwave_residual(const IbvpSolution& u, const DiagonalSpectrum& D,
                             const DiagonalSpectrum& D_breve);

// Unique zero-diagonal Hermitian solution u of [D, u] = zeta; requires zeta
// skew-Hermitian with zero diagonal.
Matrix commutator_solve(const DiagonalSpectrum& D, const Matrix& zeta);

}  // namespace nwave
