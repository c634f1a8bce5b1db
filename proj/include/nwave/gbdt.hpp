// gbdt.hpp — generalized Backlund-Darboux transformation: seed data
// (A, S(0), Pi(0)) bound by the operator identity, joint trajectories of
// Pi and S, Darboux matrices, transformed potentials and Weyl functions.

#pragma once

#include <vector>

#include "nwave/types.hpp"

namespace nwave {

struct GBDTTriple {
    int n = 0;  // internal dimension
    Matrix A;
    Matrix S0;
    Matrix Pi0;  // n x m
    Eigen::VectorXcd eigA;

    // Trajectories along the x-grid, filled by propagate_gbdt.
    double length = 0.0;
    std::vector<Matrix> S;
    std::vector<Matrix> Pi;

    int m() const { return static_cast<int>(Pi0.cols()); }
    bool propagated() const { return !S.empty(); }
    double step() const { return length / static_cast<double>(S.size() - 1); }
    double x(int i) const { return step() * static_cast<double>(i); }
};

// Validates S0 = S0^* > 0 and the seed identity A S0 - S0 A^* = i Pi0 Pi0^*.
GBDTTriple init_gbdt(const Matrix& A, const Matrix& S0, const Matrix& Pi0,
                     double identity_tol = 1e-10);

struct PropagationReport {
    double max_identity_drift = 0.0;  // worst || A S - S A^* - i Pi Pi^* || on the grid
    double min_eig_S = 0.0;
};

// Joint integration of Pi_x = -i A Pi D + Pi zeta and S_x = Pi D Pi^* on the
// grid of zeta. Keeps the operator identity at integrator order.
PropagationReport propagate_gbdt(GBDTTriple& triple, const DiagonalSpectrum& D,
                                 const PotentialGrid& zeta);

// Darboux matrix w_A(x, z) = I - i Pi(x)^* S(x)^{-1} (A - z I)^{-1} Pi(x)
// at grid node i. Two linear solves; z must stay off spec(A).
Matrix darboux_matrix(const GBDTTriple& triple, int node, Complex z);

// Transformed potential: zeta(x) minus the commutator of D with the
// Hermitian matrix Pi(x)^* S(x)^{-1} Pi(x).
struct TransformedPotential {
    Matrix zeta;           // projected skew-Hermitian zero-diagonal value
    double defect = 0.0;   // projection distance
};

TransformedPotential transformed_potential(const GBDTTriple& triple, const DiagonalSpectrum& D,
                                           const PotentialGrid& zeta, int node);

PotentialGrid transformed_potential_grid(const GBDTTriple& triple, const DiagonalSpectrum& D,
                                         const PotentialGrid& zeta);

// Central-difference check that w_A intertwines the seed and transformed
// systems: d/dx w_A = (izD - zeta~) w_A - w_A (izD - zeta).
double verify_darboux_ode(const GBDTTriple& triple, const DiagonalSpectrum& D,
                          const PotentialGrid& zeta, Complex z);

// Weyl table of the transformed system with argument shifted by sigma:
// w_A(sigma, z) w(sigma, z) phi(z) exp(-i sigma z D), with the asymptotic
// coefficient updated by i Pi(sigma)^* S(sigma)^{-1} Pi(sigma).
WeylTable transformed_weyl(const GBDTTriple& triple, const DiagonalSpectrum& D,
                           const PotentialGrid& zeta, const WeylTable& phi, double sigma);

// Closed-form trajectories for the zero-seed example: A either a*I_2 or the
// 2x2 Jordan cell with eigenvalue a, Pi columns exp(-i x d_k A) f_k, S from
// the operator identity. Used as an exact regression baseline.
struct ExampleA1 {
    bool jordan = false;
    Complex a;
    Matrix f;  // 2 x m initial columns

    Matrix exp_factor(double xd) const;  // exp(-i xd A)
    Matrix Pi(double x, const DiagonalSpectrum& D) const;
    Matrix S(double x, const DiagonalSpectrum& D) const;
    GBDTTriple seed(const DiagonalSpectrum& D) const;
};

}  // namespace nwave
