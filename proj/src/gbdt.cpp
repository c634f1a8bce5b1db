#include "nwave/gbdt.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nwave/grid.hpp"
#include "nwave/spectral_core.hpp"

namespace nwave {

namespace {

double identity_residual(const Matrix& A, const Matrix& S, const Matrix& Pi) {
    return frob(Matrix(A * S - S * A.adjoint() - kI * (Pi * Pi.adjoint())));
}

double min_eig_hermitian(const Matrix& S) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (S + S.adjoint())),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

GBDTTriple init_gbdt(const Matrix& A, const Matrix& S0, const Matrix& Pi0, double identity_tol) {
    if (A.rows() != A.cols() || S0.rows() != S0.cols() || A.rows() != S0.rows() ||
        Pi0.rows() != A.rows() || Pi0.cols() < 2)
        throw InvalidInput("init_gbdt: inconsistent dimensions");
    if (frob(Matrix(S0 - S0.adjoint())) > identity_tol * std::max(1.0, frob(S0)))
        throw InvalidDarbouxData("init_gbdt: S0 is not Hermitian");
    if (min_eig_hermitian(S0) <= 0.0)
        throw InvalidDarbouxData("init_gbdt: S0 is not positive definite");
    if (identity_residual(A, S0, Pi0) > identity_tol)
        throw InvalidDarbouxData("init_gbdt: seed data violates the operator identity");

    GBDTTriple t;
    t.n = static_cast<int>(A.rows());
    t.A = A;
    t.S0 = S0;
    t.Pi0 = Pi0;
    Eigen::ComplexEigenSolver<Matrix> es(A, false);
    t.eigA = es.eigenvalues();
    return t;
}

PropagationReport propagate_gbdt(GBDTTriple& triple, const DiagonalSpectrum& D,
                                 const PotentialGrid& zeta) {
    if (D.m() != triple.m() || zeta.m() != triple.m())
        throw InvalidInput("propagate_gbdt: dimension mismatch");
    const int n = triple.n;
    const int m = triple.m();
    const Matrix Dc = D.D();

    // Joint state [Pi | S] keeps the identity drift at integrator order.
    auto F = [&](double x, const Matrix& y) -> Matrix {
        const auto Pi = y.leftCols(m);
        const auto S = y.rightCols(n);
        Matrix dy(n, m + n);
        dy.leftCols(m) = -kI * triple.A * Pi * Dc + Pi * zeta.at(x);
        dy.rightCols(n) = Pi * Dc * Pi.adjoint();
        return dy;
    };

    Matrix y0(n, m + n);
    y0.leftCols(m) = triple.Pi0;
    y0.rightCols(n) = triple.S0;
    const auto traj = rk4_trajectory(y0, 0.0, zeta.step(), zeta.steps(), F);

    triple.length = zeta.length;
    triple.Pi.clear();
    triple.S.clear();
    PropagationReport rep;
    rep.min_eig_S = std::numeric_limits<double>::infinity();
    for (const auto& y : traj) {
        triple.Pi.push_back(y.leftCols(m));
        triple.S.push_back(y.rightCols(n));
        rep.max_identity_drift =
            std::max(rep.max_identity_drift, identity_residual(triple.A, triple.S.back(), triple.Pi.back()));
        rep.min_eig_S = std::min(rep.min_eig_S, min_eig_hermitian(triple.S.back()));
    }
    if (rep.min_eig_S <= 0.0)
        throw PositivityLoss("propagate_gbdt: S(x) lost positive definiteness");
    return rep;
}

Matrix darboux_matrix(const GBDTTriple& triple, int node, Complex z) {
    if (!triple.propagated()) throw InvalidInput("darboux_matrix: trajectories not propagated");
    for (int k = 0; k < triple.eigA.size(); ++k)
        if (std::abs(triple.eigA[k] - z) < 1e-8)
            throw ResolventSingularity("darboux_matrix: z is numerically an eigenvalue of A");
    const Matrix& Pi = triple.Pi[static_cast<size_t>(node)];
    const Matrix& S = triple.S[static_cast<size_t>(node)];
    const int n = triple.n;
    const Matrix resolvent_pi =
        (triple.A - z * Matrix::Identity(n, n)).partialPivLu().solve(Pi);
    const Matrix s_inv_part = Eigen::LDLT<Matrix>(0.5 * (S + S.adjoint())).solve(resolvent_pi);
    return Matrix::Identity(triple.m(), triple.m()) - kI * Pi.adjoint() * s_inv_part;
}

TransformedPotential transformed_potential(const GBDTTriple& triple, const DiagonalSpectrum& D,
                                           const PotentialGrid& zeta, int node) {
    if (!triple.propagated()) throw InvalidInput("transformed_potential: trajectories not propagated");
    const Matrix& Pi = triple.Pi[static_cast<size_t>(node)];
    const Matrix& S = triple.S[static_cast<size_t>(node)];
    if (min_eig_hermitian(S) <= 0.0)
        throw PositivityLoss("transformed_potential: S(x) not positive definite");
    const Matrix Q = Pi.adjoint() * Eigen::LDLT<Matrix>(0.5 * (S + S.adjoint())).solve(Pi);
    const Matrix Dc = D.D();
    const Matrix raw = zeta.values[static_cast<size_t>(node)] - (Dc * Q - Q * Dc);
    TransformedPotential out;
    out.zeta = 0.5 * (raw - raw.adjoint());
    for (int k = 0; k < out.zeta.rows(); ++k) out.zeta(k, k) = 0.0;
    out.defect = frob(Matrix(raw - out.zeta));
    return out;
}

PotentialGrid transformed_potential_grid(const GBDTTriple& triple, const DiagonalSpectrum& D,
                                         const PotentialGrid& zeta) {
    PotentialGrid g;
    g.length = zeta.length;
    g.values.reserve(zeta.values.size());
    for (int i = 0; i < zeta.nodes(); ++i)
        g.values.push_back(transformed_potential(triple, D, zeta, i).zeta);
    return g;
}

double verify_darboux_ode(const GBDTTriple& triple, const DiagonalSpectrum& D,
                          const PotentialGrid& zeta, Complex z) {
    if (!triple.propagated()) throw InvalidInput("verify_darboux_ode: trajectories not propagated");
    const int nodes = static_cast<int>(triple.S.size());
    const double h = triple.step();
    const Matrix Dc = D.D();
    std::vector<Matrix> wa(static_cast<size_t>(nodes));
    for (int i = 0; i < nodes; ++i) wa[static_cast<size_t>(i)] = darboux_matrix(triple, i, z);

    double res = 0.0;
    for (int i = 1; i + 1 < nodes; ++i) {
        const Matrix lhs = (wa[static_cast<size_t>(i + 1)] - wa[static_cast<size_t>(i - 1)]) / (2.0 * h);
        const Matrix& Pi = triple.Pi[static_cast<size_t>(i)];
        const Matrix& S = triple.S[static_cast<size_t>(i)];
        const Matrix Q = Pi.adjoint() * Eigen::LDLT<Matrix>(0.5 * (S + S.adjoint())).solve(Pi);
        const Matrix zt = zeta.values[static_cast<size_t>(i)] - (Dc * Q - Q * Dc);
        const Matrix G = kI * z * Dc - zeta.values[static_cast<size_t>(i)];
        const Matrix Gt = kI * z * Dc - zt;
        res = std::max(res, frob(Matrix(lhs - (Gt * wa[static_cast<size_t>(i)] - wa[static_cast<size_t>(i)] * G))));
    }
    return res;
}

WeylTable transformed_weyl(const GBDTTriple& triple, const DiagonalSpectrum& D,
                           const PotentialGrid& zeta, const WeylTable& phi, double sigma) {
    if (!triple.propagated()) throw InvalidInput("transformed_weyl: trajectories not propagated");
    const double h = triple.step();
    const int node = static_cast<int>(std::lround(sigma / h));
    if (node < 0 || node >= static_cast<int>(triple.S.size()) || std::abs(sigma - node * h) > 1e-8)
        throw InvalidInput("transformed_weyl: sigma must be a trajectory node");
    const int m = triple.m();

    // Shifted seed table w(sigma, z) phi(z) exp(-i sigma z D).
    WeylTable shifted;
    shifted.line = phi.line;
    shifted.source = WeylSource::Transformed;
    shifted.phi.reserve(phi.phi.size());
    PotentialGrid window;
    window.length = std::max(sigma, h);
    const int wsteps = std::max(node, 1);
    for (int i = 0; i <= wsteps; ++i)
        window.values.push_back(zeta.at(window.length * static_cast<double>(i) / wsteps));

    for (int j = 0; j < phi.count(); ++j) {
        const Complex z = phi.z(j);
        Matrix w = Matrix::Identity(m, m);
        if (node > 0) w = fundamental_solution(D, window, z).values.back();
        Matrix v = w * phi.phi[static_cast<size_t>(j)];
        for (int c = 0; c < m; ++c) v.col(c) *= std::exp(-kI * sigma * z * D.d(c));
        shifted.phi.push_back(v);
    }
    shifted.alpha = (sigma == 0.0) ? phi.alpha : validate_weyl(shifted).alpha_fit;

    const Matrix& Pi = triple.Pi[static_cast<size_t>(node)];
    const Matrix& S = triple.S[static_cast<size_t>(node)];
    const Matrix update = kI * Pi.adjoint() * Eigen::LDLT<Matrix>(0.5 * (S + S.adjoint())).solve(Pi);

    WeylTable out;
    out.line = phi.line;
    out.source = WeylSource::Transformed;
    out.alpha = shifted.alpha + update;
    out.phi.reserve(shifted.phi.size());
    for (int j = 0; j < phi.count(); ++j)
        out.phi.push_back(darboux_matrix(triple, node, phi.z(j)) * shifted.phi[static_cast<size_t>(j)]);
    return out;
}

Matrix ExampleA1::exp_factor(double xd) const {
    const Complex e = std::exp(-kI * xd * a);
    Matrix out = e * Matrix::Identity(2, 2);
    if (jordan) out(0, 1) = -kI * xd * e;
    return out;
}

Matrix ExampleA1::Pi(double x, const DiagonalSpectrum& D) const {
    Matrix out(2, f.cols());
    for (int k = 0; k < f.cols(); ++k) out.col(k) = exp_factor(x * D.d(k)) * f.col(k);
    return out;
}

Matrix ExampleA1::S(double x, const DiagonalSpectrum& D) const {
    const Matrix P = Pi(x, D) * Pi(x, D).adjoint();
    const Complex g = a - std::conj(a);
    Matrix out(2, 2);
    if (!jordan) {
        out = kI * P / g;
    } else {
        out(1, 1) = kI * P(1, 1) / g;
        out(0, 1) = (kI * P(0, 1) - out(1, 1)) / g;
        out(1, 0) = std::conj(out(0, 1));
        out(0, 0) = (kI * P(0, 0) + out(0, 1) - out(1, 0)) / g;
    }
    return out;
}

GBDTTriple ExampleA1::seed(const DiagonalSpectrum& D) const {
    return init_gbdt(jordan ? (Matrix(2, 2) << a, 1.0, 0.0, a).finished()
                            : Matrix(a * Matrix::Identity(2, 2)),
                     S(0.0, D), f);
}

}  // namespace nwave
