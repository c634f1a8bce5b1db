#include "nwave/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "nwave/grid.hpp"
#include "nwave/spectral_core.hpp"

namespace nwave {

WeylTable shifted_weyl(const DiagonalSpectrum& D, const PotentialGrid& zeta, const WeylTable& phi,
                       double sigma) {
    const int m = D.m();
    WeylTable out;
    out.line = phi.line;
    out.source = phi.source;
    out.phi.reserve(phi.phi.size());
    if (sigma == 0.0) {
        out.phi = phi.phi;
        out.alpha = phi.alpha;
        return out;
    }

    PotentialGrid window;
    window.length = sigma;
    const int steps = std::max(2, static_cast<int>(std::lround(sigma / zeta.step())));
    window.values.reserve(static_cast<size_t>(steps + 1));
    for (int i = 0; i <= steps; ++i) window.values.push_back(zeta.at(sigma * static_cast<double>(i) / steps));

    for (int j = 0; j < phi.count(); ++j) {
        const Complex z = phi.z(j);
        const Matrix w = fundamental_solution(D, window, z).values.back();
        Matrix v = w * phi.phi[static_cast<size_t>(j)];
        for (int c = 0; c < m; ++c) v.col(c) *= std::exp(-kI * sigma * z * D.d(c));
        out.phi.push_back(v);
    }
    out.alpha = validate_weyl(out).alpha_fit;
    return out;
}

double shifted_weyl_ode_check(const std::vector<WeylTable>& family, double sigma_step,
                              const DiagonalSpectrum& D, const PotentialGrid& zeta) {
    if (family.size() < 3) throw InvalidInput("shifted_weyl_ode_check: need at least 3 sigma nodes");
    const Matrix Dc = D.D();
    double res = 0.0;
    for (size_t s = 1; s + 1 < family.size(); ++s) {
        const double sigma = sigma_step * static_cast<double>(s);
        const Matrix zt = zeta.at(sigma);
        for (int j = 0; j < family[s].count(); ++j) {
            const Complex z = family[s].z(j);
            const Matrix& p = family[s].phi[static_cast<size_t>(j)];
            const Matrix lhs =
                (family[s + 1].phi[static_cast<size_t>(j)] - family[s - 1].phi[static_cast<size_t>(j)]) /
                (2.0 * sigma_step);
            const Matrix rhs = kI * z * (Dc * p - p * Dc) - zt * p;
            res = std::max(res, frob(Matrix(lhs - rhs)));
        }
    }
    return res;
}

EvolvedWeyl evolve_weyl(const WeylTable& phi, const DiagonalSpectrum& D_breve, double t_max,
                        int n_t, int n_inversion) {
    const int m = D_breve.m();
    if (phi.m() != m) throw InvalidInput("evolve_weyl: dimension mismatch");

    EvolvedWeyl out;
    out.t_max = t_max;

    // Boundary generator from the same Weyl function, spectrum D_breve.
    const auto inv = invert_weyl(phi, D_breve, t_max, n_inversion);
    out.zeta_breve = inv.zeta;

    const Matrix Dc = D_breve.D();
    const int sub = std::max(1, n_inversion / n_t);
    const double ht = t_max / static_cast<double>(n_t);

    out.tables.reserve(static_cast<size_t>(n_t + 1));
    for (int s = 0; s <= n_t; ++s) {
        WeylTable tbl;
        tbl.line = phi.line;
        tbl.source = WeylSource::Evolved;
        tbl.phi.resize(phi.phi.size());
        out.tables.push_back(std::move(tbl));
    }

    for (int j = 0; j < phi.count(); ++j) {
        const Complex z = phi.z(j);
        auto F = [&](double t, const Matrix& r) -> Matrix {
            return (kI * z * Dc - out.zeta_breve.at(t)) * r;
        };
        Matrix R = Matrix::Identity(m, m);
        for (int s = 0; s <= n_t; ++s) {
            const double t = ht * static_cast<double>(s);
            Matrix v = R * phi.phi[static_cast<size_t>(j)];
            for (int c = 0; c < m; ++c) v.col(c) *= std::exp(-kI * z * D_breve.d(c) * t);
            out.tables[static_cast<size_t>(s)].phi[static_cast<size_t>(j)] = v;
            if (s < n_t) {
                const double hsub = ht / static_cast<double>(sub);
                for (int q = 0; q < sub; ++q)
                    R = rk4_step(R, t + hsub * static_cast<double>(q), hsub, F);
            }
        }
    }
    for (auto& tbl : out.tables) tbl.alpha = validate_weyl(tbl).alpha_fit;
    return out;
}

Matrix commutator_solve(const DiagonalSpectrum& D, const Matrix& zeta) {
    const int m = D.m();
    const double defect = frob(Matrix(zeta + zeta.adjoint()));
    double diag = 0.0;
    for (int k = 0; k < m; ++k) diag = std::max(diag, std::abs(zeta(k, k)));
    if (defect > 1e-8 * std::max(1.0, frob(zeta)) || diag > 1e-8 * std::max(1.0, frob(zeta)))
        throw InvalidInput("commutator_solve: zeta must be skew-Hermitian with zero diagonal");
    Matrix u = Matrix::Zero(m, m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
            if (k != j) u(k, j) = zeta(k, j) / (D.d(k) - D.d(j));
    return u;
}

IbvpSolution solve_ibvp(const WeylTable& phi, const DiagonalSpectrum& D,
                        const DiagonalSpectrum& D_breve, double x_max, double t_max, int n_x,
                        int n_t) {
    D.require_gap();
    D_breve.require_gap();
    const auto evolved = evolve_weyl(phi, D_breve, t_max, n_t, n_t);

    IbvpSolution sol;
    sol.x_max = x_max;
    sol.t_max = t_max;
    sol.n_x = n_x;
    sol.n_t = n_t;
    sol.zeta_breve = evolved.zeta_breve;
    sol.u.reserve(static_cast<size_t>(n_t + 1));
    for (int s = 0; s <= n_t; ++s) {
        const auto inv = invert_weyl(evolved.tables[static_cast<size_t>(s)], D, x_max, n_x);
        std::vector<Matrix> slice;
        slice.reserve(static_cast<size_t>(n_x + 1));
        for (int i = 0; i <= n_x; ++i) {
            const Matrix u = commutator_solve(D, inv.zeta.values[static_cast<size_t>(i)]);
            sol.hermitian_defect =
                std::max(sol.hermitian_defect, frob(Matrix(u - u.adjoint())));
            slice.push_back(0.5 * (u + u.adjoint()));
        }
        sol.u.push_back(std::move(slice));
    }
    return sol;
}

NwaveResidual nwave_residual(const IbvpSolution& sol, const DiagonalSpectrum& D,
                             const DiagonalSpectrum& D_breve) {
    const double hx = sol.x_max / static_cast<double>(sol.n_x);
    const double ht = sol.t_max / static_cast<double>(sol.n_t);
    const Matrix Dc = D.D(), Db = D_breve.D();
    NwaveResidual res;
    int count = 0;
    double total = 0.0;
    for (int s = 1; s < sol.n_t; ++s) {
        for (int i = 1; i < sol.n_x; ++i) {
            const Matrix ut = (sol.at(i, s + 1) - sol.at(i, s - 1)) / (2.0 * ht);
            const Matrix ux = (sol.at(i + 1, s) - sol.at(i - 1, s)) / (2.0 * hx);
            const Matrix& u = sol.at(i, s);
            const Matrix cu = Dc * u - u * Dc;
            const Matrix cb = Db * u - u * Db;
            const Matrix r = (Dc * ut - ut * Dc) - (Db * ux - ux * Db) - (cu * cb - cb * cu);
            const double nr = frob(r);
            res.max_norm = std::max(res.max_norm, nr);
            total += nr;
            ++count;
        }
    }
    res.mean_norm = count > 0 ? total / static_cast<double>(count) : 0.0;
    return res;
}

}  // namespace nwave
