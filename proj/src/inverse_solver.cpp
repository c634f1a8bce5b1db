#include "nwave/inverse_solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nwave/grid.hpp"
#include "nwave/spectral_core.hpp"

namespace nwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

int node_index(double l, double h, int n_max) {
    const double t = l / h;
    const int n = static_cast<int>(std::lround(t));
    if (n < 0 || n > n_max || std::abs(t - n) > 1e-8)
        throw InvalidInput("operator length l must be a grid node");
    return n;
}

// Plain node values -> sqrt-weighted coordinates and back.
Matrix apply_sqrt_weights(const Matrix& nodes, const std::vector<double>& w, int m, bool inverse) {
    Matrix out = nodes;
    for (size_t i = 0; i < w.size(); ++i) {
        const double f = std::sqrt(w[i]);
        out.middleRows(static_cast<long>(i) * m, m) *= inverse ? 1.0 / f : f;
    }
    return out;
}

}  // namespace

PiGrid compute_Pi(const WeylTable& table, const DiagonalSpectrum& D, double L, int N) {
    if (table.phi.empty()) throw InvalidInput("compute_Pi: empty table");
    const int m = table.m();
    if (m != D.m()) throw InvalidInput("compute_Pi: dimension mismatch");
    if (L * table.line.delta * D.max_entry() > kPi)
        throw AliasingRisk("compute_Pi: lambda grid too coarse for the requested x range");

    const int count = table.count();
    const Matrix I = Matrix::Identity(m, m);
    Matrix alpha = table.alpha.size() == 0 ? Matrix::Zero(m, m) : table.alpha;

    // Square-summable remainder of phi^{-1}; the identity and alpha/z parts
    // of the contour integral are added in closed form below.
    std::vector<Matrix> rho(static_cast<size_t>(count));
    std::vector<Matrix> rho_over_z(static_cast<size_t>(count));
    std::vector<Matrix> z_rho(static_cast<size_t>(count));
    std::vector<double> wq(static_cast<size_t>(count), table.line.delta);
    wq.front() *= 0.5;
    wq.back() *= 0.5;
    for (int j = 0; j < count; ++j) {
        const Complex z = table.z(j);
        const Matrix r = table.phi[static_cast<size_t>(j)].inverse() - I + alpha / z;
        rho[static_cast<size_t>(j)] = wq[static_cast<size_t>(j)] * r;
        rho_over_z[static_cast<size_t>(j)] = rho[static_cast<size_t>(j)] / z;
        z_rho[static_cast<size_t>(j)] = z * rho[static_cast<size_t>(j)];
    }

    PiGrid out;
    out.length = L;
    out.Pi.resize(static_cast<size_t>(N + 1));
    out.Pi1.resize(static_cast<size_t>(N + 1));
    out.Pi2.resize(static_cast<size_t>(N + 1));

    const Complex inv_2pii = 1.0 / (2.0 * kPi * kI);
    const double lam0 = table.line.lambda(0);
    const double dl = table.line.delta;
    const Matrix Dc = D.D();

    for (int i = 0; i <= N; ++i) {
        const double x = L * static_cast<double>(i) / static_cast<double>(N);
        Matrix Q0 = Matrix::Zero(m, m), Q1 = Matrix::Zero(m, m), Q2 = Matrix::Zero(m, m);
        Eigen::VectorXcd phase(m), phase_step(m);
        for (int k = 0; k < m; ++k) {
            phase[k] = std::exp(kI * x * Complex(lam0, -table.line.eta) * D.d(k));
            phase_step[k] = std::exp(kI * x * dl * D.d(k));
        }
        for (int j = 0; j < count; ++j) {
            const Complex zj = table.z(j);
            for (int k = 0; k < m; ++k) {
                const Complex p = phase[k];
                Q0.row(k) += p * rho_over_z[static_cast<size_t>(j)].row(k);
                Q1.row(k) += (kI * D.d(k) * p) * rho[static_cast<size_t>(j)].row(k);
                Q2.row(k) += (-D.d(k) * D.d(k) * p) * z_rho[static_cast<size_t>(j)].row(k);
                phase[k] *= phase_step[k];
            }
            (void)zj;
        }
        out.Pi[static_cast<size_t>(i)] = I - (kI * x) * (Dc * alpha) + inv_2pii * Q0;
        out.Pi1[static_cast<size_t>(i)] = -kI * (Dc * alpha) + inv_2pii * Q1;
        out.Pi2[static_cast<size_t>(i)] = inv_2pii * Q2;
    }
    return out;
}

KernelGrid build_kernel_s(const PiGrid& pi, const DiagonalSpectrum& D) {
    const int n = pi.steps();
    const int m = pi.m();
    if (m != D.m()) throw InvalidInput("build_kernel_s: dimension mismatch");
    const double h = pi.step();

    KernelGrid kg;
    kg.length = pi.length;
    kg.n = n;
    kg.m = m;
    kg.theta.resize(static_cast<size_t>((n + 1) * (n + 1)));
    kg.s.assign(static_cast<size_t>((n + 1) * (n + 1)), Matrix::Zero(m, m));

    const Matrix Dinv = D.Dinv();
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            kg.theta[static_cast<size_t>(i * (n + 1) + j)] =
                pi.Pi1[static_cast<size_t>(i)] * pi.Pi1[static_cast<size_t>(j)].adjoint() * Dinv;

    auto theta_entry = [&](int k, int j, double v, double w) -> Complex {
        double tv = std::clamp(v, 0.0, pi.length) / h;
        double tw = std::clamp(w, 0.0, pi.length) / h;
        int iv = std::clamp(static_cast<int>(std::floor(tv)), 0, n - 1);
        int iw = std::clamp(static_cast<int>(std::floor(tw)), 0, n - 1);
        const double av = tv - iv, aw = tw - iw;
        const Complex t00 = kg.theta[static_cast<size_t>(iv * (n + 1) + iw)](k, j);
        const Complex t10 = kg.theta[static_cast<size_t>((iv + 1) * (n + 1) + iw)](k, j);
        const Complex t01 = kg.theta[static_cast<size_t>(iv * (n + 1) + iw + 1)](k, j);
        const Complex t11 = kg.theta[static_cast<size_t>((iv + 1) * (n + 1) + iw + 1)](k, j);
        return (1.0 - av) * ((1.0 - aw) * t00 + aw * t01) + av * ((1.0 - aw) * t10 + aw * t11);
    };
    auto pi1_entry = [&](int k, int j, double v) -> Complex {
        double tv = std::clamp(v, 0.0, pi.length) / h;
        int iv = std::clamp(static_cast<int>(std::floor(tv)), 0, n - 1);
        const double av = tv - iv;
        return (1.0 - av) * pi.Pi1[static_cast<size_t>(iv)](k, j) +
               av * pi.Pi1[static_cast<size_t>(iv + 1)](k, j);
    };

    for (int ix = 0; ix <= n; ++ix) {
        const double x = h * ix;
        for (int iu = 0; iu <= n; ++iu) {
            const double u = h * iu;
            Matrix& sv = kg.s[static_cast<size_t>(ix * (n + 1) + iu)];
            for (int k = 0; k < m; ++k) {
                for (int j = 0; j < m; ++j) {
                    const double dk = D.d(k), dj = D.d(j);
                    // Triangular jump term. On the characteristic d_j u = d_k x
                    // the branches agree only for skew-Hermitian alpha; ties go
                    // to the first branch when d_k >= d_j, matching the
                    // endpoint limit of the kernel.
                    const double pu = dj * u, px = dk * x;
                    const bool first = (pu < px) || (pu == px && dk >= dj);
                    Complex val;
                    if (first) {
                        val = pi1_entry(k, j, x - u * dj / dk) / dk;
                    } else {
                        val = std::conj(pi1_entry(j, k, u - x * dk / dj)) / dj;
                    }
                    // Characteristic integral over gamma = [max(0, x - u dj/dk), x].
                    const double a = std::max(0.0, x - u * dj / dk);
                    if (x - a > 1e-14) {
                        const double r = dk / dj;
                        auto integrand = [&](double v) { return theta_entry(k, j, v, u + r * (v - x)); };
                        // trapezoid over grid nodes inside (a, x] plus the endpoint a
                        double v_prev = a;
                        Complex f_prev = integrand(a);
                        Complex acc = 0.0;
                        int first_node = static_cast<int>(std::ceil(a / h - 1e-12));
                        if (h * first_node <= a + 1e-14 * std::max(1.0, x)) ++first_node;
                        for (int iv = first_node; iv <= ix; ++iv) {
                            const double v = h * iv;
                            const Complex f = integrand(v);
                            acc += 0.5 * (v - v_prev) * (f_prev + f);
                            v_prev = v;
                            f_prev = f;
                        }
                        if (x - v_prev > 1e-14) acc += 0.5 * (x - v_prev) * (f_prev + integrand(x));
                        val += acc;
                    }
                    sv(k, j) = val;
                }
            }
        }
    }
    return kg;
}

double DiscreteOperatorS::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Matrix DiscreteOperatorS::solve(const Matrix& rhs_nodes) const {
    if (!ldlt_) {
        ldlt_.emplace(matrix);
        if (ldlt_->info() != Eigen::Success || ldlt_->vectorD().real().minCoeff() <= 0.0)
            throw SingularOperator("DiscreteOperatorS: operator is not positive definite");
    }
    if (n == 0) return ldlt_->solve(rhs_nodes);
    Matrix rhs_w = apply_sqrt_weights(rhs_nodes, weights, m, false);
    Matrix sol_w = ldlt_->solve(rhs_w);
    return apply_sqrt_weights(sol_w, weights, m, true);
}

DiscreteOperatorS assemble_S(const KernelGrid& kernel, const DiagonalSpectrum& D, double l) {
    const int m = kernel.m;
    if (m != D.m()) throw InvalidInput("assemble_S: dimension mismatch");
    const double h = kernel.step();
    const int n = node_index(l, h, kernel.n);

    DiscreteOperatorS S;
    S.h = h;
    S.n = n;
    S.m = m;
    S.weights = trapezoid_weights(n + 1, h);
    if (n == 0) {
        S.weights[0] = 1.0;  // no quadrature mass; operator reduces to D^{-1}
        S.matrix = D.Dinv();
        return S;
    }

    Matrix B = Matrix::Zero(S.dim(), S.dim());
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double f = std::sqrt(S.weights[static_cast<size_t>(i)] * S.weights[static_cast<size_t>(j)]);
            B.block(i * m, j * m, m, m) = f * kernel.at(i, j);
        }
        B.block(i * m, i * m, m, m) += D.Dinv();
    }
    const double bnorm = B.norm();
    S.symmetrization_defect = 0.5 * (B - B.adjoint()).norm() / std::max(bnorm, 1e-300);
    S.discretization_warning = S.symmetrization_defect > 1e-6;
    S.matrix = 0.5 * (B + B.adjoint());
    return S;
}

double verify_identity_AS(const DiscreteOperatorS& S, const PiGrid& pi, const DiagonalSpectrum& D,
                          double l) {
    const int n = node_index(l, S.h, pi.steps());
    if (n != S.n) throw InvalidInput("verify_identity_AS: S was assembled for a different l");
    const int m = S.m;
    const int dim = S.dim();
    if (n == 0) return 0.0;

    Matrix A = Matrix::Zero(dim, dim);
    const Matrix iD = kI * D.D();
    for (int i = 1; i <= n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double c = (j == 0 || j == i) ? 0.5 * S.h : S.h;
            const double f = std::sqrt(S.weights[static_cast<size_t>(i)] / S.weights[static_cast<size_t>(j)]);
            A.block(i * m, j * m, m, m) = (c * f) * iD;
        }
    }
    Matrix P = Matrix::Zero(dim, m);
    for (int i = 0; i <= n; ++i)
        P.middleRows(i * m, m) = std::sqrt(S.weights[static_cast<size_t>(i)]) * pi.Pi[static_cast<size_t>(i)];

    const Matrix R = A * S.matrix - S.matrix * A.adjoint() - kI * (P * P.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> esr(Matrix(kI * R), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> ess(S.matrix, Eigen::EigenvaluesOnly);
    const double rn = esr.eigenvalues().cwiseAbs().maxCoeff();
    const double sn = ess.eigenvalues().cwiseAbs().maxCoeff();
    return rn / sn;
}

Matrix gamma_endpoint(const DiscreteOperatorS& S, const KernelGrid& kernel,
                      const DiagonalSpectrum& D, double l) {
    const int n = node_index(l, kernel.step(), kernel.n);
    if (n != S.n) throw InvalidInput("gamma_endpoint: S was assembled for a different l");
    const int m = kernel.m;
    Matrix rhs = Matrix::Zero((n + 1) * m, m);
    for (int i = 0; i <= n; ++i) rhs.middleRows(i * m, m) = kernel.at(i, n);
    const Matrix sol = S.solve(rhs);
    const Matrix g_end = sol.middleRows(n * m, m);
    return D.Dinv() * g_end * D.Dsqrt();
}

ZetaRecovery recover_zeta_at(const Matrix& gamma_ll, const DiagonalSpectrum& D, double defect_tol) {
    const Matrix Dc = D.D();
    Matrix raw = (gamma_ll - Dc * gamma_ll * D.Dinv()) * D.Dsqrt();
    Matrix proj = 0.5 * (raw - raw.adjoint());
    for (int k = 0; k < proj.rows(); ++k) proj(k, k) = 0.0;
    ZetaRecovery rec;
    rec.zeta = proj;
    rec.defect = frob(Matrix(raw - proj));
    rec.warning = rec.defect > defect_tol;
    return rec;
}

namespace {

// Growing Cholesky factorization of the nested Nystrom family (uniform
// weights except the left endpoint), with an exact rank-2m correction per l
// for the right trapezoid endpoint.
class SweepSolver {
public:
    SweepSolver(const KernelGrid& kernel, const DiagonalSpectrum& D)
        : m_(kernel.m), n_(kernel.n), h_(kernel.step()) {
        const int dim = (n_ + 1) * m_;
        G_ = Matrix::Zero(dim, dim);
        L_ = Matrix::Zero(dim, dim);
        w_.assign(static_cast<size_t>(n_ + 1), h_);
        w_[0] = 0.5 * h_;
        shat_.resize(static_cast<size_t>((n_ + 1) * (n_ + 1)));
        for (int i = 0; i <= n_; ++i)
            for (int j = 0; j <= n_; ++j)
                shat_[static_cast<size_t>(i * (n_ + 1) + j)] =
                    0.5 * (kernel.at(i, j) + kernel.at(j, i).adjoint());
        for (int i = 0; i <= n_; ++i) {
            for (int j = 0; j <= n_; ++j) {
                const double f = std::sqrt(w_[static_cast<size_t>(i)] * w_[static_cast<size_t>(j)]);
                G_.block(i * m_, j * m_, m_, m_) = f * shat(i, j);
            }
            G_.block(i * m_, i * m_, m_, m_) += D.Dinv();
        }
        extended_ = 0;
    }

    const Matrix& shat(int i, int j) const { return shat_[static_cast<size_t>(i * (n_ + 1) + j)]; }

    // Ensure the factorization covers nodes 0..n.
    void extend(int n) {
        while (extended_ <= n) {
            const int k = extended_;
            const int p = k * m_;
            Matrix corner = G_.block(p, p, m_, m_);
            if (k > 0) {
                const auto Lp = L_.topLeftCorner(p, p).triangularView<Eigen::Lower>();
                const Matrix y = Lp.solve(G_.block(0, p, p, m_));
                L_.block(p, 0, m_, p) = y.adjoint();
                corner -= y.adjoint() * y;
            }
            Eigen::LLT<Matrix> llt(corner);
            if (llt.info() != Eigen::Success)
                throw SingularOperator("inversion sweep: discretized operator lost positivity");
            L_.block(p, p, m_, m_) = llt.matrixL();
            ++extended_;
        }
    }

    // Solve the endpoint-corrected system at l = x_n for the given stacked
    // right-hand side in plain node values; returns plain node values.
    Matrix corrected_solve(int n, const Matrix& rhs_nodes) {
        extend(n);
        const int dim = (n + 1) * m_;
        std::vector<double> wt = trapezoid_weights(n + 1, h_);
        Matrix rhs_w = rhs_nodes;
        for (int i = 0; i <= n; ++i)
            rhs_w.middleRows(i * m_, m_) *= std::sqrt(wt[static_cast<size_t>(i)]);

        auto Lp = L_.topLeftCorner(dim, dim).triangularView<Eigen::Lower>();
        auto Up = L_.topLeftCorner(dim, dim).adjoint().triangularView<Eigen::Upper>();
        auto gsolve = [&](const Matrix& b) -> Matrix { return Up.solve(Matrix(Lp.solve(b))); };

        Matrix Yb = gsolve(rhs_w);
        Matrix sol_w;
        if (n == 0) {
            sol_w = Yb;  // no correction at the degenerate single node
        } else {
            const double beta = 1.0 / std::sqrt(2.0) - 1.0;
            Matrix U = Matrix::Zero(dim, 2 * m_);
            U.block(0, 0, dim, m_) = G_.block(0, n * m_, dim, m_);
            U.block(n * m_, 0, m_, m_).setZero();
            U.block(n * m_, m_, m_, m_) = Matrix::Identity(m_, m_);
            Matrix Mhat = Matrix::Zero(2 * m_, 2 * m_);
            Mhat.block(0, m_, m_, m_) = beta * Matrix::Identity(m_, m_);
            Mhat.block(m_, 0, m_, m_) = beta * Matrix::Identity(m_, m_);
            Mhat.block(m_, m_, m_, m_) = -0.5 * h_ * shat(n, n);
            const Matrix Yu = gsolve(U);
            const Matrix cap = Mhat.inverse() + U.adjoint() * Yu;
            sol_w = Yb - Yu * cap.lu().solve(U.adjoint() * Yb);
        }
        for (int i = 0; i <= n; ++i)
            sol_w.middleRows(i * m_, m_) /= std::sqrt(wt[static_cast<size_t>(i)] > 0.0
                                                          ? wt[static_cast<size_t>(i)]
                                                          : 1.0);
        return sol_w;
    }

    int m() const { return m_; }
    double h() const { return h_; }

private:
    int m_, n_;
    double h_;
    int extended_;
    Matrix G_, L_;
    std::vector<double> w_;
    std::vector<Matrix> shat_;
};

}  // namespace

InversionResult invert_weyl(const WeylTable& table, const DiagonalSpectrum& D, double L, int N,
                            const InversionOptions& opts) {
    D.require_gap();
    const WeylValidation val = validate_weyl(table);
    if (!val.passed)
        throw InvalidInput("invert_weyl: table fails the asymptotic Weyl validation");

    const int m = D.m();
    const PiGrid pi = compute_Pi(table, D, L, N);
    const KernelGrid kernel = build_kernel_s(pi, D);
    const Matrix alpha = table.alpha.size() == 0 ? val.alpha_fit : table.alpha;

    SweepSolver sweep(kernel, D);
    InversionResult out;
    out.zeta.length = L;
    out.zeta.values.reserve(static_cast<size_t>(N + 1));
    double max_defect = 0.0;

    for (int n = 0; n <= N; ++n) {
        Matrix gamma;
        if (n == 0) {
            gamma = kernel.at(0, 0) * D.Dsqrt();
        } else {
            Matrix rhs = Matrix::Zero((n + 1) * m, m);
            for (int i = 0; i <= n; ++i) rhs.middleRows(i * m, m) = kernel.at(i, n);
            const Matrix sol = sweep.corrected_solve(n, rhs);
            gamma = D.Dinv() * sol.middleRows(n * m, m) * D.Dsqrt();
        }
        const ZetaRecovery rec = recover_zeta_at(gamma, D, opts.recovery_defect_tol);
        max_defect = std::max(max_defect, rec.defect);
        out.zeta.values.push_back(rec.zeta);
    }

    out.diagnostics.alpha = alpha;
    out.diagnostics.alpha_hat = alpha_hat(alpha).alpha_hat;
    out.diagnostics.max_recovery_defect = max_defect;
    double kdef = 0.0;
    for (int i = 0; i <= kernel.n; ++i) kdef = std::max(kdef, kernel.hermitian_defect_at(i));
    out.diagnostics.kernel_hermitian_defect = kdef;

    if (opts.with_diagnostics) {
        const DiscreteOperatorS S = assemble_S(kernel, D, L);
        out.diagnostics.min_eig_S = S.min_eigenvalue();
        out.diagnostics.as_identity_residual = verify_identity_AS(S, pi, D, L);
        out.diagnostics.k_residuals = compute_K(S, pi, D, L);
    }
    return out;
}

double TGrid::symmetry_defect() const {
    double d = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) d = std::max(d, frob(Matrix(at(i, j) - at(j, i).adjoint())));
    return d;
}

TGrid build_T(const DiscreteOperatorS& S, const KernelGrid& kernel, const DiagonalSpectrum& D,
              double l) {
    const int n = node_index(l, kernel.step(), kernel.n);
    if (n != S.n) throw InvalidInput("build_T: S was assembled for a different l");
    const int m = kernel.m;
    const int dim = (n + 1) * m;

    Matrix Smat = Matrix::Zero(dim, dim);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) Smat.block(i * m, j * m, m, m) = kernel.at(i, j);

    const Matrix Q = S.solve(Smat);
    Matrix WS = Smat;
    const std::vector<double> wt = trapezoid_weights(n + 1, kernel.step());
    for (int i = 0; i <= n; ++i) WS.middleRows(i * m, m) *= wt[static_cast<size_t>(i)];
    const Matrix R = Q.adjoint() * WS;

    TGrid tg;
    tg.length = l;
    tg.n = n;
    tg.m = m;
    tg.T.resize(static_cast<size_t>((n + 1) * (n + 1)));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            Matrix blk = -Smat.block(i * m, j * m, m, m) + R.block(i * m, j * m, m, m);
            for (int k = 0; k < m; ++k)
                for (int p = 0; p < m; ++p) blk(k, p) *= D.d(k) * D.d(p);
            tg.T[static_cast<size_t>(i * (n + 1) + j)] = blk;
        }
    return tg;
}

KResult compute_K(const DiscreteOperatorS& S, const PiGrid& pi, const DiagonalSpectrum& D,
                  double l) {
    const int n = node_index(l, S.h, pi.steps());
    if (n != S.n) throw InvalidInput("compute_K: S was assembled for a different l");
    const int m = S.m;
    Matrix rhs = Matrix::Zero((n + 1) * m, m);
    for (int i = 0; i <= n; ++i) rhs.middleRows(i * m, m) = pi.Pi[static_cast<size_t>(i)];
    const Matrix sol = S.solve(rhs);

    KResult res;
    res.K.reserve(static_cast<size_t>(n + 1));
    const Matrix Dinv = D.Dinv();
    for (int i = 0; i <= n; ++i) res.K.push_back(Dinv * sol.middleRows(i * m, m));

    const Matrix I = Matrix::Identity(m, m);
    res.unitarity_defect = frob(Matrix(res.K.back() * res.K.back().adjoint() - I));

    const std::vector<double> wt = trapezoid_weights(n + 1, S.h);
    Matrix G1 = Matrix::Zero(m, m), G2 = Matrix::Zero(m, m);
    for (int i = 0; i <= n; ++i) {
        G1 += wt[static_cast<size_t>(i)] * res.K[static_cast<size_t>(i)].adjoint() * pi.Pi1[static_cast<size_t>(i)];
        G2 += wt[static_cast<size_t>(i)] * res.K[static_cast<size_t>(i)].adjoint() * (Dinv * pi.Pi2[static_cast<size_t>(i)]);
    }
    res.first_identity = frob(Matrix(I - G1 - res.K.front().adjoint()));

    if (n >= 2) {
        const Matrix K1p =
            (-3.0 * res.K[0] + 4.0 * res.K[1] - res.K[2]) / (2.0 * S.h);
        res.second_identity =
            frob(Matrix(G2 - K1p.adjoint() * Dinv + (I - G1) * Dinv * pi.Pi1.front()));
    }
    return res;
}

double resolvent_product_residual(const TGrid& T, const std::vector<Matrix>& K,
                                  const DiagonalSpectrum& D, int ix, int iu) {
    const int n = T.n;
    const int m = T.m;
    const double h = T.length / static_cast<double>(n);
    const Matrix I = Matrix::Identity(m, m);
    auto tail_int = [&](bool row_fixed, int fixed, int from) {
        Matrix acc = Matrix::Zero(m, m);
        for (int v = from; v <= n; ++v) {
            const double w = (v == from || v == n) ? 0.5 * h : h;
            acc += w * (row_fixed ? T.at(fixed, v) : T.at(v, fixed));
        }
        if (from == n) acc.setZero();
        return acc;
    };
    const Matrix lhs = I + D.Dinv() * tail_int(true, ix, iu) + tail_int(false, iu, ix) * D.Dinv();
    return frob(Matrix(lhs - K[static_cast<size_t>(ix)] * K[static_cast<size_t>(iu)].adjoint()));
}

Matrix alpha_shifted(const Matrix& T_ll, const DiagonalSpectrum& D) {
    return -kI * D.Dinv() * T_ll * D.Dinv();
}

AlphaPair alpha_hat(const Matrix& alpha) {
    AlphaPair pair;
    pair.alpha = alpha;
    const int m = static_cast<int>(alpha.rows());
    pair.alpha_hat = alpha;
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < k; ++j) pair.alpha_hat(k, j) = -std::conj(alpha(j, k));
    return pair;
}

Matrix zeta_at_origin(const Matrix& alpha_hat_m, const DiagonalSpectrum& D) {
    const Matrix Dc = D.D();
    return kI * (Dc * alpha_hat_m - alpha_hat_m * Dc);
}

}  // namespace nwave
