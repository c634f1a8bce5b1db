#include "nwave/spectral_core.hpp"

#include <algorithm>
#include <cmath>

#include "nwave/grid.hpp"

namespace nwave {

namespace {

void require_valid(const DiagonalSpectrum& D, const PotentialGrid& zeta) {
    if (zeta.m() != D.m()) throw InvalidInput("potential dimension does not match spectrum");
    const auto rep = validate_potential(zeta);
    if (!rep.passed) throw InvalidInput("potential is not skew-Hermitian with zero diagonal");
}

std::vector<Matrix> integrate_wave(const DiagonalSpectrum& D, const PotentialGrid& zeta, Complex z,
                                   double h, int n_steps, const FundamentalOptions& opts) {
    const double scale = std::abs(z) * D.max_entry() + zeta.sup_norm();
    if (h * scale > opts.step_budget)
        throw IntegrationFailure("fundamental_solution: step too coarse for |z| and the potential");
    const Matrix Dc = D.D();
    auto F = [&](double x, const Matrix& y) -> Matrix {
        return (kI * z) * (Dc * y) - zeta.at(x) * y;
    };
    const int m = D.m();
    return rk4_trajectory(Matrix::Identity(m, m), 0.0, h, n_steps, F);
}

}  // namespace

MatrixWave fundamental_solution(const DiagonalSpectrum& D, const PotentialGrid& zeta, Complex z,
                                const FundamentalOptions& opts) {
    require_valid(D, zeta);
    MatrixWave w;
    w.z = z;
    w.length = zeta.length;
    w.values = integrate_wave(D, zeta, z, zeta.step(), zeta.steps(), opts);
    return w;
}

MatrixWave fundamental_solution_halved(const DiagonalSpectrum& D, const PotentialGrid& zeta,
                                       Complex z, const FundamentalOptions& opts) {
    require_valid(D, zeta);
    const auto fine = integrate_wave(D, zeta, z, 0.5 * zeta.step(), 2 * zeta.steps(), opts);
    MatrixWave w;
    w.z = z;
    w.length = zeta.length;
    w.values.reserve(static_cast<size_t>(zeta.nodes()));
    for (int i = 0; i < zeta.nodes(); ++i) w.values.push_back(fine[static_cast<size_t>(2 * i)]);
    return w;
}

ConstantPotentialModel::ConstantPotentialModel(const DiagonalSpectrum& D, Complex q)
    : d_(D), q_(q) {
    if (D.m() != 2) throw InvalidInput("ConstantPotentialModel: m must be 2");
}

Complex ConstantPotentialModel::root(Complex z) const {
    const double delta = d_.d(0) - d_.d(1);
    const Complex dz = delta * z;
    const double q2 = std::norm(q_);
    if (std::abs(dz * dz + 4.0 * q2) < 1e-14 * (std::norm(dz) + 4.0 * q2))
        throw BranchPointOnGrid("constant-potential model: sample at a branch point");
    if (std::abs(dz) == 0.0)
        throw BranchPointOnGrid("constant-potential model: z = 0 is on the branch cut");
    const Complex w = 4.0 * q2 / (dz * dz);
    const Complex one_plus = 1.0 + w;
    if (one_plus.real() <= 0.0 && std::abs(one_plus.imag()) < 1e-14 * std::abs(one_plus.real()))
        throw BranchPointOnGrid("constant-potential model: sample on the branch cut");
    return dz * std::sqrt(one_plus);
}

Complex ConstantPotentialModel::lambda1(Complex z) const {
    return 0.5 * kI * ((d_.d(0) + d_.d(1)) * z + root(z));
}

Complex ConstantPotentialModel::lambda2(Complex z) const {
    return 0.5 * kI * ((d_.d(0) + d_.d(1)) * z - root(z));
}

Matrix ConstantPotentialModel::T(Complex z) const {
    const double delta = d_.d(0) - d_.d(1);
    const Complex denom = root(z) + delta * z;
    if (std::abs(denom) < 1e-300)
        throw BranchPointOnGrid("constant-potential model: degenerate eigenvector scale");
    Matrix t = Matrix::Identity(2, 2);
    t(0, 1) = 2.0 * kI * q_ / denom;
    t(1, 0) = 2.0 * kI * std::conj(q_) / denom;
    return t;
}

Matrix ConstantPotentialModel::w(double x, Complex z) const {
    const Matrix t = T(z);
    Matrix e = Matrix::Zero(2, 2);
    e(0, 0) = std::exp(x * lambda1(z));
    e(1, 1) = std::exp(x * lambda2(z));
    return t * e * t.inverse();
}

Matrix ConstantPotentialModel::alpha() const {
    const double delta = d_.d(0) - d_.d(1);
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = kI * q_ / delta;
    a(1, 0) = kI * std::conj(q_) / delta;
    return a;
}

Matrix ConstantPotentialModel::zeta_value() const {
    Matrix zmat = Matrix::Zero(2, 2);
    zmat(0, 1) = -q_;
    zmat(1, 0) = std::conj(q_);
    return zmat;
}

PotentialGrid ConstantPotentialModel::zeta_grid(double length, int n_steps) const {
    PotentialGrid g;
    g.length = length;
    g.values.assign(static_cast<size_t>(n_steps + 1), zeta_value());
    return g;
}

double ConstantPotentialModel::m_bound() const {
    return 2.0 * std::abs(q_) / std::abs(d_.d(0) - d_.d(1));
}

WeylFunction ConstantPotentialModel::weyl_function() const {
    ConstantPotentialModel copy = *this;
    WeylFunction fn;
    fn.m = 2;
    fn.m_bound = m_bound();
    fn.eval = [copy](Complex z) { return copy.T(z); };
    return fn;
}

WeylTable ConstantPotentialModel::weyl_table(const SpectralLine& line) const {
    return table_from_function(weyl_function(), line, alpha(), WeylSource::ClosedForm);
}

WeylTable weyl_constant(const DiagonalSpectrum& D, Complex q, const SpectralLine& line) {
    if (D.d(0) == D.d(1)) throw InvalidInput("weyl_constant: d1 must differ from d2");
    return ConstantPotentialModel(D, q).weyl_table(line);
}

MarchenkoResult marchenko_M(const DiagonalSpectrum& D, const PotentialGrid& zeta, Complex z,
                            const MarchenkoOptions& opts) {
    require_valid(D, zeta);
    const int m = D.m();
    const int n = zeta.steps();
    const double h = zeta.step();

    // Split by spectral value: pairs with d_k > d_j are integrated from the
    // right (they decay there), the rest including the diagonal from the
    // left. For a decreasing spectrum this is the usual triangular split.
    // Cell propagation factors all have modulus <= 1.
    Matrix fp = Matrix::Zero(m, m), fm = Matrix::Zero(m, m);
    std::vector<std::pair<int, int>> plus, minus;
    for (int k = 0; k < m; ++k) {
        for (int j = 0; j < m; ++j) {
            const double dkj = D.d(k) - D.d(j);
            if (dkj > 0.0) {
                plus.emplace_back(k, j);
                fp(k, j) = std::exp(-kI * h * z * dkj);
            } else {
                minus.emplace_back(k, j);
                fm(k, j) = std::exp(kI * h * z * dkj);
            }
        }
    }

    MarchenkoResult res;
    res.M.assign(static_cast<size_t>(n + 1), Matrix::Identity(m, m));
    std::vector<Matrix> H(static_cast<size_t>(n + 1));
    std::vector<Matrix> next(static_cast<size_t>(n + 1));

    for (int it = 0; it < opts.max_iterations; ++it) {
        for (int i = 0; i <= n; ++i) H[static_cast<size_t>(i)] = zeta.values[static_cast<size_t>(i)] * res.M[static_cast<size_t>(i)];
        for (int i = 0; i <= n; ++i) next[static_cast<size_t>(i)] = Matrix::Identity(m, m);

        for (const auto& [k, j] : plus) {
            const Complex f = fp(k, j);
            Complex acc = 0.0;
            for (int i = n - 1; i >= 0; --i) {
                acc = 0.5 * h * H[static_cast<size_t>(i)](k, j) + f * (0.5 * h * H[static_cast<size_t>(i + 1)](k, j) + acc);
                next[static_cast<size_t>(i)](k, j) += acc;
            }
        }
        for (const auto& [k, j] : minus) {
            const Complex f = fm(k, j);
            Complex acc = 0.0;
            for (int i = 1; i <= n; ++i) {
                acc = f * acc + 0.5 * h * (f * H[static_cast<size_t>(i - 1)](k, j) + H[static_cast<size_t>(i)](k, j));
                next[static_cast<size_t>(i)](k, j) -= acc;
            }
        }

        double delta = 0.0;
        for (int i = 0; i <= n; ++i)
            delta = std::max(delta, frob(Matrix(next[static_cast<size_t>(i)] - res.M[static_cast<size_t>(i)])));
        res.M.swap(next);
        res.iterations = it + 1;
        res.final_delta = delta;
        if (delta <= opts.tolerance) {
            res.phi = res.M.front();
            return res;
        }
    }
    throw ContractionFailure("marchenko_M: Picard iteration did not converge (potential too large or eta too small)");
}

double default_eta(const PotentialGrid& zeta) {
    return std::max(2.0 * zeta.sup_norm(), 1.0) + 1.0;
}

WeylTable weyl_from_marchenko(const DiagonalSpectrum& D, const PotentialGrid& zeta,
                              const SpectralLine& line, const MarchenkoOptions& opts) {
    WeylTable t;
    t.line = line;
    t.source = WeylSource::IntegralEquation;
    t.alpha = compute_M1(D, zeta).front();
    t.phi.reserve(static_cast<size_t>(line.count()));
    for (int jj = 0; jj < line.count(); ++jj)
        t.phi.push_back(marchenko_M(D, zeta, line.z(jj), opts).phi);
    return t;
}

WeylFunction marchenko_weyl_function(const DiagonalSpectrum& D, const PotentialGrid& zeta,
                                     double m_bound, const MarchenkoOptions& opts) {
    WeylFunction fn;
    fn.m = D.m();
    fn.m_bound = m_bound;
    fn.eval = [D, zeta, opts](Complex z) { return marchenko_M(D, zeta, z, opts).phi; };
    return fn;
}

std::vector<Matrix> compute_M1(const DiagonalSpectrum& D, const PotentialGrid& zeta) {
    require_valid(D, zeta);
    const int m = D.m();
    const int n = zeta.steps();
    const double h = zeta.step();
    std::vector<Matrix> M1(static_cast<size_t>(n + 1), Matrix::Zero(m, m));

    for (int i = 0; i <= n; ++i) {
        const Matrix& zt = zeta.values[static_cast<size_t>(i)];
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j)
                if (k != j) M1[static_cast<size_t>(i)](k, j) = -kI * zt(k, j) / (D.d(k) - D.d(j));
    }
    // Diagonal entries accumulate -i * sum_j |zeta_kj|^2 / (d_j - d_k).
    for (int k = 0; k < m; ++k) {
        auto rate = [&](int i) {
            double s = 0.0;
            const Matrix& zt = zeta.values[static_cast<size_t>(i)];
            for (int j = 0; j < m; ++j)
                if (j != k) s += std::norm(zt(k, j)) / (D.d(j) - D.d(k));
            return s;
        };
        double acc = 0.0;
        double prev = rate(0);
        for (int i = 1; i <= n; ++i) {
            const double cur = rate(i);
            acc += 0.5 * h * (prev + cur);
            prev = cur;
            M1[static_cast<size_t>(i)](k, k) = -kI * acc;
        }
    }
    return M1;
}

WeylValidation validate_weyl(const WeylTable& table) {
    if (table.phi.empty()) throw InvalidInput("validate_weyl: empty table");
    const int m = table.m();
    const int count = table.count();
    const Matrix I = Matrix::Identity(m, m);

    WeylValidation rep;
    std::vector<Matrix> g(static_cast<size_t>(count)), ginv(static_cast<size_t>(count));
    for (int j = 0; j < count; ++j) {
        const Matrix& p = table.phi[static_cast<size_t>(j)];
        const Complex det = p.determinant();
        if (!(std::abs(det) > 1e-12))
            throw NotInvertible("validate_weyl: singular sample at lambda = " +
                                std::to_string(table.line.lambda(j)));
        const Complex z = table.z(j);
        g[static_cast<size_t>(j)] = z * (p - I);
        ginv[static_cast<size_t>(j)] = z * (p.inverse() - I);
        rep.sup_z_phi_minus_I = std::max(rep.sup_z_phi_minus_I, frob(g[static_cast<size_t>(j)]));
    }

    // Fit alpha as the least-squares constant over the outer third of the
    // lambda grid; the symmetric window cancels the odd part of the tail.
    const double cut = (2.0 / 3.0) * table.line.half_width - 1e-12;
    Matrix alpha = Matrix::Zero(m, m), alpha_inv = Matrix::Zero(m, m);
    int n_fit = 0;
    for (int j = 0; j < count; ++j) {
        if (std::abs(table.line.lambda(j)) < cut) continue;
        alpha += g[static_cast<size_t>(j)];
        alpha_inv += ginv[static_cast<size_t>(j)];
        ++n_fit;
    }
    alpha /= static_cast<double>(n_fit);
    alpha_inv /= static_cast<double>(n_fit);
    rep.alpha_fit = alpha;
    rep.alpha_consistency = frob(Matrix(alpha + alpha_inv));
    rep.alpha_skew_defect = frob(Matrix(alpha + alpha.adjoint()));

    auto tail_stats = [&](const std::vector<Matrix>& r, double shift_sign, double& l2out,
                          double& slope_out) {
        double l2 = 0.0;
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int cnt = 0;
        double max_norm = 0.0;
        for (int j = 0; j < count; ++j) {
            const Matrix rem = r[static_cast<size_t>(j)] + shift_sign * alpha;
            const double nr = frob(rem);
            max_norm = std::max(max_norm, nr);
            l2 += table.line.delta * nr * nr;
            if (std::abs(table.line.lambda(j)) >= cut && nr > 1e-300) {
                const double lx = std::log(std::abs(table.z(j)));
                const double ly = std::log(nr);
                sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
                ++cnt;
            }
        }
        l2out = std::sqrt(l2);
        if (max_norm < 1e-12 || cnt < 2) {
            slope_out = 0.0;
            return;
        }
        const double denom = static_cast<double>(cnt) * sxx - sx * sx;
        slope_out = (denom == 0.0) ? 0.0 : (static_cast<double>(cnt) * sxy - sx * sy) / denom;
    };

    tail_stats(g, -1.0, rep.remainder_l2, rep.remainder_slope);
    tail_stats(ginv, +1.0, rep.inv_remainder_l2, rep.inv_remainder_slope);

    rep.square_summable = rep.remainder_slope <= 0.25 && rep.inv_remainder_slope <= 0.25;
    rep.passed = rep.square_summable && std::isfinite(rep.sup_z_phi_minus_I);
    return rep;
}

CertificateReport weyl_certificate(const DiagonalSpectrum& D, const PotentialGrid& zeta,
                                   const WeylFunction& phi, double l,
                                   const std::vector<Complex>& z_samples,
                                   const CertificateOptions& opts) {
    for (const Complex& z : z_samples)
        if (!(z.imag() < -phi.m_bound))
            throw DomainMismatch("weyl_certificate: sample outside the analyticity domain");

    PotentialGrid window;
    window.length = l;
    window.values.reserve(static_cast<size_t>(opts.n_steps + 1));
    for (int i = 0; i <= opts.n_steps; ++i)
        window.values.push_back(zeta.at(l * static_cast<double>(i) / opts.n_steps));

    CertificateReport rep;
    const int m = D.m();
    Matrix gram = Matrix::Zero(m, m);
    for (const Complex& z : z_samples) {
        const MatrixWave w = fundamental_solution(D, window, z);
        const Matrix p = phi(z);
        Matrix local = Matrix::Zero(m, m);
        for (int i = 0; i <= opts.n_steps; ++i) {
            const double x = w.x(i);
            Matrix v = w.values[static_cast<size_t>(i)] * p;
            for (int c = 0; c < m; ++c) v.col(c) *= std::exp(-kI * x * z * D.d(c));
            rep.sup = std::max(rep.sup, frob(v));
            const double wt = (i == 0 || i == opts.n_steps) ? 0.5 * w.step() : w.step();
            local += wt * std::exp(-opts.r * x) * (v.adjoint() * v);
        }
        gram += local;
    }
    rep.integral_norm = frob(gram);
    rep.passed = rep.sup <= opts.ceiling;
    return rep;
}

}  // namespace nwave
