#include "nwave/borg_marchenko.hpp"

#include <algorithm>
#include <cmath>

#include "nwave/spectral_core.hpp"

namespace nwave {

RaySpec RaySpec::log_spaced(double c, double r_min, double r_max, int count) {
    if (!(r_min > 0.0) || !(r_max > r_min) || count < 2)
        throw InvalidInput("RaySpec: need 0 < r_min < r_max and count >= 2");
    RaySpec spec;
    spec.c = c;
    const double f = std::pow(r_max / r_min, 1.0 / static_cast<double>(count - 1));
    double r = r_min;
    for (int i = 0; i < count; ++i, r *= f) spec.radii.push_back(r);
    return spec;
}

Complex RaySpec::z(double r) const {
    const double im = -r / std::sqrt(1.0 + c * c);
    return Complex(c * im, im);
}

namespace {

// log of the Frobenius norm of the row-scaled matrix whose (k,j) entry has
// log-magnitude scale[k] + log|X_kj|; safe against overflow.
double log_scaled_frob(const Matrix& X, const std::vector<double>& row_log_scale) {
    double mu = -std::numeric_limits<double>::infinity();
    const int m = static_cast<int>(X.rows());
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j) {
            const double a = std::abs(X(k, j));
            if (a > 0.0) mu = std::max(mu, row_log_scale[static_cast<size_t>(k)] + std::log(a));
        }
    if (!std::isfinite(mu)) return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j) {
            const double a = std::abs(X(k, j));
            if (a > 0.0) acc += std::exp(2.0 * (row_log_scale[static_cast<size_t>(k)] + std::log(a) - mu));
        }
    return mu + 0.5 * std::log(acc);
}

}  // namespace

RayReport ray_difference_bound(const WeylFunction& phi1, const WeylFunction& phi2, double l,
                               const RaySpec& ray, const DiagonalSpectrum& D,
                               double slope_threshold) {
    if (ray.radii.size() < 2) throw InvalidInput("ray_difference_bound: need at least 2 samples");
    for (size_t i = 1; i < ray.radii.size(); ++i)
        if (!(ray.radii[i] > ray.radii[i - 1]))
            throw InvalidInput("ray_difference_bound: |z| samples must increase");

    RayReport rep;
    const int m = D.m();
    std::vector<double> scale(static_cast<size_t>(m));
    for (double r : ray.radii) {
        const Complex z = ray.z(r);
        if (!(z.imag() < -phi1.m_bound) || !(z.imag() < -phi2.m_bound))
            throw DomainMismatch("ray_difference_bound: sample above an analyticity bound");
        const Matrix diff = phi1(z).inverse() - phi2(z).inverse();
        for (int k = 0; k < m; ++k) scale[static_cast<size_t>(k)] = l * (-z.imag()) * D.d(k);
        rep.log_ratio.push_back(log_scaled_frob(diff, scale) - std::log(std::abs(z)));
    }

    // Trend over the top decade of |z| (or the whole range when shorter).
    const double r_hi = ray.radii.back();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < ray.radii.size(); ++i) {
        if (ray.radii[i] < 0.1 * r_hi) continue;
        if (!std::isfinite(rep.log_ratio[i])) continue;
        const double lx = std::log(ray.radii[i]);
        sx += lx; sy += rep.log_ratio[i]; sxx += lx * lx; sxy += lx * rep.log_ratio[i];
        ++cnt;
    }
    if (cnt >= 2) {
        const double denom = static_cast<double>(cnt) * sxx - sx * sx;
        rep.slope = denom == 0.0 ? 0.0 : (static_cast<double>(cnt) * sxy - sx * sy) / denom;
    }
    rep.bounded = rep.slope <= slope_threshold;
    return rep;
}

FReport F_diagnostic(const PiGrid& pi1, const PiGrid& pi2, double l,
                     const std::vector<Complex>& z_samples, const DiagonalSpectrum& D) {
    if (pi1.nodes() != pi2.nodes() || pi1.m() != pi2.m())
        throw InvalidInput("F_diagnostic: incompatible Pi grids");
    const int n = pi1.steps();
    const int m = pi1.m();
    const double h = pi1.step();

    FReport rep;
    for (const Complex& z : z_samples) {
        Matrix F = Matrix::Zero(m, m);
        for (int i = 0; i <= n; ++i) {
            const double x = pi1.x(i);
            if (x > l + 1e-12) break;
            const double w = (i == 0 || pi1.x(i) >= l - 1e-12) ? 0.5 * h : h;
            Matrix d = pi1.Pi[static_cast<size_t>(i)] - pi2.Pi[static_cast<size_t>(i)];
            for (int k = 0; k < m; ++k) d.row(k) *= std::exp(kI * (l - x) * z * D.d(k));
            F += w * d;
        }
        rep.norms.push_back(frob(F));
        rep.sup = std::max(rep.sup, rep.norms.back());
    }
    if (!rep.norms.empty())
        rep.growth = rep.norms.back() / std::max(rep.norms.front(), 1e-300);
    return rep;
}

BmVerdict bm_verdict(const WeylFunction& phi1, const WeylFunction& phi2, double l,
                     const DiagonalSpectrum& D, const BmConfig& cfg) {
    const double m_bound = std::max(phi1.m_bound, phi2.m_bound);
    RaySpec ray = cfg.ray ? *cfg.ray
                          : RaySpec::log_spaced(0.0, std::max(m_bound + 0.5, 2.0),
                                                std::max(2.0 * (m_bound + 0.5), 6.0), 13);

    BmVerdict verdict;
    const RayReport ray_rep = ray_difference_bound(phi1, phi2, l, ray, D, cfg.slope_threshold);
    verdict.ray_slope = ray_rep.slope;
    verdict.ray_bounded = ray_rep.bounded;

    const auto line = SpectralLine::make(cfg.eta, cfg.half_width, cfg.delta, m_bound);
    WeylTable t1 = table_from_function(phi1, line, Matrix::Zero(D.m(), D.m()), WeylSource::IntegralEquation);
    WeylTable t2 = table_from_function(phi2, line, Matrix::Zero(D.m(), D.m()), WeylSource::IntegralEquation);
    t1.alpha = validate_weyl(t1).alpha_fit;
    t2.alpha = validate_weyl(t2).alpha_fit;

    const PiGrid pi1 = compute_Pi(t1, D, l, cfg.n_invert);
    const PiGrid pi2 = compute_Pi(t2, D, l, cfg.n_invert);
    for (int i = 0; i <= cfg.n_invert; ++i)
        verdict.pi_gap = std::max(verdict.pi_gap,
                                  frob(Matrix(pi1.Pi[static_cast<size_t>(i)] - pi2.Pi[static_cast<size_t>(i)])));

    std::vector<Complex> f_samples;
    for (double r : ray.radii)
        if (l * r * D.max_entry() < 250.0) f_samples.push_back(ray.z(r));
    verdict.f_sup = F_diagnostic(pi1, pi2, l, f_samples, D).sup;

    if (ray_rep.bounded) {
        const auto inv1 = invert_weyl(t1, D, l, cfg.n_invert);
        const auto inv2 = invert_weyl(t2, D, l, cfg.n_invert);
        double gap = 0.0, scale = 0.0;
        for (int i = 0; i <= cfg.n_invert; ++i) {
            gap = std::max(gap, frob(Matrix(inv1.zeta.values[static_cast<size_t>(i)] -
                                            inv2.zeta.values[static_cast<size_t>(i)])));
            scale = std::max({scale, frob(inv1.zeta.values[static_cast<size_t>(i)]),
                              frob(inv2.zeta.values[static_cast<size_t>(i)])});
        }
        verdict.zeta_gap = gap / std::max(scale, 1e-300);
        verdict.outcome = (*verdict.zeta_gap <= cfg.zeta_gap_tol) ? BmOutcome::Same : BmOutcome::Different;
    } else {
        verdict.outcome = BmOutcome::Different;
    }
    return verdict;
}

}  // namespace nwave
