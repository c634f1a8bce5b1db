#include "nwave/random_potential.hpp"

#include <cmath>
#include <random>

namespace nwave {

namespace {

// C-infinity bump on (0,1), zero with all derivatives at the ends.
double bump_window(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::exp(1.0 - 0.25 / (t * (1.0 - t)));
}

}  // namespace

PotentialGrid random_potential(int m, double length, int n_steps, std::uint64_t seed,
                               const RandomPotentialOptions& opts) {
    if (m < 2 || n_steps < 2) throw InvalidInput("random_potential: bad dimensions");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // One complex trig sum per strictly-upper entry.
    const double pi = std::acos(-1.0);
    std::vector<std::vector<Complex>> coeff_a, coeff_b;
    for (int k = 0; k < m; ++k)
        for (int j = k + 1; j < m; ++j) {
            std::vector<Complex> ca, cb;
            for (int p = 1; p <= opts.n_modes; ++p) {
                const double decay = 1.0 / static_cast<double>(p);
                ca.emplace_back(gauss(rng) * decay, gauss(rng) * decay);
                cb.emplace_back(gauss(rng) * decay, gauss(rng) * decay);
            }
            coeff_a.push_back(ca);
            coeff_b.push_back(cb);
        }

    PotentialGrid g;
    g.length = length;
    g.values.reserve(static_cast<size_t>(n_steps + 1));
    for (int i = 0; i <= n_steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_steps);
        const double win = bump_window(t);
        Matrix v = Matrix::Zero(m, m);
        int idx = 0;
        for (int k = 0; k < m; ++k)
            for (int j = k + 1; j < m; ++j) {
                Complex q = 0.0;
                for (int p = 1; p <= opts.n_modes; ++p) {
                    q += coeff_a[static_cast<size_t>(idx)][static_cast<size_t>(p - 1)] * std::cos(p * pi * t) +
                         coeff_b[static_cast<size_t>(idx)][static_cast<size_t>(p - 1)] * std::sin(p * pi * t);
                }
                q *= win;
                v(k, j) = q;
                v(j, k) = -std::conj(q);
                ++idx;
            }
        g.values.push_back(v);
    }

    double sup = g.sup_norm();
    if (sup > 0.0) {
        const double scale = opts.amplitude / sup;
        for (auto& v : g.values) v *= scale;
    }
    return g;
}

}  // namespace nwave
