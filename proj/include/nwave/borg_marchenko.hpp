// borg_marchenko.hpp — local uniqueness checker: decide from high-energy
// behavior of two Weyl functions along a ray whether their potentials must
// agree on an initial interval, and verify the conclusion numerically.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nwave/inverse_solver.hpp"
#include "nwave/types.hpp"

namespace nwave {

// Ray c * Im z = Re z in the lower half-plane, sampled at increasing |z|.
struct RaySpec {
    double c = 0.0;
    std::vector<double> radii;

    static RaySpec log_spaced(double c, double r_min, double r_max, int count);
    Complex z(double r) const;
};

struct RayReport {
    std::vector<double> log_ratio;  // log ||e^{ilzD}(phi1^{-1}-phi2^{-1})|| - log|z|
    double slope = 0.0;             // log-log trend over the top decade
    bool bounded = false;
};

RayReport ray_difference_bound(const WeylFunction& phi1, const WeylFunction& phi2, double l,
                               const RaySpec& ray, const DiagonalSpectrum& D,
                               double slope_threshold = 0.1);

struct FReport {
    std::vector<double> norms;
    double sup = 0.0;
    double growth = 0.0;  // last/first sample ratio
};

// F(z) = e^{ilzD} * integral_0^l e^{-ixzD} (Pi1(x) - Pi2(x)) dx, evaluated
// by trapezoid quadrature at moderate samples.
FReport F_diagnostic(const PiGrid& pi1, const PiGrid& pi2, double l,
                     const std::vector<Complex>& z_samples, const DiagonalSpectrum& D);

enum class BmOutcome { Same, Different };

struct BmConfig {
    double eta = 2.0;
    double half_width = 60.0;
    double delta = 0.1;
    int n_invert = 160;
    double zeta_gap_tol = 0.05;
    double slope_threshold = 0.1;
    std::optional<RaySpec> ray;  // default: imaginary axis, moderate radii
};

struct BmVerdict {
    BmOutcome outcome = BmOutcome::Different;
    double ray_slope = 0.0;
    bool ray_bounded = false;
    double f_sup = 0.0;
    double pi_gap = 0.0;
    std::optional<double> zeta_gap;  // relative; only when the ray check passes
    // Finitely many samples cannot certify the ray hypothesis; the verdict
    // is numerical evidence, not a proof.
    std::string advisory = "heuristic";
};

BmVerdict bm_verdict(const WeylFunction& phi1, const WeylFunction& phi2, double l,
                     const DiagonalSpectrum& D, const BmConfig& cfg = {});

}  // namespace nwave
