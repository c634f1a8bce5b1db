// random_potential.hpp — seeded band-limited potentials with smooth compact
// support, used by round-trip scenarios and property tests.

#pragma once

#include <cstdint>

#include "nwave/types.hpp"

namespace nwave {

struct RandomPotentialOptions {
    int n_modes = 3;
    double amplitude = 0.3;  // resulting sup-norm over the grid
};

// Trigonometric sums per off-diagonal entry, projected to skew-Hermitian
// zero-diagonal form and windowed by a bump that vanishes with all
// derivatives at both ends of [0, length].
PotentialGrid random_potential(int m, double length, int n_steps, std::uint64_t seed,
                               const RandomPotentialOptions& opts = {});

}  // namespace nwave
