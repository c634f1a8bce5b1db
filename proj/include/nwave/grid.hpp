// grid.hpp — quadrature weights, interpolation, and one-step integration
// helpers shared across modules.

#pragma once

#include <functional>
#include <vector>

#include "nwave/types.hpp"

namespace nwave {

// Composite trapezoid weights on a uniform grid with n+1 nodes and step h.
inline std::vector<double> trapezoid_weights(int n_nodes, double h) {
    std::vector<double> w(static_cast<size_t>(n_nodes), h);
    if (n_nodes == 1) {
        w[0] = 0.0;
        return w;
    }
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
}

// Linear interpolation of matrix samples on a uniform grid over [0, length].
Matrix lerp_grid(const std::vector<Matrix>& values, double length, double x);

// Classical 4th-order one-step method for Y' = F(x, Y) over n uniform steps,
// recording the state at every node. The derivative callback must be valid
// at half-step points as well.
std::vector<Matrix> rk4_trajectory(const Matrix& y0, double x0, double h, int n_steps,
                                   const std::function<Matrix(double, const Matrix&)>& F);

// Single classical step, for integrators that carry composite state.
template <class State, class Deriv>
State rk4_step(const State& y, double x, double h, const Deriv& F) {
    const State k1 = F(x, y);
    const State k2 = F(x + 0.5 * h, State(y + (0.5 * h) * k1));
    const State k3 = F(x + 0.5 * h, State(y + (0.5 * h) * k2));
    const State k4 = F(x + h, State(y + h * k3));
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace nwave
