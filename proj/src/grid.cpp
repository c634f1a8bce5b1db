#include "nwave/grid.hpp"

#include <algorithm>
#include <cmath>

namespace nwave {

Matrix lerp_grid(const std::vector<Matrix>& values, double length, double x) {
    const int n = static_cast<int>(values.size()) - 1;
    const double h = length / static_cast<double>(n);
    double t = std::clamp(x, 0.0, length) / h;
    int i = std::clamp(static_cast<int>(std::floor(t)), 0, n - 1);
    const double s = t - static_cast<double>(i);
    return (1.0 - s) * values[static_cast<size_t>(i)] + s * values[static_cast<size_t>(i + 1)];
}

std::vector<Matrix> rk4_trajectory(const Matrix& y0, double x0, double h, int n_steps,
                                   const std::function<Matrix(double, const Matrix&)>& F) {
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(n_steps + 1));
    out.push_back(y0);
    Matrix y = y0;
    for (int i = 0; i < n_steps; ++i) {
        const double x = x0 + h * static_cast<double>(i);
        y = rk4_step(y, x, h, F);
        out.push_back(y);
    }
    return out;
}

}  // namespace nwave
