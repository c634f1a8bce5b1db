#include "nwave/types.hpp"

#include <algorithm>
#include <cmath>

namespace nwave {

DiagonalSpectrum DiagonalSpectrum::make(const std::vector<double>& d) {
    if (d.size() < 2) throw InvalidInput("DiagonalSpectrum: need m >= 2 entries");
    DiagonalSpectrum s;
    s.entries = Eigen::Map<const RealVector>(d.data(), static_cast<long>(d.size()));
    for (int k = 0; k < s.m(); ++k) {
        if (!(s.entries[k] > 0.0)) throw InvalidInput("DiagonalSpectrum: entries must be positive");
        for (int j = k + 1; j < s.m(); ++j) {
            if (s.entries[k] == s.entries[j])
                throw InvalidInput("DiagonalSpectrum: entries must be pairwise distinct");
        }
    }
    s.strictly_ordered = true;
    for (int k = 0; k + 1 < s.m(); ++k) {
        if (s.entries[k] <= s.entries[k + 1]) s.strictly_ordered = false;
    }
    return s;
}

double DiagonalSpectrum::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m(); ++k)
        for (int j = k + 1; j < m(); ++j) g = std::min(g, std::abs(entries[k] - entries[j]));
    return g;
}

Matrix DiagonalSpectrum::D() const {
    Matrix out = Matrix::Zero(m(), m());
    for (int k = 0; k < m(); ++k) out(k, k) = entries[k];
    return out;
}

Matrix DiagonalSpectrum::Dinv() const {
    Matrix out = Matrix::Zero(m(), m());
    for (int k = 0; k < m(); ++k) out(k, k) = 1.0 / entries[k];
    return out;
}

Matrix DiagonalSpectrum::Dsqrt() const {
    Matrix out = Matrix::Zero(m(), m());
    for (int k = 0; k < m(); ++k) out(k, k) = std::sqrt(entries[k]);
    return out;
}

void DiagonalSpectrum::require_gap(double rel_tol) const {
    if (min_gap() < rel_tol * max_entry())
        throw ConditioningError("DiagonalSpectrum: spectral gap below conditioning threshold");
}

PotentialGrid PotentialGrid::zero(int m, double length, int n_steps) {
    if (m < 2 || n_steps < 1 || !(length > 0.0)) throw InvalidInput("PotentialGrid::zero: bad arguments");
    PotentialGrid g;
    g.length = length;
    g.values.assign(static_cast<size_t>(n_steps + 1), Matrix::Zero(m, m));
    return g;
}

double PotentialGrid::sup_norm() const {
    double s = 0.0;
    for (const auto& v : values) s = std::max(s, frob(v));
    return s;
}

Matrix PotentialGrid::at(double xq) const {
    const int mm = m();
    if (xq < 0.0 || xq > length) return Matrix::Zero(mm, mm);
    const int n = steps();
    const double h = step();
    double t = xq / h;
    int i1 = static_cast<int>(std::floor(t));
    i1 = std::clamp(i1, 0, n - 1);
    // 4-point Lagrange stencil clamped at the ends
    int i0 = std::clamp(i1 - 1, 0, n - 3);
    const double s = t - static_cast<double>(i0);
    auto lag = [&](int p) {
        double w = 1.0;
        for (int q = 0; q < 4; ++q)
            if (q != p) w *= (s - static_cast<double>(q)) / static_cast<double>(p - q);
        return w;
    };
    Matrix out = Matrix::Zero(mm, mm);
    for (int p = 0; p < 4; ++p) out += lag(p) * values[static_cast<size_t>(i0 + p)];
    return out;
}

PotentialValidation validate_potential(const PotentialGrid& zeta) {
    if (zeta.values.empty()) throw InvalidInput("validate_potential: empty grid");
    PotentialValidation rep;
    for (const auto& v : zeta.values) {
        rep.hermitian_defect = std::max(rep.hermitian_defect, frob(Matrix(v + v.adjoint())));
        for (int k = 0; k < v.rows(); ++k)
            rep.diagonal_defect = std::max(rep.diagonal_defect, std::abs(v(k, k)));
        rep.sup_norm = std::max(rep.sup_norm, frob(v));
    }
    rep.passed = rep.hermitian_defect <= 1e-12 && rep.diagonal_defect <= 1e-12;
    return rep;
}

SpectralLine SpectralLine::make(double eta, double half_width, double delta, double m_bound) {
    SpectralLine line;
    line.eta = eta;
    line.half_width = half_width;
    line.delta = delta;
    line.m_bound = m_bound;
    if (!(eta > 0.0) || !(delta > 0.0) || !(half_width > 0.0))
        throw InvalidInput("SpectralLine: eta, delta, half_width must be positive");
    if (!(eta > m_bound)) throw InvalidInput("SpectralLine: eta must exceed the analyticity bound");
    if (half_width < 10.0 * eta) throw InvalidInput("SpectralLine: half_width must be >= 10*eta");
    const double ratio = half_width / delta;
    if (std::abs(ratio - std::lround(ratio)) > 1e-9)
        throw InvalidInput("SpectralLine: half_width must be an integer multiple of delta");
    return line;
}

std::string to_string(WeylSource s) {
    switch (s) {
        case WeylSource::ClosedForm: return "closed-form";
        case WeylSource::IntegralEquation: return "integral-equation";
        case WeylSource::Transformed: return "transformed";
        case WeylSource::Evolved: return "evolved";
    }
    return "unknown";
}

WeylTable table_from_function(const WeylFunction& fn, const SpectralLine& line,
                              const Matrix& alpha, WeylSource source) {
    WeylTable t;
    t.line = line;
    t.alpha = alpha;
    t.source = source;
    t.phi.reserve(static_cast<size_t>(line.count()));
    for (int j = 0; j < line.count(); ++j) t.phi.push_back(fn(line.z(j)));
    return t;
}

}  // namespace nwave
