#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "xwigner/grid.hpp"

namespace xwigner {

/// Coherent state centered at z0: the normalized fiducial Gaussian
///   xi0(x) = (pi hbar)^(-1/4) exp(-x^2 / (2 hbar))
/// carried to z0 with the translation phase exp((i/hbar)(p0 x - p0 x0 / 2)).
/// The closed form is evaluated at the exact requested center (generation is
/// not a sample shift, so no lattice snapping applies); for centers on the
/// position lattice this agrees with heisenberg_weyl applied to xi0 to
/// machine precision.
inline WaveFunction gaussian_coherent(const GridSpec& g, PhaseSpacePoint z0 = {}) {
    const double pref = std::pow(kPi * g.hbar, -0.25);
    const Complex i_over_h(0.0, 1.0 / g.hbar);
    VectorXcd out(g.size);
    for (int j = 0; j < g.size; ++j) {
        const double x = g.position_node(j);
        const double d = x - z0.x;
        out[j] = pref * std::exp(-0.5 * d * d / g.hbar) *
                 std::exp(i_over_h * (z0.p * x - 0.5 * z0.p * z0.x));
    }
    WaveFunction psi(g, Domain::position, std::move(out));
    if (!psi.is_well_contained())
        throw ContainmentError("gaussian_coherent: center too close to the grid edge");
    return psi;
}

namespace detail {

inline std::vector<WaveFunction> oscillator_levels(const GridSpec& g, int n, double mass,
                                                   double omega, bool clip_to_contained) {
    if (n < 0 || n > g.size / 8)
        throw ConfigurationError("oscillator_family: index must satisfy 0 <= n <= M/8");
    if (!(mass > 0.0) || !(omega > 0.0))
        throw ConfigurationError("oscillator_family: mass and omega must be positive");
    const double alpha = std::sqrt(mass * omega / g.hbar);
    const double pref = std::sqrt(alpha) * std::pow(kPi, -0.25);

    std::vector<WaveFunction> family;
    family.reserve(n + 1);
    VectorXcd prev = VectorXcd::Zero(g.size);
    VectorXcd cur(g.size);
    for (int j = 0; j < g.size; ++j) {
        const double u = alpha * g.position_node(j);
        cur[j] = pref * std::exp(-0.5 * u * u);
    }
    family.emplace_back(g, Domain::position, cur);
    for (int k = 0; k < n; ++k) {
        VectorXcd next(g.size);
        const double a = std::sqrt(2.0 / (k + 1));
        const double b = std::sqrt(static_cast<double>(k) / (k + 1));
        for (int j = 0; j < g.size; ++j) {
            const double u = alpha * g.position_node(j);
            next[j] = a * u * cur[j] - b * prev[j];
        }
        prev.swap(cur);
        cur.swap(next);
        WaveFunction level(g, Domain::position, cur);
        if (clip_to_contained && !level.is_well_contained()) return family;
        family.push_back(std::move(level));
    }
    if (!family.back().is_well_contained())
        throw ContainmentError("oscillator_family: level " + std::to_string(n) +
                               " is not contained by this grid");
    return family;
}

}  // namespace detail

/// Eigenstates of the harmonic oscillator with the given mass and frequency,
/// generated by the stable normalized recurrence in u = x sqrt(m omega / hbar):
///   e_0 = (m omega / (pi hbar))^(1/4) exp(-u^2/2),
///   e_{n+1} = sqrt(2/(n+1)) u e_n - sqrt(n/(n+1)) e_{n-1}.
/// Returns e_0 .. e_n; real-valued and orthonormal on a grid that contains
/// the classical turning region.
inline std::vector<WaveFunction> oscillator_family(const GridSpec& g, int n,
                                                   double mass = 1.0, double omega = 1.0) {
    return detail::oscillator_levels(g, n, mass, omega, false);
}

/// Longest prefix of the family that stays well contained, at most e_0..e_n.
/// Callers that expand states in this basis should check the captured mass.
inline std::vector<WaveFunction> oscillator_family_contained(const GridSpec& g, int n,
                                                             double mass = 1.0,
                                                             double omega = 1.0) {
    std::vector<WaveFunction> family = detail::oscillator_levels(g, n, mass, omega, true);
    if (family.empty() || !family.front().is_well_contained())
        throw ContainmentError("oscillator_family_contained: even the ground level leaks");
    return family;
}

/// n-th Hermite function at scale hbar (oscillator eigenstate with unit
/// mass and frequency); h_0 coincides with gaussian_coherent at the origin.
inline WaveFunction hermite_basis(const GridSpec& g, int n) {
    return std::move(oscillator_family(g, n).back());
}

}  // namespace xwigner
