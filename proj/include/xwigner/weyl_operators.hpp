#pragma once

#include <complex>

#include "xwigner/grid.hpp"

namespace xwigner {

/// Result of a lattice-snapped displacement or reflection. `applied` is the
/// phase-space point actually used after snapping; callers that need the
/// snap delta can subtract it from what they requested.
struct DisplacedState {
    WaveFunction state;
    PhaseSpacePoint applied;
};

/// Phase-space translation
///   (T(z0) psi)(x) = exp((i/hbar)(p0 x - p0 x0 / 2)) psi(x - x0).
/// x0 is snapped to the position lattice so the shift is an exact sample
/// permutation; samples pushed off the grid are dropped (no wraparound).
/// The momentum component applies as an exact phase and is not snapped.
inline DisplacedState heisenberg_weyl(PhaseSpacePoint z0, const WaveFunction& psi) {
    if (psi.domain != Domain::position)
        throw ConfigurationError("heisenberg_weyl: expects a position-domain state");
    require_well_contained(psi, "heisenberg_weyl");
    const GridSpec& g = psi.grid;
    const int n = snap_position_steps(g, z0.x);
    const PhaseSpacePoint used{n * g.dx(), z0.p};
    const Complex i_over_h(0.0, 1.0 / g.hbar);

    VectorXcd out = VectorXcd::Zero(g.size);
    for (int j = 0; j < g.size; ++j) {
        const int src = j - n;
        if (src < 0 || src >= g.size) continue;
        out[j] = std::exp(i_over_h * (used.p * g.position_node(j) - 0.5 * used.p * used.x)) *
                 psi.samples[src];
    }
    WaveFunction shifted(g, Domain::position, std::move(out));
    if (!shifted.is_well_contained())
        throw ContainmentError("heisenberg_weyl: displacement pushed norm mass off the grid");
    return {std::move(shifted), used};
}

/// Phase-space reflection
///   (R(z0) psi)(x) = exp((2i/hbar) p0 (x - x0)) psi(2 x0 - x).
/// x0 is snapped to the half-step lattice so mirrored nodes land on nodes;
/// the operator is involutive and norm-preserving up to any mass reflected
/// off the grid edge (off-grid reads are zero).
inline DisplacedState grossmann_royer(PhaseSpacePoint z0, const WaveFunction& psi) {
    if (psi.domain != Domain::position)
        throw ConfigurationError("grossmann_royer: expects a position-domain state");
    require_well_contained(psi, "grossmann_royer");
    const GridSpec& g = psi.grid;
    const int r = snap_half_steps(g, z0.x);
    const PhaseSpacePoint used{r * 0.5 * g.dx(), z0.p};
    const Complex two_i_over_h(0.0, 2.0 / g.hbar);

    VectorXcd out = VectorXcd::Zero(g.size);
    for (int j = 0; j < g.size; ++j) {
        const int src = r + g.size - j;  // index of 2 x0 - x_j
        if (src < 0 || src >= g.size) continue;
        out[j] = std::exp(two_i_over_h * (used.p * (g.position_node(j) - used.x))) *
                 psi.samples[src];
    }
    WaveFunction reflected(g, Domain::position, std::move(out));
    if (!reflected.is_well_contained())
        throw ContainmentError("grossmann_royer: reflection pushed norm mass off the grid");
    return {std::move(reflected), used};
}

}  // namespace xwigner
