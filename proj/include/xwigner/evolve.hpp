#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "xwigner/cross_wigner.hpp"
#include "xwigner/fourier.hpp"
#include "xwigner/grid.hpp"
#include "xwigner/observable.hpp"
#include "xwigner/states.hpp"
#include "xwigner/weak_value.hpp"

namespace xwigner {

struct FreeHamiltonian {
    double mass = 1.0;
};

struct HarmonicHamiltonian {
    double mass = 1.0;
    double omega = 1.0;
};

/// Arbitrary real potential sampled on the position grid.
struct SampledPotential {
    double mass = 1.0;
    Eigen::VectorXd potential;
};

using HamiltonianSpec = std::variant<FreeHamiltonian, HarmonicHamiltonian, SampledPotential>;

namespace detail {

inline double hamiltonian_mass(const HamiltonianSpec& h) {
    return std::visit([](const auto& s) { return s.mass; }, h);
}

inline Eigen::VectorXd potential_samples(const HamiltonianSpec& h, const GridSpec& g) {
    if (std::holds_alternative<FreeHamiltonian>(h)) return Eigen::VectorXd::Zero(g.size);
    if (const auto* ho = std::get_if<HarmonicHamiltonian>(&h)) {
        Eigen::VectorXd v(g.size);
        for (int j = 0; j < g.size; ++j) {
            const double x = g.position_node(j);
            v[j] = 0.5 * ho->mass * ho->omega * ho->omega * x * x;
        }
        return v;
    }
    const auto& sp = std::get<SampledPotential>(h);
    if (sp.potential.size() != g.size)
        throw ConfigurationError("propagate: potential samples do not match the grid");
    if (!sp.potential.allFinite())
        throw ConfigurationError("propagate: potential contains non-finite samples");
    return sp.potential;
}

inline void validate_hamiltonian(const HamiltonianSpec& h) {
    if (!(hamiltonian_mass(h) > 0.0))
        throw ConfigurationError("propagate: mass must be positive");
    if (const auto* ho = std::get_if<HarmonicHamiltonian>(&h))
        if (!(ho->omega > 0.0)) throw ConfigurationError("propagate: omega must be positive");
}

}  // namespace detail

/// Unitary split-step (Strang) propagation from t_from to t_to, either
/// direction. The step count is fixed by dt = min(1e-3, |T|/1000) and then
/// rounded so the steps tile the interval exactly, which keeps results
/// bitwise reproducible for a given interval. Throws if the state stops
/// being well contained at any step.
inline WaveFunction propagate(const WaveFunction& psi, double t_from, double t_to,
                              const HamiltonianSpec& h) {
    if (psi.domain != Domain::position)
        throw ConfigurationError("propagate: expects a position-domain state");
    if (!std::isfinite(t_from) || !std::isfinite(t_to))
        throw ConfigurationError("propagate: non-finite time bounds");
    detail::validate_hamiltonian(h);
    require_well_contained(psi, "propagate");
    if (t_to == t_from) return psi;

    const GridSpec& g = psi.grid;
    const double span = t_to - t_from;
    const double dt_nominal = std::min(1e-3, std::abs(span) / 1000.0);
    const int steps = static_cast<int>(std::ceil(std::abs(span) / dt_nominal - 1e-9));
    const double dt = span / steps;

    const Eigen::VectorXd v = detail::potential_samples(h, g);
    const double mass = detail::hamiltonian_mass(h);
    VectorXcd half_kick(g.size), kinetic(g.size);
    for (int j = 0; j < g.size; ++j)
        half_kick[j] = std::polar(1.0, -0.5 * v[j] * dt / g.hbar);
    for (int k = 0; k < g.size; ++k) {
        const double p = g.momentum_node(k);
        kinetic[k] = std::polar(1.0, -0.5 * p * p * dt / (mass * g.hbar));
    }

    WaveFunction state = psi;
    for (int s = 0; s < steps; ++s) {
        state.samples.array() *= half_kick.array();
        VectorXcd spectrum = detail::hbar_fourier_samples(state.samples, g.dx(), g.hbar, true);
        spectrum.array() *= kinetic.array();
        state.samples = detail::hbar_fourier_samples(spectrum, g.dp(), g.hbar, false);
        state.samples.array() *= half_kick.array();
        if (!state.is_well_contained())
            throw ContainmentError("propagate: state reached the grid boundary near t = " +
                                   std::to_string(t_from + (s + 1) * dt));
    }
    return state;
}

/// Reference propagator for the harmonic Hamiltonian: expand in the
/// oscillator eigenbasis and advance each coefficient by its exact phase
/// e^{-i omega (n + 1/2) (t_to - t_from)}. Uses the largest contained
/// eigenbasis (at most level M/8) and fails if that basis misses part of
/// the state.
inline WaveFunction propagate_harmonic_exact(const WaveFunction& psi, double t_from, double t_to,
                                             const HarmonicHamiltonian& h) {
    if (psi.domain != Domain::position)
        throw ConfigurationError("propagate_harmonic_exact: expects a position-domain state");
    if (!(h.mass > 0.0) || !(h.omega > 0.0))
        throw ConfigurationError("propagate_harmonic_exact: mass and omega must be positive");
    const GridSpec& g = psi.grid;
    std::vector<WaveFunction> basis =
        oscillator_family_contained(g, g.size / 8, h.mass, h.omega);
    const int n_max = static_cast<int>(basis.size()) - 1;

    const double span = t_to - t_from;
    VectorXcd acc = VectorXcd::Zero(g.size);
    detail::CompensatedSum captured;
    for (int n = 0; n <= n_max; ++n) {
        const Complex c = inner_product(basis[n], psi);
        captured.add(std::norm(c));
        acc += c * std::polar(1.0, -h.omega * (n + 0.5) * span) * basis[n].samples;
    }
    const double fraction = captured.value() / psi.squared_norm();
    if (fraction < 1.0 - 1e-10)
        throw CoverageError(
            "propagate_harmonic_exact: eigenbasis captures only a " +
                std::to_string(fraction) + " fraction of the state",
            fraction);
    return WaveFunction(g, Domain::position, std::move(acc));
}

/// Pre- and post-selected pair: psi_in prepared at t_in evolves forward,
/// phi_fin selected at t_fin evolves backward, both under the same
/// Hamiltonian. Carries the probed observable and the times at which the
/// weak value is wanted.
struct TwoStateScenario {
    WaveFunction psi_in;
    double t_in = 0.0;
    WaveFunction phi_fin;
    double t_fin = 0.0;
    HamiltonianSpec hamiltonian = FreeHamiltonian{};
    Observable observable = Observable::poly({{0, 0, 1.0}});
    std::vector<double> sample_times;

    TwoStateScenario(WaveFunction psi, double t0, WaveFunction phi, double t1,
                     HamiltonianSpec h, Observable a = Observable::poly({{0, 0, 1.0}}),
                     std::vector<double> times = {})
        : psi_in(std::move(psi)), t_in(t0), phi_fin(std::move(phi)), t_fin(t1),
          hamiltonian(std::move(h)), observable(std::move(a)),
          sample_times(std::move(times)) {
        require_same_grid(psi_in, phi_fin, "two-state scenario");
        if (!(t_in < t_fin))
            throw ConfigurationError("two-state scenario: needs t_in < t_fin");
        for (std::size_t i = 0; i < sample_times.size(); ++i) {
            if (sample_times[i] < t_in || sample_times[i] > t_fin)
                throw ConfigurationError("two-state scenario: sample time outside [t_in, t_fin]");
            if (i > 0 && sample_times[i] < sample_times[i - 1])
                throw ConfigurationError("two-state scenario: sample times must be sorted");
        }
    }

    std::pair<WaveFunction, WaveFunction> states_at(double t) const {
        if (t < t_in || t > t_fin)
            throw ConfigurationError("two-state scenario: t outside [t_in, t_fin]");
        WaveFunction psi_t = propagate(psi_in, t_in, t, hamiltonian);
        WaveFunction phi_t = propagate(phi_fin, t_fin, t, hamiltonian);
        return {std::move(phi_t), std::move(psi_t)};
    }
};

/// Weak value of the scenario observable at intermediate time t:
/// post-selected state evolved backward from t_fin, preparation evolved
/// forward from t_in, then the phase-space quadrature between them.
inline WeakValueReport two_state_weak_value(const TwoStateScenario& sc, double t,
                                            double overlap_eps = kOverlapFloor) {
    auto [phi_t, psi_t] = sc.states_at(t);
    return weak_value_quadrature(sc.observable, phi_t, psi_t, overlap_eps);
}

struct InterferenceSnapshot {
    double t = 0.0;
    PhaseSpaceField w_post;   // Wigner function of the post-selected branch
    PhaseSpaceField w_pre;    // Wigner function of the prepared branch
    PhaseSpaceField cross;    // 2 Re W(phi_t, psi_t), the interference term
};

/// Decompose the Wigner function of phi_t + psi_t into its diagonal parts
/// and the cross term that carries the weak-value information.
inline InterferenceSnapshot interference_emergence(const TwoStateScenario& sc, double t) {
    auto [phi_t, psi_t] = sc.states_at(t);
    return InterferenceSnapshot{t, wigner(phi_t), wigner(psi_t),
                                interference_term(phi_t, psi_t)};
}

}  // namespace xwigner
