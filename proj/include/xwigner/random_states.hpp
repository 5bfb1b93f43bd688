#pragma once

#include <random>
#include <utility>

#include "xwigner/grid.hpp"
#include "xwigner/states.hpp"
#include "xwigner/weyl_operators.hpp"

namespace xwigner {

/// Deterministic pseudo-random well-contained state: a complex-Gaussian
/// mixture of oscillator levels 0..max_level, displaced by a small random
/// lattice shift, unit-normalized. Same seed, same state, any platform with
/// the same mt19937_64 stream (guaranteed by the standard).
inline WaveFunction random_superposition(const GridSpec& g, std::mt19937_64& rng,
                                         int max_level = 10) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> shift(-0.5, 0.5);

    std::vector<WaveFunction> family = oscillator_family(g, max_level);
    VectorXcd acc = VectorXcd::Zero(g.size);
    for (int n = 0; n <= max_level; ++n)
        acc += Complex(gauss(rng), gauss(rng)) * family[n].samples;
    WaveFunction psi(g, Domain::position, std::move(acc));

    const PhaseSpacePoint z0{shift(rng), shift(rng)};
    WaveFunction shifted = heisenberg_weyl(z0, psi).state;
    shifted.samples /= shifted.norm();
    return shifted;
}

/// A pair of random states whose overlap stays above `min_overlap`, so that
/// weak values and quasi-distributions between them are well conditioned.
/// Draws are rejected (deterministically, advancing the stream) until the
/// floor is met.
inline std::pair<WaveFunction, WaveFunction> random_admissible_pair(
    const GridSpec& g, std::mt19937_64& rng, double min_overlap = 1e-2, int max_level = 10) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        WaveFunction a = random_superposition(g, rng, max_level);
        WaveFunction b = random_superposition(g, rng, max_level);
        if (std::abs(inner_product(a, b)) >= min_overlap &&
            a.is_well_contained() && b.is_well_contained())
            return {std::move(a), std::move(b)};
    }
    throw Error("random_admissible_pair: no draw met the overlap floor");
}

}  // namespace xwigner
