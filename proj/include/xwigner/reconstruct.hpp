#pragma once

#include <cmath>
#include <string>

#include "xwigner/field.hpp"
#include "xwigner/fourier.hpp"
#include "xwigner/grid.hpp"
#include "xwigner/weak_value.hpp"

namespace xwigner {

/// Ingredients of the inversion formula: the cross-Wigner field of the pair
/// (phi, unknown psi), the known post state phi, and an auxiliary window
/// gamma that must not be orthogonal to phi.
struct ReconstructionInput {
    PhaseSpaceField field;
    WaveFunction phi;
    WaveFunction gamma;

    ReconstructionInput(PhaseSpaceField f, WaveFunction phi_, WaveFunction gamma_)
        : field(std::move(f)), phi(std::move(phi_)), gamma(std::move(gamma_)) {
        if (field.label != FieldLabel::cross_wigner && field.label != FieldLabel::wigner)
            throw ConfigurationError(
                "reconstruct: field must carry the CROSS_WIGNER (or WIGNER) label");
        require_same_grid(phi, gamma, "reconstruct");
        require_same_grid(field, phi, "reconstruct");
        if (phi.domain != Domain::position)
            throw ConfigurationError("reconstruct: expects position-domain states");
    }
};

/// Invert the cross-Wigner transform: with W = W(phi, psi) known and phi
/// given, the unknown state is recovered as
///
///   psi(x) = (2 / <phi|gamma>) Integral W(z0) (T_GR(z0) gamma)(x) dz0 ,
///
/// a symbol-weighted superposition of reflections of the window, i.e. the
/// same quadrature as the Weyl quantizer applied to gamma with symbol W.
/// The constant carries no fitted factor; the round-trip tests pin it.
inline WaveFunction reconstruct(const ReconstructionInput& in, double overlap_eps = kOverlapFloor,
                                int stride = 1) {
    const Complex ip = inner_product(in.phi, in.gamma);
    const double scale = in.phi.norm() * in.gamma.norm();
    if (std::abs(ip) <= overlap_eps * scale)
        throw ConditioningError("reconstruct: |<phi|gamma>| = " + std::to_string(std::abs(ip)) +
                                " is too small to divide by");
    require_well_contained(in.gamma, "reconstruct");

    const GridSpec& g = in.phi.grid;
    const int m = g.size;
    Eigen::MatrixXcd symbol(2 * m, m);
    for (int k = 0; k < m; ++k) {
        VectorXcd column = in.field.values.col(k);
        symbol.col(k) = detail::upsample2(column);
    }
    VectorXcd samples = detail::gr_superposition(symbol, in.gamma, stride);
    samples *= 2.0 * kPi * g.hbar / ip;
    return WaveFunction(g, Domain::position, std::move(samples));
}

struct PhaseAlignment {
    Complex phase{1.0, 0.0};  // unimodular factor applied to the first state
    double residual = 0.0;    // |phase * a - b| / |b| after alignment
};

/// Best unimodular phase to lay a over b, phase = <a|b>/|<a|b>|, and the
/// relative L2 residual that remains. Orthogonal inputs get phase 1 and the
/// unreduced residual (sqrt(2) for normalized states).
inline PhaseAlignment phase_align(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(a, b, "phase_align");
    const double na = a.norm(), nb = b.norm();
    if (na <= 0.0 || nb <= 0.0)
        throw ConfigurationError("phase_align: both states must be nonzero");
    const Complex ip = inner_product(a, b);

    PhaseAlignment out;
    if (std::abs(ip) > 0.0) out.phase = ip / std::abs(ip);

    detail::CompensatedSum diff;
    for (int j = 0; j < a.grid.size; ++j)
        diff.add(std::norm(out.phase * a.samples[j] - b.samples[j]));
    out.residual = std::sqrt(diff.value() * a.step()) / nb;
    return out;
}

}  // namespace xwigner
