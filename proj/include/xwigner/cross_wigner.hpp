#pragma once

#include <utility>
#include <vector>

#include "xwigner/field.hpp"
#include "xwigner/fourier.hpp"
#include "xwigner/grid.hpp"
#include "xwigner/states.hpp"

namespace xwigner {

/// Cross-Wigner transform of a pair of position-domain states,
///
///   W(phi, psi)(x, p) =
///     (1 / 2 pi hbar) Integral exp(-i p y / hbar)
///                              conj(phi(x - y/2)) psi(x + y/2) dy,
///
/// conjugate-linear in phi and linear in psi, so that the momentum marginal
/// is conj(phi) psi pointwise, the position marginal is conj(F phi) F psi,
/// and the full integral is <phi|psi>. See docs/conventions.md for why the
/// conjugated slot sits at x - y/2.
///
/// Discretization: both inputs are interpolated onto the half-step grid by
/// FFT zero-padding, so x +/- y/2 lands exactly on oversampled nodes for
/// y on the dx lattice. For each x row the y sum is one length-2M FFT whose
/// even output bins are exactly the GridSpec momentum nodes. Two exact
/// discrete identities follow: the momentum marginal equals
/// conj(phi_j) psi_j to roundoff, and the transform is bilinear in samples.
inline PhaseSpaceField cross_wigner(const WaveFunction& phi, const WaveFunction& psi) {
    require_same_grid(phi, psi, "cross_wigner");
    if (phi.domain != Domain::position)
        throw ConfigurationError("cross_wigner: expects position-domain states");
    require_well_contained(phi, "cross_wigner");
    require_well_contained(psi, "cross_wigner");

    const GridSpec& g = phi.grid;
    const int m = g.size;
    const VectorXcd phi2 = detail::upsample2(phi.samples);
    const VectorXcd psi2 = detail::upsample2(psi.samples);
    const double scale = g.dx() / (2.0 * kPi * g.hbar);

    FieldMatrix w(m, m);
    VectorXcd a(2 * m);
    for (int j = 0; j < m; ++j) {
        a.setZero();
        for (int s = -m + 1; s < m; ++s) {
            const int left = 2 * j - s;   // conjugated slot, x - y/2
            const int right = 2 * j + s;  // linear slot, x + y/2
            if (left < 0 || left >= 2 * m || right < 0 || right >= 2 * m) continue;
            const Complex c = std::conj(phi2[left]) * psi2[right];
            const int t = s >= 0 ? s : s + 2 * m;
            a[t] = (t & 1) ? -c : c;
        }
        const VectorXcd spectrum = detail::dft(a);
        for (int k = 0; k < m; ++k) w(j, k) = scale * spectrum[2 * k];
    }
    return PhaseSpaceField(g, FieldLabel::cross_wigner, std::move(w));
}

/// Wigner distribution of a single state: the diagonal cross-Wigner with the
/// imaginary residue dropped. A residue above 1e-10 signals a fault and throws.
inline PhaseSpaceField wigner(const WaveFunction& psi) {
    PhaseSpaceField w = cross_wigner(psi, psi);
    const double imag = w.max_abs_imag();
    if (imag >= 1e-10)
        throw Error("wigner: imaginary residue " + std::to_string(imag) +
                    " on a diagonal transform");
    FieldMatrix real_part = w.values.real().cast<Complex>();
    return PhaseSpaceField(w.grid, FieldLabel::wigner, std::move(real_part));
}

/// Integral over p for each x row; equals conj(phi(x)) psi(x) on the nodes.
inline VectorXcd marginal_over_p(const PhaseSpaceField& f) {
    VectorXcd out(f.grid.size);
    for (int j = 0; j < f.grid.size; ++j) {
        detail::CompensatedComplexSum s;
        for (int k = 0; k < f.grid.size; ++k) s.add(f.values(j, k));
        out[j] = s.value() * f.grid.dp();
    }
    return out;
}

/// Integral over x for each p column; equals conj(F phi)(p) (F psi)(p).
inline VectorXcd marginal_over_x(const PhaseSpaceField& f) {
    VectorXcd out(f.grid.size);
    for (int k = 0; k < f.grid.size; ++k) {
        detail::CompensatedComplexSum s;
        for (int j = 0; j < f.grid.size; ++j) s.add(f.values(j, k));
        out[k] = s.value() * f.grid.dx();
    }
    return out;
}

struct TranslatedField {
    PhaseSpaceField field;
    PhaseSpacePoint shift_applied;  // snapped half-sum of the displacements
};

/// Phase of the translation covariance law: transporting a base transform to
/// the displaced pair (T(alpha) phi, T(beta) psi) multiplies it by
/// exp(+i chi(z) / hbar) with
///   chi(z) = sigma(z, alpha - beta) + sigma(alpha, beta) / 2
/// and shifts the argument by (alpha + beta) / 2.
inline double translation_phase(PhaseSpacePoint alpha, PhaseSpacePoint beta,
                                PhaseSpacePoint z) {
    return symplectic_form(z, alpha - beta) + 0.5 * symplectic_form(alpha, beta);
}

/// Apply the covariance law to a precomputed field. The half-sum shift is
/// snapped to the (dx, dp) lattice and reported; off-grid reads are zero.
/// The phase factor is evaluated exactly (no snapping of alpha, beta).
inline TranslatedField translated_cross_wigner(PhaseSpacePoint alpha, PhaseSpacePoint beta,
                                               const PhaseSpaceField& base) {
    const GridSpec& g = base.grid;
    const PhaseSpacePoint half = (alpha + beta) * 0.5;
    const int jshift = snap_position_steps(g, half.x);
    const int kshift = snap_momentum_steps(g, half.p);
    const PhaseSpacePoint applied{jshift * g.dx(), kshift * g.dp()};

    const bool pure_shift = alpha.x == beta.x && alpha.p == beta.p;
    FieldMatrix out = FieldMatrix::Zero(g.size, g.size);
    for (int j = 0; j < g.size; ++j) {
        const int js = j - jshift;
        if (js < 0 || js >= g.size) continue;
        for (int k = 0; k < g.size; ++k) {
            const int ks = k - kshift;
            if (ks < 0 || ks >= g.size) continue;
            const PhaseSpacePoint z{g.position_node(j), g.momentum_node(k)};
            const Complex phase =
                std::exp(Complex(0.0, translation_phase(alpha, beta, z) / g.hbar));
            out(j, k) = phase * base.values(js, ks);
        }
    }
    const FieldLabel label = pure_shift ? base.label : FieldLabel::cross_wigner;
    return {PhaseSpaceField(g, label, std::move(out)), applied};
}

/// Real interference term 2 Re W(phi, psi): the cross contribution to the
/// Wigner distribution of phi + psi.
inline PhaseSpaceField interference_term(const WaveFunction& phi, const WaveFunction& psi) {
    PhaseSpaceField w = cross_wigner(phi, psi);
    FieldMatrix out = (2.0 * w.values.real()).cast<Complex>();
    return PhaseSpaceField(w.grid, FieldLabel::generic, std::move(out));
}

struct CompassPair {
    int a;
    int b;
    PhaseSpaceField term;
};

struct CompassResult {
    PhaseSpaceField total;                 // Wigner of the full superposition
    std::vector<CompassPair> pairs;        // one interference term per (a, b), a < b
    std::vector<WaveFunction> components;  // the coherent states used
};

/// Wigner distribution of a sum of coherent states, decomposed into the
/// component Wigner functions plus all pairwise interference terms.
/// n centers give exactly n (n - 1) / 2 pair terms.
inline CompassResult compass_wigner(const GridSpec& g,
                                    const std::vector<PhaseSpacePoint>& centers) {
    if (centers.size() < 2 || centers.size() > 8)
        throw ConfigurationError("compass_wigner: need between 2 and 8 centers, got " +
                                 std::to_string(centers.size()));
    std::vector<WaveFunction> parts;
    parts.reserve(centers.size());
    for (const PhaseSpacePoint& c : centers) parts.push_back(gaussian_coherent(g, c));

    FieldMatrix total = FieldMatrix::Zero(g.size, g.size);
    for (const WaveFunction& s : parts) total += wigner(s).values;

    std::vector<CompassPair> pairs;
    pairs.reserve(centers.size() * (centers.size() - 1) / 2);
    for (int a = 0; a < static_cast<int>(parts.size()); ++a) {
        for (int b = a + 1; b < static_cast<int>(parts.size()); ++b) {
            PhaseSpaceField term = interference_term(parts[a], parts[b]);
            total += term.values;
            pairs.push_back({a, b, std::move(term)});
        }
    }
    return {PhaseSpaceField(g, FieldLabel::wigner, std::move(total)), std::move(pairs),
            std::move(parts)};
}

}  // namespace xwigner
