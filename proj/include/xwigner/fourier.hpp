#pragma once

#include <complex>

#include <unsupported/Eigen/FFT>

#include "xwigner/grid.hpp"

namespace xwigner {
namespace detail {

inline Eigen::FFT<double>& fft_engine() {
    static thread_local Eigen::FFT<double> engine;
    return engine;
}

/// Unnormalized forward DFT, X_k = sum_j x_j exp(-2 pi i j k / N).
inline VectorXcd dft(const VectorXcd& in) {
    VectorXcd out(in.size());
    fft_engine().fwd(out, in);
    return out;
}

/// Unnormalized inverse DFT, x_j = sum_k X_k exp(+2 pi i j k / N).
inline VectorXcd idft_unnormalized(const VectorXcd& in) {
    VectorXcd out(in.size());
    fft_engine().inv(out, in);
    return out * static_cast<double>(in.size());
}

/// Core hbar-Fourier kernel between the dual symmetric grids.
/// With nodes u_k = (k - M/2) step_out and v_j = (j - M/2) step_in and
/// step_in * step_out * M = 2 pi hbar, the continuum kernel
/// exp(-i u v / hbar) evaluates to (-1)^(j+k) exp(-2 pi i j k / M)
/// for M divisible by four, so the transform is one modulated FFT.
inline VectorXcd hbar_fourier_samples(const VectorXcd& in, double step_in, double hbar,
                                      bool forward) {
    const int m = static_cast<int>(in.size());
    VectorXcd work(m);
    for (int j = 0; j < m; ++j) work[j] = (j & 1) ? -in[j] : in[j];
    VectorXcd out = forward ? dft(work) : idft_unnormalized(work);
    const double scale = step_in / std::sqrt(2.0 * kPi * hbar);
    for (int k = 0; k < m; ++k) out[k] *= (k & 1) ? -scale : scale;
    return out;
}

inline Domain flip(Domain d) {
    return d == Domain::position ? Domain::momentum : Domain::position;
}

inline WaveFunction hbar_fourier_unchecked(const WaveFunction& psi) {
    return WaveFunction(psi.grid, flip(psi.domain),
                        hbar_fourier_samples(psi.samples, psi.step(), psi.grid.hbar, true));
}

inline WaveFunction hbar_fourier_inverse_unchecked(const WaveFunction& psi) {
    return WaveFunction(psi.grid, flip(psi.domain),
                        hbar_fourier_samples(psi.samples, psi.step(), psi.grid.hbar, false));
}

/// Trigonometric interpolation onto the half-step grid: returns 2M samples
/// at nodes (m - M) * step/2; even output nodes reproduce the input exactly.
/// The Nyquist bin is split evenly between +M/2 and -M/2.
inline VectorXcd upsample2(const VectorXcd& in) {
    const int m = static_cast<int>(in.size());
    VectorXcd spec = dft(in);
    VectorXcd spec2 = VectorXcd::Zero(2 * m);
    for (int k = 0; k < m / 2; ++k) spec2[k] = spec[k];
    spec2[m / 2] = 0.5 * spec[m / 2];
    spec2[2 * m - m / 2] = 0.5 * spec[m / 2];
    for (int k = m / 2 + 1; k < m; ++k) spec2[m + k] = spec[k];
    return idft_unnormalized(spec2) / static_cast<double>(m);
}

/// psi -> Finv[f(p) F psi] for a position-domain state; f is any
/// callable double -> Complex evaluated on the momentum nodes.
template <typename F>
WaveFunction apply_momentum_multiplier(const WaveFunction& psi, F&& f) {
    WaveFunction tilde = hbar_fourier_unchecked(psi);
    for (int k = 0; k < psi.grid.size; ++k)
        tilde.samples[k] *= f(psi.grid.momentum_node(k));
    return hbar_fourier_inverse_unchecked(tilde);
}

}  // namespace detail

/// hbar-scaled Fourier transform,
/// (F psi)(p) = (2 pi hbar)^(-1/2) Integral exp(-i p x / hbar) psi(x) dx,
/// sampled on the momentum nodes of the same GridSpec. Exactly unitary
/// between the step-weighted inner products; applying it four times is an
/// exact identity on the grid. Flips the domain tag.
inline WaveFunction hbar_fourier(const WaveFunction& psi) {
    require_well_contained(psi, "hbar_fourier");
    return detail::hbar_fourier_unchecked(psi);
}

/// Adjoint (inverse) transform, kernel exp(+i p x / hbar).
inline WaveFunction hbar_fourier_inverse(const WaveFunction& psi) {
    require_well_contained(psi, "hbar_fourier_inverse");
    return detail::hbar_fourier_inverse_unchecked(psi);
}

}  // namespace xwigner
