#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "xwigner/cross_wigner.hpp"
#include "xwigner/field.hpp"
#include "xwigner/fourier.hpp"
#include "xwigner/grid.hpp"
#include "xwigner/observable.hpp"
#include "xwigner/states.hpp"

namespace xwigner {

inline constexpr double kOverlapFloor = 1e-12;

enum class WeakValueMethod { quadrature, direct_gr, direct_symbolic };

inline const char* to_string(WeakValueMethod m) {
    switch (m) {
        case WeakValueMethod::quadrature: return "QUADRATURE";
        case WeakValueMethod::direct_gr: return "DIRECT_GR";
        case WeakValueMethod::direct_symbolic: return "DIRECT_SYMBOLIC";
    }
    return "UNKNOWN";
}

struct WeakValueReport {
    Complex value{};
    Complex overlap{};
    WeakValueMethod method = WeakValueMethod::quadrature;
    // |this route - other route| when two routes were compared, NaN otherwise
    double residual_vs_alternate = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline Complex checked_overlap(const WaveFunction& phi, const WaveFunction& psi, double eps,
                               const char* op) {
    const Complex ip = inner_product(phi, psi);
    const double scale = phi.norm() * psi.norm();
    if (std::abs(ip) <= eps * scale)
        throw OrthogonalityError(std::string(op) + ": post-selection overlap |<phi|psi>| = " +
                                 std::to_string(std::abs(ip)) +
                                 " is below the conditioning floor");
    return ip;
}

/// Symbol values on the half-step x lattice x0_h = (h - M) dx/2, h in [0, 2M),
/// against the full momentum lattice. Sampled symbols are band-limited
/// interpolated column by column; polynomials evaluate exactly.
inline Eigen::MatrixXcd symbol_half_lattice(const Observable& a, const GridSpec& g) {
    const int m = g.size;
    Eigen::MatrixXcd s(2 * m, m);
    if (a.is_poly()) {
        for (int h = 0; h < 2 * m; ++h) {
            const double x0 = (h - m) * 0.5 * g.dx();
            for (int k = 0; k < m; ++k)
                s(h, k) = Complex(a.eval({x0, g.momentum_node(k)}), 0.0);
        }
        return s;
    }
    const PhaseSpaceField& f = a.sampled_field();
    if (f.grid != g)
        throw ConfigurationError("weyl quantizer: sampled symbol lives on a different grid");
    for (int k = 0; k < m; ++k) {
        VectorXcd column = f.values.col(k);
        s.col(k) = upsample2(column);
    }
    return s;
}

/// Core of the Grossmann-Royer quantizer: superpose point reflections of
/// `source` weighted by the (possibly complex) symbol S on the half-step
/// lattice,
///
///   out(x_j) = (pi hbar)^{-1} sum_{h,k} S(h,k) e^{2i p_k (x_j - x0_h)/hbar}
///              source(2 x0_h - x_j) (dx/2)(dp) ,
///
/// which reduces to out[j] = sum over h of a resolvent of the momentum sum.
/// With stride 1 the inner sum over k collapses to one inverse DFT per row;
/// the phase e^{2i p_k (x_j - x0_h)/hbar} is e^{2 pi i (k - M/2)(2j - h)/M}
/// on the lattice, so the k-sum is (-1)^h times bin (2j - h mod M) of the
/// unnormalized inverse DFT of row h. Coarser strides subsample both lattices
/// and pay the corresponding quadrature error.
inline VectorXcd gr_superposition(const Eigen::MatrixXcd& symbol, const WaveFunction& source,
                                  int stride) {
    const GridSpec& g = source.grid;
    const int m = g.size;
    if (symbol.rows() != 2 * m || symbol.cols() != m)
        throw ConfigurationError("weyl quantizer: symbol matrix has the wrong shape");
    if (stride < 1 || stride > m / 4)
        throw ConfigurationError("weyl quantizer: stride must lie in [1, M/4]");

    const double cell = (0.5 * g.dx()) * g.dp() * static_cast<double>(stride);
    const double prefactor = cell / (kPi * g.hbar);
    VectorXcd out = VectorXcd::Zero(m);

    if (stride == 1) {
        Eigen::MatrixXcd rows(2 * m, m);
        for (int h = 0; h < 2 * m; ++h) {
            VectorXcd row = symbol.row(h).transpose();
            rows.row(h) = idft_unnormalized(row).transpose();
        }
        for (int j = 0; j < m; ++j) {
            CompensatedComplexSum acc;
            for (int r = 0; r < m; ++r) {
                const int h = j + r;  // source index r = h - j runs over [0, M)
                const int tau = ((2 * j - h) % m + m) % m;
                const Complex term = rows(h, tau) * source.samples[r];
                acc.add((h & 1) ? -term : term);
            }
            out[j] = prefactor * acc.value();
        }
        return out;
    }

    // Coarse reflection centers cannot resolve the full reflection-momentum
    // delta, so the p sum is windowed to the commensurate band. The stride-s
    // operator is the exact quantizer of the symbol low-passed (in the
    // reflection momentum) at pi hbar / (s dx); for states and symbols whose
    // content sits inside the window the loss is exponentially small.
    const int half_window = std::max(1, m / (2 * stride));
    for (int j = 0; j < m; ++j) {
        CompensatedComplexSum acc;
        for (int h = 0; h < 2 * m; h += stride) {
            const int r = h - j;
            if (r < 0 || r >= m) continue;
            const int tau = 2 * j - h;
            CompensatedComplexSum psum;
            for (int k = m / 2 - half_window; k < m / 2 + half_window; ++k) {
                const double angle = (2.0 * kPi / m) * (k - m / 2) * tau;
                psum.add(symbol(h, k) * std::polar(1.0, angle));
            }
            acc.add(psum.value() * source.samples[r]);
        }
        out[j] = prefactor * acc.value();
    }
    return out;
}

}  // namespace detail

/// Apply the Weyl operator of a real symbol through the Grossmann-Royer
/// representation (a symbol-weighted superposition of point reflections).
/// stride > 1 visits every stride-th reflection center and low-passes the
/// reflection momentum accordingly: exploratory accuracy at O(M^3/stride^2)
/// cost instead of the O(M^2 log M) full evaluation.
inline WaveFunction weyl_apply_gr(const Observable& a, const WaveFunction& psi, int stride = 1) {
    if (psi.domain != Domain::position)
        throw ConfigurationError("weyl quantizer: expects a position-domain state");
    require_well_contained(psi, "weyl_apply_gr");
    Eigen::MatrixXcd symbol = detail::symbol_half_lattice(a, psi.grid);
    return WaveFunction(psi.grid, Domain::position,
                        detail::gr_superposition(symbol, psi, stride));
}

/// Normalized complex quasi-distribution rho(z) = W(phi,psi)(z)/<phi|psi>.
/// Integrates to one by construction; refuses nearly orthogonal pairs.
inline PhaseSpaceField rho(const WaveFunction& phi, const WaveFunction& psi,
                           double overlap_eps = kOverlapFloor) {
    const Complex ip = detail::checked_overlap(phi, psi, overlap_eps, "rho");
    PhaseSpaceField w = cross_wigner(phi, psi);
    return PhaseSpaceField(w.grid, FieldLabel::rho, w.values / ip);
}

/// Weak value by phase-space quadrature, integral of A(z) rho(z).
inline WeakValueReport weak_value_quadrature(const Observable& a, const WaveFunction& phi,
                                             const WaveFunction& psi,
                                             double overlap_eps = kOverlapFloor) {
    PhaseSpaceField r = rho(phi, psi, overlap_eps);
    const Eigen::MatrixXd symbol = a.grid_values(r.grid);
    detail::CompensatedComplexSum acc;
    for (int j = 0; j < r.grid.size; ++j)
        for (int k = 0; k < r.grid.size; ++k) acc.add(symbol(j, k) * r.values(j, k));
    WeakValueReport rep;
    rep.value = acc.value() * (r.grid.dx() * r.grid.dp());
    rep.overlap = inner_product(phi, psi);
    rep.method = WeakValueMethod::quadrature;
    return rep;
}

/// Weak value as <phi| A psi> / <phi|psi>, applying the operator directly.
/// Symbols with an exact operator rule use it; everything else goes through
/// the Grossmann-Royer quadrature.
inline WeakValueReport weak_value_direct(const Observable& a, const WaveFunction& phi,
                                         const WaveFunction& psi,
                                         double overlap_eps = kOverlapFloor, int stride = 1) {
    const Complex ip = detail::checked_overlap(phi, psi, overlap_eps, "weak_value_direct");
    const bool symbolic = a.has_symbolic_rule() && stride == 1;
    WaveFunction a_psi = symbolic ? a.apply_symbolic(psi) : weyl_apply_gr(a, psi, stride);
    WeakValueReport rep;
    rep.method = symbolic ? WeakValueMethod::direct_symbolic : WeakValueMethod::direct_gr;
    rep.value = inner_product(phi, a_psi) / ip;
    rep.overlap = ip;
    return rep;
}

/// Diagonal weak value; coincides with the ordinary expectation value and
/// must come out real.
inline double expectation(const Observable& a, const WaveFunction& psi) {
    if (psi.squared_norm() <= 0.0) throw ConfigurationError("expectation: zero state");
    WeakValueReport rep = weak_value_quadrature(a, psi, psi);
    if (std::abs(rep.value.imag()) > 1e-8 * std::max(1.0, std::abs(rep.value)))
        throw Error("expectation: non-real diagonal weak value, imag = " +
                    std::to_string(rep.value.imag()));
    return rep.value.real();
}

struct ConvexSumReport {
    double expectation_lhs = 0.0;   // quadrature route
    Complex weighted_sum_rhs{};     // sum of weight_j * weak value against h_j
    double residual = 0.0;
    double captured_mass = 0.0;     // fraction of |psi|^2 inside the basis
    int terms_used = 0;
};

/// Check that the expectation value decomposes as an overlap-weighted sum of
/// weak values against an orthonormal oscillator family:
///   <A> = sum_j |<h_j|psi>|^2/|psi|^2 * (<h_j|A psi>/<h_j|psi>).
/// Zero-weight terms drop out exactly. Fails if the family misses more than
/// a 1e-8 fraction of the state.
inline ConvexSumReport convex_sum_check(const Observable& a, const WaveFunction& psi,
                                        int basis_size) {
    if (basis_size < 1)
        throw ConfigurationError("convex_sum_check: basis_size must be positive");
    const GridSpec& g = psi.grid;
    std::vector<WaveFunction> basis = oscillator_family(g, basis_size - 1);

    const double nsq = psi.squared_norm();
    if (nsq <= 0.0) throw ConfigurationError("convex_sum_check: zero state");

    WaveFunction a_psi = a.has_symbolic_rule() ? a.apply_symbolic(psi)
                                               : weyl_apply_gr(a, psi);

    detail::CompensatedSum captured;
    detail::CompensatedComplexSum rhs;
    int used = 0;
    for (const WaveFunction& h : basis) {
        const Complex c = inner_product(h, psi);
        captured.add(std::norm(c));
        if (std::abs(c) == 0.0) continue;  // zero weight, exact skip
        rhs.add(std::conj(c) * inner_product(h, a_psi));
        ++used;
    }

    ConvexSumReport rep;
    rep.captured_mass = captured.value() / nsq;
    if (rep.captured_mass < 1.0 - 1e-8)
        throw CoverageError("convex_sum_check: oscillator family captures only a " +
                                std::to_string(rep.captured_mass) +
                                " fraction of the state; enlarge the basis",
                            rep.captured_mass);
    rep.terms_used = used;
    rep.expectation_lhs = expectation(a, psi);
    rep.weighted_sum_rhs = rhs.value() / nsq;
    rep.residual = std::abs(Complex(rep.expectation_lhs, 0.0) - rep.weighted_sum_rhs);
    return rep;
}

struct AmplificationReport {
    double bound = 0.0;        // e^{|z0|^2/hbar} * sup|A|
    double sup_abs_symbol = 0.0;
    Complex attained{};        // weak value between the antipodal coherent pair
    Complex overlap{};
};

/// Weak-value amplification bound for an antipodal coherent pair: the weak
/// value of a bounded symbol between states centered at +z0 and -z0 can
/// exceed sup|A| by at most the reciprocal overlap e^{|z0|^2/hbar}.
inline AmplificationReport coherent_amplification_bound(const Observable& a, PhaseSpacePoint z0,
                                                        const GridSpec& g) {
    if (a.is_poly())
        throw ConfigurationError(
            "amplification bound: needs a bounded (sampled) symbol");
    AmplificationReport rep;
    rep.sup_abs_symbol = a.sup_abs(g);
    rep.bound = std::exp(z0.norm_sq() / g.hbar) * rep.sup_abs_symbol;

    WaveFunction post = gaussian_coherent(g, z0);
    WaveFunction pre = gaussian_coherent(g, PhaseSpacePoint{-z0.x, -z0.p});
    WeakValueReport wv = weak_value_quadrature(a, post, pre);
    rep.attained = wv.value;
    rep.overlap = wv.overlap;
    if (std::abs(rep.attained) > rep.bound + 1e-6 * std::max(1.0, rep.bound))
        throw Error("amplification bound: attained weak value exceeds the bound");
    return rep;
}

}  // namespace xwigner
