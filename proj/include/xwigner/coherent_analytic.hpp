#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "xwigner/field.hpp"
#include "xwigner/grid.hpp"

namespace xwigner {

/// Phase-space point in N degrees of freedom.
struct PhaseSpacePointN {
    Eigen::VectorXd x;
    Eigen::VectorXd p;

    explicit PhaseSpacePointN(int dim)
        : x(Eigen::VectorXd::Zero(check_dim(dim))), p(Eigen::VectorXd::Zero(dim)) {}
    PhaseSpacePointN(Eigen::VectorXd x_, Eigen::VectorXd p_) : x(std::move(x_)), p(std::move(p_)) {
        if (x.size() != p.size() || x.size() < 1)
            throw ConfigurationError("phase-space point: x and p need equal positive dimension");
    }

    int dim() const { return static_cast<int>(x.size()); }
    double norm_sq() const { return x.squaredNorm() + p.squaredNorm(); }
    PhaseSpacePointN operator-() const { return {-x, -p}; }
    PhaseSpacePointN operator+(const PhaseSpacePointN& o) const { return {x + o.x, p + o.p}; }
    PhaseSpacePointN operator-(const PhaseSpacePointN& o) const { return {x - o.x, p - o.p}; }
    PhaseSpacePointN operator*(double s) const { return {s * x, s * p}; }

  private:
    static int check_dim(int dim) {
        if (dim < 1) throw ConfigurationError("phase-space point: dimension must be positive");
        return dim;
    }
};

inline double symplectic_form(const PhaseSpacePointN& z, const PhaseSpacePointN& zp) {
    if (z.dim() != zp.dim())
        throw ConfigurationError("symplectic form: dimension mismatch");
    return z.p.dot(zp.x) - zp.p.dot(z.x);
}

/// Complex number kept as log|value| and arg(value) so that Gaussian closed
/// forms stay evaluable far beyond double range. `value()` materializes it,
/// or reports overflow/underflow by returning nothing.
struct LogComplex {
    double log_magnitude = 0.0;
    double phase = 0.0;

    static constexpr double kLogLimit = 700.0;  // exp(700) still fits a double

    bool representable() const { return log_magnitude <= kLogLimit; }
    /// nullopt marks genuine overflow; deep underflow flushes to exact zero.
    std::optional<Complex> value() const {
        if (!representable()) return std::nullopt;
        if (log_magnitude < -kLogLimit) return Complex(0.0, 0.0);
        return std::polar(std::exp(log_magnitude), phase);
    }
    LogComplex operator*(const LogComplex& o) const {
        return {log_magnitude + o.log_magnitude, phase + o.phase};
    }
    LogComplex operator/(const LogComplex& o) const {
        return {log_magnitude - o.log_magnitude, phase - o.phase};
    }
};

namespace analytic {

inline void check_hbar(double hbar) {
    if (!(hbar > 0.0)) throw ConfigurationError("closed form: hbar must be positive");
}

/// Wigner function of the standard Gaussian wave packet,
/// (pi hbar)^{-N} e^{-|z|^2/hbar}.
inline LogComplex fiducial_wigner(const PhaseSpacePointN& z, double hbar) {
    check_hbar(hbar);
    return {-z.dim() * std::log(kPi * hbar) - z.norm_sq() / hbar, 0.0};
}

/// Overlap of two displaced Gaussian packets centered at alpha and beta:
/// e^{-i sigma(alpha,beta)/(2 hbar)} e^{-|alpha-beta|^2/(4 hbar)}, where
/// alpha displaces the conjugated (left) slot. Integrating the cross field
/// below over all of phase space reproduces exactly this number.
inline LogComplex coherent_overlap(const PhaseSpacePointN& alpha, const PhaseSpacePointN& beta,
                                   double hbar) {
    check_hbar(hbar);
    const PhaseSpacePointN d = alpha - beta;
    return {-d.norm_sq() / (4.0 * hbar), -symplectic_form(alpha, beta) / (2.0 * hbar)};
}

/// Cross field of two displaced Gaussian packets, alpha on the conjugated
/// side. A Gaussian bump at the midpoint carrying the translation phase:
///   e^{(i/hbar)[sigma(z,alpha-beta) + sigma(alpha,beta)/2]}
///   (pi hbar)^{-N} e^{-|z-(alpha+beta)/2|^2/hbar}.
inline LogComplex coherent_cross_wigner(const PhaseSpacePointN& z, const PhaseSpacePointN& alpha,
                                        const PhaseSpacePointN& beta, double hbar) {
    check_hbar(hbar);
    const PhaseSpacePointN center = (alpha + beta) * 0.5;
    const PhaseSpacePointN shifted = z - center;
    const double chi = symplectic_form(z, alpha - beta) + 0.5 * symplectic_form(alpha, beta);
    return {-z.dim() * std::log(kPi * hbar) - shifted.norm_sq() / hbar, chi / hbar};
}

/// Antipodal specialization (alpha = z0, beta = -z0): the bump sits back at
/// the origin and the phase collapses to 2 sigma(z, z0)/hbar.
inline LogComplex antipodal_cross_wigner(const PhaseSpacePointN& z, const PhaseSpacePointN& z0,
                                         double hbar) {
    check_hbar(hbar);
    return {-z.dim() * std::log(kPi * hbar) - z.norm_sq() / hbar,
            2.0 * symplectic_form(z, z0) / hbar};
}

inline LogComplex antipodal_overlap(const PhaseSpacePointN& z0, double hbar) {
    check_hbar(hbar);
    return {-z0.norm_sq() / hbar, 0.0};
}

/// Normalized quasi-distribution for the antipodal pair. The overlap in the
/// denominator inflates the magnitude by e^{|z0|^2/hbar}, which is the
/// engine of weak-value amplification.
inline LogComplex antipodal_rho(const PhaseSpacePointN& z, const PhaseSpacePointN& z0,
                                double hbar) {
    return antipodal_cross_wigner(z, z0, hbar) / antipodal_overlap(z0, hbar);
}

/// e^{|z0|^2/hbar}, the largest factor by which a bounded symbol's weak value
/// between the antipodal pair can exceed its sup norm.
inline LogComplex amplification_factor(const PhaseSpacePointN& z0, double hbar) {
    check_hbar(hbar);
    return {z0.norm_sq() / hbar, 0.0};
}

/// Componentwise weak value of the position operator between the antipodal
/// pair (post-selection at +z0, preparation at -z0): purely imaginary, -i p0.
inline Eigen::VectorXcd antipodal_weak_position(const PhaseSpacePointN& z0) {
    return Complex(0.0, -1.0) * z0.p.cast<Complex>();
}

/// Same for momentum: +i x0.
inline Eigen::VectorXcd antipodal_weak_momentum(const PhaseSpacePointN& z0) {
    return Complex(0.0, 1.0) * z0.x.cast<Complex>();
}

/// Phase (before dividing by hbar) picked up when both arguments of a
/// cross-Wigner transform are displaced, sigma(z, alpha - beta) +
/// sigma(alpha, beta)/2. Same convention as the grid-side transport.
inline double translation_phase(const PhaseSpacePointN& alpha, const PhaseSpacePointN& beta,
                                const PhaseSpacePointN& z) {
    return symplectic_form(z, alpha - beta) + 0.5 * symplectic_form(alpha, beta);
}

using AnalyticField = std::function<LogComplex(const PhaseSpacePointN&)>;

/// Transport a closed-form field under simultaneous displacements: shift the
/// argument to the midpoint frame and attach the translation phase. Applied
/// to the fiducial Wigner function it reproduces coherent_cross_wigner.
inline AnalyticField translation_transport(const PhaseSpacePointN& alpha,
                                           const PhaseSpacePointN& beta, AnalyticField base,
                                           double hbar) {
    check_hbar(hbar);
    const PhaseSpacePointN mid = (alpha + beta) * 0.5;
    return [alpha, beta, mid, base = std::move(base), hbar](const PhaseSpacePointN& z) {
        LogComplex out = base(z - mid);
        out.phase += translation_phase(alpha, beta, z) / hbar;
        return out;
    };
}

}  // namespace analytic

inline PhaseSpacePointN to_point_n(PhaseSpacePoint z) {
    PhaseSpacePointN out(1);
    out.x[0] = z.x;
    out.p[0] = z.p;
    return out;
}

/// Materialize the antipodal closed form on a one-dimensional grid for
/// comparison against the discrete cross-Wigner transform.
inline PhaseSpaceField antipodal_cross_wigner_field(const GridSpec& g, PhaseSpacePoint z0) {
    const PhaseSpacePointN c0 = to_point_n(z0);
    FieldMatrix values(g.size, g.size);
    for (int j = 0; j < g.size; ++j) {
        for (int k = 0; k < g.size; ++k) {
            PhaseSpacePointN z = to_point_n({g.position_node(j), g.momentum_node(k)});
            const LogComplex w = analytic::antipodal_cross_wigner(z, c0, g.hbar);
            values(j, k) = w.value().value_or(Complex(0.0, 0.0));
        }
    }
    return PhaseSpaceField(g, FieldLabel::cross_wigner, std::move(values));
}

}  // namespace xwigner
