#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "xwigner/errors.hpp"

namespace xwigner {

using Complex = std::complex<double>;
using VectorXcd = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform symmetric sample grid shared by position and momentum
/// representations. Nodes are u_j = (j - M/2) * step with M samples,
/// so both representations cover [-U, U) and exclude the right endpoint.
/// The momentum step is tied to the position step by dx * dp * M = 2*pi*hbar,
/// which makes the discrete hbar-Fourier transform exactly unitary.
struct GridSpec {
    int size;           // M, a power of two, at least 8
    double half_width;  // L, position nodes cover [-L, L)
    double hbar;

    GridSpec(int m, double l, double h) : size(m), half_width(l), hbar(h) {
        if (m < 8 || (m & (m - 1)) != 0)
            throw ConfigurationError("grid: size must be a power of two >= 8, got " +
                                     std::to_string(m));
        if (!(l > 0.0))
            throw ConfigurationError("grid: half_width must be positive");
        if (!(h > 0.0))
            throw ConfigurationError("grid: hbar must be positive");
    }

    double dx() const { return 2.0 * half_width / size; }
    double dp() const { return 2.0 * kPi * hbar / (size * dx()); }
    double momentum_half_width() const { return 0.5 * size * dp(); }

    double position_node(int j) const { return (j - size / 2) * dx(); }
    double momentum_node(int k) const { return (k - size / 2) * dp(); }

    bool operator==(const GridSpec& o) const {
        return size == o.size && half_width == o.half_width && hbar == o.hbar;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

enum class Domain { position, momentum };

inline const char* to_string(Domain d) {
    return d == Domain::position ? "position" : "momentum";
}

/// A point z = (x, p) of the flat phase plane.
struct PhaseSpacePoint {
    double x = 0.0;
    double p = 0.0;

    PhaseSpacePoint operator+(PhaseSpacePoint o) const { return {x + o.x, p + o.p}; }
    PhaseSpacePoint operator-(PhaseSpacePoint o) const { return {x - o.x, p - o.p}; }
    PhaseSpacePoint operator-() const { return {-x, -p}; }
    PhaseSpacePoint operator*(double s) const { return {x * s, p * s}; }
    double norm_sq() const { return x * x + p * p; }
};

/// Standard symplectic form, sigma(z, z') = p x' - p' x.
inline double symplectic_form(PhaseSpacePoint z, PhaseSpacePoint zp) {
    return z.p * zp.x - zp.p * z.x;
}

namespace detail {

/// Deterministic compensated (Neumaier) summation; fixed left-to-right order.
class CompensatedSum {
  public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
  public:
    void add(Complex v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

  private:
    CompensatedSum re_, im_;
};

}  // namespace detail

/// Sampled wavefunction on a GridSpec, in either representation.
/// Value type; samples are raw (not renormalized by any operation).
struct WaveFunction {
    GridSpec grid;
    Domain domain = Domain::position;
    VectorXcd samples;

    WaveFunction(GridSpec g, Domain d, VectorXcd s)
        : grid(g), domain(d), samples(std::move(s)) {
        if (samples.size() != grid.size)
            throw ConfigurationError("wavefunction: sample count " +
                                     std::to_string(samples.size()) +
                                     " does not match grid size " +
                                     std::to_string(grid.size));
    }

    static WaveFunction zero(GridSpec g, Domain d = Domain::position) {
        return WaveFunction(g, d, VectorXcd::Zero(g.size));
    }

    double step() const { return domain == Domain::position ? grid.dx() : grid.dp(); }
    double node(int j) const {
        return domain == Domain::position ? grid.position_node(j) : grid.momentum_node(j);
    }

    double squared_norm() const {
        detail::CompensatedSum s;
        for (int j = 0; j < grid.size; ++j) s.add(std::norm(samples[j]));
        return s.value() * step();
    }
    double norm() const { return std::sqrt(squared_norm()); }

    /// Norm mass on the outermost 5% of nodes (split between both edges).
    double boundary_tail_mass() const {
        int edge = std::max(1, static_cast<int>(grid.size * 0.025));
        detail::CompensatedSum s;
        for (int j = 0; j < edge; ++j) s.add(std::norm(samples[j]));
        for (int j = grid.size - edge; j < grid.size; ++j) s.add(std::norm(samples[j]));
        return s.value() * step();
    }

    /// True when the boundary tail carries less than 1e-10 of the total mass.
    bool is_well_contained() const {
        return boundary_tail_mass() <= 1e-10 * squared_norm();
    }
};

inline void require_same_grid(const WaveFunction& a, const WaveFunction& b,
                              const char* op) {
    if (a.grid != b.grid)
        throw ConfigurationError(std::string(op) + ": operands live on different grids");
    if (a.domain != b.domain)
        throw ConfigurationError(std::string(op) + ": operands live in different domains (" +
                                 to_string(a.domain) + " vs " + to_string(b.domain) + ")");
}

inline void require_well_contained(const WaveFunction& psi, const char* op) {
    if (!psi.is_well_contained())
        throw ContainmentError(std::string(op) + ": input is not well contained (tail mass " +
                               std::to_string(psi.boundary_tail_mass()) + ")");
}

/// Discrete L2 inner product with the first slot conjugated,
/// <a|b> = sum_j conj(a_j) b_j * step. Deterministic summation order.
inline Complex inner_product(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(a, b, "inner_product");
    detail::CompensatedComplexSum s;
    for (int j = 0; j < a.grid.size; ++j) s.add(std::conj(a.samples[j]) * b.samples[j]);
    return s.value() * a.step();
}

/// Nearest node count on the position lattice: x0 ~ n * dx.
inline int snap_position_steps(const GridSpec& g, double x0) {
    return static_cast<int>(std::llround(x0 / g.dx()));
}

/// Nearest node count on the half-step lattice: x0 ~ r * dx / 2.
/// Reflection centers live here so mirrored nodes stay on the grid.
inline int snap_half_steps(const GridSpec& g, double x0) {
    return static_cast<int>(std::llround(2.0 * x0 / g.dx()));
}

/// Nearest node count on the momentum lattice: p0 ~ n * dp.
inline int snap_momentum_steps(const GridSpec& g, double p0) {
    return static_cast<int>(std::llround(p0 / g.dp()));
}

}  // namespace xwigner
