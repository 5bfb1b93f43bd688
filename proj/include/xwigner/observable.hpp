#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "xwigner/field.hpp"
#include "xwigner/fourier.hpp"
#include "xwigner/grid.hpp"

namespace xwigner {

/// One term of a polynomial phase-space symbol, coeff * x^a * p^b.
struct Monomial {
    int x_power = 0;
    int p_power = 0;
    double coeff = 0.0;
};

/// A real observable given either as a polynomial symbol (total degree <= 4)
/// or as a sampled real field on the grid. Polynomial symbols quantize by
/// the Weyl (symmetric) ordering convention.
class Observable {
  public:
    static Observable poly(std::vector<Monomial> terms) {
        for (const Monomial& t : terms) {
            if (t.x_power < 0 || t.p_power < 0 || t.x_power + t.p_power > 4)
                throw ConfigurationError(
                    "observable: polynomial symbols are capped at total degree 4");
            if (!std::isfinite(t.coeff))
                throw ConfigurationError("observable: non-finite coefficient");
        }
        Observable a;
        a.terms_ = std::move(terms);
        return a;
    }

    static Observable sampled(PhaseSpaceField field) {
        if (field.label != FieldLabel::observable)
            throw ConfigurationError("observable: sampled symbol must carry the OBSERVABLE label");
        Observable a;
        a.field_.emplace(std::move(field));
        return a;
    }

    bool is_poly() const { return !field_.has_value(); }
    const std::vector<Monomial>& monomials() const { return terms_; }
    const PhaseSpaceField& sampled_field() const { return *field_; }

    /// True when every term has an exact operator rule: pure powers of x or p,
    /// or the symmetrized mixed term x p. Mixed monomials of degree >= 3 have
    /// no hard-coded symmetrization table and must go through the
    /// Grossmann-Royer quadrature instead.
    bool has_symbolic_rule() const {
        if (!is_poly()) return false;
        for (const Monomial& t : terms_)
            if (t.x_power > 0 && t.p_power > 0 && t.x_power + t.p_power > 2) return false;
        return true;
    }

    double eval(PhaseSpacePoint z) const {
        if (!is_poly())
            throw ConfigurationError("observable: sampled symbols evaluate on grid nodes only");
        double v = 0.0;
        for (const Monomial& t : terms_)
            v += t.coeff * std::pow(z.x, t.x_power) * std::pow(z.p, t.p_power);
        return v;
    }

    /// Real symbol values on the full phase-space grid.
    Eigen::MatrixXd grid_values(const GridSpec& g) const {
        if (field_) {
            if (field_->grid != g)
                throw ConfigurationError("observable: sampled symbol lives on a different grid");
            return field_->values.real();
        }
        Eigen::MatrixXd out(g.size, g.size);
        for (int j = 0; j < g.size; ++j)
            for (int k = 0; k < g.size; ++k)
                out(j, k) = eval({g.position_node(j), g.momentum_node(k)});
        return out;
    }

    double sup_abs(const GridSpec& g) const { return grid_values(g).cwiseAbs().maxCoeff(); }

    /// Bounded bell-shaped test symbol, amplitude * exp(-|z - center|^2 / width_sq).
    static Observable gaussian_bump(const GridSpec& g, PhaseSpacePoint center, double width_sq,
                                    double amplitude = 1.0) {
        if (!(width_sq > 0.0))
            throw ConfigurationError("gaussian_bump: width_sq must be positive");
        FieldMatrix values(g.size, g.size);
        for (int j = 0; j < g.size; ++j)
            for (int k = 0; k < g.size; ++k) {
                const PhaseSpacePoint z{g.position_node(j), g.momentum_node(k)};
                values(j, k) = amplitude * std::exp(-(z - center).norm_sq() / width_sq);
            }
        return sampled(PhaseSpaceField(g, FieldLabel::observable, std::move(values)));
    }

    /// Apply the Weyl quantization of the symbol through exact operator rules:
    /// x^a is pointwise multiplication, p^b a Fourier multiplier, and the
    /// mixed term xp maps to (x px + px x)/2. Requires has_symbolic_rule().
    WaveFunction apply_symbolic(const WaveFunction& psi) const {
        if (!has_symbolic_rule())
            throw ConfigurationError("observable: no symbolic rule for this symbol");
        if (psi.domain != Domain::position)
            throw ConfigurationError("observable: expects a position-domain state");
        const GridSpec& g = psi.grid;
        VectorXcd acc = VectorXcd::Zero(g.size);
        for (const Monomial& t : terms_) {
            if (t.x_power > 0 && t.p_power > 0) {
                // (x p + p x)/2 psi = (x (p psi) + p (x psi)) / 2
                WaveFunction p_psi = detail::apply_momentum_multiplier(
                    psi, [](double p) { return Complex(p, 0.0); });
                WaveFunction x_psi = psi;
                for (int j = 0; j < g.size; ++j) x_psi.samples[j] *= g.position_node(j);
                WaveFunction p_x_psi = detail::apply_momentum_multiplier(
                    x_psi, [](double p) { return Complex(p, 0.0); });
                for (int j = 0; j < g.size; ++j)
                    acc[j] += t.coeff * 0.5 *
                              (g.position_node(j) * p_psi.samples[j] + p_x_psi.samples[j]);
            } else if (t.p_power > 0) {
                const int b = t.p_power;
                WaveFunction term = detail::apply_momentum_multiplier(
                    psi, [b](double p) { return Complex(std::pow(p, b), 0.0); });
                acc += t.coeff * term.samples;
            } else {
                const int a = t.x_power;
                for (int j = 0; j < g.size; ++j)
                    acc[j] += t.coeff * std::pow(g.position_node(j), a) * psi.samples[j];
            }
        }
        return WaveFunction(g, Domain::position, std::move(acc));
    }

  private:
    std::vector<Monomial> terms_;
    std::optional<PhaseSpaceField> field_;
};

}  // namespace xwigner
