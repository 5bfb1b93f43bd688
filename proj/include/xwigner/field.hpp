#pragma once

#include <string>

#include <Eigen/Dense>

#include "xwigner/grid.hpp"

namespace xwigner {

using FieldMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// What a phase-space matrix claims to be. The label gates invariant checks
/// at construction time and is carried through serialization.
enum class FieldLabel { cross_wigner, wigner, rho, observable, generic };

inline const char* to_string(FieldLabel l) {
    switch (l) {
        case FieldLabel::cross_wigner: return "CROSS_WIGNER";
        case FieldLabel::wigner: return "WIGNER";
        case FieldLabel::rho: return "RHO";
        case FieldLabel::observable: return "OBSERVABLE";
        case FieldLabel::generic: return "GENERIC";
    }
    return "GENERIC";
}

inline FieldLabel field_label_from_string(const std::string& s) {
    if (s == "CROSS_WIGNER") return FieldLabel::cross_wigner;
    if (s == "WIGNER") return FieldLabel::wigner;
    if (s == "RHO") return FieldLabel::rho;
    if (s == "OBSERVABLE") return FieldLabel::observable;
    if (s == "GENERIC") return FieldLabel::generic;
    throw ConfigurationError("unknown field label '" + s + "'");
}

/// Complex matrix over the phase-space grid: row j is the position node x_j,
/// column k the momentum node p_k. Storage is row-major by x index.
struct PhaseSpaceField {
    GridSpec grid;
    FieldLabel label;
    FieldMatrix values;

    PhaseSpaceField(GridSpec g, FieldLabel l, FieldMatrix v)
        : grid(g), label(l), values(std::move(v)) {
        if (values.rows() != grid.size || values.cols() != grid.size)
            throw ConfigurationError("field: matrix shape does not match grid size");
        check_label_invariant();
    }

    double max_abs() const { return values.cwiseAbs().maxCoeff(); }
    double max_abs_imag() const { return values.imag().cwiseAbs().maxCoeff(); }

  private:
    void check_label_invariant() const;
};

/// Riemann integral over the grid, sum * dx * dp, row-major deterministic.
inline Complex phase_space_integral(const PhaseSpaceField& f) {
    detail::CompensatedComplexSum s;
    for (int j = 0; j < f.grid.size; ++j)
        for (int k = 0; k < f.grid.size; ++k) s.add(f.values(j, k));
    return s.value() * (f.grid.dx() * f.grid.dp());
}

inline void PhaseSpaceField::check_label_invariant() const {
    switch (label) {
        case FieldLabel::wigner:
            if (max_abs_imag() >= 1e-10)
                throw Error("field: WIGNER label requires a real matrix, max |Im| = " +
                            std::to_string(max_abs_imag()));
            break;
        case FieldLabel::observable:
            if (max_abs_imag() > 1e-12)
                throw Error("field: OBSERVABLE label requires a real matrix");
            break;
        case FieldLabel::rho: {
            const Complex total = phase_space_integral(*this);
            if (std::abs(total - Complex(1.0, 0.0)) >= 1e-6)
                throw Error("field: RHO label requires unit integral, got " +
                            std::to_string(total.real()) + " + " +
                            std::to_string(total.imag()) + "i");
            break;
        }
        case FieldLabel::cross_wigner:
        case FieldLabel::generic:
            break;
    }
}

inline void require_same_grid(const PhaseSpaceField& a, const WaveFunction& b,
                              const char* op) {
    if (a.grid != b.grid)
        throw ConfigurationError(std::string(op) + ": operands live on different grids");
}

}  // namespace xwigner
