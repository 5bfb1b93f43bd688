#pragma once

#include <xwigner/xwigner.hpp>

namespace testsupport {

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return (a - b.template cast<typename A::Scalar>()).cwiseAbs().maxCoeff();
}

// Relative distance used wherever two routes to the same number are compared.
inline double rel_diff(xwigner::Complex a, xwigner::Complex b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testsupport
