// Weak values between a pair of coherent states sitting at opposite phase
// space points, computed three ways: closed form, phase space quadrature
// against the quasi-distribution, and the quantizer route. The three columns
// should agree to full quadrature accuracy.

#include <cstdio>

#include <xwigner/xwigner.hpp>

int main() {
    using namespace xwigner;

    const GridSpec grid(256, 10.0, 1.0);
    const PhaseSpacePoint z0{0.0, 1.0};

    // Post-selected side (conjugated slot) at +z0, prepared side at -z0.
    const WaveFunction phi = gaussian_coherent(grid, z0);
    const WaveFunction psi = gaussian_coherent(grid, {-z0.x, -z0.p});

    const Complex overlap_closed =
        analytic::antipodal_overlap(to_point_n(z0), grid.hbar).value().value();
    std::printf("pair centers (+/-)(%g, %g), overlap %.12g (closed form %.12g)\n\n",
                z0.x, z0.p, std::abs(inner_product(phi, psi)), overlap_closed.real());

    const Observable position = Observable::poly({{1, 0, 1.0}});
    const Observable momentum = Observable::poly({{0, 1, 1.0}});

    const Complex closed_x = analytic::antipodal_weak_position(to_point_n(z0))(0);
    const Complex closed_p = analytic::antipodal_weak_momentum(to_point_n(z0))(0);

    std::printf("%-10s %-28s %-28s %s\n", "symbol", "closed form", "quadrature", "quantizer");
    for (const auto& [name, obs, closed] :
         {std::tuple{"x", position, closed_x}, std::tuple{"p", momentum, closed_p}}) {
        const WeakValueReport quad = weak_value_quadrature(obs, phi, psi);
        const WeakValueReport dir = weak_value_direct(obs, phi, psi);
        std::printf("%-10s %+.6f%+.6fi        %+.6f%+.6fi        %+.6f%+.6fi\n", name,
                    closed.real(), closed.imag(), quad.value.real(), quad.value.imag(),
                    dir.value.real(), dir.value.imag());
    }

    // An observable bounded by 1 whose weak value escapes the expectation
    // range: the hallmark of post-selecting on a nearly orthogonal partner.
    const PhaseSpacePoint far{0.0, 1.5};
    const Observable bump = Observable::gaussian_bump(grid, {0.0, 0.0}, 0.8);
    const AmplificationReport amp = coherent_amplification_bound(bump, far, grid);
    std::printf("\nbounded bump between (+/-)(%g, %g): |weak| = %.6f, bound %.6f, sup %.6f\n",
                far.x, far.p, std::abs(amp.attained), amp.bound, amp.sup_abs_symbol);
    return 0;
}
