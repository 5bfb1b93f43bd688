// Grid bookkeeping and the hbar-scaled Fourier transform.
//
// The transform convention is (F psi)(p) = (2 pi hbar)^{-1/2} integral of
// e^{-i p x / hbar} psi(x) dx, discretized so that F is exactly unitary on
// the sample vectors and F^4 is the identity to machine precision.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace xwigner;

TEST_CASE("grid validation rejects malformed parameters") {
    CHECK_THROWS_AS(GridSpec(100, 10.0, 1.0), ConfigurationError);  // not a power of two
    CHECK_THROWS_AS(GridSpec(4, 10.0, 1.0), ConfigurationError);    // below minimum
    CHECK_THROWS_AS(GridSpec(128, 0.0, 1.0), ConfigurationError);
    CHECK_THROWS_AS(GridSpec(128, -2.0, 1.0), ConfigurationError);
    CHECK_THROWS_AS(GridSpec(128, 10.0, 0.0), ConfigurationError);
    CHECK_THROWS_AS(GridSpec(128, 10.0, -1.0), ConfigurationError);
    CHECK_NOTHROW(GridSpec(8, 1.0, 0.5));
}

TEST_CASE("lattice spacings satisfy dx dp M = 2 pi hbar") {
    const GridSpec g(256, 7.5, 0.25);
    CHECK(g.dx() * g.dp() * g.size == Catch::Approx(2.0 * kPi * g.hbar).epsilon(1e-14));
    CHECK(g.position_node(g.size / 2) == Catch::Approx(0.0).margin(1e-15));
    CHECK(g.position_node(0) == Catch::Approx(-g.half_width));
    CHECK(g.momentum_node(g.size / 2) == Catch::Approx(0.0).margin(1e-15));
    // node(j+1) - node(j) is one spacing everywhere
    CHECK(g.position_node(17) - g.position_node(16) == Catch::Approx(g.dx()));
    CHECK(g.momentum_node(101) - g.momentum_node(100) == Catch::Approx(g.dp()));
}

TEST_CASE("inner product is conjugate-linear on the left") {
    const GridSpec g(128, 10.0, 1.0);
    std::mt19937_64 rng(11);
    const WaveFunction a = random_superposition(g, rng);
    const WaveFunction b = random_superposition(g, rng);

    const Complex ip = inner_product(a, b);
    const Complex swapped = inner_product(b, a);
    CHECK(std::abs(ip - std::conj(swapped)) < 1e-14);

    WaveFunction scaled = a;
    scaled.samples *= Complex(0.0, 2.0);
    // conjugation acts on the first slot
    CHECK(std::abs(inner_product(scaled, b) - Complex(0.0, -2.0) * ip) < 1e-13);
    CHECK(std::abs(inner_product(a, a).imag()) < 1e-15);
    CHECK(a.squared_norm() == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("containment check flags mass at the grid edge") {
    const GridSpec g(128, 10.0, 1.0);
    CHECK(gaussian_coherent(g).is_well_contained());

    WaveFunction flat = WaveFunction::zero(g, Domain::position);
    flat.samples.setConstant(1.0);
    CHECK_FALSE(flat.is_well_contained());
    CHECK(flat.boundary_tail_mass() > 0.0);
    CHECK_THROWS_AS(require_well_contained(flat, "test"), ContainmentError);
}

TEST_CASE("transform is unitary and has period four") {
    const GridSpec g(128, 10.0, 1.0);
    std::mt19937_64 rng(3);
    const WaveFunction a = random_superposition(g, rng);
    const WaveFunction b = random_superposition(g, rng);

    const WaveFunction fa = hbar_fourier(a), fb = hbar_fourier(b);
    CHECK(fa.domain == Domain::momentum);
    CHECK(std::abs(inner_product(fa, fb) - inner_product(a, b)) < 1e-13);

    // F^2 is the parity operator, so F^4 returns the input exactly.
    WaveFunction four = a;
    for (int k = 0; k < 4; ++k) four = hbar_fourier(four);
    CHECK(four.domain == Domain::position);
    CHECK(testsupport::max_abs_diff(four.samples, a.samples) < 1e-12);

    WaveFunction two = hbar_fourier(hbar_fourier(a));
    double parity_diff = 0.0;
    for (int j = 0; j < g.size; ++j)
        parity_diff = std::max(parity_diff,
                               std::abs(two.samples[j] - a.samples[(g.size - j) % g.size]));
    CHECK(parity_diff < 1e-12);

    const WaveFunction back = hbar_fourier_inverse(fa);
    CHECK(testsupport::max_abs_diff(back.samples, a.samples) < 1e-13);
}

TEST_CASE("standard Gaussian is a transform fixed point") {
    // (pi hbar)^{-1/4} e^{-x^2/(2 hbar)} maps to the same profile in p.
    const GridSpec g(256, 10.0, 1.0);
    const WaveFunction xi = gaussian_coherent(g);
    const WaveFunction fxi = hbar_fourier(xi);
    double worst = 0.0;
    for (int k = 0; k < g.size; ++k) {
        const double p = g.momentum_node(k);
        const Complex want = std::pow(kPi * g.hbar, -0.25) * std::exp(-p * p / (2.0 * g.hbar));
        worst = std::max(worst, std::abs(fxi.samples[k] - want));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("transform moves a momentum boost to a position shift") {
    const GridSpec g(256, 10.0, 1.0);
    const double p0 = 3.0 * g.dp();
    const WaveFunction boosted = gaussian_coherent(g, {0.0, p0});
    const WaveFunction fb = hbar_fourier(boosted);
    // |F psi| peaks at p0, not at -p0: pins the transform sign.
    int argmax = 0;
    fb.samples.cwiseAbs().maxCoeff(&argmax);
    CHECK(g.momentum_node(argmax) == Catch::Approx(p0).margin(g.dp() / 2.0));
}

TEST_CASE("momentum multiplier implements the derivative operator") {
    const GridSpec g(256, 10.0, 1.0);
    const WaveFunction xi = gaussian_coherent(g);
    // p-hat on the standard Gaussian: -i hbar d/dx e^{-x^2/2hbar} = i x e^{-x^2/2hbar}.
    const WaveFunction pxi =
        detail::apply_momentum_multiplier(xi, [](double p) { return Complex(p, 0.0); });
    double worst = 0.0;
    for (int j = 0; j < g.size; ++j)
        worst = std::max(worst, std::abs(pxi.samples[j] -
                                         Complex(0.0, g.position_node(j)) * xi.samples[j]));
    CHECK(worst < 1e-12);
}

TEST_CASE("two point refinement interpolates band-limited samples") {
    const GridSpec g(128, 10.0, 1.0);
    const WaveFunction xi = gaussian_coherent(g, {0.5, 0.25});
    const VectorXcd fine = detail::upsample2(xi.samples);
    REQUIRE(fine.size() == 2 * g.size);
    double worst_even = 0.0, worst_half = 0.0;
    for (int j = 0; j < g.size; ++j)
        worst_even = std::max(worst_even, std::abs(fine[2 * j] - xi.samples[j]));
    const GridSpec fine_grid(2 * g.size, g.half_width, g.hbar);
    const WaveFunction xi_fine = gaussian_coherent(fine_grid, {0.5, 0.25});
    for (int j = 0; j < 2 * g.size; ++j)
        worst_half = std::max(worst_half, std::abs(fine[j] - xi_fine.samples[j]));
    CHECK(worst_even < 1e-14);  // even nodes pass through untouched
    CHECK(worst_half < 1e-12);  // odd nodes match the analytic profile
}

TEST_CASE("snapping helpers round to the advertised lattices") {
    const GridSpec g(128, 8.0, 1.0);  // dx = 0.125
    CHECK(snap_position_steps(g, 0.26) == 2);
    CHECK(snap_position_steps(g, -0.3) == -2);
    CHECK(snap_half_steps(g, 0.26) == 4);
    CHECK(snap_momentum_steps(g, 2.0 * g.dp() + 0.1 * g.dp()) == 2);
}
