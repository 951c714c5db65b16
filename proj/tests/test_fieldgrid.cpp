#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "offaxis/fieldgrid.hpp"
#include "offaxis/vortex.hpp"
#include "oracles.hpp"

using namespace offaxis;
using doctest::Approx;

namespace {

/// Odd grid so the origin and the axes are sample points.
GridSpec odd_grid() {
    return {129, 129, 4.0};
}

}  // namespace

TEST_CASE("grid defaults and indexing") {
    const GridSpec g;
    CHECK(g.nx == 512);
    CHECK(g.ny == 512);
    CHECK(g.half_extent == 4.0);
    CHECK(g.x(0) == -4.0);
    CHECK(g.x(g.nx - 1) == Approx(4.0).epsilon(1e-15));
    CHECK(g.index_x(g.x(37)) == 37);
    CHECK(g.index_y(g.y(400)) == 400);
    CHECK(g.flat(3, 2) == 2u * 512u + 3u);
    CHECK_THROWS_AS((GridSpec{1, 10, 1.0}).validate(), ValidationError);
    CHECK_THROWS_AS((GridSpec{10, 10, 0.0}).validate(), ValidationError);
}

TEST_CASE("field size mismatch") {
    CHECK_THROWS_AS(ComplexField(GridSpec{4, 4, 1.0}, std::vector<complex>(15)), DimensionError);
}

TEST_CASE("beam samples") {
    CHECK(beam_value({1.0, 0, 1.0}, 0.0, 0.0) == complex(1.0, 0.0));
    const complex v1 = beam_value({1.0, 1, 1.0}, 1.0, 0.0);
    CHECK(v1.real() == Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(std::abs(v1.imag()) < 1e-15);
    const complex v2 = beam_value({1.0, 2, 1.0}, 0.0, 1.0);
    CHECK(v2.real() == Approx(-0.36787944117144233).epsilon(1e-14));
    CHECK(std::abs(v2.imag()) < 1e-15);
    CHECK(beam_value({2.0, 3, 1.0}, 0.0, 0.0) == complex{});
    CHECK(beam_amplitude({2.0, -3, 1.0}, 0.0) == 0.0);
    CHECK_THROWS_AS(BeamSpec({-1.0, 0, 1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(BeamSpec({1.0, 0, 0.0}).validate(), ValidationError);
}

TEST_CASE("beam matches reference at random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 200; ++k) {
        const double x = u(rng), y = u(rng);
        const BeamSpec b{0.5 + std::abs(u(rng)), static_cast<int>(std::lround(u(rng) * 2)), 0.7 + 0.1 * std::abs(u(rng))};
        const complex got = beam_value(b, x, y);
        const complex want = ref::pump(b.strength, b.winding, b.waist, x, y);
        CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("total strength") {
    const GridSpec g = odd_grid();
    const int c = 64;
    const ComplexField gauss = make_beam({1.0, 0, 1.0}, g);
    const ComplexField vort = make_beam({1.0, 1, 1.0}, g);
    const std::vector<ComplexField> two{gauss, gauss};
    CHECK(total_strength(two)(c, c) == Approx(std::sqrt(2.0)).epsilon(1e-15));
    const std::vector<ComplexField> one{vort};
    const RealField mag = magnitude(vort);
    const RealField ts = total_strength(one);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK_MESSAGE(std::abs(ts[k] - mag[k]) <= 1e-15 * mag[k], k);
    }
    const std::vector<ComplexField> mixed{vort, gauss};
    CHECK(total_strength(mixed)(c, c) == 1.0);

    // Invariant under a unit-modulus phase function on either input.
    ComplexField twisted = vort;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            twisted(i, j) *= std::polar(1.0, 0.3 * g.x(i) - 1.7 * g.y(j) * g.y(j));
        }
    }
    const std::vector<ComplexField> mixed2{twisted, gauss};
    const RealField a = total_strength(mixed);
    const RealField b = total_strength(mixed2);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(std::abs(a[k] - b[k]) <= 1e-14 * a[k]);
    }

    CHECK_THROWS_AS(total_strength(std::vector<ComplexField>{}), DimensionError);
    const std::vector<ComplexField> bad{gauss, make_beam({1.0, 0, 1.0}, GridSpec{65, 65, 4.0})};
    CHECK_THROWS_AS(total_strength(bad), DimensionError);
}

TEST_CASE("phase map") {
    const GridSpec g{9, 9, 1.0};
    const PhaseMap one = phase_map(uniform_field(g, {1.0, 0.0}));
    for (const double p : one.phase.values()) CHECK(p == 0.0);
    CHECK(one.zero_samples.empty());
    const PhaseMap minus_i = phase_map(uniform_field(g, {0.0, -1.0}));
    for (const double p : minus_i.phase.values()) CHECK(p == Approx(-std::numbers::pi / 2));

    const GridSpec og = odd_grid();
    const PhaseMap beam = phase_map(make_beam({1.0, 1, 1.0}, og));
    const int i = og.index_x(-1.0);
    const int j = og.index_y(0.0);
    CHECK(og.y(j) == 0.0);
    CHECK(beam.phase(i, j) == Approx(std::numbers::pi));
    REQUIRE(beam.zero_samples.size() == 1);
    CHECK(beam.zero_samples[0] == og.flat(64, 64));
    CHECK(beam.phase(64, 64) == 0.0);

    // The negative real axis maps to +pi, never -pi.
    const PhaseMap neg = phase_map(uniform_field(g, {-1.0, -0.0}));
    for (const double p : neg.phase.values()) CHECK(p == std::numbers::pi);
}

TEST_CASE("beam magnitude is azimuthally symmetric") {
    const GridSpec g = odd_grid();
    for (const int l : {0, 1, -2, 5}) {
        const RealField m = magnitude(make_beam({1.3, l, 1.0}, g));
        const int n = g.nx - 1;
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const double v = m(i, j);
                CHECK(std::abs(m(n - i, j) - v) < 1e-12);
                CHECK(std::abs(m(i, n - j) - v) < 1e-12);
                CHECK(std::abs(m(j, i) - v) < 1e-12);
            }
        }
    }
}

TEST_CASE("beam phase winds l around the origin") {
    const GridSpec g{256, 256, 4.0};
    for (const int l : {-4, -1, 0, 1, 3, 6}) {
        const ComplexField f = make_beam({1.0, l, 1.0}, g);
        for (const double half : {0.5, 1.0, 2.0}) {
            const auto w = vortex::loop_winding(f, half);
            REQUIRE(w.has_value());
            CHECK(*w == l);
        }
    }
}

TEST_CASE("radial maximum at w sqrt(|l|/2)") {
    const GridSpec g{256, 256, 4.0};
    for (const int l : {1, 2, 3, 6}) {
        for (const double w : {1.0, 1.3}) {
            const RealField m = magnitude(make_beam({1.0, l, w}, g));
            std::size_t best = 0;
            for (std::size_t k = 1; k < m.size(); ++k) {
                if (m[k] > m[best]) best = k;
            }
            const int i = static_cast<int>(best % g.nx);
            const int j = static_cast<int>(best / g.nx);
            const double r = std::hypot(g.x(i), g.y(j));
            CHECK(std::abs(r - w * std::sqrt(std::abs(l) / 2.0)) <= g.dx());
        }
    }
}

TEST_CASE("complex expm1") {
    const complex small{1e-12, -2e-13};
    const complex got = expm1(small);
    CHECK(std::abs(got - small) <= 1e-24);
    for (const complex w : {complex{0.3, 2.0}, complex{-4.0, 0.5}, complex{1.5, -3.0}}) {
        CHECK(std::abs(expm1(w) - (std::exp(w) - 1.0)) <= 1e-14 * std::abs(std::exp(w)));
    }
}
