#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "offaxis/singlet.hpp"
#include "offaxis/vortex.hpp"

using namespace offaxis;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

SingletParams ring_params(int l1, double s1 = 1.0, double s2 = 1.0) {
    SingletParams p;
    p.beam1 = {s1, l1, 1.0};
    p.beam2 = {s2, 0, 1.0};
    return p;
}

ModePair uniform_modes(const SingletParams& p, const GridSpec& g) {
    return singlet::superpose(uniform_field(g, 1.0), uniform_field(g, 1.0), p);
}

int plaquette_sum_inside(const vortex::WindingMap& m, const GridSpec& g, double radius) {
    int total = 0;
    for (int j = 0; j < m.py; ++j) {
        for (int i = 0; i < m.px; ++i) {
            const double cx = g.x(i) + 0.5 * g.dx();
            const double cy = g.y(j) + 0.5 * g.dy();
            if (std::hypot(cx, cy) < radius) total += m.at(i, j);
        }
    }
    return total;
}

}  // namespace

TEST_CASE("winding map") {
    const GridSpec g{64, 64, 2.0};
    ComplexField swirl(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            swirl(i, j) = std::polar(1.0, std::atan2(g.y(j), g.x(i)));
        }
    }
    const auto m = vortex::winding_map(swirl);
    CHECK(m.px == 63);
    CHECK(m.py == 63);
    for (int j = 0; j < m.py; ++j) {
        for (int i = 0; i < m.px; ++i) {
            CHECK(m.at(i, j) == ((i == 31 && j == 31) ? 1 : 0));
        }
    }

    const auto flat = vortex::winding_map(uniform_field(g, {0.3, -2.0}));
    for (const int q : flat.charge) CHECK(q == 0);

    const GridSpec big{128, 128, 4.0};
    const auto beam = vortex::winding_map(make_beam({1.0, -3, 1.0}, big));
    CHECK(plaquette_sum_inside(beam, big, 2.0) == -3);

    // A plaquette touching an exact zero is indeterminate, never counted.
    const GridSpec odd{33, 33, 1.0};
    const auto z = vortex::winding_map(make_beam({1.0, 2, 1.0}, odd));
    CHECK(z.indeterminate_at(15, 15));
    CHECK(z.indeterminate_at(16, 16));
    CHECK_FALSE(z.indeterminate_at(0, 0));
}

TEST_CASE("detect cores on synthetic fields") {
    const GridSpec g{101, 101, 2.0};
    CHECK(vortex::detect_cores(uniform_field(g, 1.0)).empty());
    CHECK_THROWS_AS(vortex::detect_cores(uniform_field(g, 1.0), 0.5 * g.dx()), ValidationError);

    // Two opposite cores at known off-grid positions.
    const double ax = 0.513, ay = -0.271, bx = -0.77, by = 0.648;
    ComplexField f(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const complex za{g.x(i) - ax, g.y(j) - ay};
            const complex zb{g.x(i) - bx, g.y(j) - by};
            f(i, j) = za * std::conj(zb);
        }
    }
    const auto cores = vortex::detect_cores(f);
    REQUIRE(cores.size() == 2);
    const auto& pos = cores[0].charge == 1 ? cores[0] : cores[1];
    const auto& neg = cores[0].charge == 1 ? cores[1] : cores[0];
    CHECK(pos.charge == 1);
    CHECK(neg.charge == -1);
    // Bilinear refinement of a non-bilinear field: sub-cell accuracy.
    CHECK(std::hypot(pos.x - ax, pos.y - ay) < 0.02 * g.dx());
    CHECK(std::hypot(neg.x - bx, neg.y - by) < 0.02 * g.dx());

    // Core sitting exactly on a sample.
    const ComplexField on = make_beam({1.0, 1, 1.0}, g);
    const auto c = vortex::detect_cores(on);
    REQUIRE(c.size() == 1);
    CHECK(c[0].charge == 1);
    CHECK(c[0].x == 0.0);
    CHECK(c[0].y == 0.0);

    const auto three = vortex::detect_cores(make_beam({1.0, -3, 1.0}, GridSpec{128, 128, 4.0}));
    REQUIRE(three.size() == 1);
    CHECK(three[0].charge == -3);
    CHECK(three[0].radius() < 1e-12);
}

TEST_CASE("peripheral cores of the superposition mode") {
    const GridSpec g{256, 256, 4.0};
    for (const int l : {1, 2, 3, -2, 4}) {
        const SingletParams p = ring_params(l);
        const ModePair m0 = uniform_modes(p, g);
        const auto cores = vortex::detect_cores(m0.psi);
        REQUIRE(cores.size() == static_cast<std::size_t>(std::abs(l)));
        // conj(u1) carries e^{-i l phi}: the zeros wind against the pump.
        for (const auto& c : cores) CHECK(c.charge == (l > 0 ? -1 : 1));
        const auto w = vortex::loop_winding(m0.psi, 2.5);
        REQUIRE(w.has_value());
        CHECK(*w == -l);

        const auto pred = vortex::predict_peripheral(p, vortex::RadiusConvention::ProfileBalance);
        REQUIRE(pred.angles.size() == cores.size());
        for (const auto& c : cores) {
            double nearest = 1e9;
            for (const double a : pred.angles) {
                nearest = std::min(nearest, std::hypot(c.x - pred.radius * std::cos(a), c.y - pred.radius * std::sin(a)));
            }
            CHECK(nearest < g.dx());
        }

        // The propagator factor never vanishes: zeros stay put.
        const ModePair mz = singlet::propagate(m0, p);
        const auto moved = vortex::detect_cores(mz.psi);
        REQUIRE(moved.size() == cores.size());
        for (const auto& c : cores) {
            double nearest = 1e9;
            for (const auto& d : moved) nearest = std::min(nearest, std::hypot(d.x - c.x, d.y - c.y));
            CHECK(nearest < g.dx());
        }
    }
}

TEST_CASE("radius moves inward as the vortex pump strengthens") {
    const GridSpec g{256, 256, 4.0};
    double previous = 1e9;
    for (const double s1 : {0.5, 0.75, 1.0, 1.5, 2.0}) {
        const auto cores = vortex::detect_cores(uniform_modes(ring_params(1, s1), g).psi);
        REQUIRE(cores.size() == 1);
        const double r = cores[0].radius();
        CHECK(r < previous);
        CHECK(std::abs(r - 1.0 / s1) < g.dx());
        previous = r;
    }
}

TEST_CASE("predicted geometry") {
    const auto one = vortex::predict_peripheral(ring_params(1), vortex::RadiusConvention::NormalizedLaguerre);
    CHECK(one.radius == Approx(1.0).epsilon(1e-15));
    CHECK(vortex::predict_peripheral(ring_params(1), vortex::RadiusConvention::ProfileBalance).radius == 1.0);
    CHECK(one.angles.size() == 1);
    CHECK(one.angles[0] == Approx(kPi));
    CHECK(one.all_half_turn_angles.size() == 2);

    const auto two = vortex::predict_peripheral(ring_params(2), vortex::RadiusConvention::NormalizedLaguerre);
    CHECK(two.radius == Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
    CHECK(vortex::predict_peripheral(ring_params(2), vortex::RadiusConvention::ProfileBalance).radius == Approx(1.0));
    REQUIRE(two.angles.size() == 2);
    CHECK(two.angles[0] == Approx(kPi / 2));
    CHECK(two.angles[1] == Approx(3 * kPi / 2));
    CHECK(two.all_half_turn_angles.size() == 4);

    // The sampled field arbitrates: l1 = 2 zeros sit at the profile balance radius.
    const GridSpec g{256, 256, 4.0};
    const auto cores = vortex::detect_cores(uniform_modes(ring_params(2), g).psi);
    for (const auto& c : cores) CHECK(std::abs(c.radius() - 1.0) < g.dx());

    SingletParams bad = ring_params(1);
    bad.beam2.winding = 1;
    CHECK_THROWS_AS(vortex::predict_peripheral(bad, vortex::RadiusConvention::ProfileBalance),
                    UnsupportedConfigurationError);
    CHECK_THROWS_AS(vortex::predict_peripheral(ring_params(0), vortex::RadiusConvention::ProfileBalance),
                    UnsupportedConfigurationError);
    bad = ring_params(1);
    bad.beam2.waist = 2.0;
    CHECK_THROWS_AS(vortex::predict_peripheral(bad, vortex::RadiusConvention::ProfileBalance),
                    UnsupportedConfigurationError);
}

TEST_CASE("ring statistics") {
    const std::vector<vortex::VortexCore> ring{
        {std::cos(kPi / 3), std::sin(kPi / 3), 1}, {-1.0, 0.0, 1}, {std::cos(5 * kPi / 3), std::sin(5 * kPi / 3), 1}};
    const auto s = vortex::ring_statistics(ring);
    CHECK(s.count == 3);
    CHECK(s.mean_radius == Approx(1.0));
    CHECK(s.radius_spread < 1e-15);
    CHECK(s.spacing_uniformity < 1e-12);
    CHECK(vortex::ring_statistics({}).count == 0);

    const GridSpec g{256, 256, 4.0};
    for (int l = 1; l <= 6; ++l) {
        const auto cores = vortex::detect_cores(uniform_modes(ring_params(l), g).psi);
        const auto st = vortex::ring_statistics(cores);
        CHECK(st.count == l);
        CHECK(st.radius_spread / st.mean_radius < 0.05);
        CHECK(st.spacing_uniformity < 2.0 * g.dx() / st.mean_radius);
    }
}
