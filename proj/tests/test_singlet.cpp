#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "offaxis/singlet.hpp"
#include "offaxis/vortex.hpp"
#include "oracles.hpp"

using namespace offaxis;
using doctest::Approx;

namespace {

SingletParams ring_params(int l1) {
    SingletParams p;
    p.beam1 = {1.0, l1, 1.0};
    p.beam2 = {1.0, 0, 1.0};
    return p;
}

ComplexField random_field(const GridSpec& g, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexField f(g);
    for (auto& v : f.values()) v = {n(rng), n(rng)};
    return f;
}

double rel(complex a, complex b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace

TEST_CASE("validation") {
    CHECK(ring_params(3).validate().size() == 1);  // delta_1f = 1 sits below the large-detuning threshold
    SingletParams p = ring_params(1);
    p.delta_1f = 100.0;
    CHECK(p.validate().empty());

    p = ring_params(1);
    p.beam2.winding = 2;
    try {
        p.validate();
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("zero denominator") != std::string::npos);
    }
    p = ring_params(1);
    p.delta_1f = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = ring_params(1);
    p.gain_scale = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = ring_params(1);
    p.z = std::nan("");
    CHECK_THROWS_AS(p.validate(), ValidationError);

    SingletParams off = ring_params(0);
    off.beam1.strength = 0.0;
    off.beam2.strength = 0.0;
    CHECK_THROWS_AS(singlet::mode_basis(off, GridSpec{8, 8, 1.0}), SingularTransformError);
}

TEST_CASE("kappa values") {
    const complex k = singlet::kappa_coefficient(1.0, 1.0, 4.0);
    CHECK(k.real() == Approx(4.0 / 17.0).epsilon(1e-15));
    CHECK(k.imag() == Approx(-1.0 / 17.0).epsilon(1e-15));
    CHECK(singlet::kappa_coefficient(0.0, 1.0, 4.0) == complex{});
    const complex g = singlet::kappa_coefficient(1.0, 1.0, 0.0);
    CHECK(g.real() == 0.0);
    CHECK(g.imag() == -1.0);

    // l1 = 1 vortex with Gaussian partner: E_c^2(0) = 1.
    CHECK(singlet::kappa(ring_params(1), 0.0) == singlet::kappa_coefficient(1.0, 1.0, 4.0));
    for (const double r : {0.0, 0.3, 1.0, 2.2}) {
        for (const int l : {0, 1, 3}) {
            const SingletParams p = ring_params(l);
            const double ec2 = std::pow(ref::profile(1, l, 1, r), 2) + std::pow(ref::profile(1, 0, 1, r), 2);
            CHECK(rel(singlet::kappa(p, r), ref::kappa_singlet(ec2, 1.0, 4.0)) < 1e-14);
        }
    }
}

TEST_CASE("superpose values") {
    const GridSpec g{65, 65, 2.0};
    const ComplexField one = uniform_field(g, 1.0);
    const ComplexField zero = uniform_field(g, 0.0);

    const ModePair sym = singlet::superpose(one, zero, ring_params(0));
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(std::abs(sym.psi[k] - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(sym.xi[k] - 1.0 / std::sqrt(2.0)) < 1e-15);
    }
    const ModePair nil = singlet::superpose(zero, zero, ring_params(2));
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(nil.psi[k] == complex{});
        CHECK(nil.xi[k] == complex{});
    }

    const ModePair m = singlet::superpose(one, zero, ring_params(1));
    const int i = g.index_x(1.0), j = g.index_y(0.0);
    REQUIRE(g.x(i) == 1.0);
    REQUIRE(g.y(j) == 0.0);
    const double e1 = std::exp(-1.0), e2 = std::exp(-1.0);
    CHECK(rel(m.psi(i, j), e1 / std::hypot(e1, e2)) < 1e-14);

    std::mt19937_64 rng(11);
    const ComplexField p1 = random_field(g, rng), p2 = random_field(g, rng);
    const ModePair r = singlet::superpose(p1, p2, ring_params(3));
    for (int jj = 0; jj < g.ny; jj += 5) {
        for (int ii = 0; ii < g.nx; ii += 5) {
            const complex u1 = ref::pump(1, 3, 1, g.x(ii), g.y(jj));
            const complex u2 = ref::pump(1, 0, 1, g.x(ii), g.y(jj));
            const ref::Modes want = ref::modes(u1, u2, p1(ii, jj), p2(ii, jj));
            CHECK(rel(r.psi(ii, jj), want.psi) < 1e-12);
            CHECK(rel(r.xi(ii, jj), want.xi) < 1e-12);
        }
    }
}

TEST_CASE("transform invariants") {
    const GridSpec g{96, 96, 4.0};
    std::mt19937_64 rng(3);
    for (const int l : {1, -2, 5}) {
        SingletParams p = ring_params(l);
        p.beam1.strength = 0.7;
        const ComplexField p1 = random_field(g, rng), p2 = random_field(g, rng);
        const ModePair m = singlet::superpose(p1, p2, p);
        const ProbePair back = singlet::reconstruct(m, p);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double in = std::norm(p1[k]) + std::norm(p2[k]);
            CHECK(std::abs(std::norm(m.psi[k]) + std::norm(m.xi[k]) - in) <= 1e-10 * in);
            CHECK(rel(back.p1[k], p1[k]) < 1e-12);
            CHECK(rel(back.p2[k], p2[k]) < 1e-12);
        }
        // reconstruct then superpose, treating (p1, p2) as modes
        const ProbePair probes = singlet::reconstruct({p1, p2}, p);
        const ModePair fwd = singlet::superpose(probes.p1, probes.p2, p);
        for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK(rel(fwd.psi[k], p1[k]) < 1e-12);
            CHECK(rel(fwd.xi[k], p2[k]) < 1e-12);
        }
    }
}

TEST_CASE("propagate") {
    const GridSpec g{64, 64, 3.0};
    std::mt19937_64 rng(5);
    const ModePair m{random_field(g, rng), random_field(g, rng)};
    SingletParams p = ring_params(2);

    p.z = 0.0;
    const ModePair same = singlet::propagate(m, p);
    CHECK(same.psi == m.psi);
    CHECK(same.xi == m.xi);

    for (const double z : {0.5, 1.0, 7.0}) {
        p.z = z;
        const ModePair out = singlet::propagate(m, p);
        CHECK(out.xi == m.xi);
        for (int j = 0; j < g.ny; j += 7) {
            for (int i = 0; i < g.nx; i += 7) {
                const complex k = singlet::kappa(p, std::hypot(g.x(i), g.y(j)));
                CHECK(std::abs(std::exp(complex(0, 1) * k * z)) >= 1.0);
                CHECK(rel(out.psi(i, j), m.psi(i, j) * std::exp(complex(0, 1) * k * z)) < 1e-13);
            }
        }
    }

    // delta_2f = 0, E_c^2 = 1 on axis: pure gain e^1, no phase.
    const GridSpec og{33, 33, 1.0};
    SingletParams q = ring_params(1);
    q.delta_2f = 0.0;
    const ModePair one{uniform_field(og, 1.0), uniform_field(og, 0.0)};
    const ModePair out = singlet::propagate(one, q);
    CHECK(out.psi(16, 16).real() == Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(out.psi(16, 16).imag() == 0.0);
}

TEST_CASE("group slowdown") {
    CHECK(singlet::slowdown_coefficient(1.0, 1.0, 0.0, 1.0) == 2.0);
    CHECK(singlet::slowdown_coefficient(1.0, 1.0, 4.0, 1.0) == Approx(1.0 - 15.0 / 289.0).epsilon(1e-15));
    CHECK(singlet::slowdown_coefficient(1.0, 1.0, 1.0, 1.0) == 1.0);
    CHECK(singlet::slowdown_coefficient(0.37, 2.0, -1.0, 3.0) == 1.0);
    CHECK(singlet::group_slowdown(ring_params(1), 0.0) == singlet::slowdown_coefficient(1.0, 1.0, 4.0, 1.0));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 500; ++n) {
        const double ec2 = 0.05 + 3.0 * u(rng);
        const double d1 = 0.5 + 4.0 * u(rng);
        double d2 = -6.0 + 12.0 * u(rng);
        const double gs = 0.1 + 2.0 * u(rng);
        const double s = singlet::slowdown_coefficient(ec2, d1, d2, gs);
        CHECK(s == Approx(ref::slowdown_singlet(ec2, d1, d2, gs)).epsilon(1e-13));
        if (std::abs(std::abs(d2) - 1.0) > 1e-9) {
            CHECK((s > 1.0) == (std::abs(d2) < 1.0));
            CHECK((s < 1.0) == (std::abs(d2) > 1.0));
        }
        // Centered difference of Re kappa; skip where the derivative itself vanishes.
        if (std::abs(std::abs(d2) - 1.0) > 0.05) {
            const double h = 1e-5;
            const double fd = (singlet::kappa_coefficient(ec2, d1, d2 + h).real() -
                               singlet::kappa_coefficient(ec2, d1, d2 - h).real()) /
                              (2 * h);
            CHECK((1.0 + gs * fd - 1.0) == Approx(s - 1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("peak radius") {
    // l1 = 0: E_c peaks on axis. l1 = 6 with weak Gaussian: near the vortex ring sqrt(3).
    CHECK(singlet::peak_radius(ring_params(0), 4.0) == Approx(0.0).epsilon(1e-6));
    SingletParams p = ring_params(6);
    p.beam2.strength = 1e-3;
    CHECK(singlet::peak_radius(p, 4.0) == Approx(std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("vortex exchange closed form") {
    const GridSpec g{128, 128, 4.0};
    const std::vector<std::pair<int, int>> cases{{1, 0}, {0, 1}, {2, 0}, {0, 4}, {0, 0}, {-3, 0}};
    for (const auto& [l1, l2] : cases) {
        SingletParams p;
        p.beam1 = {1.0, l1, 1.0};
        p.beam2 = {1.0, l2, 1.0};
        const ProbePair ex = singlet::vortex_exchange(p, g, 1.0);

        // Against the transform path with P1 = 1, P2 = 0.
        const ModePair m = singlet::superpose(uniform_field(g, 1.0), uniform_field(g, 0.0), p);
        const ProbePair path = singlet::reconstruct(singlet::propagate(m, p), p);
        for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK(std::abs(ex.p1[k] - path.p1[k]) < 1e-12);
            CHECK(std::abs(ex.p2[k] - path.p2[k]) < 1e-12);
        }
        const auto w = vortex::loop_winding(ex.p2, 1.5);
        REQUIRE(w.has_value());
        CHECK(*w == l2 - l1);
        SingletParams z0 = p;
        z0.z = 0.0;
        const ProbePair start = singlet::vortex_exchange(z0, g, 1.0);
        for (const complex v : start.p2.values()) CHECK(v == complex{});
        for (const complex v : start.p1.values()) CHECK(v == complex{1.0, 0.0});
    }

    // Doughnut: P2 vanishes on axis and peaks off axis for l1 = 1.
    SingletParams p = ring_params(1);
    const GridSpec og{129, 129, 4.0};
    const ProbePair ex = singlet::vortex_exchange(p, og, 1.0);
    CHECK(std::abs(ex.p2(64, 64)) == 0.0);
    CHECK(std::abs(ex.p2(og.index_x(0.7), 64)) > 0.01);
}
