#include "offaxis/vortex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace offaxis::vortex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double phase_step(complex from, complex to) {
    return std::arg(to * std::conj(from));
}

int winding_of(std::span<const complex> loop) {
    double total = 0.0;
    for (std::size_t k = 0; k < loop.size(); ++k) {
        total += phase_step(loop[k], loop[(k + 1) % loop.size()]);
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

struct Candidate {
    double x;
    double y;
    int charge;
};

/// Zero of the bilinear interpolant in local plaquette coordinates (s, t) in [0, 1]^2.
std::array<double, 2> bilinear_zero(complex f00, complex f10, complex f01, complex f11) {
    const complex c1 = f10 - f00;
    const complex c2 = f01 - f00;
    const complex c3 = f11 - f10 - f01 + f00;
    const double a0 = f00.real(), a1 = c1.real(), a2 = c2.real(), a3 = c3.real();
    const double b0 = f00.imag(), b1 = c1.imag(), b2 = c2.imag(), b3 = c3.imag();

    const double qa = b2 * a3 - b3 * a2;
    const double qb = b0 * a3 + b2 * a1 - b1 * a2 - b3 * a0;
    const double qc = b0 * a1 - b1 * a0;

    std::vector<double> roots;
    const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
    if (scale == 0.0) {
        return {0.5, 0.5};
    }
    if (std::abs(qa) <= 1e-12 * scale) {
        if (qb != 0.0) {
            roots.push_back(-qc / qb);
        }
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (qb + std::copysign(sq, qb));
            roots.push_back(q / qa);
            if (q != 0.0) {
                roots.push_back(qc / q);
            }
        }
    }

    constexpr double slack = 1e-6;
    std::array<double, 2> best{0.5, 0.5};
    double best_dist = std::numeric_limits<double>::infinity();
    for (const double t : roots) {
        if (t < -slack || t > 1.0 + slack) {
            continue;
        }
        const double den_r = a1 + a3 * t;
        const double den_i = b1 + b3 * t;
        double s;
        if (std::abs(den_r) >= std::abs(den_i)) {
            s = -(a0 + a2 * t) / den_r;
        } else {
            s = -(b0 + b2 * t) / den_i;
        }
        if (!std::isfinite(s) || s < -slack || s > 1.0 + slack) {
            continue;
        }
        const double dist = std::hypot(s - 0.5, t - 0.5);
        if (dist < best_dist) {
            best_dist = dist;
            best = {std::clamp(s, 0.0, 1.0), std::clamp(t, 0.0, 1.0)};
        }
    }
    return best;
}

}  // namespace

double VortexCore::radius() const {
    return std::hypot(x, y);
}

double VortexCore::angle() const {
    const double a = std::atan2(y, x);
    return a < 0.0 ? a + kTwoPi : a;
}

WindingMap winding_map(const ComplexField& field) {
    const GridSpec& g = field.grid();
    WindingMap map;
    map.px = g.nx - 1;
    map.py = g.ny - 1;
    const std::size_t n = static_cast<std::size_t>(map.px) * static_cast<std::size_t>(map.py);
    map.charge.assign(n, 0);
    map.indeterminate.assign(n, false);
    for (int j = 0; j < map.py; ++j) {
        for (int i = 0; i < map.px; ++i) {
            const std::array<complex, 4> loop{field(i, j), field(i + 1, j), field(i + 1, j + 1), field(i, j + 1)};
            const std::size_t k = static_cast<std::size_t>(j) * map.px + i;
            if (std::any_of(loop.begin(), loop.end(), [](complex v) { return v == complex{}; })) {
                map.indeterminate[k] = true;
                continue;
            }
            map.charge[k] = winding_of(loop);
        }
    }
    return map;
}

std::vector<VortexCore> detect_cores(const ComplexField& field, double min_separation) {
    const GridSpec& g = field.grid();
    const double cell = std::max(g.dx(), g.dy());
    if (!(min_separation >= cell * (1.0 - 1e-12))) {
        throw ValidationError("detect_cores: min_separation must be at least one grid cell");
    }
    const WindingMap map = winding_map(field);

    std::vector<Candidate> candidates;
    for (int j = 0; j < map.py; ++j) {
        for (int i = 0; i < map.px; ++i) {
            const int q = map.at(i, j);
            if (q == 0 || map.indeterminate_at(i, j)) {
                continue;
            }
            const auto st = bilinear_zero(field(i, j), field(i + 1, j), field(i, j + 1), field(i + 1, j + 1));
            candidates.push_back({g.x(i) + st[0] * g.dx(), g.y(j) + st[1] * g.dy(), q});
        }
    }
    // Exact zeros on samples: use the ring of eight neighbours instead of the four plaquettes.
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            if (field(i, j) != complex{}) {
                continue;
            }
            const std::array<complex, 8> ring{field(i - 1, j - 1), field(i, j - 1), field(i + 1, j - 1),
                                              field(i + 1, j),     field(i + 1, j + 1), field(i, j + 1),
                                              field(i - 1, j + 1), field(i - 1, j)};
            if (std::any_of(ring.begin(), ring.end(), [](complex v) { return v == complex{}; })) {
                continue;
            }
            const int q = winding_of(ring);
            if (q != 0) {
                candidates.push_back({g.x(i), g.y(j), q});
            }
        }
    }

    // Single-linkage clustering.
    std::vector<std::size_t> parent(candidates.size());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        for (std::size_t b = a + 1; b < candidates.size(); ++b) {
            if (std::hypot(candidates[a].x - candidates[b].x, candidates[a].y - candidates[b].y) < min_separation) {
                parent[find(a)] = find(b);
            }
        }
    }

    struct Accum {
        double sx = 0.0, sy = 0.0, w = 0.0;
        int charge = 0;
    };
    std::vector<Accum> acc(candidates.size());
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        Accum& c = acc[find(a)];
        const double w = std::abs(candidates[a].charge);
        c.sx += w * candidates[a].x;
        c.sy += w * candidates[a].y;
        c.w += w;
        c.charge += candidates[a].charge;
    }
    std::vector<VortexCore> cores;
    for (const Accum& c : acc) {
        if (c.w > 0.0 && c.charge != 0) {
            cores.push_back({c.sx / c.w, c.sy / c.w, c.charge});
        }
    }
    std::sort(cores.begin(), cores.end(), [](const VortexCore& a, const VortexCore& b) {
        const double ta = a.angle();
        const double tb = b.angle();
        if (ta != tb) {
            return ta < tb;
        }
        return a.radius() < b.radius();
    });
    return cores;
}

std::vector<VortexCore> detect_cores(const ComplexField& field) {
    const GridSpec& g = field.grid();
    return detect_cores(field, 3.0 * std::max(g.dx(), g.dy()));
}

std::optional<int> loop_winding(const ComplexField& field, double half_side) {
    const GridSpec& g = field.grid();
    const int i0 = g.index_x(-half_side);
    const int i1 = g.index_x(half_side);
    const int j0 = g.index_y(-half_side);
    const int j1 = g.index_y(half_side);
    if (i1 <= i0 || j1 <= j0) {
        return std::nullopt;
    }
    std::vector<complex> loop;
    for (int i = i0; i < i1; ++i) loop.push_back(field(i, j0));
    for (int j = j0; j < j1; ++j) loop.push_back(field(i1, j));
    for (int i = i1; i > i0; --i) loop.push_back(field(i, j1));
    for (int j = j1; j > j0; --j) loop.push_back(field(i0, j));
    if (std::any_of(loop.begin(), loop.end(), [](complex v) { return v == complex{}; })) {
        return std::nullopt;
    }
    return winding_of(loop);
}

PeripheralPrediction predict_peripheral(const SingletParams& params, RadiusConvention convention) {
    const int l1 = params.beam1.winding;
    if (params.beam2.winding != 0) {
        throw UnsupportedConfigurationError("predict_peripheral: requires a Gaussian second pump (l2 = 0)");
    }
    if (l1 == 0) {
        throw UnsupportedConfigurationError("predict_peripheral: requires a vortex first pump (l1 != 0)");
    }
    if (params.beam1.strength <= 0.0 || params.beam2.strength <= 0.0) {
        throw UnsupportedConfigurationError("predict_peripheral: both pump strengths must be positive");
    }
    if (params.beam1.waist != params.beam2.waist) {
        throw UnsupportedConfigurationError("predict_peripheral: pumps must share one waist");
    }
    const int order = std::abs(l1);
    const double ratio = params.beam2.strength / params.beam1.strength;
    PeripheralPrediction out;
    if (convention == RadiusConvention::ProfileBalance) {
        out.radius = params.beam1.waist * std::pow(ratio, 1.0 / order);
    } else {
        out.radius = params.beam1.waist * std::pow(std::tgamma(order + 1.0) * ratio, 1.0 / (2.0 * order));
    }
    for (int k = 0; k < order; ++k) {
        double a = std::fmod((2 * k + 1) * std::numbers::pi / l1, kTwoPi);
        if (a < 0.0) {
            a += kTwoPi;
        }
        out.angles.push_back(a);
    }
    std::sort(out.angles.begin(), out.angles.end());
    for (int n = 1; n <= 2 * order; ++n) {
        out.all_half_turn_angles.push_back(n * std::numbers::pi / l1);
    }
    return out;
}

RingStats ring_statistics(const std::vector<VortexCore>& cores) {
    RingStats stats;
    stats.count = static_cast<int>(cores.size());
    if (cores.empty()) {
        return stats;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double sum = 0.0;
    std::vector<double> angles;
    for (const auto& c : cores) {
        const double r = c.radius();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        sum += r;
        angles.push_back(c.angle());
    }
    stats.mean_radius = sum / stats.count;
    stats.radius_spread = hi - lo;
    std::sort(angles.begin(), angles.end());
    const double ideal = kTwoPi / stats.count;
    for (std::size_t k = 0; k < angles.size(); ++k) {
        const double gap = k + 1 < angles.size() ? angles[k + 1] - angles[k] : kTwoPi - angles.back() + angles.front();
        stats.spacing_uniformity = std::max(stats.spacing_uniformity, std::abs(gap - ideal));
    }
    return stats;
}

}  // namespace offaxis::vortex
