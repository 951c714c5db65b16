#include "offaxis/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"

namespace offaxis::oracle {

namespace {

using State = std::array<complex, 2>;

State axpy(const State& y, double h, const State& k) {
    return {y[0] + h * k[0], y[1] + h * k[1]};
}

template <typename Rhs>
State rk4(State y, double h, int steps, const Rhs& f) {
    for (int s = 0; s < steps; ++s) {
        const State k1 = f(y);
        const State k2 = f(axpy(y, 0.5 * h, k1));
        const State k3 = f(axpy(y, 0.5 * h, k2));
        const State k4 = f(axpy(y, h, k3));
        for (int c = 0; c < 2; ++c) {
            y[c] += (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
    }
    return y;
}

struct LinearRhs {
    CouplingMatrix m;
    State operator()(const State& p) const {
        const complex i{0.0, 1.0};
        return {i * (m[0][0] * p[0] + m[0][1] * p[1]), i * (m[1][0] * p[0] + m[1][1] * p[1])};
    }
};

double relative_change(complex a, complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// make_rhs(x, y) returns a callable State -> dState/dz for that sample.
template <typename MakeRhs>
IntegrationResult integrate(const ComplexField& p1, const ComplexField& p2, const IntegratorConfig& cfg,
                            const MakeRhs& make_rhs, double scale) {
    cfg.validate();
    require_same_grid(p1.grid(), p2.grid());
    const GridSpec& grid = p1.grid();
    const double h = cfg.target_z / cfg.steps;

    IntegrationResult result{{ComplexField(grid), ComplexField(grid)}, std::nullopt, false};
    detail::parallel_for(grid.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(grid.nx));
        const int j = static_cast<int>(k / static_cast<std::size_t>(grid.nx));
        const auto rhs = make_rhs(grid.x(i), grid.y(j));
        const State out = rk4(State{scale * p1[k], scale * p2[k]}, h, cfg.steps, rhs);
        result.probes.p1[k] = out[0] / scale;
        result.probes.p2[k] = out[1] / scale;
    });

    if (cfg.check_convergence) {
        double worst = 0.0;
        for (int j = 0; j < grid.ny; j += cfg.check_stride) {
            for (int i = 0; i < grid.nx; i += cfg.check_stride) {
                const std::size_t k = grid.flat(i, j);
                const auto rhs = make_rhs(grid.x(i), grid.y(j));
                const State fine = rk4(State{scale * p1[k], scale * p2[k]}, 0.5 * h, 2 * cfg.steps, rhs);
                worst = std::max(worst, relative_change(fine[0] / scale, result.probes.p1[k]));
                worst = std::max(worst, relative_change(fine[1] / scale, result.probes.p2[k]));
            }
        }
        result.step_halving_change = worst;
        result.under_resolved = worst > kStepHalvingTolerance;
    }
    return result;
}

}  // namespace

void IntegratorConfig::validate() const {
    if (steps < 1) {
        throw ValidationError("oracle: steps must be >= 1");
    }
    if (!std::isfinite(target_z)) {
        throw ValidationError("oracle: target z must be finite");
    }
    if (check_stride < 1) {
        throw ValidationError("oracle: check_stride must be >= 1");
    }
}

CouplingMatrix singlet_coupling(const SingletParams& params, double x, double y) {
    const complex u1 = beam_value(params.beam1, x, y);
    const complex u2 = beam_value(params.beam2, x, y);
    const complex c = 1.0 / (params.delta_1f * params.delta_1f * complex{params.delta_2f, 1.0});
    return {{{c * std::norm(u1), c * u1 * std::conj(u2)}, {c * u2 * std::conj(u1), c * std::norm(u2)}}};
}

CouplingMatrix doublet_coupling(const DoubletParams& params, double x, double y) {
    const complex u11 = beam_value(params.c11(), x, y);
    const complex u12 = beam_value(params.c12(), x, y);
    const complex u21 = beam_value(params.c21(), x, y);
    const complex u22 = beam_value(params.c22(), x, y);
    const double d1 = params.delta_1f * params.delta_1f;
    const complex upper = 1.0 / (d1 * complex{params.delta_2f + params.delta, 1.0});
    const complex lower = 1.0 / (d1 * complex{params.delta_2f - params.delta, 1.0});
    CouplingMatrix m;
    m[0][0] = upper * std::norm(u11) + lower * std::norm(u12);
    m[0][1] = upper * u11 * std::conj(u21) + lower * u12 * std::conj(u22);
    m[1][0] = upper * u21 * std::conj(u11) + lower * u22 * std::conj(u12);
    m[1][1] = upper * std::norm(u21) + lower * std::norm(u22);
    return m;
}

IntegrationResult integrate_singlet(const ComplexField& p1, const ComplexField& p2,
                                    const SingletParams& params, const IntegratorConfig& cfg) {
    return integrate(
        p1, p2, cfg, [&](double x, double y) { return LinearRhs{singlet_coupling(params, x, y)}; }, 1.0);
}

IntegrationResult integrate_doublet(const ComplexField& p1, const ComplexField& p2,
                                    const DoubletParams& params, const IntegratorConfig& cfg) {
    return integrate(
        p1, p2, cfg, [&](double x, double y) { return LinearRhs{doublet_coupling(params, x, y)}; }, 1.0);
}

LocalPumps local_pumps(const SingletParams& params, double x, double y) {
    return {beam_value(params.beam1, x, y), beam_value(params.beam2, x, y)};
}

AtomicAmplitudes solve_stationary_atoms(complex q1, complex q2, const LocalPumps& pumps,
                                        const SingletParams& params, complex phi_r) {
    // Unknowns (phi_U1, phi_U2, phi_Y):
    //   delta_1f phi_U1 - q1 phi_Y                    = c1 phi_R
    //   delta_1f phi_U2 - q2 phi_Y                    = c2 phi_R
    //   -conj(q1) phi_U1 - conj(q2) phi_U2 + (delta_2f - i) phi_Y = 0
    Eigen::Matrix3cd a;
    a << params.delta_1f, 0.0, -q1,
         0.0, params.delta_1f, -q2,
         -std::conj(q1), -std::conj(q2), complex{params.delta_2f, -1.0};
    const Eigen::Vector3cd rhs(pumps.c1 * phi_r, pumps.c2 * phi_r, 0.0);
    const Eigen::PartialPivLU<Eigen::Matrix3cd> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        std::ostringstream msg;
        msg << "stationary atomic system is singular (reciprocal condition estimate " << rcond << ")";
        throw SolverError(msg.str(), rcond);
    }
    const Eigen::Vector3cd sol = lu.solve(rhs);
    return {phi_r, sol(2), sol(0), sol(1)};
}

IntegrationResult integrate_exact_singlet(const ComplexField& p1, const ComplexField& p2,
                                          const SingletParams& params, const IntegratorConfig& cfg,
                                          double probe_coupling) {
    if (!(probe_coupling > 0.0) || !std::isfinite(probe_coupling)) {
        throw ValidationError("oracle: probe_coupling must be finite and > 0");
    }
    const auto make_rhs = [&](double x, double y) {
        const LocalPumps pumps = local_pumps(params, x, y);
        return [pumps, &params](const State& q) -> State {
            const AtomicAmplitudes at = solve_stationary_atoms(q[0], q[1], pumps, params);
            const complex i{0.0, 1.0};
            const complex lhs = i * std::conj(at.phi_y);
            return {lhs * at.phi_u1, lhs * at.phi_u2};
        };
    };
    return integrate(p1, p2, cfg, make_rhs, probe_coupling);
}

GridSpec coarsen(const GridSpec& grid, int factor) {
    if (factor < 1) {
        throw ValidationError("oracle: decimation factor must be >= 1");
    }
    GridSpec out = grid;
    out.nx = std::max(2, (grid.nx - 1) / factor + 1);
    out.ny = std::max(2, (grid.ny - 1) / factor + 1);
    return out;
}

double max_relative_deviation(const ComplexField& a, const ComplexField& b, double floor) {
    require_same_grid(a.grid(), b.grid());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double ref = std::abs(b[k]);
        if (ref > floor) {
            worst = std::max(worst, std::abs(a[k] - b[k]) / ref);
        }
    }
    return worst;
}

}  // namespace offaxis::oracle
