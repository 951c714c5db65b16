#include "offaxis/doublet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radial.hpp"

namespace offaxis {

std::vector<std::string> DoubletParams::validate() const {
    for (const auto& b : beams) {
        b.validate();
    }
    if (!std::isfinite(delta_1f) || delta_1f == 0.0) {
        throw ValidationError("delta_1f: must be finite and nonzero");
    }
    if (!std::isfinite(delta_2f)) {
        throw ValidationError("delta_2f: must be finite");
    }
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ValidationError("delta: must be finite and >= 0");
    }
    if (!std::isfinite(z)) {
        throw ValidationError("z: must be finite");
    }
    if (!(gain_scale > 0.0) || !std::isfinite(gain_scale)) {
        throw ValidationError("gain_scale: must be finite and > 0");
    }
    if (c11().winding != 0 && c21().winding != 0) {
        throw ValidationError(
            "winding_11/winding_21: at most one of c11, c21 may carry a vortex; otherwise E_c1(r) -> 0 "
            "as r -> 0 and psi has a zero denominator on the beam axis");
    }
    if (c11().strength == 0.0 && c21().strength == 0.0) {
        throw ValidationError("strength_11/strength_21: at least one must be nonzero (E_c1 normalizes psi)");
    }
    std::vector<std::string> warnings;
    if (delta < 1.0) {
        warnings.push_back("delta < 1: the doublet reduction drops terms oscillating at 2*delta, "
                           "which assumes delta is large");
    }
    double s = 0.0;
    for (const auto& b : beams) {
        s = std::max(s, b.strength);
    }
    const double gap = std::min(std::abs(complex{delta_2f + delta, -1.0}),
                                std::abs(complex{delta_2f - delta, -1.0}));
    const double bound = 10.0 * s * s / gap;
    if (std::abs(delta_1f) < bound) {
        std::ostringstream msg;
        msg << "delta_1f = " << delta_1f << " is below 10*max(strength)^2/min|delta_2f +- delta - i| = "
            << bound << "; the large one-photon detuning condition is only weakly satisfied";
        warnings.push_back(msg.str());
    }
    return warnings;
}

std::vector<std::string> DoubletParams::validate(const GridSpec& grid) const {
    auto warnings = validate();
    grid.validate();
    const auto report = doublet::validate_matching(*this, grid);
    if (!report.passed) {
        std::ostringstream msg;
        msg << "doublet: matching condition (E12/E11) e^{i(l12-l11)phi} = (E22/E21) e^{i(l22-l21)phi} "
               "violated, max relative mismatch "
            << report.max_mismatch << " over " << report.samples_checked << " samples (tolerance "
            << doublet::kMatchingTolerance << ")";
        throw ValidationError(msg.str());
    }
    return warnings;
}

namespace doublet {

DoubletParams default_params(int winding, double strength_1, double strength_2) {
    DoubletParams p;
    p.beams = {BeamSpec{strength_1, winding, 1.0}, BeamSpec{strength_1, winding, 1.0},
               BeamSpec{strength_2, 0, 1.0}, BeamSpec{strength_2, 0, 1.0}};
    return p;
}

MatchingReport validate_matching(const DoubletParams& params, const GridSpec& grid) {
    if (params.c11().strength == 0.0 || params.c21().strength == 0.0) {
        throw IndeterminateConditionError(
            "matching condition indeterminate: c11 or c21 is identically zero");
    }
    double max_strength = 0.0;
    for (const auto& b : params.beams) {
        max_strength = std::max(max_strength, b.strength);
    }
    const double floor = 1e-12 * max_strength;
    MatchingReport report;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            const complex e11 = beam_value(params.c11(), x, y);
            const complex e21 = beam_value(params.c21(), x, y);
            if (std::abs(e11) <= floor || std::abs(e21) <= floor) {
                continue;
            }
            // E_jk e^{i l_jk phi} quotients carry both the amplitude ratio and the winding difference.
            const complex lhs = beam_value(params.c12(), x, y) / e11;
            const complex rhs = beam_value(params.c22(), x, y) / e21;
            const double scale = std::max(std::abs(lhs), std::abs(rhs));
            const double mismatch = scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
            report.max_mismatch = std::max(report.max_mismatch, mismatch);
            ++report.samples_checked;
        }
    }
    if (report.samples_checked == 0) {
        throw IndeterminateConditionError("matching condition indeterminate: no sample has nonvanishing denominators");
    }
    report.passed = report.max_mismatch < kMatchingTolerance;
    return report;
}

double grouped_strength_squared_1(const DoubletParams& params, double r) {
    const double a = beam_amplitude(params.c11(), r);
    const double b = beam_amplitude(params.c21(), r);
    return a * a + b * b;
}

double grouped_strength_squared_2(const DoubletParams& params, double r) {
    const double a = beam_amplitude(params.c12(), r);
    const double b = beam_amplitude(params.c22(), r);
    return a * a + b * b;
}

GroupedStrengths grouped_strengths(const DoubletParams& params, const GridSpec& grid) {
    GroupedStrengths out{RealField(grid), RealField(grid)};
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double r = std::hypot(grid.x(i), grid.y(j));
            out.ec1(i, j) = std::sqrt(grouped_strength_squared_1(params, r));
            out.ec2(i, j) = std::sqrt(grouped_strength_squared_2(params, r));
        }
    }
    return out;
}

complex kappa_coefficient(double ec1_squared, double ec2_squared, double delta_1f, double delta_2f,
                          double delta) {
    const double d1 = delta_1f * delta_1f;
    return (ec1_squared / d1) / complex{delta_2f + delta, 1.0} + (ec2_squared / d1) / complex{delta_2f - delta, 1.0};
}

double slowdown_coefficient(double ec1_squared, double ec2_squared, double delta_1f, double delta_2f,
                            double delta, double gain_scale) {
    // d/dx Re[1/(x + i)] = (1 - x^2) / (x^2 + 1)^2
    const auto line = [](double x) {
        const double x2 = x * x;
        return (1.0 - x2) / ((x2 + 1.0) * (x2 + 1.0));
    };
    const double d = (ec1_squared * line(delta_2f + delta) + ec2_squared * line(delta_2f - delta)) /
                     (delta_1f * delta_1f);
    return 1.0 + gain_scale * d;
}

complex kappa(const DoubletParams& params, double r) {
    return kappa_coefficient(grouped_strength_squared_1(params, r), grouped_strength_squared_2(params, r),
                             params.delta_1f, params.delta_2f, params.delta);
}

ComplexField kappa_field(const DoubletParams& params, const GridSpec& grid) {
    ComplexField out(grid);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            out(i, j) = kappa(params, std::hypot(grid.x(i), grid.y(j)));
        }
    }
    return out;
}

ModeBasis mode_basis(const DoubletParams& params, const GridSpec& grid) {
    bool any = false;
    for (const auto& b : params.beams) {
        any = any || b.strength != 0.0;
    }
    if (!any) {
        throw SingularTransformError("superposition modes undefined: all four pump strengths are zero");
    }
    return make_mode_basis(make_beam(params.c11(), grid), make_beam(params.c21(), grid));
}

ModePair superpose(const ComplexField& p1, const ComplexField& p2, const DoubletParams& params) {
    return offaxis::superpose(mode_basis(params, p1.grid()), p1, p2);
}

ModePair propagate(const ModePair& modes, const DoubletParams& params) {
    return apply_propagator(modes, kappa_field(params, modes.psi.grid()), params.z);
}

ProbePair reconstruct(const ModePair& modes, const DoubletParams& params) {
    return offaxis::reconstruct(mode_basis(params, modes.psi.grid()), modes);
}

ProbePair vortex_exchange(const DoubletParams& params, const GridSpec& grid, complex amplitude) {
    ProbePair out{ComplexField(grid), ComplexField(grid)};
    const int dl = params.c21().winding - params.c11().winding;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            const double r = std::hypot(x, y);
            const double e11 = beam_amplitude(params.c11(), r);
            const double e21 = beam_amplitude(params.c21(), r);
            const double ec1 = e11 * e11 + e21 * e21;
            if (ec1 == 0.0) {
                out.p1(i, j) = amplitude;
                continue;
            }
            const complex gain = expm1(complex{0.0, params.z} * kappa(params, r));
            out.p1(i, j) = (1.0 + (e11 * e11 / ec1) * gain) * amplitude;
            const complex twist = dl == 0 ? complex{1.0, 0.0} : std::polar(1.0, dl * std::atan2(y, x));
            out.p2(i, j) = (e21 * e11 / ec1) * twist * gain * amplitude;
        }
    }
    return out;
}

double group_slowdown(const DoubletParams& params, double r) {
    return slowdown_coefficient(grouped_strength_squared_1(params, r), grouped_strength_squared_2(params, r),
                                params.delta_1f, params.delta_2f, params.delta, params.gain_scale);
}

double peak_radius(const DoubletParams& params, double r_max) {
    return detail::argmax_on_interval(
        [&](double r) { return grouped_strength_squared_1(params, r); }, 0.0, r_max);
}

}  // namespace doublet
}  // namespace offaxis
