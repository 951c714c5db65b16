#include "offaxis/singlet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "radial.hpp"

namespace offaxis {

std::vector<std::string> SingletParams::validate() const {
    beam1.validate();
    beam2.validate();
    if (!std::isfinite(delta_1f) || delta_1f == 0.0) {
        throw ValidationError("delta_1f: must be finite and nonzero (adiabatic elimination needs a large one-photon detuning)");
    }
    if (!std::isfinite(delta_2f)) {
        throw ValidationError("delta_2f: must be finite");
    }
    if (!std::isfinite(z)) {
        throw ValidationError("z: must be finite");
    }
    if (!(gain_scale > 0.0) || !std::isfinite(gain_scale)) {
        throw ValidationError("gain_scale: must be finite and > 0");
    }
    if (beam1.winding != 0 && beam2.winding != 0) {
        throw ValidationError(
            "winding_1/winding_2: at most one pump may carry a vortex; with both nonzero E_c(r) -> 0 "
            "as r -> 0 and psi has a zero denominator on the beam axis");
    }
    std::vector<std::string> warnings;
    const double s = std::max(beam1.strength, beam2.strength);
    const double bound = 10.0 * s * s / std::abs(complex{delta_2f, -1.0});
    if (std::abs(delta_1f) < bound) {
        std::ostringstream msg;
        msg << "delta_1f = " << delta_1f << " is below 10*max(strength)^2/|delta_2f - i| = " << bound
            << "; the large one-photon detuning condition is only weakly satisfied";
        warnings.push_back(msg.str());
    }
    return warnings;
}

namespace singlet {

complex kappa_coefficient(double ec_squared, double delta_1f, double delta_2f) {
    return (ec_squared / (delta_1f * delta_1f)) / complex{delta_2f, 1.0};
}

double slowdown_coefficient(double ec_squared, double delta_1f, double delta_2f, double gain_scale) {
    const double d2 = delta_2f * delta_2f;
    const double denom = (d2 + 1.0) * (d2 + 1.0);
    return 1.0 + gain_scale * (ec_squared / (delta_1f * delta_1f)) * (1.0 - d2) / denom;
}

double total_strength_squared(const SingletParams& params, double r) {
    const double e1 = beam_amplitude(params.beam1, r);
    const double e2 = beam_amplitude(params.beam2, r);
    return e1 * e1 + e2 * e2;
}

complex kappa(const SingletParams& params, double r) {
    return kappa_coefficient(total_strength_squared(params, r), params.delta_1f, params.delta_2f);
}

ComplexField kappa_field(const SingletParams& params, const GridSpec& grid) {
    ComplexField out(grid);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            out(i, j) = kappa(params, std::hypot(grid.x(i), grid.y(j)));
        }
    }
    return out;
}

ModeBasis mode_basis(const SingletParams& params, const GridSpec& grid) {
    if (params.beam1.strength == 0.0 && params.beam2.strength == 0.0) {
        throw SingularTransformError("superposition modes undefined: both pump strengths are zero");
    }
    return make_mode_basis(make_beam(params.beam1, grid), make_beam(params.beam2, grid));
}

ModePair superpose(const ComplexField& p1, const ComplexField& p2, const SingletParams& params) {
    return offaxis::superpose(mode_basis(params, p1.grid()), p1, p2);
}

ModePair propagate(const ModePair& modes, const SingletParams& params) {
    return apply_propagator(modes, kappa_field(params, modes.psi.grid()), params.z);
}

ProbePair reconstruct(const ModePair& modes, const SingletParams& params) {
    return offaxis::reconstruct(mode_basis(params, modes.psi.grid()), modes);
}

ProbePair vortex_exchange(const SingletParams& params, const GridSpec& grid, complex amplitude) {
    ProbePair out{ComplexField(grid), ComplexField(grid)};
    const int dl = params.beam2.winding - params.beam1.winding;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            const double r = std::hypot(x, y);
            const double e1 = beam_amplitude(params.beam1, r);
            const double e2 = beam_amplitude(params.beam2, r);
            const double ec2 = e1 * e1 + e2 * e2;
            if (ec2 == 0.0) {
                out.p1(i, j) = amplitude;
                continue;
            }
            const complex gain = expm1(complex{0.0, params.z} * kappa_coefficient(ec2, params.delta_1f, params.delta_2f));
            out.p1(i, j) = (1.0 + (e1 * e1 / ec2) * gain) * amplitude;
            const complex twist = dl == 0 ? complex{1.0, 0.0} : std::polar(1.0, dl * std::atan2(y, x));
            out.p2(i, j) = (e2 * e1 / ec2) * twist * gain * amplitude;
        }
    }
    return out;
}

double group_slowdown(const SingletParams& params, double r) {
    return slowdown_coefficient(total_strength_squared(params, r), params.delta_1f, params.delta_2f,
                                params.gain_scale);
}

double peak_radius(const SingletParams& params, double r_max) {
    return detail::argmax_on_interval(
        [&](double r) { return total_strength_squared(params, r); }, 0.0, r_max);
}

}  // namespace singlet
}  // namespace offaxis
