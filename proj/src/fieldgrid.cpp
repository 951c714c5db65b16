#include "offaxis/fieldgrid.hpp"

#include <algorithm>
#include <cstdlib>
#include <numbers>
#include <string>

namespace offaxis {

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) {
        throw ValidationError("grid: nx and ny must be >= 2 (got " + std::to_string(nx) + "x" +
                              std::to_string(ny) + ")");
    }
    if (!(half_extent > 0.0) || !std::isfinite(half_extent)) {
        throw ValidationError("grid: half_extent must be finite and > 0");
    }
}

int GridSpec::index_x(double xv) const {
    return std::clamp(static_cast<int>(std::lround((xv + half_extent) / dx())), 0, nx - 1);
}

int GridSpec::index_y(double yv) const {
    return std::clamp(static_cast<int>(std::lround((yv + half_extent) / dy())), 0, ny - 1);
}

void BeamSpec::validate() const {
    if (!(strength >= 0.0) || !std::isfinite(strength)) {
        throw ValidationError("beam: strength must be finite and >= 0");
    }
    if (!(waist > 0.0) || !std::isfinite(waist)) {
        throw ValidationError("beam: waist must be finite and > 0");
    }
}

double beam_amplitude(const BeamSpec& spec, double r) {
    const int order = std::abs(spec.winding);
    const double rho = r / spec.waist;
    if (order != 0 && rho == 0.0) {
        return 0.0;
    }
    return spec.strength * std::pow(rho, order) * std::exp(-rho * rho);
}

complex beam_value(const BeamSpec& spec, double x, double y) {
    const double r = std::hypot(x, y);
    const double amp = beam_amplitude(spec, r);
    if (spec.winding == 0 || amp == 0.0) {
        return {amp, 0.0};
    }
    return std::polar(amp, spec.winding * std::atan2(y, x));
}

ComplexField make_beam(const BeamSpec& spec, const GridSpec& grid) {
    ComplexField out(grid);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            out(i, j) = beam_value(spec, grid.x(i), grid.y(j));
        }
    }
    return out;
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) {
        throw DimensionError("fields are sampled on different grids");
    }
}

RealField total_strength(std::span<const ComplexField> fields) {
    if (fields.empty()) {
        throw DimensionError("total_strength needs at least one field");
    }
    const GridSpec& grid = fields.front().grid();
    RealField out(grid);
    for (const auto& f : fields) {
        require_same_grid(grid, f.grid());
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += std::norm(f[k]);
        }
    }
    for (auto& v : out.values()) {
        v = std::sqrt(v);
    }
    return out;
}

PhaseMap phase_map(const ComplexField& field) {
    PhaseMap out{RealField(field.grid()), {}};
    for (std::size_t k = 0; k < field.size(); ++k) {
        const complex v = field[k];
        if (v == complex{}) {
            out.zero_samples.push_back(k);
            continue;
        }
        double a = std::arg(v);
        if (a <= -std::numbers::pi) {
            a = std::numbers::pi;
        }
        out.phase[k] = a;
    }
    return out;
}

RealField intensity(const ComplexField& field) {
    RealField out(field.grid());
    for (std::size_t k = 0; k < field.size(); ++k) {
        out[k] = std::norm(field[k]);
    }
    return out;
}

RealField magnitude(const ComplexField& field) {
    RealField out(field.grid());
    for (std::size_t k = 0; k < field.size(); ++k) {
        out[k] = std::abs(field[k]);
    }
    return out;
}

ComplexField uniform_field(const GridSpec& grid, complex value) {
    return ComplexField(grid, value);
}

complex expm1(complex w) {
    const double a = w.real();
    const double b = w.imag();
    const double ea = std::exp(a);
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) - 2.0 * ea * s * s, ea * std::sin(b)};
}

}  // namespace offaxis
