#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "offaxis/errors.hpp"

namespace offaxis {

using complex = std::complex<double>;

/// Square transverse sampling over [-half_extent, half_extent]^2, lengths in waist units.
struct GridSpec {
    int nx = 512;
    int ny = 512;
    double half_extent = 4.0;

    void validate() const;

    double dx() const { return 2.0 * half_extent / (nx - 1); }
    double dy() const { return 2.0 * half_extent / (ny - 1); }
    double x(int i) const { return -half_extent + i * dx(); }
    double y(int j) const { return -half_extent + j * dy(); }
    /// Nearest sample index for a coordinate; inverse of x(i) on sample points.
    int index_x(double x) const;
    int index_y(double y) const;

    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    /// Row-major with x fastest.
    std::size_t flat(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Sampled function over a GridSpec.
template <typename T>
class Field {
public:
    Field() = default;
    explicit Field(GridSpec grid, T fill = T{}) : grid_(grid), values_(grid.size(), fill) {}
    Field(GridSpec grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size()) {
            throw DimensionError("field value count does not match grid size");
        }
    }

    const GridSpec& grid() const { return grid_; }
    std::span<const T> values() const { return values_; }
    std::span<T> values() { return values_; }

    T& operator()(int i, int j) { return values_[grid_.flat(i, j)]; }
    const T& operator()(int i, int j) const { return values_[grid_.flat(i, j)]; }
    T& operator[](std::size_t k) { return values_[k]; }
    const T& operator[](std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }

    friend bool operator==(const Field&, const Field&) = default;

private:
    GridSpec grid_;
    std::vector<T> values_;
};

using ComplexField = Field<complex>;
using RealField = Field<double>;

/// One pump beam. strength is |Omega| in units of Gamma; winding is the OAM index l.
struct BeamSpec {
    double strength = 1.0;
    int winding = 0;
    double waist = 1.0;

    void validate() const;
};

/// Radial profile |Omega| (r/w)^|l| exp(-r^2/w^2); exactly 0 at r = 0 when l != 0.
double beam_amplitude(const BeamSpec& spec, double r);

/// Complex Rabi frequency amplitude(r) * exp(i l phi) at a transverse point.
complex beam_value(const BeamSpec& spec, double x, double y);

ComplexField make_beam(const BeamSpec& spec, const GridSpec& grid);

/// Pointwise sqrt(sum |field|^2). Throws DimensionError on grid mismatch or empty input.
RealField total_strength(std::span<const ComplexField> fields);

struct PhaseMap {
    RealField phase;                      ///< principal argument in (-pi, pi]
    std::vector<std::size_t> zero_samples; ///< flat indices where |value| == 0 (phase set to 0)
};

PhaseMap phase_map(const ComplexField& field);

RealField intensity(const ComplexField& field);
RealField magnitude(const ComplexField& field);
ComplexField uniform_field(const GridSpec& grid, complex value);

void require_same_grid(const GridSpec& a, const GridSpec& b);

/// e^w - 1 without cancellation for small |w|.
complex expm1(complex w);

}  // namespace offaxis
