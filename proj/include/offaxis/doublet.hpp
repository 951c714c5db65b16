#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "offaxis/fieldgrid.hpp"
#include "offaxis/modes.hpp"

namespace offaxis {

/// Double-Raman doublet: four pumps, two Raman lines per probe split by 2*delta.
struct DoubletParams {
    /// Pumps in the order c11, c12, c21, c22. c1k couple probe 1, c2k couple probe 2;
    /// ck1 belong to the line at delta_2f + delta, ck2 to the line at delta_2f - delta.
    std::array<BeamSpec, 4> beams;
    double delta_1f = 1.0;
    double delta_2f = 0.0;
    double delta = 4.0;
    double z = 1.0;
    double gain_scale = 1.0;

    const BeamSpec& c11() const { return beams[0]; }
    const BeamSpec& c12() const { return beams[1]; }
    const BeamSpec& c21() const { return beams[2]; }
    const BeamSpec& c22() const { return beams[3]; }

    /// Grid-independent invariants. Throws ValidationError; returns soft warnings.
    std::vector<std::string> validate() const;
    /// Also enforces the pointwise matching condition on the grid.
    std::vector<std::string> validate(const GridSpec& grid) const;
};

namespace doublet {

/// Vortex pumps c11 and c12 with winding l, Gaussian pumps c21 and c22.
/// Satisfies the matching condition exactly and keeps E_c1(0) = strength_2 > 0.
DoubletParams default_params(int winding, double strength_1 = 1.0, double strength_2 = 1.0);

inline constexpr double kMatchingTolerance = 1e-8;

struct MatchingReport {
    bool passed = false;
    double max_mismatch = 0.0;
    std::size_t samples_checked = 0;
};

/// Pointwise check of (E12/E11) e^{i(l12-l11)phi} == (E22/E21) e^{i(l22-l21)phi}.
/// Throws IndeterminateConditionError when c11 or c21 is identically zero.
MatchingReport validate_matching(const DoubletParams& params, const GridSpec& grid);

struct GroupedStrengths {
    RealField ec1;  ///< sqrt(|E11|^2 + |E21|^2)
    RealField ec2;  ///< sqrt(|E12|^2 + |E22|^2)
};

GroupedStrengths grouped_strengths(const DoubletParams& params, const GridSpec& grid);
double grouped_strength_squared_1(const DoubletParams& params, double r);
double grouped_strength_squared_2(const DoubletParams& params, double r);

complex kappa_coefficient(double ec1_squared, double ec2_squared, double delta_1f, double delta_2f,
                          double delta);
double slowdown_coefficient(double ec1_squared, double ec2_squared, double delta_1f, double delta_2f,
                            double delta, double gain_scale);

complex kappa(const DoubletParams& params, double r);
ComplexField kappa_field(const DoubletParams& params, const GridSpec& grid);

ModeBasis mode_basis(const DoubletParams& params, const GridSpec& grid);
ModePair superpose(const ComplexField& p1, const ComplexField& p2, const DoubletParams& params);
ModePair propagate(const ModePair& modes, const DoubletParams& params);
ProbePair reconstruct(const ModePair& modes, const DoubletParams& params);

/// Closed-form probes at params.z for P1(0) = amplitude, P2(0) = 0.
ProbePair vortex_exchange(const DoubletParams& params, const GridSpec& grid, complex amplitude);

double group_slowdown(const DoubletParams& params, double r);

/// Radius of the maximum of E_c1(r) on [0, r_max].
double peak_radius(const DoubletParams& params, double r_max);

}  // namespace doublet
}  // namespace offaxis
