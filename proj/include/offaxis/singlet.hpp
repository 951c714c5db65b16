#pragma once

#include <string>
#include <vector>

#include "offaxis/fieldgrid.hpp"
#include "offaxis/modes.hpp"

namespace offaxis {

/// Double-Raman singlet. Frequencies in units of Gamma, z in units of L_Gamma.
struct SingletParams {
    BeamSpec beam1;
    BeamSpec beam2;
    double delta_1f = 1.0;
    double delta_2f = 4.0;
    double z = 1.0;
    double gain_scale = 1.0;  ///< G = n alpha^2 / Gamma^2 = c / (Gamma L_Gamma)

    /// Throws ValidationError on hard violations; returns soft warnings.
    std::vector<std::string> validate() const;
};

namespace singlet {

/// kappa L_Gamma for a given E_c^2: (E_c^2 / delta_1f^2) / (delta_2f + i).
complex kappa_coefficient(double ec_squared, double delta_1f, double delta_2f);

/// 1 + G (E_c^2 / delta_1f^2) (1 - delta_2f^2) / (delta_2f^2 + 1)^2.
double slowdown_coefficient(double ec_squared, double delta_1f, double delta_2f, double gain_scale);

double total_strength_squared(const SingletParams& params, double r);
complex kappa(const SingletParams& params, double r);
ComplexField kappa_field(const SingletParams& params, const GridSpec& grid);

ModeBasis mode_basis(const SingletParams& params, const GridSpec& grid);

/// Throws SingularTransformError when both pumps are off.
ModePair superpose(const ComplexField& p1, const ComplexField& p2, const SingletParams& params);
ModePair propagate(const ModePair& modes, const SingletParams& params);
ProbePair reconstruct(const ModePair& modes, const SingletParams& params);

/// Closed-form probes at params.z for P1(0) = amplitude, P2(0) = 0.
ProbePair vortex_exchange(const SingletParams& params, const GridSpec& grid, complex amplitude);

/// c / v_g at radius r.
double group_slowdown(const SingletParams& params, double r);

/// Radius of the maximum of E_c(r) on [0, r_max].
double peak_radius(const SingletParams& params, double r_max);

}  // namespace singlet
}  // namespace offaxis
