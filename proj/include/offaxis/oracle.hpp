#pragma once

#include <array>
#include <optional>

#include "offaxis/doublet.hpp"
#include "offaxis/fieldgrid.hpp"
#include "offaxis/modes.hpp"
#include "offaxis/singlet.hpp"

namespace offaxis::oracle {

/// Fixed-step classical RK4 from z = 0 to z = target_z.
struct IntegratorConfig {
    int steps = 1000;
    double target_z = 1.0;
    /// Re-run every check_stride-th sample (in x and y) with 2*steps and compare.
    bool check_convergence = true;
    int check_stride = 8;

    void validate() const;
};

inline constexpr double kStepHalvingTolerance = 1e-6;

struct IntegrationResult {
    ProbePair probes;
    std::optional<double> step_halving_change;  ///< max relative change on the check subset
    bool under_resolved = false;                 ///< step_halving_change > kStepHalvingTolerance
};

/// 2x2 coefficient matrix M with dP/dz = i M P at one transverse point.
using CouplingMatrix = std::array<std::array<complex, 2>, 2>;

CouplingMatrix singlet_coupling(const SingletParams& params, double x, double y);
CouplingMatrix doublet_coupling(const DoubletParams& params, double x, double y);

IntegrationResult integrate_singlet(const ComplexField& p1, const ComplexField& p2,
                                    const SingletParams& params, const IntegratorConfig& cfg);
IntegrationResult integrate_doublet(const ComplexField& p1, const ComplexField& p2,
                                    const DoubletParams& params, const IntegratorConfig& cfg);

/// Stationary amplitudes normalized so |phi_R|^2 carries the density (folded into G).
struct AtomicAmplitudes {
    complex phi_r;
    complex phi_y;
    complex phi_u1;
    complex phi_u2;
};

/// Complex pump Rabi frequencies E_cj(r) e^{i l_j phi} at one sample.
struct LocalPumps {
    complex c1;
    complex c2;
};

LocalPumps local_pumps(const SingletParams& params, double x, double y);

/// Exact solve of the stationary U1, U2, Y equations for probe Rabi frequencies
/// q_j = alpha P_j (Gamma units). Throws SolverError when the system is singular.
AtomicAmplitudes solve_stationary_atoms(complex q1, complex q2, const LocalPumps& pumps,
                                        const SingletParams& params, complex phi_r = {1.0, 0.0});

/// Integrates the probe equations with right-hand sides i conj(phi_Y) phi_Uj taken from the exact
/// stationary solve at every RK4 stage. Inputs are scaled by probe_coupling into Rabi units and the
/// outputs scaled back, so the result is directly comparable with the adiabatic closed form.
IntegrationResult integrate_exact_singlet(const ComplexField& p1, const ComplexField& p2,
                                          const SingletParams& params, const IntegratorConfig& cfg,
                                          double probe_coupling);

/// Coarser grid with the same extent, ((n - 1) / factor + 1) samples per axis.
GridSpec coarsen(const GridSpec& grid, int factor);

/// max |a - b| / |b| over samples with |b| > floor (0 when no sample qualifies).
double max_relative_deviation(const ComplexField& a, const ComplexField& b, double floor = 1e-9);

}  // namespace offaxis::oracle
