#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "offaxis/fieldgrid.hpp"
#include "offaxis/singlet.hpp"

namespace offaxis::vortex {

/// Integer phase winding per 2x2 plaquette; plaquette (i, j) has lower-left sample (i, j).
struct WindingMap {
    int px = 0;  ///< nx - 1
    int py = 0;  ///< ny - 1
    std::vector<int> charge;
    std::vector<bool> indeterminate;  ///< plaquette touches an exactly-zero sample

    int at(int i, int j) const { return charge[static_cast<std::size_t>(j) * px + i]; }
    bool indeterminate_at(int i, int j) const {
        return indeterminate[static_cast<std::size_t>(j) * px + i];
    }
};

/// Counter-clockwise sum of wrapped phase differences around each plaquette, over 2 pi.
WindingMap winding_map(const ComplexField& field);

struct VortexCore {
    double x = 0.0;
    double y = 0.0;
    int charge = 0;

    double radius() const;
    double angle() const;  ///< in [0, 2 pi)
};

/// Clusters singular plaquettes closer than min_separation and refines each core to the
/// intersection of the Re = 0 and Im = 0 contours of the bilinear interpolant.
/// Result is sorted by angle, then radius. min_separation must be >= one grid cell.
std::vector<VortexCore> detect_cores(const ComplexField& field, double min_separation);

/// detect_cores with the default separation of three grid cells.
std::vector<VortexCore> detect_cores(const ComplexField& field);

/// Winding along the square loop of samples at |x| = |y| = half_side around the origin
/// (snapped to the grid). Empty when a loop sample is exactly zero.
std::optional<int> loop_winding(const ComplexField& field, double half_side);

enum class RadiusConvention {
    NormalizedLaguerre,  ///< (|l1|! |Omega_2| / |Omega_1|)^{1/(2|l1|)}
    ProfileBalance,         ///< balance radius of the un-normalized profiles, (|Omega_2| / |Omega_1|)^{1/|l1|}
};

struct PeripheralPrediction {
    std::vector<double> angles;        ///< the |l1| zeros of psi: l1 phi = pi (mod 2 pi), in [0, 2 pi)
    std::vector<double> all_half_turn_angles;  ///< n pi / l1 for n = 1..2|l1|, reported only
    double radius = 0.0;
};

/// Peripheral-vortex geometry of psi(0) for uniform unit probes. Requires l1 != 0, l2 == 0.
PeripheralPrediction predict_peripheral(const SingletParams& params, RadiusConvention convention);

struct RingStats {
    int count = 0;
    double mean_radius = 0.0;
    double radius_spread = 0.0;       ///< max - min radius
    double spacing_uniformity = 0.0;  ///< max |gap - 2 pi / count| between azimuthally adjacent cores
};

RingStats ring_statistics(const std::vector<VortexCore>& cores);

}  // namespace offaxis::vortex
