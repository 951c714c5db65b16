#pragma once

#include "offaxis/fieldgrid.hpp"

namespace offaxis {

/// The two probe envelopes P1, P2 on a shared grid.
struct ProbePair {
    ComplexField p1;
    ComplexField p2;
};

/// psi couples to the medium, xi propagates freely.
struct ModePair {
    ComplexField psi;
    ComplexField xi;
};

/// Pump coupling vector (a, b) per sample; psi is its projection, xi the orthogonal complement.
///
/// psi = (conj(a) P1 + conj(b) P2) / norm, xi = (b P1 - a P2) / norm, norm = sqrt(|a|^2 + |b|^2).
/// Samples with norm == 0 do not couple to the medium and pass through as psi = P1, xi = P2.
struct ModeBasis {
    ComplexField a;
    ComplexField b;
    RealField norm;
};

ModeBasis make_mode_basis(ComplexField a, ComplexField b);

ModePair superpose(const ModeBasis& basis, const ComplexField& p1, const ComplexField& p2);
ProbePair reconstruct(const ModeBasis& basis, const ModePair& modes);

/// psi(z) = psi(0) exp(i kappa z); xi copied unchanged.
ModePair apply_propagator(const ModePair& modes, const ComplexField& kappa, double z);

}  // namespace offaxis
