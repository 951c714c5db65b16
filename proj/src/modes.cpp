#include "offaxis/modes.hpp"

#include <array>

namespace offaxis {

ModeBasis make_mode_basis(ComplexField a, ComplexField b) {
    require_same_grid(a.grid(), b.grid());
    const std::array<ComplexField, 2> pair{a, b};
    RealField norm = total_strength(pair);
    return {std::move(a), std::move(b), std::move(norm)};
}

ModePair superpose(const ModeBasis& basis, const ComplexField& p1, const ComplexField& p2) {
    require_same_grid(basis.norm.grid(), p1.grid());
    require_same_grid(p1.grid(), p2.grid());
    ModePair out{ComplexField(p1.grid()), ComplexField(p1.grid())};
    for (std::size_t k = 0; k < p1.size(); ++k) {
        const double n = basis.norm[k];
        if (n == 0.0) {
            out.psi[k] = p1[k];
            out.xi[k] = p2[k];
            continue;
        }
        const complex a = basis.a[k];
        const complex b = basis.b[k];
        out.psi[k] = (std::conj(a) * p1[k] + std::conj(b) * p2[k]) / n;
        out.xi[k] = (b * p1[k] - a * p2[k]) / n;
    }
    return out;
}

ProbePair reconstruct(const ModeBasis& basis, const ModePair& modes) {
    require_same_grid(basis.norm.grid(), modes.psi.grid());
    require_same_grid(modes.psi.grid(), modes.xi.grid());
    ProbePair out{ComplexField(modes.psi.grid()), ComplexField(modes.psi.grid())};
    for (std::size_t k = 0; k < modes.psi.size(); ++k) {
        const double n = basis.norm[k];
        if (n == 0.0) {
            out.p1[k] = modes.psi[k];
            out.p2[k] = modes.xi[k];
            continue;
        }
        const complex a = basis.a[k];
        const complex b = basis.b[k];
        out.p1[k] = (a * modes.psi[k] + std::conj(b) * modes.xi[k]) / n;
        out.p2[k] = (b * modes.psi[k] - std::conj(a) * modes.xi[k]) / n;
    }
    return out;
}

ModePair apply_propagator(const ModePair& modes, const ComplexField& kappa, double z) {
    require_same_grid(modes.psi.grid(), kappa.grid());
    ModePair out{modes.psi, modes.xi};
    const complex iz{0.0, z};
    for (std::size_t k = 0; k < kappa.size(); ++k) {
        out.psi[k] = modes.psi[k] * std::exp(iz * kappa[k]);
    }
    return out;
}

}  // namespace offaxis
