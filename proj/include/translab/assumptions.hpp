#pragma once

#include "translab/coupling.hpp"
#include "translab/fft.hpp"

namespace translab {

// ||a||_Lp + ||grad a||_Lp with the spectral gradient; the W^{1,p} quantity
// whose uniform-in-time boundedness the compactness theory assumes.
inline double w1p_seminorm(const VelocityField& a, double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("w1p_seminorm: p must lie in (1, inf)");
    const Grid& g = a.grid;
    std::vector<double> grad_sq(static_cast<std::size_t>(g.cell_count()), 0.0);
    std::vector<double> a_sq(grad_sq.size(), 0.0);
    for (int k = 0; k < g.dim; ++k) {
        ScalarField comp(g, a.components[k]);
        for (std::size_t i = 0; i < a_sq.size(); ++i)
            a_sq[i] += comp.values[i] * comp.values[i];
        for (int l = 0; l < g.dim; ++l) {
            ScalarField d = spectral_derivative(comp, l);
            for (std::size_t i = 0; i < grad_sq.size(); ++i) grad_sq[i] += d.values[i] * d.values[i];
        }
    }
    KahanSum sa, sg;
    for (std::size_t i = 0; i < grad_sq.size(); ++i) {
        sa.add(std::pow(a_sq[i], 0.5 * p));
        sg.add(std::pow(grad_sq[i], 0.5 * p));
    }
    const double dv = g.cell_volume();
    return std::pow(sa.value() * dv, 1.0 / p) + std::pow(sg.value() * dv, 1.0 / p);
}

struct DivergenceSplit {
    ScalarField d_part;   // div a - r; spectrally ~0 for Poisson coupling
    ScalarField r_part;   // -(g(n) - <g(n)>), pointwise controlled by density differences
    double lip_bound = 0.0;  // max |g'| over the density range: the constant C
};

// Structural div a = d + r decomposition available when the coupling makes
// div a a known function of the density (Poisson / Hamilton-Jacobi).
inline DivergenceSplit divergence_split(const VelocityField& a, const ScalarField& n,
                                        const CouplingSpec& coupling) {
    if (coupling.variant != CouplingSpec::Variant::Poisson &&
        coupling.variant != CouplingSpec::Variant::HamiltonJacobi)
        throw StructuralError(
            "divergence_split: only Poisson/Hamilton-Jacobi couplings carry the d+r structure; "
            "fall back to d = div a, r = 0");
    if (!(a.grid == n.grid)) throw ConfigError("divergence_split: field grid mismatch");

    DivergenceSplit out;
    out.r_part = ScalarField(n.grid);
    for (std::size_t i = 0; i < n.values.size(); ++i)
        out.r_part.values[i] = coupling.g(n.values[i]);
    const double mean = field_mean(out.r_part);
    for (auto& v : out.r_part.values) v = -(v - mean);

    out.d_part = spectral_divergence(a);
    for (std::size_t i = 0; i < out.d_part.values.size(); ++i)
        out.d_part.values[i] -= out.r_part.values[i];

    const double lo = min_value(n);
    const double hi = *std::max_element(n.values.begin(), n.values.end());
    double lip = 0.0;
    const int samples = 1000;
    for (int i = 0; i <= samples; ++i) {
        const double xi = lo + (hi - lo) * i / samples;
        lip = std::max(lip, std::abs(coupling.g.derivative(xi)));
    }
    out.lip_bound = lip;
    return out;
}

}  // namespace translab
