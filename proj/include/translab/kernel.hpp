#pragma once

#include <numbers>

#include "translab/fft.hpp"
#include "translab/quadrature.hpp"

namespace translab {

// The compactness kernel family: K_h(z) = (|z|+h)^(-d) on |z| <= 1, glued to
// an h-independent smooth radial tail eta(r) = r^(-d) s(r) on 1 < r < 2 with
// s = 1 on [1, 1.25] and s = 0 on [1.75, 2]. Support is B(0,2); the O(h)
// jump against the inner branch at r = 1 is accepted.
struct KernelSpec {
    double h = 0.0;
    int dim = 1;
    double l1_mass = 0.0;  // continuum L1 norm, adaptive radial quadrature

    KernelSpec() = default;
    KernelSpec(double h_, int dim_) : h(h_), dim(dim_) {
        if (!(h > 0.0 && h < 1.0)) throw ConfigError("kernel: h must lie in (0,1)");
        if (dim != 1 && dim != 2) throw ConfigError("kernel: dim must be 1 or 2");
        const double surface = dim == 1 ? 2.0 : 2.0 * std::numbers::pi;
        const double inner = adaptive_simpson(
            [this](double r) { return std::pow(r, dim - 1) * std::pow(r + h, -dim); }, 0.0, 1.0);
        const double outer = adaptive_simpson(
            [](double r) { return smooth_cutoff(r, 1.25, 1.75) / r; }, 1.0, 2.0);
        l1_mass = surface * (inner + outer);
    }

    static double cutoff(double r) { return smooth_cutoff(r, 1.25, 1.75); }

    double value(double r) const {
        if (r <= 1.0) return std::pow(r + h, -dim);
        if (r >= 2.0) return 0.0;
        return std::pow(r, -dim) * cutoff(r);
    }

    // dK/dr; the gradient of K_h at z is radial_derivative(|z|) * z/|z|
    double radial_derivative(double r) const {
        if (r <= 1.0) return -dim * std::pow(r + h, -dim - 1);
        if (r >= 2.0) return 0.0;
        return -dim * std::pow(r, -dim - 1) * cutoff(r) +
               std::pow(r, -dim) * smooth_cutoff_derivative(r, 1.25, 1.75);
    }
};

// K tilde = c_h K_h scaled to unit mass (the convolution kernel of the
// smoothing estimate). c_h |log h| stays bounded above and below in h.
struct NormalizedKernel {
    KernelSpec base;
    double c_h = 0.0;

    NormalizedKernel() = default;
    explicit NormalizedKernel(const KernelSpec& spec) : base(spec), c_h(1.0 / spec.l1_mass) {}
};

// Kernel sampled at minimal-image node offsets, with its spectrum and
// discrete (Riemann) mass precomputed for the FFT fast paths.
struct TabulatedKernel {
    KernelSpec spec;
    ScalarField field;
    std::vector<Complex> spectrum;
    double discrete_mass = 0.0;  // sum K dx^d over the grid

    TabulatedKernel(const KernelSpec& spec_, const Grid& grid) : spec(spec_), field(grid) {
        if (grid.dim != spec.dim) throw ConfigError("kernel: grid dim does not match kernel dim");
        if (!(grid.length > 4.0)) throw ConfigError("kernel: grid length must exceed 4");
        const int n = grid.n_per_axis;
        KahanSum sum;
        if (grid.dim == 1) {
            for (int i = 0; i < n; ++i) {
                field.values[i] = spec.value(grid.offset_distance(i));
                sum.add(field.values[i]);
            }
        } else {
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1) {
                    const double v = spec.value(grid.offset_distance(i0, i1));
                    field.values[grid.index(i0, i1)] = v;
                    sum.add(v);
                }
        }
        discrete_mass = sum.value() * grid.cell_volume();
        spectrum = forward_fft(field);
    }
};

}  // namespace translab
