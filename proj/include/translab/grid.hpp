#pragma once

#include <array>
#include <cstdint>

#include "translab/common.hpp"

namespace translab {

// Uniform periodic lattice on the d-torus [0,L)^d, d in {1,2}.
// Nodes sit at x_i = i*dx; cell i covers [x_i - dx/2, x_i + dx/2).
// n_per_axis must be a power of two (radix-2 FFT fast paths) and L > 4 so
// that the kernel support B(0,2) embeds without wraparound self-overlap.
struct Grid {
    int dim = 1;
    int n_per_axis = 0;
    double length = 0.0;

    Grid() = default;
    Grid(int dim_, int n_, double length_) : dim(dim_), n_per_axis(n_), length(length_) {
        validate();
    }

    void validate() const {
        if (dim != 1 && dim != 2) throw ConfigError("grid: dim must be 1 or 2");
        if (!is_power_of_two(n_per_axis))
            throw ConfigError("grid: n_per_axis must be a power of two");
        if (!(length > 4.0)) throw ConfigError("grid: length must exceed 4");
    }

    double spacing() const { return length / n_per_axis; }
    std::int64_t cell_count() const {
        std::int64_t c = 1;
        for (int k = 0; k < dim; ++k) c *= n_per_axis;
        return c;
    }
    double cell_volume() const {
        double v = 1.0;
        for (int k = 0; k < dim; ++k) v *= spacing();
        return v;
    }
    double volume() const {
        double v = 1.0;
        for (int k = 0; k < dim; ++k) v *= length;
        return v;
    }

    // flat index <-> per-axis indices (row-major: idx = i0*N + i1 in 2-d)
    std::int64_t index(int i0, int i1 = 0) const {
        return dim == 1 ? i0 : static_cast<std::int64_t>(i0) * n_per_axis + i1;
    }
    std::array<int, 2> coords(std::int64_t idx) const {
        if (dim == 1) return {static_cast<int>(idx), 0};
        return {static_cast<int>(idx / n_per_axis), static_cast<int>(idx % n_per_axis)};
    }
    int wrap(int i) const {
        const int n = n_per_axis;
        i %= n;
        return i < 0 ? i + n : i;
    }
    double position(int i) const { return i * spacing(); }

    // representative of t in (-L/2, L/2]
    double min_image(double t) const {
        t = std::remainder(t, length);
        return t;
    }
    // Euclidean minimal-image distance between nodes with index offsets (m0,m1)
    double offset_distance(int m0, int m1 = 0) const {
        const double z0 = min_image(m0 * spacing());
        if (dim == 1) return std::abs(z0);
        const double z1 = min_image(m1 * spacing());
        return std::sqrt(z0 * z0 + z1 * z1);
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && n_per_axis == o.n_per_axis && length == o.length;
    }
};

}  // namespace translab
