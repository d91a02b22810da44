#pragma once

#include "translab/kernel.hpp"
#include "translab/qnorm.hpp"

namespace translab {

namespace detail {

// Displacement-grouped inner sums S(z) = sum_x (z/|z| . (a(x)-a(x+z))) |g(x)-g(x+z)|^2 dx^{2d};
// the commutator value is then sum_z K_h'(|z|) S(z) for any h.
struct CommutatorProfile {
    std::vector<double> distances;
    std::vector<double> weights;
};

inline CommutatorProfile commutator_profile(const VelocityField& a, const ScalarField& g,
                                            std::int64_t cap) {
    if (!(a.grid == g.grid)) throw ConfigError("commutator: field grid mismatch");
    check_oracle_cap(a.grid, cap, "commutator_functional");
    const Grid& grid = a.grid;
    const int n = grid.n_per_axis;
    const double w = grid.cell_volume() * grid.cell_volume();

    CommutatorProfile prof;
    if (grid.dim == 1) {
        for (int m = 1; m < n; ++m) {  // m = 0 is the diagonal; integrand vanishes there
            const double z = grid.min_image(m * grid.spacing());
            const double r = std::abs(z);
            if (r >= 2.0) continue;
            const double unit = z > 0.0 ? -1.0 : 1.0;  // z points from y to x: x - y = -m dx
            KahanSum s;
            for (int i = 0; i < n; ++i) {
                const int j = grid.wrap(i + m);
                const double dg = g.values[i] - g.values[j];
                s.add(unit * (a.components[0][i] - a.components[0][j]) * dg * dg);
            }
            prof.distances.push_back(r);
            prof.weights.push_back(s.value() * w);
        }
    } else {
        for (int m0 = 0; m0 < n; ++m0)
            for (int m1 = 0; m1 < n; ++m1) {
                if (m0 == 0 && m1 == 0) continue;
                const double z0 = -grid.min_image(m0 * grid.spacing());
                const double z1 = -grid.min_image(m1 * grid.spacing());
                const double r = std::sqrt(z0 * z0 + z1 * z1);
                if (r >= 2.0) continue;
                const double u0 = z0 / r, u1 = z1 / r;
                KahanSum s;
                for (int i0 = 0; i0 < n; ++i0)
                    for (int i1 = 0; i1 < n; ++i1) {
                        const std::size_t i = grid.index(i0, i1);
                        const std::size_t j = grid.index(grid.wrap(i0 + m0), grid.wrap(i1 + m1));
                        const double dg = g.values[i] - g.values[j];
                        s.add((u0 * (a.components[0][i] - a.components[0][j]) +
                               u1 * (a.components[1][i] - a.components[1][j])) *
                              dg * dg);
                    }
                prof.distances.push_back(r);
                prof.weights.push_back(s.value() * w);
            }
    }
    return prof;
}

}  // namespace detail

// Direct double sum of grad K_h(x-y) . (a(x)-a(y)) |g(x)-g(y)|^2 dx^{2d}
// over ordered pairs, diagonal skipped, minimal-image metric.
inline double commutator_functional(const VelocityField& a, const ScalarField& g,
                                    const KernelSpec& kernel,
                                    std::int64_t cap = default_oracle_cap) {
    const auto prof = detail::commutator_profile(a, g, cap);
    KahanSum total;
    for (std::size_t i = 0; i < prof.distances.size(); ++i)
        total.add(kernel.radial_derivative(prof.distances[i]) * prof.weights[i]);
    return total.value();
}

// the same functional across an h sweep, one O(N^2) pass shared by all h
inline std::vector<double> commutator_sweep(const VelocityField& a, const ScalarField& g,
                                            const std::vector<double>& h_list,
                                            std::int64_t cap = default_oracle_cap) {
    const auto prof = detail::commutator_profile(a, g, cap);
    std::vector<double> out;
    out.reserve(h_list.size());
    for (double h : h_list) {
        KernelSpec spec(h, a.grid.dim);
        KahanSum total;
        for (std::size_t i = 0; i < prof.distances.size(); ++i)
            total.add(spec.radial_derivative(prof.distances[i]) * prof.weights[i]);
        out.push_back(total.value());
    }
    return out;
}

// least-squares exponent q of value ~ C |log h|^q over the sweep
inline double fit_log_exponent(const std::vector<double>& h_list,
                               const std::vector<double>& values) {
    if (h_list.size() != values.size() || h_list.size() < 2)
        throw ConfigError("fit_log_exponent: need matching lists with >= 2 entries");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(h_list.size());
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        if (!(values[i] > 0.0))
            throw ConfigError("fit_log_exponent: values must be positive for a log fit");
        const double x = std::log(std::abs(std::log(h_list[i])));
        const double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace translab
