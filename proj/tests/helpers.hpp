#pragma once

#include <random>

#include "translab/field.hpp"

namespace translab::testing {

// signed band-limited random field, deterministic per seed
inline ScalarField band_limited(const Grid& g, std::uint64_t seed, int max_mode,
                                double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ScalarField out(g);
    const double w = 2.0 * std::numbers::pi / g.length;
    if (g.dim == 1) {
        for (int k = 1; k <= max_mode; ++k) {
            const double a = unit(rng), b = unit(rng);
            for (int i = 0; i < g.n_per_axis; ++i) {
                const double t = w * k * g.position(i);
                out(i) += amplitude * (a * std::cos(t) + b * std::sin(t));
            }
        }
    } else {
        for (int k0 = 0; k0 <= max_mode; ++k0)
            for (int k1 = -max_mode; k1 <= max_mode; ++k1) {
                if (k0 == 0 && k1 <= 0) continue;
                const double a = unit(rng), b = unit(rng);
                for (int i0 = 0; i0 < g.n_per_axis; ++i0)
                    for (int i1 = 0; i1 < g.n_per_axis; ++i1) {
                        const double t = w * (k0 * g.position(i0) + k1 * g.position(i1));
                        out(i0, i1) += amplitude * (a * std::cos(t) + b * std::sin(t));
                    }
            }
    }
    return out;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace translab::testing
