#pragma once

#include <random>

#include "translab/sim_config.hpp"

namespace translab {

// Deterministic initial density from the config. Pure: same config, same bits.
inline ScalarField initial_field(const SimConfig& config) {
    config.validate();
    const Grid& g = config.grid;
    const InitialData& init = config.initial_data;
    ScalarField out(g);

    switch (init.kind) {
        case InitialData::Kind::GaussianBump: {
            const double w2 = init.width * init.width;
            for (int i0 = 0; i0 < g.n_per_axis; ++i0) {
                const double z0 = g.min_image(g.position(i0) - init.center[0]);
                if (g.dim == 1) {
                    out(i0) = init.amplitude * std::exp(-z0 * z0 / w2);
                } else {
                    for (int i1 = 0; i1 < g.n_per_axis; ++i1) {
                        const double z1 = g.min_image(g.position(i1) - init.center[1]);
                        out(i0, i1) = init.amplitude * std::exp(-(z0 * z0 + z1 * z1) / w2);
                    }
                }
            }
            break;
        }
        case InitialData::Kind::Indicator: {
            auto inside = [&](double x, int axis) {
                return x >= init.box[axis][0] && x < init.box[axis][1];
            };
            for (int i0 = 0; i0 < g.n_per_axis; ++i0) {
                if (g.dim == 1) {
                    out(i0) = inside(g.position(i0), 0) ? 1.0 : 0.0;
                } else {
                    for (int i1 = 0; i1 < g.n_per_axis; ++i1)
                        out(i0, i1) =
                            inside(g.position(i0), 0) && inside(g.position(i1), 1) ? 1.0 : 0.0;
                }
            }
            break;
        }
        case InitialData::Kind::BandLimitedRandom: {
            std::mt19937_64 rng(init.seed);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            ScalarField raw(g);
            const double two_pi_over_l = 2.0 * std::numbers::pi / g.length;
            if (g.dim == 1) {
                for (int k = 1; k <= init.max_mode; ++k) {
                    const double a = unit(rng), b = unit(rng);
                    for (int i = 0; i < g.n_per_axis; ++i) {
                        const double t = two_pi_over_l * k * g.position(i);
                        raw(i) += a * std::cos(t) + b * std::sin(t);
                    }
                }
            } else {
                for (int k0 = 0; k0 <= init.max_mode; ++k0)
                    for (int k1 = -init.max_mode; k1 <= init.max_mode; ++k1) {
                        if (k0 == 0 && k1 <= 0) continue;  // one representative per conjugate pair
                        const double a = unit(rng), b = unit(rng);
                        for (int i0 = 0; i0 < g.n_per_axis; ++i0)
                            for (int i1 = 0; i1 < g.n_per_axis; ++i1) {
                                const double t = two_pi_over_l *
                                                 (k0 * g.position(i0) + k1 * g.position(i1));
                                raw(i0, i1) += a * std::cos(t) + b * std::sin(t);
                            }
                    }
            }
            const double peak = linf_norm(raw);
            const double scale = peak > 0.0 ? 1.0 / peak : 0.0;
            for (std::size_t i = 0; i < out.values.size(); ++i)
                out.values[i] = 0.5 * init.amplitude * (1.0 + raw.values[i] * scale);
            break;
        }
        case InitialData::Kind::Custom:
            out.values = init.values;
            break;
    }
    return out;
}

}  // namespace translab
