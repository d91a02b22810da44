#pragma once

#include "translab/coupling.hpp"
#include "translab/field.hpp"

namespace translab {

// Closed-form velocity fields used by the linear-transport and scaling
// experiments. All registry entries are time-independent; the t argument is
// kept for interface uniformity with genuinely time-dependent couplings.
namespace prescribed {

inline constexpr double rotation_radius = 2.0;      // support of the rotation profile
inline constexpr double rotation_rate = 1.0;        // angular velocity at the core
inline constexpr double sine_amplitude = 1.0;       // compressive_sine amplitude
inline constexpr double singular_support = 1.0;     // w1p_singular support radius

// Radial angular-velocity profile: flat-free polynomial bump, C^7 at r = R,
// so sampled fields are spectrally clean at the grid sizes used here.
inline double rotation_omega(double r) {
    const double v = r / rotation_radius;
    if (v >= 1.0) return 0.0;
    const double w = 1.0 - v * v;
    const double w2 = w * w;
    const double w4 = w2 * w2;
    return rotation_rate * w4 * w4;
}

// odd-signed cusp |x-x0|^beta with a C^1 polynomial taper inside |u| <= R
inline double singular_profile(double u, double beta) {
    const double w = std::abs(u);
    if (w >= singular_support) return 0.0;
    const double v = w / singular_support;
    const double taper = (1.0 - v * v) * (1.0 - v * v);
    const double s = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    return -s * std::pow(w, beta) * taper;
}

// d/dx of singular_profile, defined away from the cusp point
inline double singular_profile_derivative(double u, double beta) {
    const double w = std::abs(u);
    if (w == 0.0 || w >= singular_support) return 0.0;
    const double R = singular_support;
    const double v = w / R;
    const double taper = (1.0 - v * v) * (1.0 - v * v);
    const double dtaper = -4.0 * v * (1.0 - v * v) / R;
    // a(u) = -sign(u) w^beta taper(w), da/du = -(beta w^{beta-1} taper + w^beta taper')
    return -(beta * std::pow(w, beta - 1.0) * taper + std::pow(w, beta) * dtaper);
}

}  // namespace prescribed

inline VelocityField prescribed_velocity(PrescribedName name, double t, const Grid& grid,
                                         double beta = 0.5) {
    (void)t;
    grid.validate();
    VelocityField a(grid);
    const int n = grid.n_per_axis;
    const double c = grid.length / 2.0;

    switch (name) {
        case PrescribedName::SolidRotation: {
            if (grid.dim != 2) throw ConfigError("solid_rotation requires dim = 2");
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1) {
                    const double x = grid.min_image(grid.position(i0) - c);
                    const double y = grid.min_image(grid.position(i1) - c);
                    const double om = prescribed::rotation_omega(std::sqrt(x * x + y * y));
                    const auto idx = grid.index(i0, i1);
                    a.components[0][idx] = -om * y;
                    a.components[1][idx] = om * x;
                }
            break;
        }
        case PrescribedName::Shear: {
            if (grid.dim != 2) throw ConfigError("shear requires dim = 2");
            const double k = 2.0 * std::numbers::pi / grid.length;
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1)
                    a.components[0][grid.index(i0, i1)] = std::sin(k * grid.position(i1));
            break;
        }
        case PrescribedName::CompressiveSine: {
            if (grid.dim != 1) throw ConfigError("compressive_sine requires dim = 1");
            const double k = 2.0 * std::numbers::pi / grid.length;
            for (int i = 0; i < n; ++i)
                a.components[0][i] = prescribed::sine_amplitude * std::sin(k * grid.position(i));
            break;
        }
        case PrescribedName::W1pSingular: {
            if (grid.dim != 1) throw ConfigError("w1p_singular requires dim = 1");
            if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("w1p_singular beta must lie in (0,1)");
            for (int i = 0; i < n; ++i)
                a.components[0][i] =
                    prescribed::singular_profile(grid.min_image(grid.position(i) - c), beta);
            break;
        }
    }
    return a;
}

}  // namespace translab
