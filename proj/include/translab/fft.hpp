#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "translab/field.hpp"

namespace translab {

using Complex = std::complex<double>;

namespace detail {

// Iterative radix-2 Cooley-Tukey. Grids are power-of-two by invariant.
inline void fft_inplace(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // one table of n/2 roots of unity serves every stage
    static thread_local std::vector<Complex> table;
    static thread_local std::size_t table_n = 0;
    if (table_n != n) {
        table.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / n;
            table[k] = Complex(std::cos(ang), std::sin(ang));
        }
        table_n = n;
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                Complex w = table[j * stride];
                if (inverse) w = std::conj(w);
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

inline void fft_2d_inplace(std::vector<Complex>& a, int n, bool inverse) {
    std::vector<Complex> buf(n);
    for (int r = 0; r < n; ++r) {
        std::copy(a.begin() + static_cast<std::size_t>(r) * n,
                  a.begin() + static_cast<std::size_t>(r + 1) * n, buf.begin());
        fft_inplace(buf, inverse);
        std::copy(buf.begin(), buf.end(), a.begin() + static_cast<std::size_t>(r) * n);
    }
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) buf[r] = a[static_cast<std::size_t>(r) * n + c];
        fft_inplace(buf, inverse);
        for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r) * n + c] = buf[r];
    }
}

}  // namespace detail

// Unnormalized DFT of the samples; inverse applies the 1/N^d factor.
inline std::vector<Complex> forward_fft(const ScalarField& f) {
    std::vector<Complex> sp(f.values.begin(), f.values.end());
    if (f.grid.dim == 1)
        detail::fft_inplace(sp, false);
    else
        detail::fft_2d_inplace(sp, f.grid.n_per_axis, false);
    return sp;
}

inline ScalarField inverse_fft_real(std::vector<Complex> sp, const Grid& g) {
    if (g.dim == 1)
        detail::fft_inplace(sp, true);
    else
        detail::fft_2d_inplace(sp, g.n_per_axis, true);
    ScalarField out(g);
    for (std::size_t i = 0; i < sp.size(); ++i) out.values[i] = sp[i].real();
    return out;
}

// signed integer mode index for DFT bin m
inline int freq_index(int m, int n) { return m <= n / 2 ? m : m - n; }

// angular wavenumber of bin m; the Nyquist bin maps to 0 for odd-order
// (derivative) multipliers so that derivatives of real fields stay real
inline double angular_freq(int m, int n, double length, bool zero_nyquist) {
    const int k = freq_index(m, n);
    if (zero_nyquist && m == n / 2) return 0.0;
    return 2.0 * std::numbers::pi * k / length;
}

inline ScalarField spectral_derivative(const ScalarField& f, int axis) {
    const Grid& g = f.grid;
    const int n = g.n_per_axis;
    auto sp = forward_fft(f);
    if (g.dim == 1) {
        for (int m = 0; m < n; ++m) sp[m] *= Complex(0.0, angular_freq(m, n, g.length, true));
    } else {
        for (int m0 = 0; m0 < n; ++m0)
            for (int m1 = 0; m1 < n; ++m1) {
                const int m = axis == 0 ? m0 : m1;
                sp[static_cast<std::size_t>(m0) * n + m1] *=
                    Complex(0.0, angular_freq(m, n, g.length, true));
            }
    }
    return inverse_fft_real(std::move(sp), g);
}

inline ScalarField spectral_laplacian(const ScalarField& f) {
    const Grid& g = f.grid;
    const int n = g.n_per_axis;
    auto sp = forward_fft(f);
    if (g.dim == 1) {
        for (int m = 0; m < n; ++m) {
            const double k = angular_freq(m, n, g.length, false);
            sp[m] *= -k * k;
        }
    } else {
        for (int m0 = 0; m0 < n; ++m0)
            for (int m1 = 0; m1 < n; ++m1) {
                const double k0 = angular_freq(m0, n, g.length, false);
                const double k1 = angular_freq(m1, n, g.length, false);
                sp[static_cast<std::size_t>(m0) * n + m1] *= -(k0 * k0 + k1 * k1);
            }
    }
    return inverse_fft_real(std::move(sp), g);
}

// phi with -Lap(phi) = rhs - <rhs> and zero mean (phi_hat(0) = 0)
inline ScalarField solve_neg_laplacian(const ScalarField& rhs) {
    const Grid& g = rhs.grid;
    const int n = g.n_per_axis;
    auto sp = forward_fft(rhs);
    if (g.dim == 1) {
        sp[0] = 0.0;
        for (int m = 1; m < n; ++m) {
            const double k = angular_freq(m, n, g.length, false);
            sp[m] /= k * k;
        }
    } else {
        for (int m0 = 0; m0 < n; ++m0)
            for (int m1 = 0; m1 < n; ++m1) {
                auto& c = sp[static_cast<std::size_t>(m0) * n + m1];
                if (m0 == 0 && m1 == 0) {
                    c = 0.0;
                    continue;
                }
                const double k0 = angular_freq(m0, n, g.length, false);
                const double k1 = angular_freq(m1, n, g.length, false);
                c /= k0 * k0 + k1 * k1;
            }
    }
    return inverse_fft_real(std::move(sp), g);
}

inline VelocityField spectral_gradient(const ScalarField& phi) {
    VelocityField out(phi.grid);
    for (int k = 0; k < phi.grid.dim; ++k) out.components[k] = spectral_derivative(phi, k).values;
    return out;
}

inline ScalarField spectral_divergence(const VelocityField& a) {
    ScalarField out(a.grid);
    for (int k = 0; k < a.grid.dim; ++k) {
        ScalarField comp(a.grid, a.components[k]);
        ScalarField d = spectral_derivative(comp, k);
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += d.values[i];
    }
    return out;
}

// periodic Riemann-sum convolution (K*u)(x) = sum_y K(x-y) u(y) dx^d
inline ScalarField spectral_convolution(const ScalarField& kernel, const ScalarField& u) {
    if (!(kernel.grid == u.grid)) throw ConfigError("convolution: grid mismatch");
    auto ks = forward_fft(kernel);
    auto us = forward_fft(u);
    for (std::size_t i = 0; i < ks.size(); ++i) ks[i] *= us[i];
    ScalarField out = inverse_fft_real(std::move(ks), u.grid);
    const double w = u.grid.cell_volume();
    for (auto& v : out.values) v *= w;
    return out;
}

inline double field_mean(const ScalarField& f) {
    KahanSum s;
    for (double v : f.values) s.add(v);
    return s.value() / static_cast<double>(f.values.size());
}

}  // namespace translab
