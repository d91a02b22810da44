#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "translab/fft.hpp"

using namespace translab;

namespace {

// quadratic DFT oracle
std::vector<Complex> naive_dft(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) / n;
            s += v[j] * Complex(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

}  // namespace

TEST_CASE("fft matches the naive DFT oracle") {
    Grid g(1, 64, 8.0);
    ScalarField u = testing::band_limited(g, 3, 20);
    auto fast = forward_fft(u);
    auto slow = naive_dft(u.values);
    for (std::size_t k = 0; k < fast.size(); ++k)
        CHECK(std::abs(fast[k] - slow[k]) <= 1e-10 * (1.0 + std::abs(slow[k])));
}

TEST_CASE("fft round trip is the identity") {
    Grid g(2, 16, 8.0);
    ScalarField u = testing::band_limited(g, 5, 4);
    ScalarField back = inverse_fft_real(forward_fft(u), g);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        CHECK(back.values[i] == Catch::Approx(u.values[i]).margin(1e-12));
}

TEST_CASE("spectral derivative is exact on single modes") {
    Grid g(1, 128, 8.0);
    const double k = 2.0 * std::numbers::pi * 3 / g.length;
    ScalarField u(g);
    for (int i = 0; i < g.n_per_axis; ++i) u(i) = std::sin(k * g.position(i));
    ScalarField du = spectral_derivative(u, 0);
    for (int i = 0; i < g.n_per_axis; ++i)
        CHECK(du(i) == Catch::Approx(k * std::cos(k * g.position(i))).margin(1e-11));
}

TEST_CASE("poisson inverse and laplacian are inverse to each other") {
    Grid g(2, 32, 8.0);
    ScalarField rhs = testing::band_limited(g, 11, 6);
    const double mean = field_mean(rhs);
    for (auto& v : rhs.values) v -= mean;
    ScalarField phi = solve_neg_laplacian(rhs);
    CHECK(std::abs(field_mean(phi)) <= 1e-13);
    ScalarField lap = spectral_laplacian(phi);
    for (std::size_t i = 0; i < rhs.values.size(); ++i)
        CHECK(lap.values[i] == Catch::Approx(-rhs.values[i]).margin(1e-11));
}

TEST_CASE("spectral convolution matches the direct periodic sum") {
    Grid g(1, 32, 8.0);
    ScalarField kern = testing::band_limited(g, 21, 9);
    ScalarField u = testing::band_limited(g, 22, 9);
    ScalarField conv = spectral_convolution(kern, u);
    for (int i = 0; i < g.n_per_axis; ++i) {
        KahanSum s;
        for (int j = 0; j < g.n_per_axis; ++j)
            s.add(kern.values[g.wrap(i - j)] * u.values[j]);
        CHECK(conv(i) == Catch::Approx(s.value() * g.spacing()).margin(1e-12));
    }
    Grid mismatched(1, 64, 8.0);
    CHECK_THROWS_AS(spectral_convolution(ScalarField(mismatched), u), ConfigError);
}
