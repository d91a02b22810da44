#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "translab/qnorm.hpp"
#include "translab/quadrature.hpp"

using namespace translab;

TEST_CASE("qnorm basics: constants and shift invariance") {
    Grid g(1, 128, 8.0);
    KernelSpec k(1.0 / 16, 1);
    ScalarField c(g, 0.8);
    CHECK(qnorm_brute(c, k, 1) == 0.0);
    CHECK(qnorm_brute(c, k, 2) == 0.0);
    CHECK(std::abs(qnorm_fft_p2(c, k)) <= 1e-12);

    ScalarField u = testing::band_limited(g, 71, 9);
    ScalarField shifted = u;
    for (auto& v : shifted.values) v += 2.5;
    CHECK(qnorm_brute(shifted, k, 1) == Catch::Approx(qnorm_brute(u, k, 1)).epsilon(1e-13));
    CHECK(qnorm_brute(shifted, k, 2) == Catch::Approx(qnorm_brute(u, k, 2)).epsilon(1e-13));
}

TEST_CASE("qnorm oracle cap") {
    Grid g(1, 32768, 8.0);
    ScalarField u(g, 0.0);
    CHECK_THROWS_AS(qnorm_brute(u, KernelSpec(0.1, 1), 1), SizeError);
    CHECK_NOTHROW(qnorm_brute(u, KernelSpec(0.1, 1), 1, 1 << 16));
    CHECK_THROWS_AS(qnorm_brute(u, KernelSpec(0.1, 1), 3, 1 << 16), ConfigError);
}

TEST_CASE("half-torus indicator: independent jump-pair counting oracle") {
    Grid g(1, 64, 8.0);
    const double h = 1.0 / 16;
    KernelSpec k(h, 1);
    ScalarField u(g);
    for (int i = 0; i < 32; ++i) u(i) = 1.0;

    // two jumps; for each node distance m*dx there are m straddling pairs per
    // jump, 4m ordered pairs in total
    KahanSum oracle;
    const double dx = g.spacing();
    for (int m = 1; m <= 32; ++m) {
        const double r = g.offset_distance(m);
        if (r >= 2.0) continue;
        const double pairs = m == 32 ? 2.0 * m : 4.0 * m;  // antipodal offset counted once
        oracle.add(k.value(r) * pairs * dx * dx);
    }
    CHECK(qnorm_brute(u, k, 1) == Catch::Approx(oracle.value()).epsilon(1e-12));
}

TEST_CASE("fft p=2 path matches the brute oracle") {
    Grid g1(1, 128, 8.0);
    ScalarField u1 = testing::band_limited(g1, 72, 14);
    for (double h : {1.0 / 16, 1.0 / 64, 1.0 / 256}) {
        KernelSpec k(h, 1);
        CHECK(testing::rel_diff(qnorm_fft_p2(u1, k), qnorm_brute(u1, k, 2)) <= 1e-10);
    }
    Grid g2(2, 32, 8.0);
    ScalarField u2 = testing::band_limited(g2, 73, 5);
    KernelSpec k2(1.0 / 32, 2);
    CHECK(testing::rel_diff(qnorm_fft_p2(u2, k2), qnorm_brute(u2, k2, 2)) <= 1e-10);
}

TEST_CASE("p=2 homogeneity") {
    Grid g(1, 128, 8.0);
    ScalarField u = testing::band_limited(g, 74, 10);
    KernelSpec k(1.0 / 32, 1);
    ScalarField scaled = u;
    for (auto& v : scaled.values) v *= 3.0;
    CHECK(qnorm_fft_p2(scaled, k) == Catch::Approx(9.0 * qnorm_fft_p2(u, k)).epsilon(1e-12));
}

TEST_CASE("fft p=1 path: exact on binary fields, bounded on smooth ones") {
    Grid g(1, 128, 8.0);
    KernelSpec k(1.0 / 16, 1);
    TabulatedKernel tab(k, g);

    ScalarField ind(g);
    for (int i = 20; i < 70; ++i) ind(i) = 0.7;  // two-valued
    auto r2 = qnorm_fft_p1(ind, tab, 2);
    CHECK(testing::rel_diff(r2.value, qnorm_brute(ind, k, 1)) <= 1e-10);

    ScalarField u = testing::band_limited(g, 75, 9);
    const double exact = qnorm_brute(u, k, 1);
    double prev_bound = std::numeric_limits<double>::infinity();
    for (int levels : {16, 32, 64}) {
        auto r = qnorm_fft_p1(u, tab, levels);
        CHECK(std::abs(r.value - exact) <= r.quantization_bound);
        CHECK(r.quantization_bound < prev_bound);
        prev_bound = r.quantization_bound;
    }
    // bound scales like 1/levels
    auto r16 = qnorm_fft_p1(u, tab, 16);
    auto r64 = qnorm_fft_p1(u, tab, 64);
    CHECK(r16.quantization_bound == Catch::Approx(4.0 * r64.quantization_bound).epsilon(1e-12));

    ScalarField c(g, 1.3);
    auto rc = qnorm_fft_p1(c, tab, 8);
    CHECK(rc.value == 0.0);
    CHECK(rc.quantization_bound == 0.0);
    CHECK_THROWS_AS(qnorm_fft_p1(u, tab, 1), ConfigError);
}

TEST_CASE("kernel monotonicity: Q nondecreasing as h decreases") {
    Grid g(1, 256, 8.0);
    ScalarField u = testing::band_limited(g, 76, 12);
    double prev = 0.0;
    for (double h = 1.0 / 16; h >= 1.0 / 1024; h /= 2.0) {
        const double q = qnorm_fft_p2(u, KernelSpec(h, 1));
        CHECK(q >= prev * (1.0 - 1e-12));
        prev = q;
    }
}

TEST_CASE("translation invariance for grid-aligned shifts") {
    Grid g(1, 128, 8.0);
    ScalarField u = testing::band_limited(g, 77, 10);
    ScalarField rolled(g);
    const int shift = 37;
    for (int i = 0; i < g.n_per_axis; ++i) rolled(g.wrap(i + shift)) = u(i);
    KernelSpec k(1.0 / 64, 1);
    CHECK(qnorm_brute(rolled, k, 1) == Catch::Approx(qnorm_brute(u, k, 1)).epsilon(1e-12));
    CHECK(qnorm_fft_p2(rolled, k) == Catch::Approx(qnorm_fft_p2(u, k)).epsilon(1e-12));
}

TEST_CASE("smoothing distance: constants, the chain inequality, monotone decay") {
    Grid g(1, 128, 8.0);
    NormalizedKernel nk{KernelSpec(1.0 / 64, 1)};
    ScalarField c(g, 0.9);
    CHECK(smoothing_distance(c, nk, 2) <= 1e-15);
    CHECK(smoothing_distance(c, nk, 1) <= 1e-15);

    ScalarField u = testing::band_limited(g, 78, 10);
    for (int p : {1, 2}) {
        for (double h : {1.0 / 16, 1.0 / 64, 1.0 / 256}) {
            NormalizedKernel kh{KernelSpec(h, 1)};
            const double value = smoothing_distance(u, kh, p);
            const double q = p == 2 ? qnorm_fft_p2(u, kh.base) : qnorm_brute(u, kh.base, 1);
            const double C = smoothing_chain_constant(u, kh);
            CHECK(value <= C / std::abs(std::log(h)) * q);
        }
    }

    // smooth field: distance decays monotonically as h shrinks
    ScalarField smooth(g);
    for (int i = 0; i < g.n_per_axis; ++i) {
        const double z = g.min_image(g.position(i) - 4.0);
        smooth(i) = std::exp(-z * z);
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double h = 1.0 / 16; h >= 1.0 / 1024; h /= 2.0) {
        const double v = smoothing_distance(smooth, NormalizedKernel{KernelSpec(h, 1)}, 2);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("oscillatory Q matches the radial quadrature oracle") {
    // u = sin(x/delta): the pairwise average of |u(x)-u(y)|^2 at distance r is
    // (1 - cos(r/delta)), so Q_{2,h} = 2L * integral of K_h(r)(1 - cos(r/delta))
    Grid g(1, 4096, 8.0);
    const int mode = 52;  // delta = L / (2 pi mode) ~ 0.0245
    const double delta = g.length / (2.0 * std::numbers::pi * mode);
    ScalarField u(g);
    for (int i = 0; i < g.n_per_axis; ++i)
        u(i) = std::sin(g.position(i) / delta);
    for (double h : {1.0 / 16, 1.0 / 128}) {
        KernelSpec k(h, 1);
        const double oracle =
            2.0 * g.length *
            adaptive_simpson([&](double r) { return k.value(r) * (1.0 - std::cos(r / delta)); },
                             0.0, 2.0, 1e-11);
        CHECK(qnorm_fft_p2(u, k) == Catch::Approx(oracle).epsilon(0.05));
    }
}

TEST_CASE("compactness indicator: degenerate and error cases") {
    Grid g(1, 256, 8.0);
    std::vector<double> h_list = {1.0 / 16, 1.0 / 64, 1.0 / 256};
    auto report = compactness_indicator({ScalarField(g, 0.4)}, h_list, 2);
    for (double v : report.family.indicator) CHECK(std::abs(v) <= 1e-12);
    CHECK(report.verdict == CompactnessVerdict::CompactConsistent);

    CHECK_THROWS_AS(compactness_indicator({ScalarField(g, 0.0)}, {0.25, 0.125}, 2), ConfigError);
    CHECK_THROWS_AS(compactness_indicator({ScalarField(g, 0.0)}, {0.25, 0.5, 0.125}, 2),
                    ConfigError);
    CHECK_THROWS_AS(compactness_indicator({}, h_list, 2), ConfigError);
}

TEST_CASE("compactness verdicts discriminate translates from oscillations") {
    Grid g(1, 1024, 8.0);
    std::vector<double> h_list;
    for (int e = 4; e <= 10; ++e) h_list.push_back(std::pow(2.0, -e));

    std::vector<ScalarField> translates;
    for (int s : {0, 100, 350, 700}) {
        ScalarField u(g);
        for (int i = 0; i < g.n_per_axis; ++i) {
            const double z = g.min_image(g.position(i + s) - 4.0);
            u(i) = std::exp(-z * z);
        }
        translates.push_back(std::move(u));
    }
    auto rep_t = compactness_indicator(translates, h_list, 2);
    CHECK(rep_t.verdict == CompactnessVerdict::CompactConsistent);

    Grid gf(1, 4096, 8.0);  // fine enough to carry sin(x/h) at the smallest h
    std::vector<ScalarField> oscillations;
    for (double h : h_list) {
        ScalarField u(gf);
        const int mode = std::max(1, static_cast<int>(std::lround(gf.length / (2.0 * std::numbers::pi * h))));
        REQUIRE(mode < gf.n_per_axis / 2);
        for (int i = 0; i < gf.n_per_axis; ++i)
            u(i) = std::sin(2.0 * std::numbers::pi * mode * gf.position(i) / gf.length);
        oscillations.push_back(std::move(u));
    }
    auto rep_o = compactness_indicator(oscillations, h_list, 2);
    CHECK(rep_o.verdict == CompactnessVerdict::NonCompactConsistent);
}
