#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "translab/scenario.hpp"
#include "translab/solver.hpp"

using namespace translab;

TEST_CASE("cfl_dt arithmetic") {
    Grid g(1, 64, 6.4);  // dx = 0.1
    VelocityField a(g);
    for (auto& v : a.components[0]) v = 2.0;
    CHECK(cfl_dt(a, FluxFunction::identity(), 0.0, g, 0.5) == Catch::Approx(0.025));

    // no transport, no diffusion: tiny-guard cap, clamped to dt_max
    VelocityField zero(g);
    CHECK(cfl_dt(zero, FluxFunction::identity(), 0.0, g, 0.5, 1.0) == 1.0);
    CHECK(cfl_dt(zero, FluxFunction::identity(), 0.0, g, 0.5, 0.25) == 0.25);

    // viscous limit of the min
    const double eps = 3.0;
    const double expected = 0.5 * 0.1 * 0.1 / (2.0 * eps * eps);
    CHECK(cfl_dt(zero, FluxFunction::identity(), eps, g, 0.5) == Catch::Approx(expected));
}

TEST_CASE("step with zero velocity and zero viscosity is the identity") {
    Grid g(1, 128, 8.0);
    ScalarField n = testing::band_limited(g, 61, 10);
    VelocityField a(g);
    auto [out, report] = step(n, a, FluxFunction::logistic(1.0), 0.0, 0.01);
    CHECK(out.values == n.values);  // bitwise
    CHECK(report.cfl_advective == 0.0);
}

TEST_CASE("step rejects CFL violations") {
    Grid g(1, 128, 8.0);
    ScalarField n = testing::band_limited(g, 62, 10);
    VelocityField a(g);
    for (auto& v : a.components[0]) v = 1.0;
    const double dx = g.spacing();
    CHECK_THROWS_AS(step(n, a, FluxFunction::identity(), 0.0, 2.0 * dx), NumericalError);
    CHECK_NOTHROW(step(n, a, FluxFunction::identity(), 0.0, 0.9 * dx));
    // run-policy threshold
    CHECK_THROWS_AS(step(n, a, FluxFunction::identity(), 0.0, 0.9 * dx, 0.5), NumericalError);
}

TEST_CASE("step conserves mass exactly up to roundoff") {
    Grid g(2, 32, 8.0);
    ScalarField n = testing::band_limited(g, 63, 6);
    for (auto& v : n.values) v = std::abs(v) + 0.1;
    VelocityField a(g);
    std::mt19937_64 rng(64);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (auto& c : a.components)
        for (auto& v : c) v = unit(rng);
    const double dt = cfl_dt(a, FluxFunction::logistic(1.0), 0.05, g, 0.4);
    auto [out, report] = step(n, a, FluxFunction::logistic(1.0), 0.05, dt);
    CHECK(std::abs(report.mass - mass(n)) <= 1e-12 * std::abs(mass(n)));
}

TEST_CASE("linear advection matches spectral translation at O(dx^2 + dt^2)") {
    const double c = 0.7;
    auto one_step_error = [&](int N) {
        Grid g(1, N, 8.0);
        ScalarField n(g);
        for (int i = 0; i < N; ++i) {
            const double z = g.min_image(g.position(i) - 4.0);
            n(i) = std::exp(-z * z);
        }
        VelocityField a(g);
        for (auto& v : a.components[0]) v = c;
        const double dt = 0.5 * g.spacing() / c;
        auto [out, report] = step(n, a, FluxFunction::identity(), 0.0, dt);
        // oracle: exact translation via a spectral phase shift
        auto sp = forward_fft(n);
        for (int m = 0; m < N; ++m) {
            const double k = angular_freq(m, N, g.length, true);
            sp[m] *= std::exp(Complex(0.0, -k * c * dt));
        }
        ScalarField exact = inverse_fft_real(std::move(sp), g);
        KahanSum err;
        for (int i = 0; i < N; ++i) {
            const double d = out(i) - exact(i);
            err.add(d * d);
        }
        return std::sqrt(err.value() * g.cell_volume());
    };
    const double e1 = one_step_error(128);
    const double e2 = one_step_error(256);
    const double e3 = one_step_error(512);
    CHECK(e1 / e2 >= 3.0);  // both dx and dt halve; the dt*dx product term quarters
    CHECK(e2 / e3 >= 3.0);
    CHECK(e1 <= 1e-2);
}

TEST_CASE("run with t_final = 0 returns the initial field alone") {
    SimConfig c = scenario("swarm_poisson");
    c.t_final = 0.0;
    RunResult r = run(c);
    CHECK(r.snapshots.size() == 1);
    CHECK(r.snapshot_times == std::vector<double>{0.0});
    CHECK(r.diag.reports.empty());
    ScalarField n0 = initial_field(c);
    CHECK(r.snapshots[0].values == n0.values);
}

TEST_CASE("run is deterministic") {
    SimConfig c = scenario("swarm_poisson");
    c.t_final = 0.1;
    RunResult r1 = run(c);
    RunResult r2 = run(c);
    REQUIRE(r1.snapshots.size() == r2.snapshots.size());
    for (std::size_t i = 0; i < r1.snapshots.size(); ++i)
        CHECK(r1.snapshots[i].values == r2.snapshots[i].values);  // bitwise
}

TEST_CASE("run lands exactly on requested snapshot times") {
    SimConfig c = scenario("swarm_poisson");
    c.t_final = 0.3;
    RunResult r = run(c, {0.1, 0.25});
    CHECK(std::count(r.snapshot_times.begin(), r.snapshot_times.end(), 0.1) == 1);
    CHECK(std::count(r.snapshot_times.begin(), r.snapshot_times.end(), 0.25) == 1);
    CHECK(r.snapshot_times.back() == 0.3);
}

TEST_CASE("nonnegativity is preserved under CFL") {
    SimConfig c = scenario("shock_1d");
    c.t_final = 0.5;
    RunResult r = run(c);
    const double floor = -1e-12 * linf_norm(initial_field(c));
    for (const auto& rep : r.diag.reports) CHECK(rep.min_value >= floor);
}

TEST_CASE("per-step maximum-principle envelope") {
    SimConfig c = scenario("swarm_poisson");
    c.t_final = 0.25;
    RunResult r = run(c);
    double prev = linf_norm(initial_field(c));
    for (std::size_t m = 0; m < r.diag.reports.size(); ++m) {
        const double envelope =
            prev * (1.0 + r.diag.reports[m].dt * r.diag.sup_div[m] * c.flux.lipschitz) + 1e-12;
        CHECK(r.diag.reports[m].linf <= envelope);
        prev = r.diag.reports[m].linf;
    }
}

TEST_CASE("gronwall envelope from the run's own recorded sup norms") {
    SimConfig c = scenario("swarm_poisson");
    c.t_final = 0.5;
    RunResult r = run(c);
    const double linf0 = linf_norm(initial_field(c));
    double sup_g = 0.0;
    for (double v : r.diag.sup_g) sup_g = std::max(sup_g, v);
    const double growth_rate = c.flux.lipschitz * sup_g;
    for (std::size_t m = 0; m < r.diag.reports.size(); ++m) {
        const double bound = std::exp(growth_rate * r.diag.times[m]) * linf0 * (1.0 + 1e-9);
        CHECK(r.diag.reports[m].linf <= bound);
    }
}

TEST_CASE("discrete energy estimate") {
    SimConfig c = scenario("swarm_poisson");
    c.t_final = 0.5;
    RunResult r = run(c);
    double sup_div = 0.0;
    for (double v : r.diag.sup_div) sup_div = std::max(sup_div, v);
    KahanSum lhs, l2_time;
    for (std::size_t m = 0; m < r.diag.reports.size(); ++m) {
        lhs.add(r.diag.reports[m].dt * r.diag.grad_l2_sq[m]);
        l2_time.add(r.diag.reports[m].dt * r.diag.l2_sq[m]);
    }
    const double left = c.epsilon * c.epsilon * lhs.value();
    const double right = r.diag.l2_sq.front() + 0.5 * sup_div * l2_time.value();
    CHECK(left <= 1.05 * right);
}

TEST_CASE("smaller epsilon pairs differ less than the largest epsilon pair") {
    SimConfig base = scenario("swarm_poisson");
    base.t_final = 0.4;
    auto final_state = [&](double eps) {
        SimConfig c = base;
        c.epsilon = eps;
        return run(c).snapshots.back();
    };
    ScalarField n1 = final_state(0.1);
    ScalarField n2 = final_state(0.05);
    ScalarField n3 = final_state(0.025);
    CHECK(l1_distance(n2, n3) < l1_distance(n1, n2));
}

TEST_CASE("exact discrete conservation over full runs") {
    for (const auto& name : {"swarm_poisson", "shock_1d"}) {
        SimConfig c = scenario(name);
        c.t_final = 0.5;
        RunResult r = run(c);
        const double m0 = mass(initial_field(c));
        CHECK(std::abs(r.diag.reports.back().mass - m0) <= 1e-11 * std::abs(m0));
    }
}
