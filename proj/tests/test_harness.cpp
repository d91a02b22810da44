#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "translab/scenario.hpp"
#include "translab/sweep.hpp"

using namespace translab;

namespace {

SweepSpec tiny_sweep() {
    SweepSpec spec;
    spec.base = scenario("swarm_poisson");
    spec.base.grid = Grid(1, 128, 8.0);
    spec.base.t_final = 0.2;
    spec.epsilon_list = {0.04, 0.08};
    spec.h_list = {1.0 / 16, 1.0 / 64, 1.0 / 256};
    spec.p = 1;
    spec.snapshot_times = {0.1, 0.2};
    spec.levels = 64;
    return spec;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("sweep spec validation") {
    SweepSpec s = tiny_sweep();
    CHECK_NOTHROW(s.validate());

    s = tiny_sweep();
    s.epsilon_list = {0.1, 0.0};
    CHECK_THROWS_AS(s.validate(), ConfigError);  // viscous bound checks need eps > 0

    s = tiny_sweep();
    s.h_list = {1.0 / 64, 1.0 / 16, 1.0 / 256};
    CHECK_THROWS_AS(s.validate(), ConfigError);

    s = tiny_sweep();
    s.snapshot_times = {0.1, 0.5};  // past t_final
    CHECK_THROWS_AS(s.validate(), ConfigError);

    s = tiny_sweep();
    s.p = 3;
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("linear transport sweep: lhs growth stays sub-exponential") {
    // divergence-free prescribed coupling uses the d = div a, r = 0 fallback
    SweepSpec spec;
    spec.base = scenario("linear_rotation");
    spec.base.grid = Grid(2, 128, 8.0);
    spec.base.epsilon = 0.05;
    spec.base.t_final = 1.0;
    spec.epsilon_list = {0.05};
    spec.h_list = {1.0 / 16, 1.0 / 64, 1.0 / 256};
    spec.p = 1;
    spec.snapshot_times = {0.25, 0.5, 0.75, 1.0};
    spec.levels = 64;
    BoundReport report = run_sweep(spec);
    CHECK(!report.infeasible);
    for (const auto& row : report.rows) {
        CHECK(row.d_term <= 1e-6);  // divergence-free: the fallback d is spectrally zero
        CHECK(std::log(std::max(row.lhs, 1e-300)) - std::log(row.q0) <=
              report.fitted_c * row.t + 0.1);
    }
}

TEST_CASE("sweep JSON round trip and strictness") {
    SweepSpec s = tiny_sweep();
    Json j = to_json(s);
    SweepSpec back = sweep_from_json(j);
    CHECK(to_json(back) == j);
    j["extra"] = 1;
    CHECK_THROWS_AS(sweep_from_json(j), ConfigError);
}

TEST_CASE("bound feasibility is monotone in C") {
    BoundReport report = run_sweep(tiny_sweep());
    REQUIRE(!report.rows.empty());
    const std::vector<double> cs = {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0};
    for (const auto& row : report.rows) {
        bool was_feasible = false;
        for (double c : cs) {
            const bool now = bound_row_feasible(row, c);
            if (was_feasible) CHECK(now);  // feasible set only grows with C
            was_feasible = now;
        }
    }
}

TEST_CASE("sweep report internals") {
    SweepSpec spec = tiny_sweep();
    BoundReport report = run_sweep(spec);
    CHECK(report.rows.size() == spec.epsilon_list.size() * spec.h_list.size() *
                                    spec.snapshot_times.size());
    CHECK(!report.infeasible);
    CHECK(report.feasible_fraction == 1.0);
    CHECK(report.fitted_c > 0.0);
    CHECK(report.p_bar == 2.0);
    CHECK(std::isfinite(report.w1p_check));

    // q0 is the same kernel norm the metrics module computes on n0
    ScalarField n0 = initial_field(spec.base);
    for (double h : spec.h_list) {
        TabulatedKernel tab(KernelSpec(h, 1), spec.base.grid);
        const double q0 = qnorm_fft_p1(n0, tab, spec.levels).value;
        for (const auto& row : report.rows)
            if (row.h == h) CHECK(row.q0 == Catch::Approx(q0).margin(1e-13));
    }

    // every stored rhs term is nonnegative and the dominant tag names the max
    for (const auto& row : report.rows) {
        CHECK(row.q0 >= 0.0);
        CHECK(row.d_term >= 0.0);
        CHECK(row.visc == Catch::Approx(row.epsilon * row.epsilon / (row.h * row.h)));
        CHECK(row.log_term == Catch::Approx(std::sqrt(std::abs(std::log(row.h)))));
        const double mx = std::max({row.q0, row.d_term, row.visc, row.log_term});
        if (row.dominant == "q0") CHECK(row.q0 == mx);
        if (row.dominant == "visc") CHECK(row.visc == mx);
    }

    // a stationary state keeps lhs at zero, so the fit lands on the grid floor
    SweepSpec flat = tiny_sweep();
    flat.base.initial_data.kind = InitialData::Kind::Custom;
    flat.base.initial_data.values.assign(
        static_cast<std::size_t>(flat.base.grid.cell_count()), 0.5);
    BoundReport flat_report = run_sweep(flat);
    for (const auto& row : flat_report.rows) CHECK(row.lhs <= 1e-10);
    CHECK(flat_report.fitted_c <= 1.1e-3);
}

TEST_CASE("sweep artifacts are byte-identical across worker counts") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path("harness_artifacts");
    fs::create_directories(dir);

    SweepSpec spec = tiny_sweep();
    std::vector<std::string> payloads;
    for (int workers : {1, 4}) {
        spec.workers = workers;
        BoundReport report = run_sweep(spec);
        const std::string csv = (dir / ("rows_w" + std::to_string(workers) + ".csv")).string();
        const std::string json = (dir / ("report_w" + std::to_string(workers) + ".json")).string();
        write_bound_rows_csv(csv, report);
        std::ofstream jf(json);
        jf << bound_report_json(report).dump(2) << "\n";
        jf.close();
        payloads.push_back(slurp(csv) + "\x1e" + slurp(json));
    }
    CHECK(payloads[0] == payloads[1]);
}

TEST_CASE("field and velocity io round trip") {
    namespace fs = std::filesystem;
    fs::create_directories("harness_artifacts");
    Grid g(2, 16, 8.0);
    ScalarField u(g);
    for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] = 0.01 * static_cast<double>(i);
    write_field("harness_artifacts/u.bin", u, 0.25, 42);
    ScalarField back = read_field("harness_artifacts/u.bin");
    CHECK(back.grid == g);
    CHECK(back.values == u.values);

    VelocityField a(g);
    a.components[0][3] = 1.5;
    a.components[1][7] = -2.5;
    write_velocity("harness_artifacts/a.bin", a);
    VelocityField aback = read_velocity("harness_artifacts/a.bin");
    CHECK(aback.components == a.components);

    CHECK_THROWS_AS(read_velocity("harness_artifacts/u.bin"), ConfigError);
    CHECK_THROWS_AS(read_field("harness_artifacts/a.bin"), ConfigError);
    CHECK_THROWS_AS(read_field("harness_artifacts/missing.bin"), ConfigError);
}
