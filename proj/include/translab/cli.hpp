#pragma once

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "translab/commutator.hpp"
#include "translab/scenario.hpp"
#include "translab/sweep.hpp"

namespace translab {

// exit codes: 0 success, 2 configuration error, 3 numerical failure
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_error = 3;

namespace detail {

inline Json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "'");
    try {
        return Json::parse(f);
    } catch (const Json::exception& e) {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
}

inline std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

inline int default_workers() {
    if (const char* env = std::getenv("TRANSLAB_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 0;  // 0 = defer to the sweep file
}

inline int cmd_run(const std::string& config_path, const std::string& out_dir) {
    SimConfig config = config_from_json(load_json_file(config_path));
    if (config.inviscid())
        std::cout << "note: epsilon = 0, inviscid Euler limit (short smooth runs only)\n";
    RunResult result = run(config);
    const std::uint64_t hash = config_hash(config);
    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%04zu.bin", i);
        write_field(join_path(out_dir, name), result.snapshots[i], result.snapshot_times[i], hash);
    }
    write_step_csv(join_path(out_dir, "steps.csv"), result.diag);
    std::cout << "run: " << result.diag.reports.size() << " steps to t = "
              << (result.snapshot_times.empty() ? 0.0 : result.snapshot_times.back()) << ", "
              << result.snapshots.size() << " snapshots, mass "
              << (result.diag.reports.empty() ? mass(result.snapshots.back())
                                              : result.diag.reports.back().mass)
              << "\n";
    return exit_ok;
}

inline int cmd_sweep(const std::string& spec_path, const std::string& out_dir, int workers_flag) {
    SweepSpec spec = sweep_from_json(load_json_file(spec_path));
    const int env_workers = default_workers();
    if (workers_flag >= 1)
        spec.workers = workers_flag;
    else if (env_workers >= 1)
        spec.workers = env_workers;
    BoundReport report = run_sweep(spec);
    write_bound_rows_csv(join_path(out_dir, "bound_rows.csv"), report);
    std::ofstream f(join_path(out_dir, "bound_report.json"));
    f << bound_report_json(report).dump(2) << "\n";
    std::cout << "sweep: " << report.rows.size() << " rows, fitted C = " << report.fitted_c
              << ", feasible fraction " << report.feasible_fraction
              << (report.infeasible ? " (infeasible at c_max)" : "") << "\n";
    return exit_ok;
}

inline int cmd_metrics(const std::string& field_path, std::vector<double> h_list, int p,
                       int levels, const std::string& out_dir) {
    ScalarField u = read_field(field_path);
    std::sort(h_list.begin(), h_list.end(), std::greater<double>());
    QSeries series;
    series.h_list = h_list;
    series.p = p;
    for (double h : h_list) {
        TabulatedKernel tab(KernelSpec(h, u.grid.dim), u.grid);
        const double q = p == 2 ? qnorm_fft_p2(u, tab) : qnorm_fft_p1(u, tab, levels).value;
        series.values.push_back(q);
        series.indicator.push_back(q / std::abs(std::log(h)));
    }
    const std::string id = std::filesystem::path(field_path).stem().string();
    write_qseries_csv(join_path(out_dir, "qseries.csv"), {series}, {id});
    std::cout << "metrics: " << h_list.size() << " h values for field '" << id << "'\n";
    return exit_ok;
}

inline int cmd_commutator(const std::string& a_path, const std::string& g_path,
                          std::vector<double> h_list, const std::string& out_dir) {
    VelocityField a = read_velocity(a_path);
    ScalarField g = read_field(g_path);
    std::sort(h_list.begin(), h_list.end(), std::greater<double>());
    const auto values = commutator_sweep(a, g, h_list);
    const std::string id = std::filesystem::path(g_path).stem().string();
    std::ofstream f(join_path(out_dir, "commutator.csv"));
    f << "h,value,value_over_log,p,field_id\n";
    for (std::size_t i = 0; i < h_list.size(); ++i)
        f << fmt17(h_list[i]) << ',' << fmt17(values[i]) << ','
          << fmt17(values[i] / std::abs(std::log(h_list[i]))) << ",2," << id << "\n";
    bool positive = true;
    for (double v : values) positive = positive && v > 0.0;
    std::cout << "commutator: " << h_list.size() << " h values";
    if (positive && h_list.size() >= 2)
        std::cout << ", fitted |log h| exponent " << fit_log_exponent(h_list, values);
    std::cout << "\n";
    return exit_ok;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"numerical laboratory for nonlinear transport with nonlocal couplings"};
    app.require_subcommand(1);

    std::string config_path, spec_path, field_path, a_path, g_path, name;
    std::string out_dir = ".";
    std::vector<double> h_list;
    int p = 2, levels = 128, workers_flag = 0;

    auto* run_cmd = app.add_subcommand("run", "run one simulation from a config JSON");
    run_cmd->add_option("config", config_path, "SimConfig JSON file")->required();
    run_cmd->add_option("--out", out_dir, "artifact directory");

    auto* sweep_cmd = app.add_subcommand("sweep", "(epsilon, h) sweep with the bound report");
    sweep_cmd->add_option("spec", spec_path, "SweepSpec JSON file")->required();
    sweep_cmd->add_option("--out", out_dir, "artifact directory");
    sweep_cmd->add_option("--workers", workers_flag, "worker threads (overrides env and the sweep file)");

    auto* metrics_cmd = app.add_subcommand("metrics", "kernel-norm series of a stored field");
    metrics_cmd->set_help_flag("--help", "print this help");  // frees -h for the kernel scale
    metrics_cmd->add_option("field", field_path, "field .bin (with .json sidecar)")->required();
    metrics_cmd->add_option("--h", h_list, "h values")->required()->delimiter(',');
    metrics_cmd->add_option("--p", p, "norm exponent (1 or 2)")->required();
    metrics_cmd->add_option("--levels", levels, "levels for the p=1 fast path");
    metrics_cmd->add_option("--out", out_dir, "artifact directory");

    auto* comm_cmd = app.add_subcommand("commutator", "commutator functional h sweep");
    comm_cmd->add_option("a", a_path, "velocity .bin (with .json sidecar)")->required();
    comm_cmd->add_option("g", g_path, "scalar field .bin (with .json sidecar)")->required();
    comm_cmd->add_option("--h-sweep", h_list, "h values")->required()->delimiter(',');
    comm_cmd->add_option("--out", out_dir, "artifact directory");

    auto* scen_cmd = app.add_subcommand("scenario", "scenario registry");
    auto* scen_list = scen_cmd->add_subcommand("list", "print registry names");
    auto* scen_dump = scen_cmd->add_subcommand("dump", "write a scenario config JSON");
    scen_dump->add_option("name", name, "registry name")->required();
    scen_dump->add_option("--out", out_dir, "artifact directory");
    scen_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        if (run_cmd->parsed()) return detail::cmd_run(config_path, out_dir);
        if (sweep_cmd->parsed()) return detail::cmd_sweep(spec_path, out_dir, workers_flag);
        if (metrics_cmd->parsed())
            return detail::cmd_metrics(field_path, h_list, p, levels, out_dir);
        if (comm_cmd->parsed()) return detail::cmd_commutator(a_path, g_path, h_list, out_dir);
        if (scen_list->parsed()) {
            for (const auto& n : scenario_names()) std::cout << n << "\n";
            return exit_ok;
        }
        if (scen_dump->parsed()) {
            SimConfig config = scenario(name);
            std::ofstream f(detail::join_path(out_dir, name + ".json"));
            f << to_json(config).dump(2) << "\n";
            std::cout << "wrote " << detail::join_path(out_dir, name + ".json") << "\n";
            return exit_ok;
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what();
        if (e.has_time()) std::cerr << " (simulation time " << e.time() << ")";
        std::cerr << "\n";
        return exit_numerical_error;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const SizeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const StructuralError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    return exit_config_error;
}

}  // namespace translab
