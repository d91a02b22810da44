#pragma once

#include <future>

#include "translab/assumptions.hpp"
#include "translab/io.hpp"
#include "translab/qnorm.hpp"
#include "translab/solver.hpp"

namespace translab {

struct SweepSpec {
    SimConfig base;
    std::vector<double> epsilon_list;
    std::vector<double> h_list;  // strictly decreasing, in (0,1)
    int p = 1;
    std::vector<double> snapshot_times;
    int workers = 1;
    int levels = 128;    // level count for the p=1 fast norm
    double c_max = 1e3;  // fit abandons above this and marks the report infeasible

    void validate() const {
        base.validate();
        if (epsilon_list.empty()) throw ConfigError("sweep: epsilon_list must not be empty");
        for (double e : epsilon_list)
            if (!(e > 0.0)) throw ConfigError("sweep: epsilon_list must be positive");
        if (h_list.empty()) throw ConfigError("sweep: h_list must not be empty");
        for (std::size_t i = 0; i < h_list.size(); ++i) {
            if (!(h_list[i] > 0.0 && h_list[i] < 1.0))
                throw ConfigError("sweep: h values must lie in (0,1)");
            if (i > 0 && !(h_list[i] < h_list[i - 1]))
                throw ConfigError("sweep: h_list must be strictly decreasing");
        }
        if (p != 1 && p != 2) throw ConfigError("sweep: p must be 1 or 2");
        if (snapshot_times.empty()) throw ConfigError("sweep: snapshot_times must not be empty");
        for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
            if (!(snapshot_times[i] > 0.0 && snapshot_times[i] <= base.t_final))
                throw ConfigError("sweep: snapshot times must lie in (0, t_final]");
            if (i > 0 && !(snapshot_times[i] > snapshot_times[i - 1]))
                throw ConfigError("sweep: snapshot_times must be strictly increasing");
        }
        if (workers < 1) throw ConfigError("sweep: workers must be >= 1");
        if (levels < 2) throw ConfigError("sweep: levels must be >= 2");
        if (!(c_max > 0.0)) throw ConfigError("sweep: c_max must be positive");
    }
};

struct BoundRow {
    double epsilon = 0.0;
    double h = 0.0;
    double t = 0.0;
    double lhs = 0.0;       // Q_{p,h}(n_eps(t))
    double q0 = 0.0;        // same kernel norm on the initial data
    double d_term = 0.0;    // time integral of the d_eps kernel norm
    double visc = 0.0;      // eps^2 / h^2
    double log_term = 0.0;  // |log h|^{1/p_bar}
    bool feasible = false;  // under the fitted C
    std::string dominant;   // largest of the four stored rhs terms
};

struct BoundReport {
    std::vector<BoundRow> rows;
    double fitted_c = 0.0;
    bool infeasible = false;  // no C <= c_max makes every row feasible
    double feasible_fraction = 0.0;
    double p_bar = 2.0;
    double w1p_check = 0.0;  // w1p_seminorm of the initial velocity at p = 2
    int p = 1;
    std::string kernel_note =
        "single kernel supported in B(0,2) used for both the initial term and the lhs";
};

inline bool bound_row_feasible(const BoundRow& row, double c) {
    return row.lhs <=
           std::exp(c * row.t) * (row.q0 + row.d_term + c * row.visc + c * row.log_term);
}

namespace detail {

struct EpsilonTask {
    // rows in (h, t) order for one epsilon, feasibility not yet decided
    std::vector<BoundRow> rows;
    double w1p_check = 0.0;
};

inline EpsilonTask sweep_one_epsilon(const SweepSpec& spec, double epsilon) {
    SimConfig config = spec.base;
    config.epsilon = epsilon;
    RunResult run_result = run(config, spec.snapshot_times);

    // pull out the subseries at t = 0 and the requested times (hit exactly)
    std::vector<std::size_t> idx;
    idx.push_back(0);
    std::vector<double> times{0.0};
    for (double t : spec.snapshot_times) {
        bool found = false;
        for (std::size_t i = 0; i < run_result.snapshot_times.size(); ++i)
            if (run_result.snapshot_times[i] == t) {
                idx.push_back(i);
                times.push_back(t);
                found = true;
                break;
            }
        if (!found) throw NumericalError("sweep: run did not reach snapshot time", t);
    }

    EpsilonTask task;
    task.w1p_check = w1p_seminorm(run_result.snapshot_velocities.front(), 2.0);

    const Grid& g = config.grid;
    auto qnorm_at = [&](const ScalarField& u, const TabulatedKernel& tab) {
        return spec.p == 2 ? qnorm_fft_p2(u, tab) : qnorm_fft_p1(u, tab, spec.levels).value;
    };

    // structural d part where the coupling provides it; otherwise fall back
    // to d = div a, r = 0 (prescribed/convolution couplings)
    const bool structural = config.coupling.variant == CouplingSpec::Variant::Poisson ||
                            config.coupling.variant == CouplingSpec::Variant::HamiltonJacobi;
    std::vector<ScalarField> d_fields(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        d_fields[j] = structural
                          ? divergence_split(run_result.snapshot_velocities[idx[j]],
                                             run_result.snapshots[idx[j]], config.coupling)
                                .d_part
                          : spectral_divergence(run_result.snapshot_velocities[idx[j]]);

    for (double h : spec.h_list) {
        TabulatedKernel tab(KernelSpec(h, g.dim), g);
        const double q0 = qnorm_at(run_result.snapshots[idx[0]], tab);
        // kernel norms of the d part at every quadrature node
        std::vector<double> d_norm(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) d_norm[j] = qnorm_at(d_fields[j], tab);
        const double logh = std::abs(std::log(h));
        for (std::size_t k = 1; k < idx.size(); ++k) {
            BoundRow row;
            row.epsilon = epsilon;
            row.h = h;
            row.t = times[k];
            row.lhs = qnorm_at(run_result.snapshots[idx[k]], tab);
            row.q0 = q0;
            KahanSum dint;  // left-endpoint quadrature of the d_eps kernel norm
            for (std::size_t j = 0; j + 1 <= k; ++j)
                dint.add((times[j + 1] - times[j]) * d_norm[j]);
            row.d_term = dint.value();
            row.visc = epsilon * epsilon / (h * h);
            row.log_term = std::pow(logh, 0.5);  // p_bar = 2 for these couplings
            const double terms[4] = {row.q0, row.d_term, row.visc, row.log_term};
            const char* names[4] = {"q0", "d_term", "visc", "log_term"};
            int best = 0;
            for (int i = 1; i < 4; ++i)
                if (terms[i] > terms[best]) best = i;
            row.dominant = names[best];
            task.rows.push_back(std::move(row));
        }
    }
    return task;
}

}  // namespace detail

// One simulation per epsilon (h is a diagnostic parameter only), kernel
// norms per (h, t), then a single constant C fitted by a monotone grid scan
// plus bisection so that every row satisfies
//   lhs <= e^{C t} ( q0 + d_term + C eps^2/h^2 + C |log h|^{1/p_bar} ).
inline BoundReport run_sweep(const SweepSpec& spec) {
    spec.validate();
    BoundReport report;
    report.p = spec.p;

    std::vector<detail::EpsilonTask> tasks(spec.epsilon_list.size());
    const int workers = std::min<int>(spec.workers, static_cast<int>(spec.epsilon_list.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < spec.epsilon_list.size(); ++i)
            tasks[i] = detail::sweep_one_epsilon(spec, spec.epsilon_list[i]);
    } else {
        std::vector<std::future<detail::EpsilonTask>> futures;
        futures.reserve(spec.epsilon_list.size());
        for (std::size_t i = 0; i < spec.epsilon_list.size(); ++i)
            futures.push_back(std::async(std::launch::async, [&spec, i] {
                return detail::sweep_one_epsilon(spec, spec.epsilon_list[i]);
            }));
        for (std::size_t i = 0; i < futures.size(); ++i) tasks[i] = futures[i].get();
    }

    for (auto& task : tasks) {
        report.w1p_check = std::max(report.w1p_check, task.w1p_check);
        for (auto& row : task.rows) report.rows.push_back(std::move(row));
    }
    report.p_bar = 2.0;  // a is W^{1,p} for every p for these couplings; min(2,p) = 2

    auto all_feasible = [&](double c) {
        for (const auto& row : report.rows)
            if (!bound_row_feasible(row, c)) return false;
        return true;
    };

    // log-spaced scan for the first all-feasible C, then bisection refinement
    const double c_min = 1e-3;
    const int grid_points = 241;
    double lo = 0.0, hi = -1.0;
    double prev = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double c =
            c_min * std::pow(spec.c_max / c_min, static_cast<double>(i) / (grid_points - 1));
        if (all_feasible(c)) {
            hi = c;
            lo = prev;
            break;
        }
        prev = c;
    }
    if (hi < 0.0) {
        report.fitted_c = spec.c_max;
        report.infeasible = true;
    } else {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (all_feasible(mid))
                hi = mid;
            else
                lo = mid;
        }
        report.fitted_c = hi;
    }

    std::size_t feasible_count = 0;
    for (auto& row : report.rows) {
        row.feasible = bound_row_feasible(row, report.fitted_c);
        if (row.feasible) ++feasible_count;
    }
    report.feasible_fraction =
        report.rows.empty() ? 0.0
                            : static_cast<double>(feasible_count) / report.rows.size();
    return report;
}

inline void write_bound_rows_csv(const std::string& path, const BoundReport& report) {
    std::ofstream f(path);
    if (!f) throw ConfigError("io: cannot open '" + path + "' for writing");
    f << "epsilon,h,t,lhs,q0,d_term,visc,log_term,feasible,dominant\n";
    for (const auto& r : report.rows)
        f << detail::fmt17(r.epsilon) << ',' << detail::fmt17(r.h) << ',' << detail::fmt17(r.t)
          << ',' << detail::fmt17(r.lhs) << ',' << detail::fmt17(r.q0) << ','
          << detail::fmt17(r.d_term) << ',' << detail::fmt17(r.visc) << ','
          << detail::fmt17(r.log_term) << ',' << (r.feasible ? 1 : 0) << ',' << r.dominant
          << "\n";
}

inline Json bound_report_json(const BoundReport& report) {
    Json j;
    j["fitted_c"] = report.fitted_c;
    j["infeasible"] = report.infeasible;
    j["feasible_fraction"] = report.feasible_fraction;
    j["p"] = report.p;
    j["p_bar"] = report.p_bar;
    j["w1p_check"] = report.w1p_check;
    j["kernel_note"] = report.kernel_note;
    Json rows = Json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"epsilon", r.epsilon},
                        {"h", r.h},
                        {"t", r.t},
                        {"lhs", r.lhs},
                        {"q0", r.q0},
                        {"d_term", r.d_term},
                        {"visc", r.visc},
                        {"log_term", r.log_term},
                        {"feasible", r.feasible},
                        {"dominant", r.dominant}});
    j["rows"] = rows;
    return j;
}

inline SweepSpec sweep_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("sweep: document root must be an object");
    detail::reject_unknown_keys(j,
                                {"base", "epsilon_list", "h_list", "p", "snapshot_times",
                                 "workers", "levels", "c_max"},
                                "sweep");
    SweepSpec s;
    s.base = config_from_json(detail::get_required<Json>(j, "base", "sweep"));
    s.epsilon_list = detail::get_required<std::vector<double>>(j, "epsilon_list", "sweep");
    s.h_list = detail::get_required<std::vector<double>>(j, "h_list", "sweep");
    s.p = detail::get_required<int>(j, "p", "sweep");
    s.snapshot_times = detail::get_required<std::vector<double>>(j, "snapshot_times", "sweep");
    if (j.contains("workers")) s.workers = j.at("workers").get<int>();
    if (j.contains("levels")) s.levels = j.at("levels").get<int>();
    if (j.contains("c_max")) s.c_max = j.at("c_max").get<double>();
    s.validate();
    return s;
}

inline Json to_json(const SweepSpec& s) {
    Json j;
    j["base"] = to_json(s.base);
    j["epsilon_list"] = s.epsilon_list;
    j["h_list"] = s.h_list;
    j["p"] = s.p;
    j["snapshot_times"] = s.snapshot_times;
    j["workers"] = s.workers;
    j["levels"] = s.levels;
    j["c_max"] = s.c_max;
    return j;
}

}  // namespace translab
