#pragma once

#include <algorithm>
#include <optional>

#include "translab/initial.hpp"
#include "translab/velocity.hpp"

namespace translab {

struct StepReport {
    double dt = 0.0;
    double mass = 0.0;       // sum n dx^d after the step
    double linf = 0.0;       // ||n||_inf after the step
    double min_value = 0.0;  // min n after the step
    double cfl_advective = 0.0;
    double cfl_viscous = 0.0;
};

inline constexpr double cfl_tiny_guard = 1e-30;

// dt = cfl * min( dx / (d max|a| Lip f), dx^2 / (2 d eps^2) ), tiny-guarded
// and clamped to dt_max when neither transport nor diffusion binds.
inline double cfl_dt(const VelocityField& a, const FluxFunction& flux, double epsilon,
                     const Grid& grid, double cfl_factor, double dt_max = 1.0) {
    const double dx = grid.spacing();
    const double adv = grid.dim * a.max_abs() * flux.lipschitz + cfl_tiny_guard;
    const double visc = 2.0 * grid.dim * epsilon * epsilon + cfl_tiny_guard;
    const double dt = cfl_factor * std::min(dx / adv, dx * dx / visc);
    return std::min(dt, dt_max);
}

namespace detail {

// Semi-discrete flux-form operator: local Lax-Friedrichs interface fluxes on
// the scalar flux xi -> a_face f(xi), face velocity averaged from the two
// adjacent cells, wave speed |a_face| Lip f, plus centered eps^2 viscosity.
inline ScalarField llf_rhs(const ScalarField& n, const VelocityField& a, const FluxFunction& flux,
                           double epsilon) {
    const Grid& g = n.grid;
    const int N = g.n_per_axis;
    const double dx = g.spacing();
    const double inv_dx = 1.0 / dx;
    const double visc = epsilon * epsilon / (dx * dx);
    const double lip = flux.lipschitz;

    std::vector<double> fv(n.values.size());
    for (std::size_t i = 0; i < n.values.size(); ++i) fv[i] = eval_flux(flux, n.values[i]);

    ScalarField rhs(g);
    auto face_flux = [&](std::size_t left, std::size_t right, int axis) {
        const double af = 0.5 * (a.components[axis][left] + a.components[axis][right]);
        const double lambda = std::abs(af) * lip;
        return 0.5 * af * (fv[left] + fv[right]) -
               0.5 * lambda * (n.values[right] - n.values[left]);
    };

    if (g.dim == 1) {
        std::vector<double> F(N);  // F[i] = flux through face between i and i+1
        for (int i = 0; i < N; ++i) F[i] = face_flux(i, g.wrap(i + 1), 0);
        for (int i = 0; i < N; ++i) {
            const double div = (F[i] - F[g.wrap(i - 1)]) * inv_dx;
            const double lap = n.values[g.wrap(i + 1)] - 2.0 * n.values[i] + n.values[g.wrap(i - 1)];
            rhs.values[i] = -div + visc * lap;
        }
    } else {
        std::vector<double> F0(n.values.size()), F1(n.values.size());
        for (int i0 = 0; i0 < N; ++i0)
            for (int i1 = 0; i1 < N; ++i1) {
                const std::size_t idx = g.index(i0, i1);
                F0[idx] = face_flux(idx, g.index(g.wrap(i0 + 1), i1), 0);
                F1[idx] = face_flux(idx, g.index(i0, g.wrap(i1 + 1)), 1);
            }
        for (int i0 = 0; i0 < N; ++i0)
            for (int i1 = 0; i1 < N; ++i1) {
                const std::size_t idx = g.index(i0, i1);
                const double div = (F0[idx] - F0[g.index(g.wrap(i0 - 1), i1)]) * inv_dx +
                                   (F1[idx] - F1[g.index(i0, g.wrap(i1 - 1))]) * inv_dx;
                const double lap = n.values[g.index(g.wrap(i0 + 1), i1)] +
                                   n.values[g.index(g.wrap(i0 - 1), i1)] +
                                   n.values[g.index(i0, g.wrap(i1 + 1))] +
                                   n.values[g.index(i0, g.wrap(i1 - 1))] - 4.0 * n.values[idx];
                rhs.values[idx] = -div + visc * lap;
            }
    }
    return rhs;
}

inline StepReport make_report(const ScalarField& n, double dt, double cfl_adv, double cfl_visc) {
    StepReport r;
    r.dt = dt;
    r.mass = mass(n);
    r.linf = linf_norm(n);
    r.min_value = min_value(n);
    r.cfl_advective = cfl_adv;
    r.cfl_viscous = cfl_visc;
    return r;
}

}  // namespace detail

// One SSP-RK2 (Heun) step with a frozen velocity field. Rejects dt violating
// the cfl_limit (1.0 when stepping outside a run's cfl_factor policy).
inline std::pair<ScalarField, StepReport> step(const ScalarField& n, const VelocityField& a,
                                               const FluxFunction& flux, double epsilon, double dt,
                                               double cfl_limit = 1.0) {
    const Grid& g = n.grid;
    const double dx = g.spacing();
    const double cfl_adv = dt * g.dim * a.max_abs() * flux.lipschitz / dx;
    const double cfl_visc = dt * 2.0 * g.dim * epsilon * epsilon / (dx * dx);
    if (cfl_adv > cfl_limit * (1.0 + 1e-12) || cfl_visc > cfl_limit * (1.0 + 1e-12))
        throw NumericalError("step: CFL violation (advective " + std::to_string(cfl_adv) +
                             ", viscous " + std::to_string(cfl_visc) + ")");

    ScalarField r1 = detail::llf_rhs(n, a, flux, epsilon);
    ScalarField u1(g);
    for (std::size_t i = 0; i < n.values.size(); ++i)
        u1.values[i] = n.values[i] + dt * r1.values[i];
    ScalarField r2 = detail::llf_rhs(u1, a, flux, epsilon);
    ScalarField out(g);
    for (std::size_t i = 0; i < n.values.size(); ++i)
        out.values[i] = 0.5 * (n.values[i] + u1.values[i] + dt * r2.values[i]);
    StepReport report = detail::make_report(out, dt, cfl_adv, cfl_visc);
    return {std::move(out), std::move(report)};
}

// Per-step series recorded along a run (left-endpoint quadrature partners of
// the forward-difference residual operator).
struct DiagnosticsSeries {
    std::vector<double> times;        // time at the END of each accepted step
    std::vector<StepReport> reports;  // one per accepted step
    std::vector<double> sup_div;      // max over RK stages of ||div_h a||_inf
    std::vector<double> l2_sq;        // ||n||_L2^2 at step start
    std::vector<double> grad_l2_sq;   // forward-difference ||grad n||_L2^2 at step start
    std::vector<double> sup_g;        // ||g(n)||_inf at step start (Poisson/HJ couplings, else 0)
};

struct RunResult {
    SimConfig config;
    std::vector<double> snapshot_times;
    std::vector<ScalarField> snapshots;
    std::vector<VelocityField> snapshot_velocities;
    DiagnosticsSeries diag;
};

namespace detail {

inline double forward_grad_l2_sq(const ScalarField& n) {
    const Grid& g = n.grid;
    const int N = g.n_per_axis;
    const double inv_dx = 1.0 / g.spacing();
    KahanSum s;
    if (g.dim == 1) {
        for (int i = 0; i < N; ++i) {
            const double d = (n.values[g.wrap(i + 1)] - n.values[i]) * inv_dx;
            s.add(d * d);
        }
    } else {
        for (int i0 = 0; i0 < N; ++i0)
            for (int i1 = 0; i1 < N; ++i1) {
                const double d0 =
                    (n.values[g.index(g.wrap(i0 + 1), i1)] - n.values[g.index(i0, i1)]) * inv_dx;
                const double d1 =
                    (n.values[g.index(i0, g.wrap(i1 + 1))] - n.values[g.index(i0, i1)]) * inv_dx;
                s.add(d0 * d0 + d1 * d1);
            }
    }
    return s.value() * g.cell_volume();
}

}  // namespace detail

struct SnapshotSeries {
    std::vector<double> times;
    std::vector<ScalarField> fields;
    std::vector<VelocityField> velocities;
};

// pull the sub-series at exactly these times out of a run's snapshots
inline SnapshotSeries snapshots_at(const RunResult& r, const std::vector<double>& times) {
    SnapshotSeries out;
    for (double t : times) {
        bool found = false;
        for (std::size_t i = 0; i < r.snapshot_times.size(); ++i)
            if (r.snapshot_times[i] == t) {
                out.times.push_back(t);
                out.fields.push_back(r.snapshots[i]);
                out.velocities.push_back(r.snapshot_velocities[i]);
                found = true;
                break;
            }
        if (!found) throw ConfigError("snapshots_at: no snapshot at the requested time");
    }
    return out;
}

// Advance to t_final, refreshing the coupling velocity every RK stage.
// Snapshots are taken at t = 0, every output_every accepted steps, at
// t_final, and at any requested extra times (dt is clamped to land on them
// exactly, so requested times are hit bit-reproducibly).
inline RunResult run(const SimConfig& config, std::vector<double> extra_snapshot_times = {}) {
    config.validate();
    RunResult result;
    result.config = config;

    const bool coupled = config.coupling.variant != CouplingSpec::Variant::Prescribed;
    const bool tracks_g = config.coupling.variant == CouplingSpec::Variant::Poisson ||
                          config.coupling.variant == CouplingSpec::Variant::HamiltonJacobi;

    std::sort(extra_snapshot_times.begin(), extra_snapshot_times.end());
    std::vector<double> required;
    for (double t : extra_snapshot_times) {
        if (t < 0.0 || t > config.t_final)
            throw ConfigError("run: requested snapshot time outside [0, t_final]");
        if (required.empty() || t > required.back()) required.push_back(t);
    }

    ScalarField n = initial_field(config);
    double t = 0.0;
    std::optional<VelocityField> frozen;  // prescribed fields are time-independent
    if (!coupled) frozen = coupling_velocity(config.coupling, n, 0.0);

    auto velocity_at = [&](const ScalarField& field, double time) -> VelocityField {
        if (frozen) return *frozen;
        try {
            return coupling_velocity(config.coupling, field, time);
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " (at t = " + std::to_string(time) + ")",
                                 time);
        }
    };

    auto record_snapshot = [&](double time, const VelocityField& a) {
        result.snapshot_times.push_back(time);
        result.snapshots.push_back(n);
        result.snapshot_velocities.push_back(a);
    };

    VelocityField a1 = velocity_at(n, 0.0);
    record_snapshot(0.0, a1);
    std::size_t next_required = 0;
    while (next_required < required.size() && required[next_required] <= 0.0) ++next_required;

    const double dx = config.grid.spacing();
    long step_count = 0;
    while (t < config.t_final && config.t_final > 0.0) {
        double dt = cfl_dt(a1, config.flux, config.epsilon, config.grid, 0.9 * config.cfl_factor);
        bool lands_on_required = false;
        double landing = 0.0;
        if (next_required < required.size() && t + dt >= required[next_required]) {
            dt = required[next_required] - t;
            lands_on_required = true;
            landing = required[next_required];
        }
        if (t + dt >= config.t_final && !lands_on_required) {
            dt = config.t_final - t;
            lands_on_required = true;
            landing = config.t_final;
        }
        if (!(dt > 0.0)) throw NumericalError("run: non-positive time step", t);

        // left-endpoint energy diagnostics
        result.diag.l2_sq.push_back(l2_norm_sq(n));
        result.diag.grad_l2_sq.push_back(detail::forward_grad_l2_sq(n));
        if (tracks_g) {
            double sg = 0.0;
            for (double v : n.values) sg = std::max(sg, std::abs(config.coupling.g(v)));
            result.diag.sup_g.push_back(sg);
        } else {
            result.diag.sup_g.push_back(0.0);
        }

        ScalarField r1 = detail::llf_rhs(n, a1, config.flux, config.epsilon);
        ScalarField u1(config.grid);
        for (std::size_t i = 0; i < n.values.size(); ++i)
            u1.values[i] = n.values[i] + dt * r1.values[i];
        VelocityField a2 = coupled ? velocity_at(u1, t + dt) : a1;
        ScalarField r2 = detail::llf_rhs(u1, a2, config.flux, config.epsilon);
        for (std::size_t i = 0; i < n.values.size(); ++i)
            n.values[i] = 0.5 * (n.values[i] + u1.values[i] + dt * r2.values[i]);

        const double max_a = std::max(a1.max_abs(), a2.max_abs());
        const double cfl_adv = dt * config.grid.dim * max_a * config.flux.lipschitz / dx;
        const double cfl_visc = dt * 2.0 * config.grid.dim * config.epsilon * config.epsilon /
                                (dx * dx);
        if (cfl_adv > config.cfl_factor * (1.0 + 1e-12) ||
            cfl_visc > config.cfl_factor * (1.0 + 1e-12))
            throw NumericalError("run: CFL violation", t);

        t = lands_on_required ? landing : t + dt;
        ++step_count;
        result.diag.times.push_back(t);
        result.diag.reports.push_back(detail::make_report(n, dt, cfl_adv, cfl_visc));
        result.diag.sup_div.push_back(
            std::max(linf_norm(centered_divergence(a1)), linf_norm(centered_divergence(a2))));

        a1 = coupled ? velocity_at(n, t) : a1;

        const bool was_required =
            next_required < required.size() && t == required[next_required];
        if (was_required) ++next_required;
        const bool at_end = t >= config.t_final;
        if (was_required || at_end || step_count % config.output_every == 0)
            record_snapshot(t, a1);
    }
    return result;
}

}  // namespace translab
