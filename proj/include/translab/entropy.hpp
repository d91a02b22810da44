#pragma once

#include "translab/flux.hpp"
#include "translab/velocity.hpp"

namespace translab {

// Entropy / entropy-flux pair (phi, q) with q' = phi' f'.
//   Square:     phi(xi) = xi^2, q in closed form per flux kind, q(0) = 0.
//   Kruzkov(k): phi(xi) = |xi - k|, q(xi) = (f(xi) - f(k)) sign(xi - k).
struct EntropyPair {
    enum class Kind { Square, Kruzkov };

    Kind kind = Kind::Square;
    double k = 0.0;
    FluxFunction flux;
    std::vector<double> q_prefix;  // Tabulated square entropy: cumulative integral at samples

    static EntropyPair square(const FluxFunction& flux_) {
        EntropyPair p;
        p.kind = Kind::Square;
        p.flux = flux_;
        if (flux_.kind == FluxFunction::Kind::Tabulated) {
            p.q_prefix.resize(flux_.samples.size(), 0.0);
            for (std::size_t i = 1; i < flux_.samples.size(); ++i) {
                const auto& [x0, y0] = flux_.samples[i - 1];
                const auto& [x1, y1] = flux_.samples[i];
                const double slope = (y1 - y0) / (x1 - x0);
                p.q_prefix[i] = p.q_prefix[i - 1] + slope * (x1 * x1 - x0 * x0);
            }
            // shift so that q(0) = 0
            const double q0 = p.square_q_raw(0.0);
            for (auto& v : p.q_prefix) v -= q0;
        }
        return p;
    }

    static EntropyPair kruzkov(const FluxFunction& flux_, double k_) {
        EntropyPair p;
        p.kind = Kind::Kruzkov;
        p.flux = flux_;
        p.k = k_;
        return p;
    }

    double phi(double xi) const {
        return kind == Kind::Square ? xi * xi : std::abs(xi - k);
    }
    double dphi(double xi) const {
        if (kind == Kind::Square) return 2.0 * xi;
        return xi > k ? 1.0 : (xi < k ? -1.0 : 0.0);
    }
    double q(double xi) const {
        if (kind == Kind::Kruzkov) {
            const double s = xi > k ? 1.0 : (xi < k ? -1.0 : 0.0);
            return (eval_flux(flux, xi) - eval_flux(flux, k)) * s;
        }
        switch (flux.kind) {
            case FluxFunction::Kind::Identity:
                return xi * xi;
            case FluxFunction::Kind::Logistic: {
                // integral of 2 s (1 - 2 s / nbar) over (0, xi), constant past the clamps
                const double nb = flux.nbar;
                auto inner = [nb](double x) { return x * x - 4.0 * x * x * x / (3.0 * nb); };
                if (xi <= 0.0) return 0.0;
                if (xi >= nb) return inner(nb);
                return inner(xi);
            }
            case FluxFunction::Kind::Tabulated:
                return square_q_raw(xi);
        }
        return 0.0;
    }

private:
    double square_q_raw(double xi) const {
        const std::size_t i = flux.segment(xi);
        const auto& [x0, y0] = flux.samples[i];
        const auto& [x1, y1] = flux.samples[i + 1];
        const double slope = (y1 - y0) / (x1 - x0);
        const double base = q_prefix.empty() ? 0.0 : q_prefix[i];
        return base + slope * (xi * xi - x0 * x0);
    }
};

struct EntropyResidualSeries {
    std::vector<ScalarField> residual;   // one field per snapshot interval
    std::vector<double> positive_l1;     // ||R_+||_L1 per interval
    std::vector<double> negative_l1;     // ||R_-||_L1 per interval
};

// Discrete residual of the entropy inequality on a snapshot series:
//   R = D_t phi(n) + D_x.(a q(n)) + (phi'(n) f(n) - q(n)) div_h a - eps^2 Lap_h phi(n)
// with centered differences in space and a forward difference in time. The
// inequality direction says admissible solutions drive ||R_+|| to zero under
// refinement while shocks keep ||R_-|| bounded away from zero.
inline EntropyResidualSeries entropy_residual(const std::vector<ScalarField>& snapshots,
                                              const std::vector<VelocityField>& velocities,
                                              const std::vector<double>& times,
                                              const FluxFunction& flux, const EntropyPair& pair,
                                              double epsilon) {
    if (snapshots.size() < 2) throw ConfigError("entropy_residual: need at least two snapshots");
    if (snapshots.size() != velocities.size() || snapshots.size() != times.size())
        throw ConfigError("entropy_residual: mismatched series lengths");
    const double dt0 = times[1] - times[0];
    for (std::size_t m = 1; m + 1 < times.size(); ++m)
        if (std::abs((times[m + 1] - times[m]) - dt0) > 1e-9 * std::max(1.0, std::abs(dt0)))
            throw ConfigError("entropy_residual: snapshot spacing must be uniform");

    const Grid& g = snapshots.front().grid;
    const int N = g.n_per_axis;
    const double inv2dx = 1.0 / (2.0 * g.spacing());

    EntropyResidualSeries out;
    for (std::size_t m = 0; m + 1 < snapshots.size(); ++m) {
        const ScalarField& n = snapshots[m];
        const ScalarField& n_next = snapshots[m + 1];
        const VelocityField& a = velocities[m];
        const double dt = times[m + 1] - times[m];

        ScalarField phi_n(g), w(g);
        std::vector<std::vector<double>> aq(g.dim,
                                            std::vector<double>(n.values.size(), 0.0));
        std::vector<double> source(n.values.size());
        for (std::size_t i = 0; i < n.values.size(); ++i) {
            const double xi = n.values[i];
            phi_n.values[i] = pair.phi(xi);
            const double qv = pair.q(xi);
            for (int kx = 0; kx < g.dim; ++kx) aq[kx][i] = a.components[kx][i] * qv;
            source[i] = pair.dphi(xi) * eval_flux(flux, xi) - qv;
        }
        ScalarField diva = centered_divergence(a);
        ScalarField lap_phi = centered_laplacian(phi_n);

        ScalarField R(g);
        if (g.dim == 1) {
            for (int i = 0; i < N; ++i) {
                const double divq = (aq[0][g.wrap(i + 1)] - aq[0][g.wrap(i - 1)]) * inv2dx;
                R(i) = (pair.phi(n_next.values[i]) - phi_n.values[i]) / dt + divq +
                       source[i] * diva(i) - epsilon * epsilon * lap_phi(i);
            }
        } else {
            for (int i0 = 0; i0 < N; ++i0)
                for (int i1 = 0; i1 < N; ++i1) {
                    const std::size_t idx = g.index(i0, i1);
                    const double divq =
                        (aq[0][g.index(g.wrap(i0 + 1), i1)] - aq[0][g.index(g.wrap(i0 - 1), i1)]) *
                            inv2dx +
                        (aq[1][g.index(i0, g.wrap(i1 + 1))] - aq[1][g.index(i0, g.wrap(i1 - 1))]) *
                            inv2dx;
                    R.values[idx] = (pair.phi(n_next.values[idx]) - phi_n.values[idx]) / dt + divq +
                                    source[idx] * diva.values[idx] -
                                    epsilon * epsilon * lap_phi.values[idx];
                }
        }

        KahanSum pos, neg;
        for (double v : R.values) {
            pos.add(std::max(v, 0.0));
            neg.add(std::max(-v, 0.0));
        }
        out.positive_l1.push_back(pos.value() * g.cell_volume());
        out.negative_l1.push_back(neg.value() * g.cell_volume());
        out.residual.push_back(std::move(R));
    }
    return out;
}

}  // namespace translab
