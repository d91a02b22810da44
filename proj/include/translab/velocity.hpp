#pragma once

#include "translab/coupling.hpp"
#include "translab/fft.hpp"
#include "translab/prescribed.hpp"

namespace translab {

struct PoissonSolveReport {
    double mean_subtracted = 0.0;  // spatial mean of g(n), removed for torus solvability
    double residual_linf = 0.0;    // || Lap(phi) + (g(n) - mean) ||_inf, recomputed spectrally
};

// a = grad(phi) with -Lap(phi) = g(n) - <g(n)> in the zero-mean gauge, so the
// spectral identity div a = -(g(n) - <g(n)>) holds on resolved modes.
inline std::pair<VelocityField, PoissonSolveReport> poisson_velocity(const ScalarField& n,
                                                                     const GFunction& g) {
    ScalarField rhs(n.grid);
    for (std::size_t i = 0; i < n.values.size(); ++i) rhs.values[i] = g(n.values[i]);
    const double mean = field_mean(rhs);
    for (auto& v : rhs.values) v -= mean;

    ScalarField phi = solve_neg_laplacian(rhs);
    VelocityField a = spectral_gradient(phi);

    ScalarField lap = spectral_laplacian(phi);
    double resid = 0.0;
    for (std::size_t i = 0; i < lap.values.size(); ++i)
        resid = std::max(resid, std::abs(lap.values[i] + rhs.values[i]));
    return {std::move(a), PoissonSolveReport{mean, resid}};
}

struct HJSolveResult {
    VelocityField a;
    ScalarField phi;
    int iterations = 0;
    std::vector<double> step_changes;  // successive L-inf change per fixed-point update
    double residual_linf = 0.0;        // || -Lap(phi) + alpha|grad phi|^2 - (g(n) - m*) ||_inf
    double mean_subtracted = 0.0;      // m* = <g(n) - alpha |grad phi|^2>
};

// Picard iteration phi^{m+1} = (-Lap)^{-1} P0[ g(n) - alpha |grad phi^m|^2 ],
// started from the Poisson solution. Stops once the successive L-inf change
// drops to fp_tol; failure to converge raises a NumericalError carrying the
// last change (alpha too large for this density).
inline HJSolveResult hj_velocity(const ScalarField& n, const GFunction& g, double alpha,
                                 double fp_tol, int fp_maxiter) {
    if (alpha < 0.0) throw ConfigError("hj_velocity: alpha must be >= 0");
    ScalarField base(n.grid);
    for (std::size_t i = 0; i < n.values.size(); ++i) base.values[i] = g(n.values[i]);

    auto solve_with = [&](const std::vector<double>& gradsq) {
        ScalarField rhs = base;
        for (std::size_t i = 0; i < rhs.values.size(); ++i) rhs.values[i] -= alpha * gradsq[i];
        const double mean = field_mean(rhs);
        for (auto& v : rhs.values) v -= mean;
        return std::pair<ScalarField, double>(solve_neg_laplacian(rhs), mean);
    };

    auto grad_sq = [&](const ScalarField& phi) {
        VelocityField grad = spectral_gradient(phi);
        std::vector<double> out(phi.values.size(), 0.0);
        for (int k = 0; k < phi.grid.dim; ++k)
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] += grad.components[k][i] * grad.components[k][i];
        return out;
    };

    HJSolveResult result;
    ScalarField phi = solve_with(std::vector<double>(n.values.size(), 0.0)).first;
    bool converged = false;
    for (int m = 1; m <= fp_maxiter; ++m) {
        auto [phi_next, mean] = solve_with(grad_sq(phi));
        double change = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < phi.values.size(); ++i) {
            const double d = std::abs(phi_next.values[i] - phi.values[i]);
            finite = finite && std::isfinite(d);
            change = std::max(change, d);
        }
        if (!finite)
            throw NumericalError("hj_velocity: fixed point blew up at iteration " +
                                 std::to_string(m) + " (alpha too large for this density)");
        result.step_changes.push_back(change);
        phi = std::move(phi_next);
        result.iterations = m;
        if (change <= fp_tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalError("hj_velocity: fixed point did not converge within " +
                             std::to_string(fp_maxiter) + " iterations (last change " +
                             std::to_string(result.step_changes.back()) + ")");

    const auto gradsq = grad_sq(phi);
    ScalarField lap = spectral_laplacian(phi);
    KahanSum mstar;  // gauge constant of the returned iterate
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        mstar.add(base.values[i] - alpha * gradsq[i]);
    const double mean_star = mstar.value() / static_cast<double>(phi.values.size());
    double resid = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        resid = std::max(resid, std::abs(-lap.values[i] + alpha * gradsq[i] -
                                         (base.values[i] - mean_star)));
    result.residual_linf = resid;
    result.mean_subtracted = mean_star;
    result.a = spectral_gradient(phi);
    result.phi = std::move(phi);
    return result;
}

// a_k = K_k * n by FFT with periodic wraparound
inline VelocityField convolution_velocity(const ScalarField& n,
                                          const std::vector<ScalarField>& kernel_components) {
    if (static_cast<int>(kernel_components.size()) != n.grid.dim)
        throw ConfigError("convolution_velocity: need one kernel per axis");
    VelocityField a(n.grid);
    for (int k = 0; k < n.grid.dim; ++k) {
        if (!(kernel_components[k].grid == n.grid))
            throw ConfigError("convolution_velocity: kernel grid mismatch");
        a.components[k] = spectral_convolution(kernel_components[k], n).values;
    }
    return a;
}

// The centered-difference divergence shared by the scheme (via face averages)
// and the entropy-residual operator.
inline ScalarField centered_divergence(const VelocityField& a) {
    const Grid& g = a.grid;
    const int n = g.n_per_axis;
    const double inv2dx = 1.0 / (2.0 * g.spacing());
    ScalarField out(g);
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i)
            out(i) = (a.components[0][g.wrap(i + 1)] - a.components[0][g.wrap(i - 1)]) * inv2dx;
    } else {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                out(i0, i1) =
                    (a.components[0][g.index(g.wrap(i0 + 1), i1)] -
                     a.components[0][g.index(g.wrap(i0 - 1), i1)]) *
                        inv2dx +
                    (a.components[1][g.index(i0, g.wrap(i1 + 1))] -
                     a.components[1][g.index(i0, g.wrap(i1 - 1))]) *
                        inv2dx;
    }
    return out;
}

inline ScalarField centered_laplacian(const ScalarField& f) {
    const Grid& g = f.grid;
    const int n = g.n_per_axis;
    const double inv_dx2 = 1.0 / (g.spacing() * g.spacing());
    ScalarField out(g);
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i)
            out(i) = (f.values[g.wrap(i + 1)] - 2.0 * f.values[i] + f.values[g.wrap(i - 1)]) *
                     inv_dx2;
    } else {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                out(i0, i1) = (f.values[g.index(g.wrap(i0 + 1), i1)] +
                               f.values[g.index(g.wrap(i0 - 1), i1)] +
                               f.values[g.index(i0, g.wrap(i1 + 1))] +
                               f.values[g.index(i0, g.wrap(i1 - 1))] -
                               4.0 * f.values[g.index(i0, i1)]) *
                              inv_dx2;
    }
    return out;
}

// velocity for a coupling at density n (prescribed fields take the time)
inline VelocityField coupling_velocity(const CouplingSpec& coupling, const ScalarField& n,
                                       double t) {
    switch (coupling.variant) {
        case CouplingSpec::Variant::Prescribed:
            return prescribed_velocity(coupling.name, t, n.grid, coupling.beta);
        case CouplingSpec::Variant::Poisson:
            return poisson_velocity(n, coupling.g).first;
        case CouplingSpec::Variant::HamiltonJacobi:
            return hj_velocity(n, coupling.g, coupling.alpha, coupling.fp_tol, coupling.fp_maxiter).a;
        case CouplingSpec::Variant::Convolution:
            return convolution_velocity(n, coupling.kernels);
    }
    throw ConfigError("coupling_velocity: unknown variant");
}

}  // namespace translab
