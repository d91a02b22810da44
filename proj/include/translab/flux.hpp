#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "translab/common.hpp"

namespace translab {

// Nonlinearity f of the transport flux a*f(n). f(0) = 0 always.
// Logistic is f(x) = x(1 - x/nbar) on (0, nbar), clamped to 0 outside
// (positive-part form); its derivative at the nbar kink is one-sided (left).
struct FluxFunction {
    enum class Kind { Identity, Logistic, Tabulated };

    Kind kind = Kind::Identity;
    double nbar = 1.0;                                  // Logistic only
    std::vector<std::pair<double, double>> samples;    // Tabulated only, sorted by xi
    double lipschitz = 1.0;

    static FluxFunction identity() {
        FluxFunction f;
        f.kind = Kind::Identity;
        f.lipschitz = 1.0;
        return f;
    }

    static FluxFunction logistic(double nbar_) {
        if (!(nbar_ > 0.0)) throw ConfigError("flux: logistic nbar must be positive");
        FluxFunction f;
        f.kind = Kind::Logistic;
        f.nbar = nbar_;
        f.lipschitz = 1.0;  // sup |1 - 2x/nbar| over [0, nbar]
        return f;
    }

    static FluxFunction tabulated(std::vector<std::pair<double, double>> samples_) {
        if (samples_.size() < 2) throw ConfigError("flux: tabulated needs at least 2 samples");
        if (!std::is_sorted(samples_.begin(), samples_.end(),
                            [](const auto& a, const auto& b) { return a.first < b.first; }))
            throw ConfigError("flux: tabulated samples must be sorted by xi");
        for (std::size_t i = 1; i < samples_.size(); ++i)
            if (!(samples_[i].first > samples_[i - 1].first))
                throw ConfigError("flux: tabulated samples must have distinct xi");
        FluxFunction f;
        f.kind = Kind::Tabulated;
        f.samples = std::move(samples_);
        if (f.samples.front().first > 0.0 || f.samples.back().first < 0.0)
            throw ConfigError("flux: tabulated range must contain 0");
        double lip = 0.0;
        for (std::size_t i = 1; i < f.samples.size(); ++i) {
            const double slope = (f.samples[i].second - f.samples[i - 1].second) /
                                 (f.samples[i].first - f.samples[i - 1].first);
            lip = std::max(lip, std::abs(slope));
        }
        f.lipschitz = lip;
        if (std::abs(f.interp(0.0)) > 1e-12)
            throw ConfigError("flux: tabulated f(0) must be 0");
        return f;
    }

    double interp(double xi) const {
        const std::size_t seg = segment(xi);
        const auto& [x0, y0] = samples[seg];
        const auto& [x1, y1] = samples[seg + 1];
        return y0 + (y1 - y0) * (xi - x0) / (x1 - x0);
    }

    std::size_t segment(double xi) const {
        if (xi < samples.front().first || xi > samples.back().first)
            throw ConfigError("flux: tabulated evaluation outside sampled range");
        auto it = std::upper_bound(samples.begin(), samples.end(), xi,
                                   [](double v, const auto& s) { return v < s.first; });
        std::size_t i = static_cast<std::size_t>(it - samples.begin());
        if (i == samples.size()) --i;   // xi at the right endpoint: last segment
        return i == 0 ? 0 : i - 1;
    }
};

inline double eval_flux(const FluxFunction& f, double xi) {
    switch (f.kind) {
        case FluxFunction::Kind::Identity:
            return xi;
        case FluxFunction::Kind::Logistic:
            if (xi <= 0.0 || xi >= f.nbar) return 0.0;
            return xi * (1.0 - xi / f.nbar);
        case FluxFunction::Kind::Tabulated:
            return f.interp(xi);
    }
    return 0.0;
}

inline double eval_flux_derivative(const FluxFunction& f, double xi) {
    switch (f.kind) {
        case FluxFunction::Kind::Identity:
            return 1.0;
        case FluxFunction::Kind::Logistic:
            if (xi < 0.0 || xi > f.nbar) return 0.0;
            // left derivative at the nbar kink, inner derivative at 0
            return 1.0 - 2.0 * xi / f.nbar;
        case FluxFunction::Kind::Tabulated: {
            const std::size_t i = f.segment(xi);
            const auto& [x0, y0] = f.samples[i];
            const auto& [x1, y1] = f.samples[i + 1];
            return (y1 - y0) / (x1 - x0);
        }
    }
    return 0.0;
}

}  // namespace translab
