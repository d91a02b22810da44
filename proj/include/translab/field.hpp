#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "translab/grid.hpp"

namespace translab {

// Scalar sample field (the density n and friends). Plain value type.
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.cell_count()), fill) {}
    ScalarField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        validate();
    }

    void validate() const {
        if (static_cast<std::int64_t>(values.size()) != grid.cell_count())
            throw ConfigError("scalar field: value count does not match grid");
        for (double v : values)
            if (!std::isfinite(v)) throw ConfigError("scalar field: non-finite value");
    }

    double& operator()(int i0, int i1 = 0) { return values[grid.index(i0, i1)]; }
    double operator()(int i0, int i1 = 0) const { return values[grid.index(i0, i1)]; }
    std::size_t size() const { return values.size(); }
};

// Velocity field a with grid.dim components sampled at the same nodes.
struct VelocityField {
    Grid grid;
    std::vector<std::vector<double>> components;  // components[k][idx]

    VelocityField() = default;
    explicit VelocityField(const Grid& g)
        : grid(g),
          components(g.dim, std::vector<double>(static_cast<std::size_t>(g.cell_count()), 0.0)) {}

    void validate() const {
        if (static_cast<int>(components.size()) != grid.dim)
            throw ConfigError("velocity field: component count does not match grid dim");
        for (const auto& c : components) {
            if (static_cast<std::int64_t>(c.size()) != grid.cell_count())
                throw ConfigError("velocity field: value count does not match grid");
            for (double v : c)
                if (!std::isfinite(v)) throw ConfigError("velocity field: non-finite value");
        }
    }

    // max over cells and components of |a_k|
    double max_abs() const {
        double m = 0.0;
        for (const auto& c : components)
            for (double v : c) m = std::max(m, std::abs(v));
        return m;
    }
};

inline double mass(const ScalarField& f) {
    KahanSum s;
    for (double v : f.values) s.add(v);
    return s.value() * f.grid.cell_volume();
}

inline double linf_norm(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline double min_value(const ScalarField& f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

inline double l1_distance(const ScalarField& a, const ScalarField& b) {
    KahanSum s;
    for (std::size_t i = 0; i < a.values.size(); ++i) s.add(std::abs(a.values[i] - b.values[i]));
    return s.value() * a.grid.cell_volume();
}

inline double l2_norm_sq(const ScalarField& f) {
    KahanSum s;
    for (double v : f.values) s.add(v * v);
    return s.value() * f.grid.cell_volume();
}

inline double lp_norm(const ScalarField& f, double p) {
    KahanSum s;
    for (double v : f.values) s.add(std::pow(std::abs(v), p));
    return std::pow(s.value() * f.grid.cell_volume(), 1.0 / p);
}

}  // namespace translab
