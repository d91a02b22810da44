#pragma once

#include "translab/sim_config.hpp"

namespace translab {

inline std::vector<std::string> scenario_names() {
    return {"linear_rotation", "swarm_poisson", "chemo_hj", "shock_1d"};
}

// Desk-scale presets. linear_rotation is the inviscid linear-transport
// setting (ran with epsilon = 0, flagged as the documented Euler limit);
// the other three exercise the viscous couplings.
inline SimConfig scenario(const std::string& name) {
    SimConfig c;
    if (name == "linear_rotation") {
        c.grid = Grid(2, 128, 8.0);
        c.flux = FluxFunction::identity();
        c.coupling = CouplingSpec::prescribed(PrescribedName::SolidRotation);
        c.epsilon = 0.0;
        c.t_final = 1.0;
        c.cfl_factor = 0.3;
        c.initial_data.kind = InitialData::Kind::GaussianBump;
        c.initial_data.center = {5.0, 4.0};
        c.initial_data.width = 0.6;
        c.initial_data.amplitude = 1.0;
        c.output_every = 16;
    } else if (name == "swarm_poisson") {
        c.grid = Grid(1, 256, 8.0);
        c.flux = FluxFunction::logistic(1.0);
        c.coupling = CouplingSpec::poisson(GFunction::identity());
        c.epsilon = 0.05;
        c.t_final = 1.0;
        c.cfl_factor = 0.3;
        c.initial_data.kind = InitialData::Kind::GaussianBump;
        c.initial_data.center = {4.0};
        c.initial_data.width = 1.0;
        c.initial_data.amplitude = 0.8;
        c.output_every = 8;
    } else if (name == "chemo_hj") {
        c.grid = Grid(1, 256, 8.0);
        c.flux = FluxFunction::logistic(1.0);
        c.coupling = CouplingSpec::hamilton_jacobi(GFunction::identity(), 0.1, 1e-10, 200);
        c.epsilon = 0.05;
        c.t_final = 1.0;
        c.cfl_factor = 0.3;
        c.initial_data.kind = InitialData::Kind::GaussianBump;
        c.initial_data.center = {4.0};
        c.initial_data.width = 1.0;
        c.initial_data.amplitude = 0.8;
        c.output_every = 8;
    } else if (name == "shock_1d") {
        c.grid = Grid(1, 256, 8.0);
        c.flux = FluxFunction::logistic(1.0);
        c.coupling = CouplingSpec::prescribed(PrescribedName::CompressiveSine);
        // large enough that the viscous front is resolved on the desk grids,
        // so entropy-residual refinement studies see truncation, not the front
        c.epsilon = 0.3;
        c.t_final = 1.0;
        c.cfl_factor = 0.3;
        c.initial_data.kind = InitialData::Kind::GaussianBump;
        c.initial_data.center = {4.0};
        c.initial_data.width = 1.5;
        c.initial_data.amplitude = 0.85;
        c.output_every = 8;
    } else {
        throw ConfigError("scenario: unknown name '" + name + "'");
    }
    c.validate();
    return c;
}

}  // namespace translab
