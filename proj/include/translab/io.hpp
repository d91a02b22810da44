#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "translab/qnorm.hpp"
#include "translab/sim_config.hpp"
#include "translab/solver.hpp"

namespace translab {

// Snapshot dumps are flat binary little-endian float64, row-major, with a
// JSON sidecar (<file>.json) carrying grid metadata, the time stamp and the
// config hash. Velocity dumps concatenate the component planes.

namespace detail {

inline void write_doubles(const std::string& path, const std::vector<double>& v) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("io: cannot open '" + path + "' for writing");
    f.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

inline std::vector<double> read_doubles(const std::string& path, std::size_t count) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("io: cannot open '" + path + "'");
    std::vector<double> v(count);
    f.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!f) throw ConfigError("io: short read from '" + path + "'");
    return v;
}

inline Json grid_json(const Grid& g) {
    return {{"dim", g.dim}, {"n_per_axis", g.n_per_axis}, {"length", g.length}};
}

inline Grid grid_from_sidecar(const Json& j) {
    return Grid(detail::get_required<int>(j, "dim", "sidecar grid"),
                detail::get_required<int>(j, "n_per_axis", "sidecar grid"),
                detail::get_required<double>(j, "length", "sidecar grid"));
}

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_field(const std::string& path, const ScalarField& field, double time = 0.0,
                        std::uint64_t config_hash = 0) {
    detail::write_doubles(path, field.values);
    Json side;
    side["kind"] = "density";
    side["grid"] = detail::grid_json(field.grid);
    side["time"] = time;
    side["config_hash"] = config_hash;
    std::ofstream f(path + ".json");
    f << side.dump(2) << "\n";
}

inline ScalarField read_field(const std::string& path) {
    std::ifstream sf(path + ".json");
    if (!sf) throw ConfigError("io: missing sidecar '" + path + ".json'");
    Json side = Json::parse(sf);
    if (side.at("kind").get<std::string>() != "density")
        throw ConfigError("io: '" + path + "' is not a density dump");
    Grid g = detail::grid_from_sidecar(side.at("grid"));
    return ScalarField(g, detail::read_doubles(path, static_cast<std::size_t>(g.cell_count())));
}

inline void write_velocity(const std::string& path, const VelocityField& a, double time = 0.0,
                           std::uint64_t config_hash = 0) {
    std::vector<double> flat;
    for (const auto& c : a.components) flat.insert(flat.end(), c.begin(), c.end());
    detail::write_doubles(path, flat);
    Json side;
    side["kind"] = "velocity";
    side["grid"] = detail::grid_json(a.grid);
    side["time"] = time;
    side["config_hash"] = config_hash;
    std::ofstream f(path + ".json");
    f << side.dump(2) << "\n";
}

inline VelocityField read_velocity(const std::string& path) {
    std::ifstream sf(path + ".json");
    if (!sf) throw ConfigError("io: missing sidecar '" + path + ".json'");
    Json side = Json::parse(sf);
    if (side.at("kind").get<std::string>() != "velocity")
        throw ConfigError("io: '" + path + "' is not a velocity dump");
    Grid g = detail::grid_from_sidecar(side.at("grid"));
    const std::size_t n = static_cast<std::size_t>(g.cell_count());
    auto flat = detail::read_doubles(path, n * g.dim);
    VelocityField a(g);
    for (int k = 0; k < g.dim; ++k)
        std::copy(flat.begin() + k * n, flat.begin() + (k + 1) * n, a.components[k].begin());
    a.validate();
    return a;
}

inline void write_step_csv(const std::string& path, const DiagnosticsSeries& diag) {
    std::ofstream f(path);
    if (!f) throw ConfigError("io: cannot open '" + path + "' for writing");
    f << "step,time,dt,mass,linf,min_value,cfl_advective,cfl_viscous\n";
    for (std::size_t i = 0; i < diag.reports.size(); ++i) {
        const StepReport& r = diag.reports[i];
        f << i + 1 << ',' << detail::fmt17(diag.times[i]) << ',' << detail::fmt17(r.dt) << ','
          << detail::fmt17(r.mass) << ',' << detail::fmt17(r.linf) << ','
          << detail::fmt17(r.min_value) << ',' << detail::fmt17(r.cfl_advective) << ','
          << detail::fmt17(r.cfl_viscous) << "\n";
    }
}

inline void write_qseries_csv(const std::string& path, const std::vector<QSeries>& series,
                              const std::vector<std::string>& field_ids) {
    if (series.size() != field_ids.size())
        throw ConfigError("io: one field_id per series required");
    std::ofstream f(path);
    if (!f) throw ConfigError("io: cannot open '" + path + "' for writing");
    f << "h,value,value_over_log,p,field_id\n";
    for (std::size_t s = 0; s < series.size(); ++s)
        for (std::size_t i = 0; i < series[s].h_list.size(); ++i)
            f << detail::fmt17(series[s].h_list[i]) << ',' << detail::fmt17(series[s].values[i])
              << ',' << detail::fmt17(series[s].indicator[i]) << ',' << series[s].p << ','
              << field_ids[s] << "\n";
}

}  // namespace translab
