#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "translab/coupling.hpp"
#include "translab/flux.hpp"
#include "translab/grid.hpp"

namespace translab {

using Json = nlohmann::json;

struct InitialData {
    enum class Kind { GaussianBump, Indicator, BandLimitedRandom, Custom };

    Kind kind = Kind::GaussianBump;
    std::vector<double> center;                     // GaussianBump
    double width = 1.0;                             // GaussianBump
    double amplitude = 1.0;                         // GaussianBump / BandLimitedRandom
    std::vector<std::array<double, 2>> box;         // Indicator, one [lo,hi) per axis
    std::uint64_t seed = 0;                         // BandLimitedRandom
    int max_mode = 4;                               // BandLimitedRandom
    std::vector<double> values;                     // Custom
};

// Full description of one simulation. Immutable value data; everything the
// run produces is a deterministic function of this struct.
struct SimConfig {
    Grid grid;
    FluxFunction flux;
    CouplingSpec coupling;
    double epsilon = 0.0;  // the PDE uses epsilon^2 * Laplacian
    double t_final = 1.0;
    double cfl_factor = 0.3;
    InitialData initial_data;
    int output_every = 1;

    void validate() const {
        grid.validate();
        if (epsilon < 0.0) throw ConfigError("config: epsilon must be >= 0");
        if (t_final < 0.0) throw ConfigError("config: t_final must be >= 0");
        if (!(cfl_factor > 0.0 && cfl_factor <= 1.0))
            throw ConfigError("config: cfl_factor must lie in (0,1]");
        if (output_every < 1) throw ConfigError("config: output_every must be >= 1");
        switch (initial_data.kind) {
            case InitialData::Kind::GaussianBump:
                if (static_cast<int>(initial_data.center.size()) != grid.dim)
                    throw ConfigError("config: gaussian center size must match dim");
                if (!(initial_data.width > 0.0)) throw ConfigError("config: width must be > 0");
                if (initial_data.amplitude < 0.0)
                    throw ConfigError("config: initial density must be nonnegative");
                break;
            case InitialData::Kind::Indicator:
                if (static_cast<int>(initial_data.box.size()) != grid.dim)
                    throw ConfigError("config: indicator box size must match dim");
                for (const auto& b : initial_data.box)
                    if (!(b[0] < b[1])) throw ConfigError("config: indicator box lo < hi required");
                break;
            case InitialData::Kind::BandLimitedRandom:
                if (initial_data.max_mode < 1 || initial_data.max_mode >= grid.n_per_axis / 2)
                    throw ConfigError("config: max_mode must lie in [1, n_per_axis/2)");
                if (initial_data.amplitude < 0.0)
                    throw ConfigError("config: initial density must be nonnegative");
                break;
            case InitialData::Kind::Custom:
                if (static_cast<std::int64_t>(initial_data.values.size()) != grid.cell_count())
                    throw ConfigError("config: custom values size must match grid");
                for (double v : initial_data.values)
                    if (!(v >= 0.0) || !std::isfinite(v))
                        throw ConfigError("config: initial density must be nonnegative and finite");
                break;
        }
        if (coupling.variant == CouplingSpec::Variant::Convolution) {
            if (static_cast<int>(coupling.kernels.size()) != grid.dim)
                throw ConfigError("config: convolution needs one kernel per axis");
            for (const auto& k : coupling.kernels)
                if (!(k.grid == grid)) throw ConfigError("config: convolution kernel grid mismatch");
        }
    }

    bool inviscid() const { return epsilon == 0.0; }
};

namespace detail {

inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                                const std::string& context) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in " + context);
    }
}

template <typename T>
T get_required(const Json& j, const char* key, const std::string& context) {
    if (!j.contains(key)) throw ConfigError("config: missing key '" + std::string(key) + "' in " + context);
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError("config: bad value for key '" + std::string(key) + "' in " + context);
    }
}

}  // namespace detail

inline Json to_json(const GFunction& g) {
    Json j;
    if (g.kind == GFunction::Kind::Identity) {
        j["kind"] = "identity";
    } else {
        j["kind"] = "power";
        j["exponent"] = g.exponent;
        j["scale"] = g.scale;
    }
    return j;
}

inline GFunction g_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config: g must be an object");
    const auto kind = detail::get_required<std::string>(j, "kind", "g");
    if (kind == "identity") {
        detail::reject_unknown_keys(j, {"kind"}, "g");
        return GFunction::identity();
    }
    if (kind == "power") {
        detail::reject_unknown_keys(j, {"kind", "exponent", "scale"}, "g");
        return GFunction::power(detail::get_required<int>(j, "exponent", "g"),
                                j.contains("scale") ? j.at("scale").get<double>() : 1.0);
    }
    throw ConfigError("config: unknown g kind '" + kind + "'");
}

inline Json to_json(const SimConfig& c) {
    Json j;
    j["grid"] = {{"dim", c.grid.dim}, {"n_per_axis", c.grid.n_per_axis}, {"length", c.grid.length}};
    Json flux;
    switch (c.flux.kind) {
        case FluxFunction::Kind::Identity:
            flux["kind"] = "identity";
            break;
        case FluxFunction::Kind::Logistic:
            flux["kind"] = "logistic";
            flux["nbar"] = c.flux.nbar;
            break;
        case FluxFunction::Kind::Tabulated: {
            flux["kind"] = "tabulated";
            Json samples = Json::array();
            for (const auto& [x, y] : c.flux.samples) samples.push_back({x, y});
            flux["samples"] = samples;
            break;
        }
    }
    j["flux"] = flux;
    Json coup;
    switch (c.coupling.variant) {
        case CouplingSpec::Variant::Prescribed:
            coup["variant"] = "prescribed";
            coup["name"] = to_string(c.coupling.name);
            if (c.coupling.name == PrescribedName::W1pSingular) coup["beta"] = c.coupling.beta;
            break;
        case CouplingSpec::Variant::Poisson:
            coup["variant"] = "poisson";
            coup["g"] = to_json(c.coupling.g);
            break;
        case CouplingSpec::Variant::HamiltonJacobi:
            coup["variant"] = "hamilton_jacobi";
            coup["g"] = to_json(c.coupling.g);
            coup["alpha"] = c.coupling.alpha;
            coup["fp_tol"] = c.coupling.fp_tol;
            coup["fp_maxiter"] = c.coupling.fp_maxiter;
            break;
        case CouplingSpec::Variant::Convolution: {
            coup["variant"] = "convolution";
            Json kernels = Json::array();
            for (const auto& k : c.coupling.kernels) kernels.push_back(k.values);
            coup["kernels"] = kernels;
            break;
        }
    }
    j["coupling"] = coup;
    j["epsilon"] = c.epsilon;
    j["t_final"] = c.t_final;
    j["cfl_factor"] = c.cfl_factor;
    Json init;
    switch (c.initial_data.kind) {
        case InitialData::Kind::GaussianBump:
            init["kind"] = "gaussian_bump";
            init["center"] = c.initial_data.center;
            init["width"] = c.initial_data.width;
            init["amplitude"] = c.initial_data.amplitude;
            break;
        case InitialData::Kind::Indicator: {
            init["kind"] = "indicator";
            Json box = Json::array();
            for (const auto& b : c.initial_data.box) box.push_back({b[0], b[1]});
            init["box"] = box;
            break;
        }
        case InitialData::Kind::BandLimitedRandom:
            init["kind"] = "band_limited_random";
            init["seed"] = c.initial_data.seed;
            init["max_mode"] = c.initial_data.max_mode;
            init["amplitude"] = c.initial_data.amplitude;
            break;
        case InitialData::Kind::Custom:
            init["kind"] = "custom";
            init["values"] = c.initial_data.values;
            break;
    }
    j["initial_data"] = init;
    j["output_every"] = c.output_every;
    return j;
}

inline SimConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config: document root must be an object");
    detail::reject_unknown_keys(j,
                                {"grid", "flux", "coupling", "epsilon", "t_final", "cfl_factor",
                                 "initial_data", "output_every"},
                                "config");
    SimConfig c;

    const Json& jg = j.contains("grid") ? j.at("grid") : throw ConfigError("config: missing key 'grid' in config");
    detail::reject_unknown_keys(jg, {"dim", "n_per_axis", "length"}, "grid");
    c.grid = Grid(detail::get_required<int>(jg, "dim", "grid"),
                  detail::get_required<int>(jg, "n_per_axis", "grid"),
                  detail::get_required<double>(jg, "length", "grid"));

    const Json& jf = detail::get_required<Json>(j, "flux", "config");
    const auto fkind = detail::get_required<std::string>(jf, "kind", "flux");
    if (fkind == "identity") {
        detail::reject_unknown_keys(jf, {"kind"}, "flux");
        c.flux = FluxFunction::identity();
    } else if (fkind == "logistic") {
        detail::reject_unknown_keys(jf, {"kind", "nbar"}, "flux");
        c.flux = FluxFunction::logistic(detail::get_required<double>(jf, "nbar", "flux"));
    } else if (fkind == "tabulated") {
        detail::reject_unknown_keys(jf, {"kind", "samples"}, "flux");
        std::vector<std::pair<double, double>> samples;
        for (const auto& s : detail::get_required<Json>(jf, "samples", "flux"))
            samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
        c.flux = FluxFunction::tabulated(std::move(samples));
    } else {
        throw ConfigError("config: unknown flux kind '" + fkind + "'");
    }

    const Json& jc = detail::get_required<Json>(j, "coupling", "config");
    const auto variant = detail::get_required<std::string>(jc, "variant", "coupling");
    if (variant == "prescribed") {
        detail::reject_unknown_keys(jc, {"variant", "name", "beta"}, "coupling");
        const auto name = prescribed_from_string(detail::get_required<std::string>(jc, "name", "coupling"));
        c.coupling = CouplingSpec::prescribed(
            name, jc.contains("beta") ? jc.at("beta").get<double>() : 0.5);
    } else if (variant == "poisson") {
        detail::reject_unknown_keys(jc, {"variant", "g"}, "coupling");
        c.coupling = CouplingSpec::poisson(g_from_json(detail::get_required<Json>(jc, "g", "coupling")));
    } else if (variant == "hamilton_jacobi") {
        detail::reject_unknown_keys(jc, {"variant", "g", "alpha", "fp_tol", "fp_maxiter"}, "coupling");
        c.coupling = CouplingSpec::hamilton_jacobi(
            g_from_json(detail::get_required<Json>(jc, "g", "coupling")),
            detail::get_required<double>(jc, "alpha", "coupling"),
            jc.contains("fp_tol") ? jc.at("fp_tol").get<double>() : 1e-10,
            jc.contains("fp_maxiter") ? jc.at("fp_maxiter").get<int>() : 200);
    } else if (variant == "convolution") {
        detail::reject_unknown_keys(jc, {"variant", "kernels"}, "coupling");
        std::vector<ScalarField> kernels;
        for (const auto& arr : detail::get_required<Json>(jc, "kernels", "coupling"))
            kernels.emplace_back(c.grid, arr.get<std::vector<double>>());
        c.coupling = CouplingSpec::convolution(std::move(kernels));
    } else {
        throw ConfigError("config: unknown coupling variant '" + variant + "'");
    }

    c.epsilon = detail::get_required<double>(j, "epsilon", "config");
    c.t_final = detail::get_required<double>(j, "t_final", "config");
    c.cfl_factor = detail::get_required<double>(j, "cfl_factor", "config");
    c.output_every = detail::get_required<int>(j, "output_every", "config");

    const Json& ji = detail::get_required<Json>(j, "initial_data", "config");
    const auto ikind = detail::get_required<std::string>(ji, "kind", "initial_data");
    if (ikind == "gaussian_bump") {
        detail::reject_unknown_keys(ji, {"kind", "center", "width", "amplitude"}, "initial_data");
        c.initial_data.kind = InitialData::Kind::GaussianBump;
        c.initial_data.center = detail::get_required<std::vector<double>>(ji, "center", "initial_data");
        c.initial_data.width = detail::get_required<double>(ji, "width", "initial_data");
        c.initial_data.amplitude = detail::get_required<double>(ji, "amplitude", "initial_data");
    } else if (ikind == "indicator") {
        detail::reject_unknown_keys(ji, {"kind", "box"}, "initial_data");
        c.initial_data.kind = InitialData::Kind::Indicator;
        for (const auto& b : detail::get_required<Json>(ji, "box", "initial_data"))
            c.initial_data.box.push_back({b.at(0).get<double>(), b.at(1).get<double>()});
    } else if (ikind == "band_limited_random") {
        detail::reject_unknown_keys(ji, {"kind", "seed", "max_mode", "amplitude"}, "initial_data");
        c.initial_data.kind = InitialData::Kind::BandLimitedRandom;
        c.initial_data.seed = detail::get_required<std::uint64_t>(ji, "seed", "initial_data");
        c.initial_data.max_mode = detail::get_required<int>(ji, "max_mode", "initial_data");
        c.initial_data.amplitude = detail::get_required<double>(ji, "amplitude", "initial_data");
    } else if (ikind == "custom") {
        detail::reject_unknown_keys(ji, {"kind", "values"}, "initial_data");
        c.initial_data.kind = InitialData::Kind::Custom;
        c.initial_data.values = detail::get_required<std::vector<double>>(ji, "values", "initial_data");
    } else {
        throw ConfigError("config: unknown initial_data kind '" + ikind + "'");
    }

    c.validate();
    return c;
}

inline std::uint64_t config_hash(const SimConfig& c) { return fnv1a_hash(to_json(c).dump()); }

}  // namespace translab
