#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "translab/field.hpp"

namespace translab {

// Named scalar function g with g(0) = 0 and an evaluable derivative,
// restricted to a small registry so that configs stay serializable.
struct GFunction {
    enum class Kind { Identity, Power };

    Kind kind = Kind::Identity;
    double scale = 1.0;
    int exponent = 1;  // Power only, >= 1

    static GFunction identity() { return GFunction{}; }
    static GFunction power(int exponent_, double scale_ = 1.0) {
        if (exponent_ < 1) throw ConfigError("g: power exponent must be >= 1");
        GFunction g;
        g.kind = Kind::Power;
        g.exponent = exponent_;
        g.scale = scale_;
        return g;
    }

    double operator()(double x) const {
        if (kind == Kind::Identity) return x;
        return scale * std::pow(x, exponent);
    }
    double derivative(double x) const {
        if (kind == Kind::Identity) return 1.0;
        return scale * exponent * std::pow(x, exponent - 1);
    }
    std::string name() const {
        if (kind == Kind::Identity) return "identity";
        return "power(" + std::to_string(exponent) + ", scale=" + std::to_string(scale) + ")";
    }
};

// prescribed analytic velocity registry (closed-form fields)
enum class PrescribedName { SolidRotation, Shear, CompressiveSine, W1pSingular };

inline std::string to_string(PrescribedName n) {
    switch (n) {
        case PrescribedName::SolidRotation: return "solid_rotation";
        case PrescribedName::Shear: return "shear";
        case PrescribedName::CompressiveSine: return "compressive_sine";
        case PrescribedName::W1pSingular: return "w1p_singular";
    }
    return "?";
}

inline PrescribedName prescribed_from_string(const std::string& s) {
    if (s == "solid_rotation") return PrescribedName::SolidRotation;
    if (s == "shear") return PrescribedName::Shear;
    if (s == "compressive_sine") return PrescribedName::CompressiveSine;
    if (s == "w1p_singular") return PrescribedName::W1pSingular;
    throw ConfigError("prescribed velocity: unknown registry name '" + s + "'");
}

// How the velocity a is obtained from the density n.
struct CouplingSpec {
    enum class Variant { Prescribed, Poisson, HamiltonJacobi, Convolution };

    Variant variant = Variant::Prescribed;

    // Prescribed
    PrescribedName name = PrescribedName::SolidRotation;
    double beta = 0.5;  // w1p_singular cusp exponent, in (0,1)

    // Poisson / HamiltonJacobi
    GFunction g;
    double alpha = 0.0;
    double fp_tol = 1e-10;
    int fp_maxiter = 200;

    // Convolution: one kernel field per velocity component
    std::vector<ScalarField> kernels;

    static CouplingSpec prescribed(PrescribedName n, double beta_ = 0.5) {
        CouplingSpec c;
        c.variant = Variant::Prescribed;
        c.name = n;
        c.beta = beta_;
        if (n == PrescribedName::W1pSingular && !(beta_ > 0.0 && beta_ < 1.0))
            throw ConfigError("coupling: w1p_singular beta must lie in (0,1)");
        return c;
    }
    static CouplingSpec poisson(GFunction g_) {
        CouplingSpec c;
        c.variant = Variant::Poisson;
        c.g = g_;
        c.check_g();
        return c;
    }
    static CouplingSpec hamilton_jacobi(GFunction g_, double alpha_, double fp_tol_ = 1e-10,
                                        int fp_maxiter_ = 200) {
        if (alpha_ < 0.0) throw ConfigError("coupling: alpha must be >= 0");
        if (!(fp_tol_ > 0.0)) throw ConfigError("coupling: fp_tol must be positive");
        if (fp_maxiter_ < 1) throw ConfigError("coupling: fp_maxiter must be >= 1");
        CouplingSpec c;
        c.variant = Variant::HamiltonJacobi;
        c.g = g_;
        c.alpha = alpha_;
        c.fp_tol = fp_tol_;
        c.fp_maxiter = fp_maxiter_;
        c.check_g();
        return c;
    }
    static CouplingSpec convolution(std::vector<ScalarField> kernels_) {
        if (kernels_.empty()) throw ConfigError("coupling: convolution needs kernel components");
        CouplingSpec c;
        c.variant = Variant::Convolution;
        c.kernels = std::move(kernels_);
        return c;
    }

    void check_g() const {
        if (std::abs(g(0.0)) > 0.0) throw ConfigError("coupling: g(0) must be 0");
    }
};

}  // namespace translab
