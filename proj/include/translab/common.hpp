#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace translab {

// Invalid configuration, bad input files, out-of-contract arguments.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Runtime numerical failures (CFL violation, fixed-point divergence, ...).
// Carries the simulation time at which the failure occurred when known.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double time = std::nan(""))
        : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }
    bool has_time() const { return !std::isnan(time_); }

private:
    double time_;
};

// An O(N^2) oracle was asked to run above its configured size cap.
class SizeError : public std::runtime_error {
public:
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

// Requested structural information is not available for this coupling.
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Compensated (Kahan) accumulator for long reductions in the oracles.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// FNV-1a, used to stamp artifacts with the config they came from.
inline std::uint64_t fnv1a_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// C-infinity bump transition: 1 for t <= lo, 0 for t >= hi.
inline double smooth_cutoff(double t, double lo, double hi) {
    if (t <= lo) return 1.0;
    if (t >= hi) return 0.0;
    const double s = (t - lo) / (hi - lo);
    const double a = std::exp(-1.0 / (1.0 - s));
    const double b = std::exp(-1.0 / s);
    return a / (a + b);
}

inline double smooth_cutoff_derivative(double t, double lo, double hi) {
    if (t <= lo || t >= hi) return 0.0;
    const double s = (t - lo) / (hi - lo);
    const double a = std::exp(-1.0 / (1.0 - s));
    const double b = std::exp(-1.0 / s);
    const double da = -a / ((1.0 - s) * (1.0 - s));
    const double db = b / (s * s);
    return (da * b - a * db) / ((a + b) * (a + b)) / (hi - lo);
}

}  // namespace translab
