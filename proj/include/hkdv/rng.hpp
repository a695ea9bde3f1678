#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hkdv {

/// Named generator "mt19937_64": engine seeded with seed XOR (stream * 0x9E3779B97F4A7C15).
///
/// Uniform and normal variates are derived by hand so that output does not depend on the
/// standard library's distribution implementations.
class rng {
public:
    static constexpr const char* algorithm = "mt19937_64/u53/box-muller";

    explicit rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(seed ^ (stream * 0x9E3779B97F4A7C15ULL)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace hkdv
