#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lpvdd {

/// Seeded random number generator with a fixed, platform-independent algorithm.
///
/// std::mt19937_64 is bit-exact by the standard, but the standard
/// distributions are not. Uniform and normal variates are therefore derived
/// here directly from the raw 64-bit stream (53-bit mantissa scaling and
/// Box-Muller), so that a given seed produces the same sequence everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; draws come in cached pairs.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Uniform integer on [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int k = static_cast<int>(uniform01() * span);
        if (k >= span) k = span - 1;
        return lo + k;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lpvdd
