#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tlh2 {

/**
 * Seedable Gaussian/uniform sample stream with a portable draw sequence.
 *
 * mt19937_64 output is fixed by the standard; std::normal_distribution is
 * implementation-defined, so normals are produced here by Box-Muller with
 * exactly two 64-bit draws per sample. Identical seeds give identical
 * streams on every platform.
 */
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal sample; consumes two uniforms.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace tlh2
