#pragma once

#include <cstdint>
#include <random>

namespace tempsde {

/// SplitMix64 finaliser (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of substream `index` under `master_seed`. Distinct indices give
/// decorrelated mt19937_64 initial states.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Deterministic standard-normal source for one Monte Carlo path.
///
/// Uniforms take the top 53 bits of std::mt19937_64 (whose output sequence
/// is fixed by the C++ standard). Normals come from the Marsaglia polar
/// method, returning the second variate of each accepted pair on the next
/// call. Nothing here depends on the standard library's unspecified
/// distribution algorithms, so streams are identical across platforms.
class PathRng {
public:
    PathRng(std::uint64_t master_seed, std::uint64_t index)
        : engine_(substream_seed(master_seed, index)) {}

    /// Uniform on [0, 1).
    double uniform() noexcept {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() noexcept;

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace tempsde
