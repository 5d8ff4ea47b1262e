#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace relspace {

std::uint64_t splitmix64(std::uint64_t x);

// Folds the parts into one 64-bit stream seed. Order matters.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts);

// 64-bit Mersenne Twister with a bounded draw whose output is fixed by this
// code rather than by the standard library's distribution implementation.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace relspace
