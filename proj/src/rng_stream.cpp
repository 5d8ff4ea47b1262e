#include "relspace/rng_stream.hpp"

namespace relspace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts)
{
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t part : parts)
        h = splitmix64(h ^ splitmix64(part + 0x632BE59BD9B4E019ull));
    return h;
}

// Lemire, "Fast random integer generation in an interval" (2019).
std::uint64_t RngStream::below(std::uint64_t bound)
{
    unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>(engine_()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace relspace
