#include "mlosim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mlosim {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
    std::uint64_t state = 0x6d6c6f73696d0001ULL;
    std::uint64_t out = 0;
    for (std::uint64_t w : words) {
        state ^= w;
        out = splitmix64(state);
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint32_t draw_backoff(RngStream& rng, std::uint32_t cw) {
    const std::uint64_t n = static_cast<std::uint64_t>(cw) + 1;
    const std::uint64_t r = rng.next_u64();
    if ((n & (n - 1)) == 0) {
        return static_cast<std::uint32_t>(r & (n - 1));
    }
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(r) * n) >> 64);
}

Ticks exponential_interarrival(RngStream& rng, double rate_per_second) {
    if (!(rate_per_second > 0.0)) {
        throw std::invalid_argument("arrival rate must be positive");
    }
    const double gap_seconds = -std::log(rng.next_unit_open_zero()) / rate_per_second;
    const double gap_ticks = std::floor(gap_seconds * static_cast<double>(kTicksPerSecond));
    if (gap_ticks < 1.0) return 1;
    return static_cast<Ticks>(gap_ticks);
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t point_index,
                              std::uint64_t replication_index) {
    return mix_seed({master_seed, 0x73776565702e7074ULL, point_index, replication_index});
}

}  // namespace mlosim
