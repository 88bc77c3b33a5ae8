#ifndef MLOSIM_RNG_HPP
#define MLOSIM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "mlosim/time.hpp"

namespace mlosim {

std::uint64_t splitmix64(std::uint64_t& state);

/// Combines words into one seed by chaining splitmix64. Order-sensitive,
/// so (master, bss, purpose) and (master, purpose, bss) differ.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words);

std::uint64_t fnv1a64(std::string_view text);

enum class StreamPurpose : std::uint64_t { Traffic = 1, Backoff = 2 };

/// One independent draw stream. Streams are keyed by
/// (master seed, BSS name hash, purpose), so a BSS's sequence never
/// depends on which other BSSs exist in the scenario.
class RngStream {
  public:
    RngStream() : RngStream(0, 0, StreamPurpose::Traffic) {}
    RngStream(std::uint64_t master_seed, std::uint64_t entity_key, StreamPurpose purpose)
        : engine_(mix_seed({master_seed, entity_key, static_cast<std::uint64_t>(purpose)})) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in (0, 1]; never returns 0, so log() stays finite.
    double next_unit_open_zero() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

/// Uniform integer in [0, cw] inclusive, consuming exactly one draw.
/// Exact (mask) when cw+1 is a power of two, which covers every standard
/// contention window; multiply-shift otherwise.
std::uint32_t draw_backoff(RngStream& rng, std::uint32_t cw);

/// Exponential interarrival gap with mean 1/rate seconds, floored to
/// ticks and clamped to at least one tick. Consumes exactly one draw.
/// Requires rate > 0.
Ticks exponential_interarrival(RngStream& rng, double rate_per_second);

/// Seed for one (sweep point, replication) run, derived from the master
/// seed so any single run can be reproduced in isolation.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t point_index,
                              std::uint64_t replication_index);

}  // namespace mlosim

#endif
