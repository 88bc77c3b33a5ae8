#ifndef MLOSIM_TIME_HPP
#define MLOSIM_TIME_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mlosim {

// Simulation time is an unsigned integer tick count, 1 tick = 1 ns.
// Every MAC/PHY duration in the parameter set is a whole number of
// microseconds, so conversions are exact and event ordering is total.
using Ticks = std::uint64_t;

inline constexpr Ticks kTicksPerUs = 1000;
inline constexpr Ticks kTicksPerMs = 1000 * kTicksPerUs;
inline constexpr Ticks kTicksPerSecond = 1000 * kTicksPerMs;

constexpr Ticks us_to_ticks(std::uint64_t us) { return us * kTicksPerUs; }

constexpr double ticks_to_us(Ticks t) { return static_cast<double>(t) / kTicksPerUs; }
constexpr double ticks_to_ms(Ticks t) { return static_cast<double>(t) / kTicksPerMs; }
constexpr double ticks_to_seconds(Ticks t) { return static_cast<double>(t) / kTicksPerSecond; }

inline Ticks seconds_to_ticks(double seconds) {
    if (!(seconds >= 0.0) || seconds > 1e9) {
        throw std::invalid_argument("time in seconds must be in [0, 1e9]");
    }
    return static_cast<Ticks>(std::llround(seconds * static_cast<double>(kTicksPerSecond)));
}

}  // namespace mlosim

#endif
