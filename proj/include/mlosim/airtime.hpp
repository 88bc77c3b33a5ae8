#ifndef MLOSIM_AIRTIME_HPP
#define MLOSIM_AIRTIME_HPP

#include <cstdint>

#include "mlosim/params.hpp"
#include "mlosim/time.hpp"

namespace mlosim {

/// Data bits carried by one HE OFDM symbol:
/// subcarriers x QAM bits x coding rate x spatial streams.
/// Throws std::invalid_argument if the product is not an integer
/// (inconsistent PHY configuration).
std::uint64_t bits_per_ofdm_symbol(const PhyMacParams& p);

/// On-air time of a data PPDU carrying an A-MPDU of n_mpdu frames:
/// legacy + HE preambles, then whole OFDM symbols covering service bits,
/// per-MPDU delimiter/header/payload and tail bits.
/// Requires 1 <= n_mpdu <= max_ampdu.
Ticks data_ppdu_duration(std::uint32_t n_mpdu, const PhyMacParams& p);

/// On-air time of a control frame of the given size, sent at the fixed
/// legacy rate behind a legacy preamble. Requires bits > 0.
Ticks control_frame_duration(std::uint64_t bits, const PhyMacParams& p);

Ticks rts_duration(const PhyMacParams& p);
Ticks cts_duration(const PhyMacParams& p);
Ticks back_duration(const PhyMacParams& p);

/// Channel occupancy of one complete access:
/// RTS + SIFS + CTS + SIFS + data PPDU + SIFS + block ACK.
Ticks exchange_duration(std::uint32_t n_mpdu, const PhyMacParams& p);

/// Closed-form contention-free saturation throughput in bits per second:
/// a full A-MPDU delivered once per DIFS + mean backoff + exchange cycle.
/// Analytic cross-check for the simulator, not used inside the event loop.
double saturation_throughput_bps(const PhyMacParams& p);

}  // namespace mlosim

#endif
