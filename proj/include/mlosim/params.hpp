#ifndef MLOSIM_PARAMS_HPP
#define MLOSIM_PARAMS_HPP

#include <cstdint>

#include "mlosim/time.hpp"

namespace mlosim {

/// PHY and MAC constants of the Wi-Fi state machine. Defaults model a
/// 20 MHz 802.11be link at 1024-QAM 5/6 with 2 spatial streams; control
/// frames go out at a fixed legacy rate. All time fields are microseconds
/// and convert exactly to ticks.
struct PhyMacParams {
    // PHY
    std::uint32_t channel_width_mhz = 20;
    std::uint32_t bits_per_qam_symbol = 10;  // 1024-QAM
    std::uint32_t coding_num = 5;            // coding rate as exact rational
    std::uint32_t coding_den = 6;
    std::uint32_t spatial_streams = 2;
    std::uint32_t data_subcarriers = 234;  // data tones per 20 MHz HE symbol
    std::uint64_t legacy_preamble_us = 20;
    std::uint64_t he_su_preamble_us = 52;
    std::uint64_t ofdm_symbol_us = 16;
    std::uint64_t legacy_symbol_us = 4;

    // MAC
    std::uint64_t sifs_us = 16;
    std::uint64_t difs_us = 34;
    std::uint64_t slot_us = 9;
    std::uint64_t service_bits = 32;
    std::uint64_t mac_header_bits = 272;
    std::uint64_t tail_bits = 6;
    std::uint64_t delimiter_bits = 32;
    std::uint64_t ack_bits = 112;
    std::uint64_t back_bits = 256;
    std::uint64_t rts_bits = 160;
    std::uint64_t cts_bits = 112;
    std::uint64_t frame_bits = 12000;         // constant MPDU payload size L
    std::uint32_t max_ampdu = 64;             // A-MPDU aggregation limit
    std::uint32_t cw_min = 15;                // best-effort access category
    std::uint32_t buffer_capacity = 1000;     // AP transmit buffer, packets
    std::uint64_t legacy_control_rate = 96;   // bits per legacy symbol (24 Mbps)
    bool exponential_backoff = false;         // false: CW fixed at cw_min on retry

    Ticks legacy_preamble() const { return us_to_ticks(legacy_preamble_us); }
    Ticks he_su_preamble() const { return us_to_ticks(he_su_preamble_us); }
    Ticks ofdm_symbol() const { return us_to_ticks(ofdm_symbol_us); }
    Ticks legacy_symbol() const { return us_to_ticks(legacy_symbol_us); }
    Ticks sifs() const { return us_to_ticks(sifs_us); }
    Ticks difs() const { return us_to_ticks(difs_us); }
    Ticks slot() const { return us_to_ticks(slot_us); }

    /// Throws std::invalid_argument on any out-of-domain field.
    void validate() const;

    bool operator==(const PhyMacParams&) const = default;
};

}  // namespace mlosim

#endif
