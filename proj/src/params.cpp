#include "mlosim/params.hpp"

#include <stdexcept>
#include <string>

#include "mlosim/airtime.hpp"

namespace mlosim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid PHY/MAC parameters: " + what);
}

}  // namespace

void PhyMacParams::validate() const {
    require(channel_width_mhz > 0, "channel_width_mhz must be positive");
    require(bits_per_qam_symbol > 0, "bits_per_qam_symbol must be positive");
    require(coding_num > 0 && coding_den > 0, "coding rate must be positive");
    require(coding_num <= coding_den, "coding rate must not exceed 1");
    require(spatial_streams > 0, "spatial_streams must be positive");
    require(data_subcarriers > 0, "data_subcarriers must be positive");
    require(legacy_preamble_us > 0, "legacy_preamble_us must be positive");
    require(he_su_preamble_us > 0, "he_su_preamble_us must be positive");
    require(ofdm_symbol_us > 0, "ofdm_symbol_us must be positive");
    require(legacy_symbol_us > 0, "legacy_symbol_us must be positive");
    require(sifs_us > 0, "sifs_us must be positive");
    require(difs_us > 0, "difs_us must be positive");
    require(slot_us > 0, "slot_us must be positive");
    require(frame_bits > 0, "frame_bits must be positive");
    require(rts_bits > 0 && cts_bits > 0 && ack_bits > 0 && back_bits > 0,
            "control frame sizes must be positive");
    require(legacy_control_rate > 0, "legacy_control_rate must be positive");
    require(max_ampdu >= 1, "max_ampdu must be at least 1");
    require(cw_min >= 1, "cw_min must be at least 1");
    require(buffer_capacity >= 1, "buffer_capacity must be at least 1");
    // Rejects PHY combinations whose per-symbol bit count is fractional.
    (void)bits_per_ofdm_symbol(*this);
}

}  // namespace mlosim
