#include "mlosim/airtime.hpp"

#include <stdexcept>
#include <string>

namespace mlosim {

namespace {

std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den) {
    return (num + den - 1) / den;
}

}  // namespace

std::uint64_t bits_per_ofdm_symbol(const PhyMacParams& p) {
    const std::uint64_t scaled = static_cast<std::uint64_t>(p.data_subcarriers) *
                                 p.bits_per_qam_symbol * p.spatial_streams * p.coding_num;
    if (p.coding_den == 0 || scaled % p.coding_den != 0) {
        throw std::invalid_argument(
            "inconsistent PHY parameters: bits per OFDM symbol is not an integer");
    }
    return scaled / p.coding_den;
}

Ticks data_ppdu_duration(std::uint32_t n_mpdu, const PhyMacParams& p) {
    if (n_mpdu < 1 || n_mpdu > p.max_ampdu) {
        throw std::invalid_argument("n_mpdu must be in [1, " + std::to_string(p.max_ampdu) +
                                    "], got " + std::to_string(n_mpdu));
    }
    const std::uint64_t mpdu_bits = p.delimiter_bits + p.mac_header_bits + p.frame_bits;
    const std::uint64_t payload_bits = p.service_bits + n_mpdu * mpdu_bits + p.tail_bits;
    const std::uint64_t symbols = ceil_div(payload_bits, bits_per_ofdm_symbol(p));
    return p.legacy_preamble() + p.he_su_preamble() + symbols * p.ofdm_symbol();
}

Ticks control_frame_duration(std::uint64_t bits, const PhyMacParams& p) {
    if (bits == 0) throw std::invalid_argument("control frame size must be positive");
    return p.legacy_preamble() + ceil_div(bits, p.legacy_control_rate) * p.legacy_symbol();
}

Ticks rts_duration(const PhyMacParams& p) { return control_frame_duration(p.rts_bits, p); }
Ticks cts_duration(const PhyMacParams& p) { return control_frame_duration(p.cts_bits, p); }
Ticks back_duration(const PhyMacParams& p) { return control_frame_duration(p.back_bits, p); }

Ticks exchange_duration(std::uint32_t n_mpdu, const PhyMacParams& p) {
    return rts_duration(p) + p.sifs() + cts_duration(p) + p.sifs() +
           data_ppdu_duration(n_mpdu, p) + p.sifs() + back_duration(p);
}

double saturation_throughput_bps(const PhyMacParams& p) {
    const double payload_bits =
        static_cast<double>(p.max_ampdu) * static_cast<double>(p.frame_bits);
    const double mean_backoff_ticks =
        static_cast<double>(p.cw_min) / 2.0 * static_cast<double>(p.slot());
    const double cycle_ticks = static_cast<double>(p.difs()) + mean_backoff_ticks +
                               static_cast<double>(exchange_duration(p.max_ampdu, p));
    return payload_bits / (cycle_ticks / static_cast<double>(kTicksPerSecond));
}

}  // namespace mlosim
