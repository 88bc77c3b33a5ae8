#include "mlosim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlosim {

double load_to_rate(double fraction, double reference_bps, std::uint64_t frame_bits) {
    if (!(fraction > 0.0) || fraction > 1.5) {
        throw std::invalid_argument("load fraction must be in (0, 1.5]");
    }
    if (!(reference_bps > 0.0) || frame_bits == 0) {
        throw std::invalid_argument("reference throughput and frame size must be positive");
    }
    return fraction * reference_bps / static_cast<double>(frame_bits);
}

double percentile(const std::vector<double>& sorted_ascending, double p) {
    if (sorted_ascending.empty()) {
        throw std::invalid_argument("percentile of an empty sample");
    }
    if (!(p > 0.0) || p > 1.0) {
        throw std::invalid_argument("percentile rank must be in (0, 1]");
    }
    const auto n = static_cast<double>(sorted_ascending.size());
    auto rank = static_cast<std::size_t>(std::ceil(p * n));
    if (rank == 0) rank = 1;
    if (rank > sorted_ascending.size()) rank = sorted_ascending.size();
    return sorted_ascending[rank - 1];
}

void StatsCollector::record_delivery(const Packet& packet, Ticks now, std::int32_t iface) {
    auto& acc = per_bss_[packet.bss];
    acc.deliveries++;
    if (now >= warmup_ && now < horizon_) {
        acc.deliveries_window++;
        acc.delivered_bits_window += packet.bits;
        acc.delays_window.push_back(now - packet.arrival);
    }
    if (keep_trace_) {
        trace_.push_back(DeliveryRecord{packet.id, packet.bss, packet.bits, packet.arrival,
                                        now, iface});
    }
}

std::uint64_t StatsCollector::total_deliveries() const {
    std::uint64_t total = 0;
    for (const auto& acc : per_bss_) total += acc.deliveries;
    return total;
}

std::optional<DelaySummary> summarize_delays(std::vector<Ticks>& delays) {
    if (delays.empty()) return std::nullopt;
    std::sort(delays.begin(), delays.end());
    std::vector<double> ms;
    ms.reserve(delays.size());
    double sum = 0;
    for (Ticks d : delays) {
        const double v = ticks_to_ms(d);
        ms.push_back(v);
        sum += v;
    }
    DelaySummary s;
    s.count = ms.size();
    s.mean_ms = sum / static_cast<double>(ms.size());
    s.min_ms = ms.front();
    s.max_ms = ms.back();
    s.p1_ms = percentile(ms, 0.01);
    s.p50_ms = percentile(ms, 0.50);
    s.p99_ms = percentile(ms, 0.99);
    return s;
}

}  // namespace mlosim
