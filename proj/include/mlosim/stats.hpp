#ifndef MLOSIM_STATS_HPP
#define MLOSIM_STATS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlosim/time.hpp"

namespace mlosim {

struct Packet {
    std::uint64_t id = 0;
    std::int32_t bss = -1;
    std::uint64_t bits = 0;
    Ticks arrival = 0;
};

struct DeliveryRecord {
    std::uint64_t packet_id = 0;
    std::int32_t bss = -1;
    std::uint64_t bits = 0;
    Ticks arrival = 0;
    Ticks delivery = 0;
    std::int32_t iface = -1;  // delivering interface, for reordering analysis
};

/// Rate in packets per second offered by a load given as a fraction of a
/// reference throughput. Requires 0 < fraction <= 1.5.
double load_to_rate(double fraction, double reference_bps, std::uint64_t frame_bits);

/// Nearest-rank percentile of an ascending sample: element ceil(p*n)-1.
/// Requires a nonempty sorted sample and p in (0, 1].
double percentile(const std::vector<double>& sorted_ascending, double p);

struct DelaySummary {
    std::uint64_t count = 0;
    double mean_ms = 0, min_ms = 0, max_ms = 0;
    double p1_ms = 0, p50_ms = 0, p99_ms = 0;
};

/// Per-BSS accumulators. "window" quantities exclude deliveries and drops
/// before the warm-up cut; raw totals cover the whole run and feed the
/// packet-conservation check.
struct BssAccumulator {
    std::uint64_t arrivals = 0;
    std::uint64_t deliveries = 0;
    std::uint64_t drops = 0;
    std::uint64_t deliveries_window = 0;
    std::uint64_t drops_window = 0;
    std::uint64_t delivered_bits_window = 0;
    std::vector<Ticks> delays_window;
};

class StatsCollector {
  public:
    StatsCollector(std::size_t bss_count, Ticks warmup, Ticks horizon, bool keep_trace)
        : warmup_(warmup), horizon_(horizon), keep_trace_(keep_trace), per_bss_(bss_count) {}

    void count_arrival(std::int32_t bss) { per_bss_[bss].arrivals++; }

    void count_drop(std::int32_t bss, Ticks now) {
        per_bss_[bss].drops++;
        if (now >= warmup_ && now < horizon_) per_bss_[bss].drops_window++;
    }

    void record_delivery(const Packet& packet, Ticks now, std::int32_t iface);

    const BssAccumulator& bss(std::size_t i) const { return per_bss_[i]; }
    std::vector<BssAccumulator>& mutable_bss() { return per_bss_; }
    const std::vector<DeliveryRecord>& trace() const { return trace_; }
    std::uint64_t total_deliveries() const;

  private:
    Ticks warmup_;
    Ticks horizon_;
    bool keep_trace_;
    std::vector<BssAccumulator> per_bss_;
    std::vector<DeliveryRecord> trace_;
};

/// Sorts the windowed delays and reduces them; empty optional when the
/// sample is empty (delays are reported as absent, never as zero).
std::optional<DelaySummary> summarize_delays(std::vector<Ticks>& delays);

}  // namespace mlosim

#endif
